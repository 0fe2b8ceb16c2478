import pytest

import postulate as pl


def test_lengths_and_epsilon():
    assert pl.fat_point_length(3, 4) == 20
    assert pl.epsilon(41, 662, 0, 1) == 0
    assert (9, 0, 0) in pl.boundary_triples(8)


def test_nine_quadruple_points():
    r = pl.check_postulation([(4, 9)], 8)
    assert r.verdict == pl.Verdict.Defective
    assert (r.rank, r.N, r.defect) == (164, 165, 1)
    assert r.h1 == 16


def test_multiplicity_five_good():
    assert pl.check_postulation([(5, 7)], 9).verdict == pl.Verdict.Good


def test_oracle_plane_quartic():
    r = pl.oracle_check([(2, 5)], 4, n=2)
    assert r.defect == 1
    with pytest.raises(ValueError):
        pl.oracle_check([(4, 9)], 8)


def test_invalid_input():
    with pytest.raises(ValueError):
        pl.check_postulation([(4, 9)], 8, prime=7)


def test_rank_mod_p():
    assert pl.rank_mod_p([[1, 2], [2, 4]]) == 1
    assert pl.rank_mod_p([[1, 2], [3, 31997]]) == 1
    assert pl.rank_mod_p([[1, 0], [0, 1]], prime=5) == 2


def test_horace_helpers():
    assert pl.decompose_beta(5) == (0, 1, 2)
    assert pl.lemma_c1_check(14, 11, 0, 0, 0, 0, 0, 0) == "Holds"
    assert pl.max_trace_fill(120, 0, 0, 12) == (0, 0, 12)


def test_trace():
    t = pl.run_induction(41, 662, 0, 1)
    assert t["status"] == "Verified"
    assert 13 <= t["type2_degree"] <= 41
    assert "status Verified" in pl.trace_text(41, 662, 0, 1)
    with pytest.raises(ValueError):
        pl.run_induction(40, 1, 0, 0)


def test_sweep_and_tables(tmp_path):
    report = pl.sweep(9, 9, jobs=1, cache=str(tmp_path / "cache.jsonl"))
    assert report["summary"]["defective"] == 0
    assert report["summary"]["total"] == len(report["cases"]) > 0
    again = pl.sweep(9, 9, jobs=2, cache=str(tmp_path / "cache.jsonl"))
    assert again["cases"] == report["cases"]
    assert all(row["match"] for row in pl.tables())
