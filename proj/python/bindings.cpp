#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "postulate/horace.hpp"
#include "postulate/interpolation.hpp"
#include "postulate/survey.hpp"
#include "postulate/trace_io.hpp"

namespace py = pybind11;
using namespace postulate;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FatPointScheme scheme_from(int n, const std::vector<std::pair<int, int>>& points) {
    return FatPointScheme::generic(n, points);
}

}  // namespace

PYBIND11_MODULE(_postulate, m) {
    m.doc() = "Postulation of general fat points: interpolation ranks and the Horace induction verifier";
    m.attr("DEFAULT_PRIME") = kDefaultPrime;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::domain_error& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        }
    });

    m.def("fat_point_length", &fat_point_length, py::arg("n"), py::arg("m"));
    m.def("epsilon", &epsilon, py::arg("d"), py::arg("x"), py::arg("y"), py::arg("z"));
    m.def(
        "boundary_triples",
        [](int d) {
            std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
            for_each_boundary_triple(d, [&](const Triple& t) { out.emplace_back(t.x, t.y, t.z); });
            return out;
        },
        py::arg("d"));

    py::enum_<Verdict>(m, "Verdict").value("Good", Verdict::Good).value("Defective", Verdict::Defective);

    py::class_<PostulationReport>(m, "PostulationReport")
        .def_readonly("signature", &PostulationReport::signature)
        .def_readonly("d", &PostulationReport::d)
        .def_readonly("N", &PostulationReport::N)
        .def_readonly("scheme_degree", &PostulationReport::scheme_degree)
        .def_readonly("rank", &PostulationReport::rank)
        .def_readonly("defect", &PostulationReport::defect)
        .def_readonly("verdict", &PostulationReport::verdict)
        .def_readonly("trials_used", &PostulationReport::trials_used)
        .def_readonly("base_seed", &PostulationReport::base_seed)
        .def_readonly("prime", &PostulationReport::prime)
        .def_property_readonly("h0", &PostulationReport::h0)
        .def_property_readonly("h1", &PostulationReport::h1)
        .def("__repr__", [](const PostulationReport& r) {
            return "<PostulationReport " + r.signature + " d=" + std::to_string(r.d) + " rank=" +
                   std::to_string(r.rank) + " defect=" + std::to_string(r.defect) + " " + to_string(r.verdict) + ">";
        });

    m.def(
        "check_postulation",
        [](const std::vector<std::pair<int, int>>& points, int d, int n, std::uint32_t prime, int trials,
           std::uint64_t seed) {
            const auto s = scheme_from(n, points);
            py::gil_scoped_release release;
            return check_postulation(s, d, {prime, trials, seed});
        },
        py::arg("points"), py::arg("d"), py::arg("n") = 3, py::arg("prime") = kDefaultPrime, py::arg("trials") = 3,
        py::arg("seed") = 0, "Generic rank over GF(p); points is a list of (multiplicity, count).");

    m.def(
        "oracle_check",
        [](const std::vector<std::pair<int, int>>& points, int d, int n, std::uint64_t seed, std::int64_t bound) {
            auto r = oracle_check(with_random_integer_supports(scheme_from(n, points), seed), d, bound);
            r.base_seed = seed;
            return r;
        },
        py::arg("points"), py::arg("d"), py::arg("n") = 3, py::arg("seed") = 0,
        py::arg("bound") = kDefaultOracleBound, "Exact rank over Q at random integer supports.");

    m.def(
        "rank_mod_p",
        [](const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t prime) {
            const PrimeField f(prime);
            const std::size_t cols = rows.empty() ? 0 : rows[0].size();
            DenseMatrix mat(f, rows.size(), cols);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
                for (std::size_t c = 0; c < cols; ++c) mat(r, c) = f.reduce(rows[r][c]);
            }
            return rank(mat);
        },
        py::arg("rows"), py::arg("prime") = kDefaultPrime);

    m.def("decompose_beta", [](int beta) {
        const auto t = horace::decompose_beta(beta);
        return std::make_tuple(t.e, t.f, t.g);
    });
    m.def(
        "lemma_c1_check",
        [](std::int64_t t, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t u, int e, int f, int g) {
            return std::string(horace::to_string(horace::lemma_c1_check(t, a, b, c, u, e, f, g)));
        },
        py::arg("t"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("u"), py::arg("e"), py::arg("f"), py::arg("g"));
    m.def(
        "max_trace_fill",
        [](std::int64_t capacity, std::int64_t c2, std::int64_t c3, std::int64_t c4) {
            const auto k = horace::max_trace_fill(capacity, c2, c3, c4);
            return std::make_tuple(k.n2, k.n3, k.n4);
        },
        py::arg("capacity"), py::arg("c2"), py::arg("c3"), py::arg("c4"));

    m.def(
        "run_induction",
        [](int d, std::int64_t x, std::int64_t y, std::int64_t z) {
            return to_python(horace::to_json(horace::run_induction(d, x, y, z)));
        },
        py::arg("d"), py::arg("x"), py::arg("y"), py::arg("z"), "Induction trace as a dict.");
    m.def(
        "trace_text",
        [](int d, std::int64_t x, std::int64_t y, std::int64_t z) {
            return horace::to_text(horace::run_induction(d, x, y, z));
        },
        py::arg("d"), py::arg("x"), py::arg("y"), py::arg("z"));

    m.def(
        "sweep",
        [](int d_min, int d_max, std::uint32_t prime, int trials, std::uint64_t seed, std::optional<int> jobs,
           std::optional<std::string> cache) {
            survey::SweepConfig cfg;
            cfg.d_min = d_min;
            cfg.d_max = d_max;
            cfg.prime = prime;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.jobs = survey::resolve_jobs(jobs);
            if (cache) cfg.cache_path = *cache;
            survey::SweepResult res;
            {
                py::gil_scoped_release release;
                res = survey::run_sweep(cfg);
            }
            return to_python(survey::report_json(cfg.to_json(), res.cases, res.summary, false));
        },
        py::arg("d_min"), py::arg("d_max"), py::arg("prime") = kDefaultPrime, py::arg("trials") = 3,
        py::arg("seed") = 0, py::arg("jobs") = py::none(), py::arg("cache") = py::none(),
        "Boundary sweep; returns the JSON report as a dict.");

    m.def("tables", [] {
        auto rows = nlohmann::json::array();
        for (const auto& o : survey::run_tables({})) {
            auto j = survey::to_json(o.record);
            j["published"] = o.row.good;
            j["match"] = o.match;
            rows.push_back(std::move(j));
        }
        return to_python(rows);
    });
}
