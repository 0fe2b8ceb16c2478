#include <doctest.h>

#include <random>
#include <set>

#include "postulate/scheme.hpp"

using namespace postulate;

namespace {

std::vector<std::vector<std::int64_t>> pascal(int rows) {
    std::vector<std::vector<std::int64_t>> t(rows, std::vector<std::int64_t>(rows, 0));
    for (int n = 0; n < rows; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
}

// Number of exponent vectors of n+1 variables with |a| = m-1.
std::int64_t count_monomials(int vars, int degree) {
    if (vars == 1) return 1;
    std::int64_t total = 0;
    for (int first = 0; first <= degree; ++first) total += count_monomials(vars - 1, degree - first);
    return total;
}

}  // namespace

TEST_CASE("binomial agrees with Pascal's triangle") {
    const auto t = pascal(60);
    for (int n = 0; n < 60; ++n)
        for (int k = 0; k <= n; ++k) {
            CHECK(binomial_i64(n, k) == t[n][k]);
            CHECK(binomial(n, k) == t[n][k]);
        }
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(200, 100) > BigInt(std::numeric_limits<std::int64_t>::max()));
    CHECK_THROWS_AS(binomial_i64(200, 100), std::overflow_error);
}

TEST_CASE("fat point length") {
    CHECK(fat_point_length(3, 4) == 20);
    CHECK(fat_point_length(3, 1) == 1);
    CHECK(fat_point_length(3, 5) == 35);
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 8; ++m) CHECK(fat_point_length(n, m) == count_monomials(n + 1, m - 1));
    CHECK_THROWS_AS(fat_point_length(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(fat_point_length(3, 0), std::invalid_argument);
}

TEST_CASE("scheme validation and ordering") {
    CHECK_THROWS_AS(FatPointScheme(0), std::invalid_argument);
    CHECK_THROWS_AS(FatPointScheme(2, {{0, GenericAmbient{}}}), std::invalid_argument);
    CHECK_THROWS_AS(FatPointScheme(2, {{1, Explicit{{0, 0, 0}}}}), std::invalid_argument);
    CHECK_THROWS_AS(FatPointScheme(2, {{1, Explicit{{1, 2}}}}), std::invalid_argument);

    const FatPointScheme s(3, {{2, GenericAmbient{}}, {4, GenericAmbient{}}, {3, GenericOnHyperplane{}}});
    REQUIRE(s.size() == 3);
    CHECK(s.components()[0].multiplicity == 4);
    CHECK(s.components()[2].multiplicity == 2);
    CHECK(s.max_multiplicity() == 4);
    CHECK(s.degree() == 20 + 10 + 4);
    CHECK_FALSE(s.all_explicit());
    CHECK(s.signature() == "4:1,3h:1,2:1");

    const auto g = FatPointScheme::generic(3, {{5, 3}, {4, 7}, {2, 0}});
    CHECK(g.signature() == "5:3,4:7");
    CHECK(FatPointScheme(3).signature().empty());
    CHECK(g.with({{2, GenericAmbient{}}}).size() == 11);
}

TEST_CASE("degree is additive over components") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::pair<int, int>> counts;
        std::int64_t expected = 0;
        for (int k = 0; k < 3; ++k) {
            const int m = 1 + static_cast<int>(rng() % 6), c = static_cast<int>(rng() % 5);
            counts.emplace_back(m, c);
            expected += c * count_monomials(n + 1, m - 1);
        }
        CHECK(FatPointScheme::generic(n, counts).degree() == expected);
    }
}

TEST_CASE("expected cohomology") {
    const auto nine4 = expected_cohomology(FatPointScheme::generic(3, {{4, 9}}), 8);
    CHECK(nine4.N == 165);
    CHECK(nine4.scheme_degree == 180);
    CHECK(nine4.expected_h0 == 0);
    CHECK(nine4.expected_h1 == 15);

    const auto empty = expected_cohomology(FatPointScheme(3), 3);
    CHECK(empty.N == 20);
    CHECK(empty.scheme_degree == 0);
    CHECK(empty.expected_h0 == 20);
    CHECK(empty.expected_h1 == 0);

    const auto nine9 = expected_cohomology(FatPointScheme::generic(3, {{9, 9}}), 19);
    CHECK(nine9.N == 1540);
    CHECK(nine9.scheme_degree == 1485);
    CHECK(nine9.expected_h1 == 0);
    CHECK(nine9.expected_h0 == 55);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const int d = static_cast<int>(rng() % 12);
        const auto e = expected_cohomology(FatPointScheme::generic(3, {{1 + int(rng() % 4), int(rng() % 20)}}), d);
        CHECK(e.expected_h0 == std::max<std::int64_t>(0, e.N - e.scheme_degree));
        CHECK(e.expected_h1 == std::max<std::int64_t>(0, e.scheme_degree - e.N));
        CHECK((e.expected_h0 == 0 || e.expected_h1 == 0));
    }
}

TEST_CASE("epsilon") {
    CHECK(epsilon(8, 9, 0, 0) == -15);
    CHECK(epsilon(41, 662, 0, 1) == 0);
    for (int d = 0; d < 30; ++d) CHECK(epsilon(d, 0, 0, 0) == binomial_i64(d + 3, 3));
}

TEST_CASE("boundary triples") {
    const auto zero = boundary_triples(0);
    const std::vector<Triple> zero_expected{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}};
    CHECK(zero == zero_expected);
    CHECK(epsilon(0, 0, 0, 0) == 1);
    CHECK_THROWS_AS(boundary_triples(-1), std::invalid_argument);

    for (int d : {5, 8, 9, 12}) {
        const auto got = boundary_triples(d);
        const std::int64_t N = binomial_i64(d + 3, 3);
        std::vector<Triple> brute;
        for (std::int64_t x = 0; x <= (N + 19) / 20; ++x)
            for (std::int64_t y = 0; y <= (N + 9) / 10; ++y)
                for (std::int64_t z = 0; z <= (N + 3) / 4; ++z) {
                    const auto e = epsilon(d, x, y, z);
                    if (e >= kEpsilonMin && e <= kEpsilonMax) brute.push_back({x, y, z});
                }
        CHECK(got == brute);
        CHECK(std::is_sorted(got.begin(), got.end()));
        std::size_t visited = 0;
        for_each_boundary_triple(d, [&](const Triple& t) { CHECK(t == got[visited++]); });
        CHECK(visited == got.size());
    }
    const auto eight = boundary_triples(8);
    CHECK(std::find(eight.begin(), eight.end(), Triple{9, 0, 0}) != eight.end());
    CHECK(boundary_triples(12).size() > 3000);
}
