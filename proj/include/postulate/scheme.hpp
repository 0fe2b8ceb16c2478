#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace postulate {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Exact binomial coefficient; zero when k < 0 or k > n (n >= 0).
BigInt binomial(std::int64_t n, std::int64_t k);

// Same value, narrowed to 64 bits. Throws std::overflow_error if it does not fit.
std::int64_t binomial_i64(std::int64_t n, std::int64_t k);

// Length of an m-fat point of P^n: binom(n+m-1, n).
std::int64_t fat_point_length(int n, int m);

struct GenericAmbient {
    bool operator==(const GenericAmbient&) const = default;
};

// A general point of the hyperplane x_n = 0.
struct GenericOnHyperplane {
    bool operator==(const GenericOnHyperplane&) const = default;
};

// Projective coordinates (x_0 : ... : x_n).
struct Explicit {
    std::vector<Rational> coords;
    bool operator==(const Explicit&) const = default;
};

using Support = std::variant<GenericAmbient, GenericOnHyperplane, Explicit>;

struct FatPointComponent {
    int multiplicity = 1;
    Support support = GenericAmbient{};

    bool operator==(const FatPointComponent&) const = default;
};

// A union m_1 P_1 + ... + m_k P_k in P^n. Components are kept sorted by
// non-increasing multiplicity (stable, so explicit supports keep their
// relative order within a multiplicity).
class FatPointScheme {
public:
    explicit FatPointScheme(int ambient_dim, std::vector<FatPointComponent> components = {});

    // count copies of a generic m-point, repeated for every (m, count) pair.
    static FatPointScheme generic(int ambient_dim, const std::vector<std::pair<int, int>>& mult_counts);

    int ambient_dim() const { return ambient_dim_; }
    const std::vector<FatPointComponent>& components() const { return components_; }
    bool empty() const { return components_.empty(); }
    std::size_t size() const { return components_.size(); }

    int max_multiplicity() const;
    std::int64_t degree() const;
    bool all_explicit() const;

    // Canonical text form: "m:count" groups in decreasing multiplicity, with
    // an 'h' suffix for points on the hyperplane and 'x' for explicit ones,
    // e.g. "4:7,3:2,2:1". Stable across runs; used for seeding and caching.
    std::string signature() const;

    // This scheme plus the extra components (the result contains *this).
    FatPointScheme with(const std::vector<FatPointComponent>& extra) const;

private:
    int ambient_dim_;
    std::vector<FatPointComponent> components_;
};

struct PostulationExpectation {
    int degree_d = 0;
    std::int64_t N = 0;
    std::int64_t scheme_degree = 0;
    std::int64_t expected_h0 = 0;
    std::int64_t expected_h1 = 0;
};

PostulationExpectation expected_cohomology(const FatPointScheme& scheme, int d);

// binom(d+3,3) - 20x - 10y - 4z: slack of x 4-points, y 3-points, z 2-points in P^3.
std::int64_t epsilon(int d, std::int64_t x, std::int64_t y, std::int64_t z);

struct Triple {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    auto operator<=>(const Triple&) const = default;
};

inline constexpr std::int64_t kEpsilonMin = -19;
inline constexpr std::int64_t kEpsilonMax = 3;

// All (x, y, z) with -19 <= epsilon(d,x,y,z) <= 3, lexicographic order.
std::vector<Triple> boundary_triples(int d);
void for_each_boundary_triple(int d, const std::function<void(const Triple&)>& visit);

}  // namespace postulate
