#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "postulate/linalg.hpp"
#include "postulate/scheme.hpp"

namespace postulate {

using Exponent = std::vector<int>;

// All exponent vectors over `nvars` variables with |beta| = degree, in
// graded-lexicographic order (x_0 > x_1 > ... ; x_0^degree first).
std::vector<Exponent> exponents_of_degree(int nvars, int degree);

struct MonomialBasis {
    int n = 0;
    int d = 0;
    std::vector<Exponent> exponents;

    MonomialBasis(int n, int d);
    std::size_t size() const { return exponents.size(); }
};

// A single derivative condition: order-(m_i - 1) derivative alpha at component i.
struct ConditionIndex {
    std::size_t component = 0;
    Exponent alpha;
};

std::vector<ConditionIndex> condition_indices(const FatPointScheme& scheme);

// d^alpha x^beta evaluated at point: prod_j beta_j^(alpha_j falling) * P^(beta - alpha).
std::uint32_t derivative_value(const PrimeField& field, const Exponent& beta, const Exponent& alpha,
                               const std::vector<std::uint32_t>& point);
Rational derivative_value(const Exponent& beta, const Exponent& alpha, const std::vector<Rational>& point);

// Throws std::invalid_argument when p <= d or p <= the maximal multiplicity.
DenseMatrix build_matrix(const FatPointScheme& scheme, int d, const PrimeField& field, std::uint64_t seed);

// Requires every support to be explicit.
RationalMatrix build_rational_matrix(const FatPointScheme& scheme, int d);

// Seed of one random support draw.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial, const std::string& signature, int d);

struct PostulationConfig {
    std::uint32_t prime = kDefaultPrime;
    int trials = 3;
    std::uint64_t seed = 0;
};

enum class Verdict { Good, Defective };

const char* to_string(Verdict v);

struct PostulationReport {
    std::string signature;
    int d = 0;
    std::int64_t N = 0;
    std::int64_t scheme_degree = 0;
    std::int64_t rank = 0;
    std::int64_t defect = 0;
    Verdict verdict = Verdict::Good;
    int trials_used = 0;
    std::uint64_t base_seed = 0;
    std::uint32_t prime = kDefaultPrime;

    std::int64_t h0() const { return N - rank; }
    std::int64_t h1() const { return scheme_degree - rank; }
};

// Generic rank as the maximum over independent random support draws. Stops at
// the first draw reaching maximal rank; Defective only if every draw falls short.
PostulationReport check_postulation(const FatPointScheme& scheme, int d, const PostulationConfig& config = {});

inline constexpr std::int64_t kDefaultOracleBound = 120;

// Exact rank over Q. Supports must be explicit; throws std::invalid_argument if
// N exceeds `max_columns`.
PostulationReport oracle_check(const FatPointScheme& scheme, int d, std::int64_t max_columns = kDefaultOracleBound);

// Replaces every non-explicit support with random integer coordinates in
// [-range, range] (last coordinate 0 for points on the hyperplane).
FatPointScheme with_random_integer_supports(const FatPointScheme& scheme, std::uint64_t seed, int range = 1000);

}  // namespace postulate
