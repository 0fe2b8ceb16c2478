#include "postulate/interpolation.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace postulate {

namespace {

void append_exponents(int var, int nvars, int remaining, Exponent& current, std::vector<Exponent>& out) {
    if (var == nvars - 1) {
        current[var] = remaining;
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[var] = e;
        append_exponents(var + 1, nvars, remaining - e, current, out);
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void check_field(const FatPointScheme& scheme, int d, const PrimeField& field) {
    if (d < 0) throw std::invalid_argument("degree must be >= 0");
    if (field.p() <= static_cast<std::uint32_t>(d))
        throw std::invalid_argument("characteristic must exceed the degree d");
    if (field.p() <= static_cast<std::uint32_t>(scheme.max_multiplicity()))
        throw std::invalid_argument("characteristic must exceed the maximal multiplicity");
}

std::vector<std::uint32_t> draw_point(const FatPointComponent& comp, int n, const PrimeField& field,
                                      std::mt19937_64& rng) {
    std::vector<std::uint32_t> point(n + 1, 0);
    if (const auto* e = std::get_if<Explicit>(&comp.support)) {
        for (int j = 0; j <= n; ++j) point[j] = field.from_rational(e->coords[j]);
        if (std::all_of(point.begin(), point.end(), [](std::uint32_t v) { return v == 0; }))
            throw std::invalid_argument("explicit support reduces to the zero vector mod p");
        return point;
    }
    const int free = std::holds_alternative<GenericOnHyperplane>(comp.support) ? n : n + 1;
    do {
        for (int j = 0; j < free; ++j) point[j] = static_cast<std::uint32_t>(rng() % field.p());
    } while (std::all_of(point.begin(), point.end(), [](std::uint32_t v) { return v == 0; }));
    return point;
}

}  // namespace

std::vector<Exponent> exponents_of_degree(int nvars, int degree) {
    if (nvars < 1 || degree < 0) throw std::invalid_argument("exponents_of_degree: bad arguments");
    std::vector<Exponent> out;
    Exponent current(nvars, 0);
    append_exponents(0, nvars, degree, current, out);
    return out;
}

MonomialBasis::MonomialBasis(int n_, int d_) : n(n_), d(d_), exponents(exponents_of_degree(n_ + 1, d_)) {}

std::vector<ConditionIndex> condition_indices(const FatPointScheme& scheme) {
    std::vector<ConditionIndex> out;
    const int nvars = scheme.ambient_dim() + 1;
    for (std::size_t i = 0; i < scheme.size(); ++i)
        for (auto& alpha : exponents_of_degree(nvars, scheme.components()[i].multiplicity - 1))
            out.push_back({i, std::move(alpha)});
    return out;
}

std::uint32_t derivative_value(const PrimeField& field, const Exponent& beta, const Exponent& alpha,
                               const std::vector<std::uint32_t>& point) {
    std::uint32_t value = 1 % field.p();
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] < alpha[j]) return 0;
        for (int k = 0; k < alpha[j]; ++k) value = field.mul(value, field.reduce(beta[j] - k));
        value = field.mul(value, field.pow(point[j], beta[j] - alpha[j]));
    }
    return value;
}

Rational derivative_value(const Exponent& beta, const Exponent& alpha, const std::vector<Rational>& point) {
    Rational value = 1;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] < alpha[j]) return 0;
        for (int k = 0; k < alpha[j]; ++k) value *= beta[j] - k;
        for (int k = alpha[j]; k < beta[j]; ++k) value *= point[j];
    }
    return value;
}

DenseMatrix build_matrix(const FatPointScheme& scheme, int d, const PrimeField& field, std::uint64_t seed) {
    check_field(scheme, d, field);
    const int n = scheme.ambient_dim();
    const int nvars = n + 1;
    const MonomialBasis basis(n, d);
    const std::size_t cols = basis.size();
    const int max_order = std::max(scheme.max_multiplicity() - 1, 0);

    // falling[b][a] = b (b-1) ... (b-a+1) mod p
    std::vector<std::vector<std::uint32_t>> falling(d + 1, std::vector<std::uint32_t>(max_order + 1, 0));
    for (int b = 0; b <= d; ++b) {
        std::uint32_t v = 1;
        for (int a = 0; a <= max_order; ++a) {
            falling[b][a] = v;
            v = field.mul(v, field.reduce(b - a));
        }
    }

    DenseMatrix m(field, static_cast<std::size_t>(scheme.degree()), cols);
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint32_t>> powers(nvars, std::vector<std::uint32_t>(d + 1));
    std::size_t row = 0;
    for (const auto& comp : scheme.components()) {
        const auto point = draw_point(comp, n, field, rng);
        for (int j = 0; j < nvars; ++j) {
            powers[j][0] = 1;
            for (int k = 1; k <= d; ++k) powers[j][k] = field.mul(powers[j][k - 1], point[j]);
        }
        for (const auto& alpha : exponents_of_degree(nvars, comp.multiplicity - 1)) {
            auto out = m.row(row++);
            for (std::size_t c = 0; c < cols; ++c) {
                const Exponent& beta = basis.exponents[c];
                std::uint32_t v = 1;
                for (int j = 0; j < nvars && v != 0; ++j) {
                    if (beta[j] < alpha[j]) {
                        v = 0;
                        break;
                    }
                    v = field.mul(v, field.mul(falling[beta[j]][alpha[j]], powers[j][beta[j] - alpha[j]]));
                }
                out[c] = v;
            }
        }
    }
    return m;
}

RationalMatrix build_rational_matrix(const FatPointScheme& scheme, int d) {
    if (d < 0) throw std::invalid_argument("degree must be >= 0");
    if (!scheme.all_explicit()) throw std::invalid_argument("rational matrix needs explicit supports");
    const MonomialBasis basis(scheme.ambient_dim(), d);
    RationalMatrix m(static_cast<std::size_t>(scheme.degree()), basis.size());
    std::size_t row = 0;
    for (const auto& comp : scheme.components()) {
        const auto& point = std::get<Explicit>(comp.support).coords;
        for (const auto& alpha : exponents_of_degree(scheme.ambient_dim() + 1, comp.multiplicity - 1)) {
            for (std::size_t c = 0; c < basis.size(); ++c) m(row, c) = derivative_value(basis.exponents[c], alpha, point);
            ++row;
        }
    }
    return m;
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial, const std::string& signature, int d) {
    std::uint64_t h = splitmix64(base_seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
    h = splitmix64(h ^ fnv1a(signature));
    return splitmix64(h ^ static_cast<std::uint64_t>(d));
}

const char* to_string(Verdict v) { return v == Verdict::Good ? "Good" : "Defective"; }

namespace {

PostulationReport make_report(const FatPointScheme& scheme, int d, std::int64_t rank) {
    const auto e = expected_cohomology(scheme, d);
    PostulationReport r;
    r.signature = scheme.signature();
    r.d = d;
    r.N = e.N;
    r.scheme_degree = e.scheme_degree;
    r.rank = rank;
    r.defect = std::min(e.N, e.scheme_degree) - rank;
    r.verdict = r.defect == 0 ? Verdict::Good : Verdict::Defective;
    return r;
}

}  // namespace

PostulationReport check_postulation(const FatPointScheme& scheme, int d, const PostulationConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const PrimeField field(config.prime);
    check_field(scheme, d, field);
    const auto e = expected_cohomology(scheme, d);
    const std::int64_t target = std::min(e.N, e.scheme_degree);
    const std::string sig = scheme.signature();
    // explicit supports give the same matrix every time
    const int trials = scheme.all_explicit() ? 1 : config.trials;

    std::int64_t best = -1;
    int used = 0;
    while (used < trials && best < target) {
        const auto m = build_matrix(scheme, d, field, trial_seed(config.seed, used, sig, d));
        best = std::max(best, static_cast<std::int64_t>(rank(m)));
        ++used;
    }
    auto report = make_report(scheme, d, best);
    report.trials_used = used;
    report.base_seed = config.seed;
    report.prime = config.prime;
    return report;
}

PostulationReport oracle_check(const FatPointScheme& scheme, int d, std::int64_t max_columns) {
    const auto e = expected_cohomology(scheme, d);
    if (e.N > max_columns)
        throw std::invalid_argument("oracle size bound exceeded: N = " + std::to_string(e.N) + " > " +
                                    std::to_string(max_columns));
    const auto m = build_rational_matrix(scheme, d);
    auto report = make_report(scheme, d, static_cast<std::int64_t>(rational_rank(m)));
    report.trials_used = 1;
    report.prime = 0;
    return report;
}

FatPointScheme with_random_integer_supports(const FatPointScheme& scheme, std::uint64_t seed, int range) {
    std::mt19937_64 rng(seed);
    const int n = scheme.ambient_dim();
    const std::uint64_t width = 2 * static_cast<std::uint64_t>(range) + 1;
    std::vector<FatPointComponent> comps;
    for (const auto& c : scheme.components()) {
        if (std::holds_alternative<Explicit>(c.support)) {
            comps.push_back(c);
            continue;
        }
        const int free = std::holds_alternative<GenericOnHyperplane>(c.support) ? n : n + 1;
        Explicit e;
        e.coords.assign(n + 1, Rational(0));
        do {
            for (int j = 0; j < free; ++j)
                e.coords[j] = static_cast<std::int64_t>(rng() % width) - static_cast<std::int64_t>(range);
        } while (std::all_of(e.coords.begin(), e.coords.end(), [](const Rational& q) { return q == 0; }));
        comps.push_back({c.multiplicity, std::move(e)});
    }
    return FatPointScheme(n, std::move(comps));
}

}  // namespace postulate
