#include "postulate/scheme.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace postulate {

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

std::int64_t binomial_i64(std::int64_t n, std::int64_t k) {
    BigInt value = binomial(n, k);
    if (value > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("binomial does not fit in 64 bits");
    return value.convert_to<std::int64_t>();
}

std::int64_t fat_point_length(int n, int m) {
    if (n < 1) throw std::invalid_argument("fat_point_length: ambient dimension must be >= 1");
    if (m < 1) throw std::invalid_argument("fat_point_length: multiplicity must be >= 1");
    return binomial_i64(n + m - 1, n);
}

FatPointScheme::FatPointScheme(int ambient_dim, std::vector<FatPointComponent> components)
    : ambient_dim_(ambient_dim), components_(std::move(components)) {
    if (ambient_dim_ < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    for (const auto& c : components_) {
        if (c.multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
        if (const auto* e = std::get_if<Explicit>(&c.support)) {
            if (e->coords.size() != static_cast<std::size_t>(ambient_dim_) + 1)
                throw std::invalid_argument("explicit support needs n+1 coordinates");
            if (std::all_of(e->coords.begin(), e->coords.end(), [](const Rational& q) { return q == 0; }))
                throw std::invalid_argument("explicit support has all coordinates zero");
        }
    }
    std::stable_sort(components_.begin(), components_.end(),
                     [](const FatPointComponent& a, const FatPointComponent& b) {
                         return a.multiplicity > b.multiplicity;
                     });
}

FatPointScheme FatPointScheme::generic(int ambient_dim, const std::vector<std::pair<int, int>>& mult_counts) {
    std::vector<FatPointComponent> comps;
    for (auto [m, count] : mult_counts) {
        if (count < 0) throw std::invalid_argument("negative component count");
        for (int i = 0; i < count; ++i) comps.push_back({m, GenericAmbient{}});
    }
    return FatPointScheme(ambient_dim, std::move(comps));
}

int FatPointScheme::max_multiplicity() const {
    return components_.empty() ? 0 : components_.front().multiplicity;
}

std::int64_t FatPointScheme::degree() const {
    std::int64_t total = 0;
    for (const auto& c : components_) total += fat_point_length(ambient_dim_, c.multiplicity);
    return total;
}

bool FatPointScheme::all_explicit() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const FatPointComponent& c) { return std::holds_alternative<Explicit>(c.support); });
}

std::string FatPointScheme::signature() const {
    // key: (multiplicity, support kind); ordered by decreasing multiplicity
    std::map<std::pair<int, int>, int, std::greater<>> counts;
    for (const auto& c : components_) ++counts[{c.multiplicity, -static_cast<int>(c.support.index())}];
    std::string out;
    for (const auto& [key, count] : counts) {
        if (!out.empty()) out += ',';
        out += std::to_string(key.first);
        if (key.second == -1) out += 'h';
        if (key.second == -2) out += 'x';
        out += ':' + std::to_string(count);
    }
    return out;
}

FatPointScheme FatPointScheme::with(const std::vector<FatPointComponent>& extra) const {
    auto comps = components_;
    comps.insert(comps.end(), extra.begin(), extra.end());
    return FatPointScheme(ambient_dim_, std::move(comps));
}

PostulationExpectation expected_cohomology(const FatPointScheme& scheme, int d) {
    if (d < 0) throw std::invalid_argument("degree must be >= 0");
    PostulationExpectation e;
    e.degree_d = d;
    e.N = binomial_i64(d + scheme.ambient_dim(), scheme.ambient_dim());
    e.scheme_degree = scheme.degree();
    e.expected_h0 = std::max<std::int64_t>(0, e.N - e.scheme_degree);
    e.expected_h1 = std::max<std::int64_t>(0, e.scheme_degree - e.N);
    return e;
}

std::int64_t epsilon(int d, std::int64_t x, std::int64_t y, std::int64_t z) {
    if (d < 0 || x < 0 || y < 0 || z < 0) throw std::invalid_argument("epsilon: inputs must be >= 0");
    BigInt value = binomial(d + 3, 3) - 20 * BigInt(x) - 10 * BigInt(y) - 4 * BigInt(z);
    return value.convert_to<std::int64_t>();
}

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }
std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

void for_each_boundary_triple(int d, const std::function<void(const Triple&)>& visit) {
    if (d < 0) throw std::invalid_argument("degree must be >= 0");
    const std::int64_t N = binomial_i64(d + 3, 3);
    const std::int64_t x_max = ceil_div(N, 20);
    const std::int64_t y_max = ceil_div(N, 10);
    const std::int64_t z_max = ceil_div(N, 4);
    for (std::int64_t x = 0; x <= x_max; ++x) {
        for (std::int64_t y = 0; y <= y_max; ++y) {
            // N - 20x - 10y - 4z in [kEpsilonMin, kEpsilonMax]
            const std::int64_t rest = N - 20 * x - 10 * y;
            if (rest < kEpsilonMin) break;
            const std::int64_t z_lo = std::max<std::int64_t>(0, ceil_div(rest - kEpsilonMax, 4));
            const std::int64_t z_hi = std::min(z_max, floor_div(rest - kEpsilonMin, 4));
            for (std::int64_t z = z_lo; z <= z_hi; ++z) visit(Triple{x, y, z});
        }
    }
}

std::vector<Triple> boundary_triples(int d) {
    std::vector<Triple> out;
    for_each_boundary_triple(d, [&](const Triple& t) { out.push_back(t); });
    return out;
}

}  // namespace postulate
