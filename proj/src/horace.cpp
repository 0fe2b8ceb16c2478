#include "postulate/horace.hpp"

#include <algorithm>
#include <stdexcept>

namespace postulate::horace {

namespace {

// Layer multiplicities of the six differential splittings, trace first.
struct CaseLayout {
    int ambient_m;
    std::array<std::uint8_t, 4> layers;
    std::uint8_t size;
};

constexpr std::array<CaseLayout, 6> kCaseLayouts = {{
    {2, {1, 2, 0, 0}, 2},  // (1,3)
    {3, {1, 3, 2, 0}, 3},  // (1,6,3)
    {3, {2, 3, 1, 0}, 3},  // (3,6,1)
    {4, {1, 4, 3, 2}, 4},  // (1,10,6,3)
    {4, {2, 4, 3, 1}, 4},  // (3,10,6,1)
    {4, {3, 4, 2, 1}, 4},  // (6,10,3,1)
}};

constexpr std::int64_t plane_length(int m) { return static_cast<std::int64_t>(m) * (m + 1) / 2; }

const CaseLayout& layout(DifferentialCase c) { return kCaseLayouts[static_cast<std::size_t>(c)]; }

}  // namespace

const char* to_string(DifferentialCase c) {
    switch (c) {
        case DifferentialCase::I: return "(1,3)";
        case DifferentialCase::II: return "(1,6,3)";
        case DifferentialCase::III: return "(3,6,1)";
        case DifferentialCase::IV: return "(1,10,6,3)";
        case DifferentialCase::V: return "(3,10,6,1)";
        case DifferentialCase::VI: return "(6,10,3,1)";
    }
    return "?";
}

int ambient_multiplicity(DifferentialCase c) { return layout(c).ambient_m; }

std::int64_t differential_trace_length(DifferentialCase c) { return plane_length(layout(c).layers[0]); }

VirtualComponent VirtualComponent::plain_on_hyperplane(int m) {
    if (m < 1 || m > static_cast<int>(kMaxLayers))
        throw std::invalid_argument("plain_on_hyperplane: multiplicity out of range");
    VirtualComponent v;
    v.origin_ = Origin::PlainOnH;
    v.size_ = static_cast<std::uint8_t>(m);
    for (int i = 0; i < m; ++i) v.layers_[i] = static_cast<std::uint8_t>(m - i);
    return v;
}

VirtualComponent VirtualComponent::differential(DifferentialCase c) {
    const auto& l = layout(c);
    VirtualComponent v;
    v.origin_ = Origin::Differential;
    v.case_ = c;
    v.size_ = l.size;
    std::copy_n(l.layers.begin(), l.size, v.layers_.begin());
    return v;
}

std::optional<DifferentialCase> VirtualComponent::differential_case() const {
    if (origin_ == Origin::Differential) return case_;
    return std::nullopt;
}

std::vector<Layer> VirtualComponent::layers() const {
    std::vector<Layer> out;
    for (std::size_t i = 0; i < size_; ++i) out.push_back(Layer{layers_[i]});
    return out;
}

std::int64_t VirtualComponent::layer_length(std::size_t i) const { return i < size_ ? plane_length(layers_[i]) : 0; }

std::int64_t VirtualComponent::total_length() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < size_; ++i) s += plane_length(layers_[i]);
    return s;
}

VirtualComponent VirtualComponent::residual() const {
    if (size_ == 0) throw std::invalid_argument("component already exhausted");
    VirtualComponent r = *this;
    std::copy(layers_.begin() + 1, layers_.begin() + size_, r.layers_.begin());
    r.layers_[size_ - 1] = 0;
    --r.size_;
    return r;
}

TraceResidual trace_and_residual(const VirtualComponent& component) {
    if (component.exhausted()) throw std::invalid_argument("component already exhausted");
    return {component.trace_length(), component.residual()};
}

PlainTraceResidual trace_and_residual_plain(int n, int m) {
    if (n < 2) throw std::invalid_argument("hyperplane section needs n >= 2");
    return {fat_point_length(n - 1, m), m - 1};
}

void StarScheme::set_off_h(int m, std::int64_t count) {
    if (m < 2 || m > 4) throw std::invalid_argument("off-H components must be 2-, 3- or 4-points");
    if (count < 0) throw std::invalid_argument("negative component count");
    off_h_[m] = count;
}

void StarScheme::set_simple_points_on_h(std::int64_t z) {
    if (z < 0) throw std::invalid_argument("negative simple point count");
    simple_ = z;
}

void StarScheme::add_on_h(const VirtualComponent& c, std::int64_t count) {
    if (count < 0) throw std::invalid_argument("negative component count");
    if (count == 0 || c.exhausted()) return;
    if (c.is_simple_point()) {
        simple_ += count;
        return;
    }
    auto it = std::lower_bound(on_h_.begin(), on_h_.end(), c,
                               [](const ComponentGroup& g, const VirtualComponent& v) { return g.component < v; });
    if (it != on_h_.end() && it->component == c)
        it->count += count;
    else
        on_h_.insert(it, ComponentGroup{c, count});
}

std::int64_t StarScheme::degree() const {
    std::int64_t total = simple_ + 4 * off_h_[2] + 10 * off_h_[3] + 20 * off_h_[4];
    for (const auto& g : on_h_) total += g.count * g.component.total_length();
    return total;
}

std::int64_t StarScheme::layer_degree(std::size_t i) const {
    std::int64_t total = i == 0 ? simple_ : 0;
    for (const auto& g : on_h_) total += g.count * g.component.layer_length(i);
    return total;
}

BetaTriple decompose_beta(int beta) {
    if (beta < 0 || beta > 9) throw std::invalid_argument("beta must lie in [0, 9]");
    return kBetaTriples[beta];
}

const char* to_string(LemmaOutcome o) {
    switch (o) {
        case LemmaOutcome::Holds: return "Holds";
        case LemmaOutcome::Fails: return "Fails";
        case LemmaOutcome::HypothesisNotMet: return "HypothesisNotMet";
    }
    return "?";
}

int lemma_c1_threshold(int e, int f, int g) {
    if (e == 0 && f == 0 && g == 0) return 3;
    if (e + f + g <= 2) return 12;
    return 14;
}

LemmaOutcome lemma_c1_check(std::int64_t t, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t u, int e,
                            int f, int g) {
    if (t < 0 || a < 0 || b < 0 || c < 0 || u < 0) throw std::invalid_argument("lemma inputs must be >= 0");
    if (std::find(kBetaTriples.begin(), kBetaTriples.end(), BetaTriple{e, f, g}) == kBetaTriples.end())
        throw std::invalid_argument("(e,f,g) is not one of the ten admissible triples");
    if (t < lemma_c1_threshold(e, f, g)) return LemmaOutcome::HypothesisNotMet;
    if (10 * a + 6 * b + 3 * c + u + 6 * e + 3 * f + g > choose2(t + 2)) return LemmaOutcome::HypothesisNotMet;
    return 6 * a + 3 * b + c + 10 * (e + f + g) <= choose2(t + 1) ? LemmaOutcome::Holds : LemmaOutcome::Fails;
}

std::optional<std::int64_t> lemma_2_4_bound(std::int64_t h0_y, std::int64_t h0_res_y, std::int64_t gamma,
                                            std::int64_t z) {
    if (h0_y < 0 || h0_res_y < 0 || gamma < 0 || z < 0) throw std::invalid_argument("inputs must be >= 0");
    if (h0_y <= gamma + z && h0_res_y <= gamma) return gamma;
    return std::nullopt;
}

// With 3-, 6- and 10-items an optimal fill always exists with n4 within two of
// its cap: three 10s can replace any 30 worth of 3s and 6s. Given n4, taking
// as many 6s as fit is optimal since two 3s fill the same room as one 6.
KnapsackChoice max_trace_fill(std::int64_t capacity, std::int64_t c2, std::int64_t c3, std::int64_t c4) {
    if (capacity < 0 || c2 < 0 || c3 < 0 || c4 < 0) throw std::invalid_argument("knapsack inputs must be >= 0");
    KnapsackChoice best;
    const std::int64_t n4_cap = std::min(c4, capacity / 10);
    bool found = false;
    for (std::int64_t n4 = n4_cap; n4 >= std::max<std::int64_t>(0, n4_cap - 2); --n4) {
        const std::int64_t room = capacity - 10 * n4;
        const std::int64_t n3 = std::min(c3, room / 6);
        const std::int64_t n2 = std::min(c2, (room - 6 * n3) / 3);
        KnapsackChoice k{n2, n3, n4};
        if (!found || k.filled() > best.filled()) {
            best = k;
            found = true;
        }
    }
    return best;
}

const char* to_string(DegenerationType t) { return t == DegenerationType::TypeI ? "I" : "II"; }

namespace {

void apply_differential(Degeneration& out, DifferentialCase c, std::int64_t count) {
    if (count <= 0) return;
    const int m = ambient_multiplicity(c);
    StarScheme& x = out.specialized;
    x.set_off_h(m, x.off_h(m) - count);
    x.add_on_h(VirtualComponent::differential(c), count);
    out.differential.push_back({c, count});
    if (differential_trace_length(c) == 1) out.trace_one_applications += count;
}

// Every leftover component goes onto H with the largest total trace <= beta.
// At most two components are left in the cases that reach here.
void place_leftovers(Degeneration& out) {
    std::vector<int> mults;
    for (int m = 4; m >= 2; --m)
        for (std::int64_t i = 0; i < out.specialized.off_h(m); ++i) mults.push_back(m);

    struct Option {
        std::int64_t trace;
        std::optional<DifferentialCase> dcase;  // nullopt: plain on H
    };
    auto options = [](int m) {
        std::vector<Option> o;
        for (auto c : kAllDifferentialCases)
            if (ambient_multiplicity(c) == m) o.push_back({differential_trace_length(c), c});
        o.push_back({plane_length(m), std::nullopt});
        return o;
    };

    std::vector<Option> best_pick, pick(mults.size());
    std::int64_t best = -1;
    auto search = [&](auto&& self, std::size_t i, std::int64_t used) -> void {
        if (i == mults.size()) {
            if (used > best) {
                best = used;
                best_pick = pick;
            }
            return;
        }
        for (const auto& o : options(mults[i])) {
            if (used + o.trace > out.beta) continue;
            pick[i] = o;
            self(self, i + 1, used + o.trace);
        }
    };
    search(search, 0, 0);
    if (best < 0) return;  // nothing fits; components stay off H

    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (best_pick[i].dcase) {
            apply_differential(out, *best_pick[i].dcase, 1);
        } else {
            StarScheme& x = out.specialized;
            x.set_off_h(mults[i], x.off_h(mults[i]) - 1);
            x.add_on_h(VirtualComponent::plain_on_hyperplane(mults[i]), 1);
        }
    }
}

}  // namespace

Degeneration degenerate(const StarScheme& y) {
    const std::int64_t cap = choose2(y.t() + 2);
    Degeneration out;
    out.beta_condition = cap - y.trace_degree();
    if (out.beta_condition < 0)
        throw std::invalid_argument("deg(Y cap H) exceeds binom(t+2,2); cannot degenerate");

    StarScheme& x = out.specialized;
    x = y;
    out.plain = max_trace_fill(out.beta_condition, y.off_h(2), y.off_h(3), y.off_h(4));
    const std::array<std::int64_t, 5> moved{0, 0, out.plain.n2, out.plain.n3, out.plain.n4};
    for (int m = 2; m <= 4; ++m) {
        x.set_off_h(m, y.off_h(m) - moved[m]);
        x.add_on_h(VirtualComponent::plain_on_hyperplane(m), moved[m]);
    }
    out.beta = out.beta_condition - out.plain.filled();
    const std::int64_t c2 = x.off_h(2), c3 = x.off_h(3), c4 = x.off_h(4);
    out.remaining_off_h = {0, 0, c2, c3, c4};

    if (out.beta <= 9) out.efg = decompose_beta(static_cast<int>(out.beta));
    const auto [e, f, g] = out.efg;

    if (c2 + c3 + c4 == 0 || out.beta == 0) {
        // nothing to split, or the trace is already full
    } else if (c2 > 0) {
        // minimality: beta < 3, so e = f = 0
        if (c2 >= g) {
            apply_differential(out, DifferentialCase::I, g);
        } else if (c3 + c4 >= 1) {
            apply_differential(out, DifferentialCase::I, 1);
            apply_differential(out, c3 > 0 ? DifferentialCase::II : DifferentialCase::IV, 1);
        } else {
            apply_differential(out, DifferentialCase::I, 1);
        }
    } else if (c3 > 0) {
        // beta < 6, so e = 0
        if (c3 >= f + g) {
            apply_differential(out, DifferentialCase::III, f);
            apply_differential(out, DifferentialCase::II, g);
        } else if (c4 >= f + g - c3) {
            // 3-points take the trace-3 roles first, 4-points cover the rest
            const std::int64_t t3 = std::min<std::int64_t>(f, c3);
            const std::int64_t t1 = c3 - t3;
            apply_differential(out, DifferentialCase::III, t3);
            apply_differential(out, DifferentialCase::II, t1);
            apply_differential(out, DifferentialCase::V, f - t3);
            apply_differential(out, DifferentialCase::IV, g - t1);
        } else {
            place_leftovers(out);
        }
    } else {
        // c4 > 0 only, beta < 10
        if (c4 >= e + f + g) {
            apply_differential(out, DifferentialCase::VI, e);
            apply_differential(out, DifferentialCase::V, f);
            apply_differential(out, DifferentialCase::IV, g);
        } else {
            place_leftovers(out);
        }
    }

    out.trace_degree = x.trace_degree();
    out.residual_trace_degree = x.layer_degree(1);
    out.type = out.trace_degree == cap ? DegenerationType::TypeI : DegenerationType::TypeII;
    return out;
}

ResidualSplit residual_split(const StarScheme& x) {
    ResidualSplit out{StarScheme(x.t() - 1), 0};
    for (int m = 2; m <= 4; ++m) out.unreduced.set_off_h(m, x.off_h(m));
    for (const auto& g : x.on_h()) {
        const VirtualComponent r = g.component.residual();
        if (r.exhausted()) continue;
        if (r.is_simple_point())
            out.simple_points += g.count;
        else
            out.unreduced.add_on_h(r, g.count);
    }
    return out;
}

bool InductionStep::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const char* to_string(TraceStatus s) { return s == TraceStatus::Verified ? "Verified" : "Failed"; }

namespace {

Check le(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, "<=", lhs, rhs, lhs <= rhs}; }
Check ge(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, ">=", lhs, rhs, lhs >= rhs}; }
Check eq(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, "==", lhs, rhs, lhs == rhs}; }
Check lt(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, "<", lhs, rhs, lhs < rhs}; }
Check gt(const char* name, std::int64_t lhs, std::int64_t rhs) { return {name, ">", lhs, rhs, lhs > rhs}; }

// binom(s+3,3) + 2(13 - s) - binom(16,3); vanishes at s = 13.
std::int64_t f_bound(std::int64_t s) { return choose3(s + 3) + 2 * (13 - s) - choose3(16); }

// Checks behind the type II conclusion at degree t. Each hyperplane trace of
// the residual chain must fit the plane bound for its degree, and the pile
// must be gone after four residuals.
void type2_checks(const StarScheme& x, const Degeneration& deg, std::int64_t alpha, std::vector<Check>& checks) {
    const int t = x.t();
    checks.push_back(ge("type2-degree>=13", t, 13));
    checks.push_back(lt("type2-trace-deficit", deg.trace_degree, choose2(t + 2)));
    checks.push_back(eq("type2-all-on-H", x.off_h_total(), 0));
    const std::int64_t left = deg.remaining_off_h[2] + deg.remaining_off_h[3] + deg.remaining_off_h[4];
    checks.push_back(le("type2-leftover<=2", left, 2));
    if (left > 0) checks.push_back(lt("type2-leftover<beta", left, deg.beta));

    static constexpr const char* kTraceNames[4] = {"trace-1", "trace-2", "trace-3", "trace-4"};
    std::int64_t bound_sum = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const std::int64_t bound = choose2(t + 2 - static_cast<std::int64_t>(k));
        bound_sum += bound;
        checks.push_back(le(kTraceNames[k], x.layer_degree(k), bound));
    }
    int max_third = 0, max_fourth = 0;
    bool beyond_four = false;
    for (const auto& g : x.on_h()) {
        const auto layers = g.component.layer_multiplicities();
        if (layers.size() > 2) max_third = std::max<int>(max_third, layers[2]);
        if (layers.size() > 3) max_fourth = std::max<int>(max_fourth, layers[3]);
        if (layers.size() > 4) beyond_four = true;
    }
    checks.push_back(le("trace-3-max-multiplicity<=3", max_third, 3));
    checks.push_back(le("trace-4-max-multiplicity<=2", max_fourth, 2));
    checks.push_back(eq("empty-after-four-residuals", beyond_four ? 1 : 0, 0));
    checks.push_back(ge("plane-degree-t-1>=12", t - 1, 12));
    checks.push_back(ge("plane-degree-t-2>=9", t - 2, 9));
    checks.push_back(ge("plane-degree-t-3>=5", t - 3, 5));
    checks.push_back(le("stima-layers", alpha, bound_sum));
    checks.push_back(le("stima-cubic", bound_sum, choose3(t + 3)));

    // Res_H(X) again has everything on H; at degree t-1 it must not fill its trace.
    const ResidualSplit res = residual_split(x);
    StarScheme next = res.unreduced;
    next.set_simple_points_on_h(next.simple_points_on_h() + res.simple_points);
    const std::int64_t next_cap = choose2(t + 1);
    checks.push_back(le("residual-condizione", next.trace_degree(), next_cap));
    if (next.trace_degree() <= next_cap) {
        const Degeneration again = degenerate(next);
        checks.push_back(eq("residual-type-II", again.type == DegenerationType::TypeII ? 1 : 0, 1));
    }
}

}  // namespace

InductionTrace run_induction(int d, std::int64_t x, std::int64_t y, std::int64_t z) {
    if (d < 41) throw std::invalid_argument("run_induction requires d >= 41");
    if (d > kMaxInductionDegree) throw std::invalid_argument("run_induction: degree too large");
    if (x < 0 || y < 0 || z < 0) throw std::invalid_argument("component counts must be >= 0");
    const std::int64_t N = choose3(d + 3);
    const std::int64_t eps = N - 20 * x - 10 * y - 4 * z;
    if (eps < kEpsilonMin || eps > kEpsilonMax)
        throw std::invalid_argument("epsilon(d,x,y,z) = " + std::to_string(eps) + " is outside [-19, 3]");

    InductionTrace trace;
    trace.d = d;
    trace.triple = {x, y, z};
    trace.epsilon = eps;
    const std::int64_t components = x + y + z;

    auto& global = trace.global_checks;
    // at least ceil((binom(d+3,3) - 3) / 20) components
    global.push_back(ge("numcomponenti", components, (N - 3 + 19) / 20));
    // binom(d+3,3)/20 - 3/20 - 19 >= 2(d-13) + binom(16,3), times 20
    global.push_back(ge("bah", N - 3 - 380, 40 * (static_cast<std::int64_t>(d) - 13) + 20 * choose3(16)));

    StarScheme current(d);
    current.set_off_h(4, x);
    current.set_off_h(3, y);
    current.set_off_h(2, z);

    std::int64_t gamma = 0;
    std::int64_t w = 0;
    std::int64_t z_sum = 0;
    std::int64_t final_alpha = 0;
    bool reached_type2 = false;

    for (int t = d; t >= 1; --t) {
        InductionStep step;
        step.t = t;
        step.alpha = current.degree();
        auto& checks = step.checks;

        const std::int64_t cap = choose2(t + 2);
        checks.push_back(ge("condizione", cap - current.trace_degree(), 0));
        if (!checks.back().passed) {
            trace.steps.push_back(std::move(step));
            break;
        }
        const Degeneration deg = degenerate(current);
        step.beta_condition = deg.beta_condition;
        step.beta = deg.beta;
        step.efg = deg.efg;
        step.type = deg.type;
        step.differential = deg.differential;
        step.plain = deg.plain;
        checks.push_back(le("caldo", deg.residual_trace_degree, choose2(t + 1)));

        if (deg.type == DegenerationType::TypeII) {
            step.gamma = gamma;
            type2_checks(deg.specialized, deg, step.alpha, checks);
            final_alpha = step.alpha;
            reached_type2 = true;
            trace.type2_degree = t;
            trace.steps.push_back(std::move(step));
            break;
        }

        checks.push_back(ge("type1-degree>=12", t, 12));
        checks.push_back(eq("type1-fill", deg.trace_degree, cap));
        gamma += deg.trace_one_applications;
        ++w;
        step.gamma = gamma;
        checks.push_back(le("gamma<=2w", gamma, 2 * w));

        const ResidualSplit res = residual_split(deg.specialized);
        step.z = res.simple_points;
        z_sum += res.simple_points;
        const std::int64_t alpha_next = res.unreduced.degree();

        const std::int64_t delta_def = std::max<std::int64_t>(0, choose3(t + 2) - (alpha_next + res.simple_points));
        const std::int64_t delta_alt = std::max<std::int64_t>(0, choose3(t + 3) - step.alpha);
        step.delta = delta_def;
        checks.push_back(eq("delta-identity", delta_def, delta_alt));
        // deg(Res_H(Y_{t-1})) >= binom(t+1,3) - delta_t
        checks.push_back(ge("claim-c-degree", alpha_next - res.unreduced.trace_degree(), choose3(t + 1) - delta_def));

        // ledger after w type I steps, now at degree d - w
        const std::int64_t top = choose3(static_cast<std::int64_t>(d) - w + 3);
        checks.push_back(eq("alfa", alpha_next, top - eps - z_sum));
        checks.push_back(ge("stima", 3 * z_sum, 3 * components - 6 * w - alpha_next));
        checks.push_back(ge("altra-stima", 2 * z_sum, 3 * components - 6 * w - top + eps));

        const bool ok = step.passed();
        trace.steps.push_back(std::move(step));
        if (!ok) break;
        current = res.unreduced;
    }

    const std::int64_t v = w;
    trace.type1_steps = v;
    const bool steps_ok = std::all_of(trace.steps.begin(), trace.steps.end(),
                                      [](const InductionStep& s) { return s.passed(); });
    if (steps_ok && reached_type2) {
        // altra-stima at w = d against the closed form, both times 40
        const std::int64_t rhs_tre = 3 * N - 120 * static_cast<std::int64_t>(d) - 409;
        global.push_back(ge("stima-tre", 60 * components - 120 * static_cast<std::int64_t>(d) - 20 + 20 * eps, rhs_tre));
        global.push_back(gt("stima-tre>17", rhs_tre, 17 * 40));
        global.push_back(le("v<=d", v, d));
        const std::int64_t s = d - v;
        const std::int64_t b = choose3(s + 3);
        // deg X_{d-v} <= -eps + binom(d+3-v,3) - N/20 + 3/20 + 2v + deg/3, times 60
        global.push_back(le("degree-chain", 60 * final_alpha,
                            -60 * eps + 60 * b - 3 * N + 9 + 120 * v + 20 * final_alpha));
        // 19 + binom(d+3-v,3) - N/20 + 3/20 + 2v <= f(d-v), times 20
        global.push_back(le("f-chain", 380 + 20 * b - N + 3 + 40 * v, 20 * f_bound(s)));
        global.push_back(ge("f(d-v)>=0", f_bound(s), 0));
        global.push_back(eq("f(13)==0", f_bound(13), 0));
        bool monotone = true;
        for (std::int64_t k = 0; k < d && monotone; ++k) monotone = f_bound(k + 1) >= f_bound(k);
        global.push_back(eq("f-nondecreasing", monotone ? 1 : 0, 1));
        global.push_back(ge("d-v>=13", s, 13));
    }

    for (const auto& c : global)
        if (!c.passed) {
            trace.failure = std::string("global: ") + c.name;
            break;
        }
    if (trace.failure.empty())
        for (const auto& s : trace.steps)
            for (const auto& c : s.checks)
                if (!c.passed && trace.failure.empty()) trace.failure = "t=" + std::to_string(s.t) + ": " + c.name;
    if (trace.failure.empty() && !reached_type2) trace.failure = "type II never reached";
    trace.status = trace.failure.empty() ? TraceStatus::Verified : TraceStatus::Failed;
    return trace;
}

}  // namespace postulate::horace
