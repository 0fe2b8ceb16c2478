#pragma once

// Horace-differential bookkeeping for unions of 2-, 3- and 4-points of P^3
// specialized onto a fixed plane H, plus a verifier for the descending
// induction on the degree.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "postulate/scheme.hpp"

namespace postulate::horace {

// Degree bound for run_induction; keeps every binomial inside int64.
inline constexpr int kMaxInductionDegree = 100000;

constexpr std::int64_t choose2(std::int64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }
constexpr std::int64_t choose3(std::int64_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

// A fat point of H, recorded by its multiplicity.
struct Layer {
    int multiplicity = 1;

    // Length as a fat point of P^{hyperplane_dim}; in the plane 1, 3, 6, 10 for m = 1..4.
    std::int64_t length(int hyperplane_dim = 2) const { return fat_point_length(hyperplane_dim, multiplicity); }
    auto operator<=>(const Layer&) const = default;
};

// The six differential trace/residual splittings of a 2-, 3- or 4-point.
// Listed by the lengths of successive traces on H:
//   I (1,3)  II (1,6,3)  III (3,6,1)  IV (1,10,6,3)  V (3,10,6,1)  VI (6,10,3,1)
enum class DifferentialCase : std::uint8_t { I, II, III, IV, V, VI };

inline constexpr std::array<DifferentialCase, 6> kAllDifferentialCases = {
    DifferentialCase::I,  DifferentialCase::II, DifferentialCase::III,
    DifferentialCase::IV, DifferentialCase::V,  DifferentialCase::VI};

const char* to_string(DifferentialCase c);
// Multiplicity of the fat point of P^3 the case applies to.
int ambient_multiplicity(DifferentialCase c);
// Length of the differential trace (first layer).
std::int64_t differential_trace_length(DifferentialCase c);

enum class Origin : std::uint8_t { PlainOnH, Differential };

// Ordered pile of layers on H; the first layer is the current trace.
class VirtualComponent {
public:
    static constexpr std::size_t kMaxLayers = 8;

    // The empty pile.
    VirtualComponent() = default;

    // m-point of P^3 supported on H: layers (m, m-1, ..., 1).
    static VirtualComponent plain_on_hyperplane(int m);
    static VirtualComponent differential(DifferentialCase c);

    Origin origin() const { return origin_; }
    std::optional<DifferentialCase> differential_case() const;
    std::span<const std::uint8_t> layer_multiplicities() const { return {layers_.data(), size_}; }
    std::vector<Layer> layers() const;
    std::size_t layer_count() const { return size_; }
    bool exhausted() const { return size_ == 0; }
    // True for a single reduced point of H.
    bool is_simple_point() const { return size_ == 1 && layers_[0] == 1; }

    std::int64_t layer_length(std::size_t i) const;
    std::int64_t trace_length() const { return layer_length(0); }
    std::int64_t total_length() const;

    // Drops the first layer. Throws std::invalid_argument when exhausted.
    VirtualComponent residual() const;

    bool operator==(const VirtualComponent&) const = default;
    auto operator<=>(const VirtualComponent&) const = default;

private:
    std::array<std::uint8_t, kMaxLayers> layers_{};
    std::uint8_t size_ = 0;
    Origin origin_ = Origin::PlainOnH;
    DifferentialCase case_ = DifferentialCase::I;
};

struct TraceResidual {
    std::int64_t trace_length = 0;
    VirtualComponent residual;
};

// Throws std::invalid_argument for an exhausted component.
TraceResidual trace_and_residual(const VirtualComponent& component);

struct PlainTraceResidual {
    std::int64_t trace_length = 0;
    int residual_multiplicity = 0;  // 0 means empty
};

// m-point of P^n on a hyperplane: trace is an m-point of P^{n-1}, residual an (m-1)-point.
PlainTraceResidual trace_and_residual_plain(int n, int m);

struct ComponentGroup {
    VirtualComponent component;
    std::int64_t count = 0;

    bool operator==(const ComponentGroup&) const = default;
};

// Scheme of type (*) in P^3 at degree t: plain 2/3/4-points off H plus plain
// or virtual components on H. Simple points of H are kept as a bare count.
class StarScheme {
public:
    explicit StarScheme(int t = 0) : t_(t) {}

    int t() const { return t_; }
    void set_t(int t) { t_ = t; }

    // off_h(m) for m in {2,3,4}.
    std::int64_t off_h(int m) const { return off_h_.at(m); }
    void set_off_h(int m, std::int64_t count);
    std::int64_t off_h_total() const { return off_h_[2] + off_h_[3] + off_h_[4]; }

    std::int64_t simple_points_on_h() const { return simple_; }
    void set_simple_points_on_h(std::int64_t z);

    const std::vector<ComponentGroup>& on_h() const { return on_h_; }
    void add_on_h(const VirtualComponent& c, std::int64_t count = 1);

    std::int64_t degree() const;
    // deg(Y cap H).
    std::int64_t trace_degree() const { return layer_degree(0); }
    // Total length of the i-th layers of all on-H components (simple points count for i = 0).
    std::int64_t layer_degree(std::size_t i) const;

    bool operator==(const StarScheme&) const = default;

private:
    int t_;
    std::array<std::int64_t, 5> off_h_{};
    std::int64_t simple_ = 0;
    std::vector<ComponentGroup> on_h_;  // sorted by component, no duplicates
};

struct BetaTriple {
    int e = 0;
    int f = 0;
    int g = 0;

    int value() const { return 6 * e + 3 * f + g; }
    auto operator<=>(const BetaTriple&) const = default;
};

// The ten admissible (e,f,g), ordered by 6e+3f+g = 0..9.
inline constexpr std::array<BetaTriple, 10> kBetaTriples = {{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 0}, {0, 1, 1},
                                                             {0, 1, 2}, {1, 0, 0}, {1, 0, 1}, {1, 0, 2}, {1, 1, 0}}};

// Throws std::invalid_argument outside [0, 9].
BetaTriple decompose_beta(int beta);

enum class LemmaOutcome { Holds, Fails, HypothesisNotMet };

const char* to_string(LemmaOutcome o);

// Numeric lemma: with 10a+6b+3c+u+6e+3f+g <= binom(t+2,2) and t above the
// threshold for (e,f,g) (14; 12 if e+f+g <= 2; 3 if e=f=g=0), checks
// 6a+3b+c+10(e+f+g) <= binom(t+1,2). Throws std::invalid_argument for
// negative inputs or an inadmissible (e,f,g).
LemmaOutcome lemma_c1_check(std::int64_t t, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t u,
                            int e, int f, int g);
int lemma_c1_threshold(int e, int f, int g);

// Simple points of H: returns gamma when h0_y <= gamma + z and h0_res_y <= gamma.
std::optional<std::int64_t> lemma_2_4_bound(std::int64_t h0_y, std::int64_t h0_res_y, std::int64_t gamma,
                                            std::int64_t z);

struct KnapsackChoice {
    std::int64_t n2 = 0;
    std::int64_t n3 = 0;
    std::int64_t n4 = 0;

    std::int64_t filled() const { return 3 * n2 + 6 * n3 + 10 * n4; }
    bool operator==(const KnapsackChoice&) const = default;
};

// Bounded knapsack over plane traces {3, 6, 10}: maximizes the filled length
// <= capacity using at most c2, c3, c4 items; among optimal fills the
// lexicographically largest (n4, n3).
KnapsackChoice max_trace_fill(std::int64_t capacity, std::int64_t c2, std::int64_t c3, std::int64_t c4);

enum class DegenerationType { TypeI, TypeII };

const char* to_string(DegenerationType t);

struct Specialization {
    DifferentialCase dcase;
    std::int64_t count = 0;
};

struct Degeneration {
    DegenerationType type = DegenerationType::TypeI;
    StarScheme specialized;                // X
    std::int64_t beta_condition = 0;       // binom(t+2,2) - deg(Y cap H) before specializing
    std::int64_t beta = 0;                 // after the knapsack
    BetaTriple efg;                        // meaningful when beta <= 9
    KnapsackChoice plain;                  // components moved onto H unchanged
    std::array<std::int64_t, 5> remaining_off_h{};  // c_m left off H after the knapsack
    std::vector<Specialization> differential;
    std::int64_t trace_degree = 0;           // deg(X cap H)
    std::int64_t residual_trace_degree = 0;  // deg(Res_H(X) cap H)
    std::int64_t trace_one_applications = 0; // uses of (1,3), (1,6,3), (1,10,6,3)
};

// Specializes Y to X. Throws std::invalid_argument when deg(Y cap H) > binom(t+2,2).
Degeneration degenerate(const StarScheme& y);

struct ResidualSplit {
    StarScheme unreduced;       // Y_{t-1}
    std::int64_t simple_points; // #Z_{t-1}
};

// Res_H(X) = Y_{t-1} u Z_{t-1}.
ResidualSplit residual_split(const StarScheme& x);

struct Check {
    const char* name = "";
    const char* relation = "<=";  // lhs relation rhs
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool passed = true;
};

struct InductionStep {
    int t = 0;
    std::int64_t alpha = 0;           // deg(Y_t)
    std::int64_t beta_condition = 0;
    std::int64_t beta = 0;
    BetaTriple efg;
    DegenerationType type = DegenerationType::TypeI;
    std::int64_t z = 0;               // simple points split off into Z_{t-1} (TypeI only)
    std::int64_t delta = 0;           // delta_t (TypeI only)
    std::int64_t gamma = 0;           // running count of trace-one differential splittings
    std::vector<Specialization> differential;
    KnapsackChoice plain;
    std::vector<Check> checks;

    bool passed() const;
};

enum class TraceStatus { Verified, Failed };

const char* to_string(TraceStatus s);

struct InductionTrace {
    int d = 0;
    Triple triple;
    std::int64_t epsilon = 0;
    std::vector<InductionStep> steps;
    std::vector<Check> global_checks;
    TraceStatus status = TraceStatus::Failed;
    int type2_degree = -1;        // t at which type II was reached
    std::int64_t type1_steps = 0; // v
    std::string failure;          // "t=<t>: <check>" or "global: <check>"
};

// Throws std::invalid_argument unless 41 <= d <= kMaxInductionDegree and
// -19 <= epsilon(d,x,y,z) <= 3.
InductionTrace run_induction(int d, std::int64_t x, std::int64_t y, std::int64_t z);

}  // namespace postulate::horace
