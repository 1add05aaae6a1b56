#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace neon {

// Parameters of the noiseless / false-positive-channel scheme. Raw inputs
// are N, K, C, b, epsilon, eta, rho; everything else is derived (with
// optional overrides for zeta and lambda, used by desk-scale empirical runs
// where the theorem constants would dwarf N).
struct SchemeParams {
    std::uint64_t n_items = 0;    // N, power of two
    std::uint64_t k_max = 0;      // K, defective upper bound
    std::uint32_t local_bound = 1; // k = max(1, floor(log2 K))
    std::uint32_t circles = 1;    // C, blocks each item participates in
    double delta = 0;             // e^{b+2}
    double lambda = 0;            // C * delta unless overridden
    double zeta = 0;              // (ln(2-4eps))^-2 unless overridden
    double epsilon = 0;
    double eta = 0;
    std::uint32_t b = 1;
    std::uint64_t blocks = 0;     // ceil(lambda K / k) vertical copies of B
    std::uint64_t block_rows = 0; // ceil(zeta k log2 N), closed form only;
                                  // designs always count rows structurally
    double rho = 0;               // 0 -> noiseless, >0 -> FPC

    std::uint32_t leaf_level() const; // log2 N
    // alpha diagnostic: log K / log N (regime classifier, never an input)
    double alpha() const;
};

struct NoiselessOverrides {
    std::optional<double> zeta;
    std::optional<double> lambda;
};

SchemeParams derive_noiseless_params(std::uint64_t n_items, std::uint64_t k_max,
                                     std::uint32_t circles, std::uint32_t b,
                                     double epsilon, double eta, double rho,
                                     const NoiselessOverrides& overrides = {});

enum class NoisyMode { bsc, bac };

// Parameters of the repeated-test schemes with false negatives.
struct NoisyParams {
    std::uint64_t n_items = 0; // N, power of two
    std::uint64_t k_max = 0;   // K, power of two
    double zeta = 0;           // tests per level = ceil(zeta K) per repetition
    std::uint32_t reps = 1;    // C', repetitions per level
    double epsilon = 0;
    std::uint32_t subtree_depth = 1; // r, scan depth per decoding step
    std::uint32_t extra_levels = 1;  // r' non-branching chain levels
    double c_double_prime = 0;       // C'' (BAC only)
    double rho = 0;
    double rho_prime = 0;
    double omega = 1; // survivor-cap exponent; reporting only, never a gate
    double beta = 1;  // recorded constant for the BAC premise rho' <= beta K^-eps
    NoisyMode mode = NoisyMode::bsc;

    std::uint32_t leaf_level() const;
    std::uint32_t start_level() const; // log2 K + 1, first tested level
    std::uint64_t tests_per_bank() const; // ceil(zeta K)
};

struct NoisyOverrides {
    std::optional<std::uint32_t> subtree_depth; // r
    std::optional<double> omega;
    std::optional<double> beta;
};

// BSC: r = r' = max(1, ceil(epsilon log2 K)). BAC: r is a caller-chosen
// constant, r' = max(1, ceil(c_double_prime * ln K)).
NoisyParams derive_noisy_params(NoisyMode mode, std::uint64_t n_items, std::uint64_t k_max,
                                double zeta, std::uint32_t reps, double epsilon,
                                double rho, double rho_prime, double c_double_prime = 0,
                                const NoisyOverrides& overrides = {});

enum class Relation { less, less_equal, greater, greater_equal };

std::string_view relation_symbol(Relation rel);
bool relation_holds(double lhs, Relation rel, double rhs);

// One named inequality with both sides stored, so a report can always be
// re-evaluated from its own numbers.
struct Constraint {
    std::string name;
    double lhs = 0;
    Relation rel = Relation::less;
    double rhs = 0;
    bool satisfied = false;
};

struct ConstraintReport {
    std::vector<Constraint> constraints;
    std::vector<std::pair<std::string, double>> exponents;

    bool all_satisfied() const;
    const Constraint* find(std::string_view name) const;
    double exponent(std::string_view name) const;

    void add(std::string name, double lhs, Relation rel, double rhs);
    void add_exponent(std::string name, double value);
};

struct RegimeReport {
    double exponent = 0;    // 1 - 2(1+eta)/C
    double bound = 0;       // N^exponent
    double slack = 0;       // bound / K
    bool satisfied = false; // K <= bound
    bool unsatisfiable = false; // exponent <= 0 (hopeless for K > 1)
};

// Finite-size proxy for the sparse-regime requirement; a flag, not an error.
RegimeReport regime_check(const SchemeParams& params);

struct OverflowBound {
    double tight = 0; // (e^{delta-1}/delta^delta)^{k/delta}
    double loose = 0; // (e/delta)^k
};

// Chernoff bound on a block intersecting more than k circled defectives.
OverflowBound block_overflow_bound(const SchemeParams& params);

// zeta' = zeta / (zeta rho - rho + 1); the noise-degraded effective constant.
double effective_zeta(double zeta, double rho);

// Smallest real zeta with effective_zeta(zeta, rho) >= target, if any.
std::optional<double> min_zeta_for_effective_target(double target, double rho);
// Smallest integer zeta satisfying the same, with 1e-9 slack on the target.
std::optional<std::uint64_t> min_integer_zeta_for_effective_target(double target, double rho);

// FPC feasibility: zeta ln(2-4eps)^2 >= zeta rho - rho + 1, equivalently
// zeta' >= (ln(2-4eps))^-2.
ConstraintReport validate_fpc(const SchemeParams& params);

// BSC hypotheses plus nu, p'.
ConstraintReport validate_bsc(const NoisyParams& params);

// BAC hypotheses plus nu1, nu2, p0.
ConstraintReport validate_bac(const NoisyParams& params);

// Structural sanity of derived noiseless params (blocks >= circles, delta > e,
// zeta > 0). Returned as a report so strict mode can decide what to do.
ConstraintReport validate_scheme(const SchemeParams& params);

} // namespace neon
