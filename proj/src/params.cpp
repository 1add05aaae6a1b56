#include "neon/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "neon/tree.hpp"

namespace neon {

namespace {

std::uint64_t ceil_positive(double x) {
    if (!(x > 0) || !std::isfinite(x))
        throw std::invalid_argument("ceil_positive: non-finite or non-positive value");
    return static_cast<std::uint64_t>(std::ceil(x));
}

} // namespace

std::uint32_t SchemeParams::leaf_level() const { return ilog2(n_items); }

double SchemeParams::alpha() const {
    if (k_max <= 1) return 0.0;
    return std::log(static_cast<double>(k_max)) / std::log(static_cast<double>(n_items));
}

SchemeParams derive_noiseless_params(std::uint64_t n_items, std::uint64_t k_max,
                                     std::uint32_t circles, std::uint32_t b,
                                     double epsilon, double eta, double rho,
                                     const NoiselessOverrides& overrides) {
    if (!is_pow2(n_items) || n_items < 2)
        throw std::invalid_argument("derive_noiseless_params: N must be a power of two >= 2");
    if (k_max < 1 || k_max > n_items)
        throw std::invalid_argument("derive_noiseless_params: require 1 <= K <= N");
    if (circles < 1 || b < 1)
        throw std::invalid_argument("derive_noiseless_params: require C >= 1 and b >= 1");
    if (!(epsilon > 0) || !(epsilon < 0.25))
        throw std::invalid_argument(
            "derive_noiseless_params: require 0 < epsilon < 1/4 (zeta undefined otherwise)");
    if (!(eta > 0))
        throw std::invalid_argument("derive_noiseless_params: require eta > 0");
    if (rho < 0 || rho >= 1)
        throw std::invalid_argument("derive_noiseless_params: require 0 <= rho < 1");

    SchemeParams p;
    p.n_items = n_items;
    p.k_max = k_max;
    p.local_bound = std::max<std::uint32_t>(1, ilog2(k_max));
    p.circles = circles;
    p.b = b;
    p.epsilon = epsilon;
    p.eta = eta;
    p.rho = rho;
    p.delta = std::exp(static_cast<double>(b) + 2.0);
    p.lambda = overrides.lambda.value_or(circles * p.delta);
    const double log_term = std::log(2.0 - 4.0 * epsilon);
    p.zeta = overrides.zeta.value_or(1.0 / (log_term * log_term));
    p.blocks = ceil_positive(p.lambda * static_cast<double>(k_max) / p.local_bound);
    p.block_rows = ceil_positive(p.zeta * p.local_bound * p.leaf_level());
    return p;
}

std::uint32_t NoisyParams::leaf_level() const { return ilog2(n_items); }

std::uint32_t NoisyParams::start_level() const { return ilog2(k_max) + 1; }

std::uint64_t NoisyParams::tests_per_bank() const {
    return ceil_positive(zeta * static_cast<double>(k_max));
}

NoisyParams derive_noisy_params(NoisyMode mode, std::uint64_t n_items, std::uint64_t k_max,
                                double zeta, std::uint32_t reps, double epsilon,
                                double rho, double rho_prime, double c_double_prime,
                                const NoisyOverrides& overrides) {
    if (!is_pow2(n_items) || !is_pow2(k_max))
        throw std::invalid_argument("derive_noisy_params: N and K must be powers of two");
    if (k_max >= n_items)
        throw std::invalid_argument("derive_noisy_params: require K < N");
    if (reps < 1)
        throw std::invalid_argument("derive_noisy_params: require C' >= 1");
    if (!(zeta > 0))
        throw std::invalid_argument("derive_noisy_params: require zeta > 0");
    if (!(epsilon > 0))
        throw std::invalid_argument("derive_noisy_params: require epsilon > 0");
    if (rho < 0 || rho >= 1 || rho_prime < 0 || rho_prime >= 1)
        throw std::invalid_argument("derive_noisy_params: flip rates must lie in [0, 1)");
    if (mode == NoisyMode::bsc && rho != rho_prime)
        throw std::invalid_argument("derive_noisy_params: BSC requires rho == rho_prime");
    if (mode == NoisyMode::bac && !(c_double_prime > 0))
        throw std::invalid_argument("derive_noisy_params: BAC requires C'' > 0");

    NoisyParams p;
    p.mode = mode;
    p.n_items = n_items;
    p.k_max = k_max;
    p.zeta = zeta;
    p.reps = reps;
    p.epsilon = epsilon;
    p.rho = rho;
    p.rho_prime = rho_prime;
    p.c_double_prime = c_double_prime;

    const double log2_k = static_cast<double>(ilog2(k_max));
    const std::uint32_t derived_r =
        std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(epsilon * log2_k)));
    p.subtree_depth = overrides.subtree_depth.value_or(derived_r);
    if (p.subtree_depth < 1)
        throw std::invalid_argument("derive_noisy_params: require r >= 1");

    if (mode == NoisyMode::bsc) {
        p.extra_levels = derived_r;
    } else {
        p.extra_levels = std::max<std::uint64_t>(
            1, ceil_positive(c_double_prime * std::log(static_cast<double>(k_max))));
    }
    p.omega = overrides.omega.value_or(1.0 + 2.0 * epsilon);
    p.beta = overrides.beta.value_or(1.0);
    return p;
}

std::string_view relation_symbol(Relation rel) {
    switch (rel) {
    case Relation::less: return "<";
    case Relation::less_equal: return "<=";
    case Relation::greater: return ">";
    case Relation::greater_equal: return ">=";
    }
    return "?";
}

bool relation_holds(double lhs, Relation rel, double rhs) {
    switch (rel) {
    case Relation::less: return lhs < rhs;
    case Relation::less_equal: return lhs <= rhs;
    case Relation::greater: return lhs > rhs;
    case Relation::greater_equal: return lhs >= rhs;
    }
    return false;
}

bool ConstraintReport::all_satisfied() const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [](const Constraint& c) { return c.satisfied; });
}

const Constraint* ConstraintReport::find(std::string_view name) const {
    for (const auto& c : constraints)
        if (c.name == name) return &c;
    return nullptr;
}

double ConstraintReport::exponent(std::string_view name) const {
    for (const auto& [n, v] : exponents)
        if (n == name) return v;
    throw std::out_of_range("ConstraintReport: unknown exponent name");
}

void ConstraintReport::add(std::string name, double lhs, Relation rel, double rhs) {
    constraints.push_back(Constraint{std::move(name), lhs, rel, rhs, relation_holds(lhs, rel, rhs)});
}

void ConstraintReport::add_exponent(std::string name, double value) {
    exponents.emplace_back(std::move(name), value);
}

RegimeReport regime_check(const SchemeParams& params) {
    RegimeReport r;
    r.exponent = 1.0 - 2.0 * (1.0 + params.eta) / params.circles;
    r.bound = std::pow(static_cast<double>(params.n_items), r.exponent);
    r.slack = r.bound / static_cast<double>(params.k_max);
    r.satisfied = static_cast<double>(params.k_max) <= r.bound;
    r.unsatisfiable = r.exponent <= 0;
    return r;
}

OverflowBound block_overflow_bound(const SchemeParams& params) {
    // delta == e makes the loose bound vacuous (exactly 1); still reported
    const double d = params.delta;
    const double k = params.local_bound;
    OverflowBound ob;
    // exponentiate via logs; delta^delta overflows double for b >= 5 otherwise
    const double ln_tight = (k / d) * ((d - 1.0) - d * std::log(d));
    ob.tight = std::exp(ln_tight);
    ob.loose = std::exp(k * (1.0 - std::log(d)));
    return ob;
}

double effective_zeta(double zeta, double rho) {
    if (!(zeta > 0))
        throw std::invalid_argument("effective_zeta: require zeta > 0");
    if (rho < 0 || rho >= 1)
        throw std::invalid_argument("effective_zeta: require 0 <= rho < 1");
    return zeta / (zeta * rho - rho + 1.0);
}

std::optional<double> min_zeta_for_effective_target(double target, double rho) {
    // zeta' >= target  <=>  zeta (1 - target rho) >= target (1 - rho)
    const double coeff = 1.0 - target * rho;
    if (coeff <= 0) return std::nullopt;
    return target * (1.0 - rho) / coeff;
}

std::optional<std::uint64_t> min_integer_zeta_for_effective_target(double target, double rho) {
    const auto raw = min_zeta_for_effective_target(target, rho);
    if (!raw) return std::nullopt;
    auto z = static_cast<std::uint64_t>(std::ceil(*raw - 1e-9));
    if (z < 1) z = 1;
    // ceil on a float boundary can land one short; nudge until it holds
    while (effective_zeta(static_cast<double>(z), rho) < target - 1e-9) ++z;
    return z;
}

ConstraintReport validate_fpc(const SchemeParams& params) {
    if (!(params.rho > 0))
        throw std::invalid_argument("validate_fpc: FPC mode requires rho > 0");
    ConstraintReport report;
    const double log_term = std::log(2.0 - 4.0 * params.epsilon);
    const double target = 1.0 / (log_term * log_term);
    const double zp = effective_zeta(params.zeta, params.rho);
    // worked parameter sets sit exactly on the boundary; comparisons carry a
    // 1e-9 slack baked into the stored rhs so the report stays re-evaluable
    report.add("fpc.zeta_log_sq_ge_denominator", params.zeta * log_term * log_term,
               Relation::greater_equal, params.zeta * params.rho - params.rho + 1.0 - 1e-9);
    report.add("fpc.effective_zeta_ge_target", zp, Relation::greater_equal, target - 1e-9);
    report.add_exponent("effective_zeta", zp);
    report.add_exponent("target_zeta", target);
    return report;
}

ConstraintReport validate_bsc(const NoisyParams& params) {
    if (params.mode != NoisyMode::bsc)
        throw std::invalid_argument("validate_bsc: params are not in BSC mode");
    ConstraintReport report;
    const double miss = params.rho + 1.0 / params.zeta;
    const double c_prime = params.reps;
    report.add("bsc.majority_vote_decays", 2.0 * std::exp(1.0) * miss, Relation::less, 1.0);

    // (eps C'/4)(log2(rho + 1/zeta) + log2(2e)(C'+2)/C') < -(1 + 2 eps)
    const double lhs = (params.epsilon * c_prime / 4.0) *
                       (std::log2(miss) + std::log2(2.0 * std::exp(1.0)) * (c_prime + 2.0) / c_prime);
    report.add("bsc.false_path_exponent", lhs, Relation::less, -(1.0 + 2.0 * params.epsilon));

    const double nu = lhs + 1.0 + 2.0 * params.epsilon;
    const double p_prime = std::pow(2.0 * std::exp(1.0) * params.rho_prime, c_prime / 2.0);
    report.add_exponent("nu", nu);
    report.add_exponent("p_prime", p_prime);
    report.add_exponent("false_positive_budget",
                        std::pow(static_cast<double>(params.k_max), params.omega));
    return report;
}

ConstraintReport validate_bac(const NoisyParams& params) {
    if (params.mode != NoisyMode::bac)
        throw std::invalid_argument("validate_bac: params are not in BAC mode");
    ConstraintReport report;
    const double e1 = std::exp(1.0);
    const double miss = params.rho + 1.0 / params.zeta;
    const double c_prime = params.reps;
    const double r = params.subtree_depth;

    const double rho_prime_bound =
        params.beta * std::pow(static_cast<double>(params.k_max), -params.epsilon);
    report.add("bac.rho_prime_le_beta_k_eps", params.rho_prime, Relation::less_equal,
               rho_prime_bound);
    report.add("bac.majority_vote_decays", 2.0 * e1 * miss, Relation::less, 1.0);

    const double p0 = std::pow(2.0 * e1, r / 2.0) * std::pow(miss, c_prime * r / 4.0);
    report.add("bac.survivor_generating_premise", std::pow(1.0 + p0, std::exp2(r)),
               Relation::less, 2.0);
    report.add("bac.chain_budget", c_prime * params.epsilon * r, Relation::greater, 4.0);

    const double nu2 = (params.c_double_prime / 2.0) * std::log(2.0 * e1 * p0) + 1.0;
    report.add("bac.final_chain_exponent", nu2, Relation::less, 0.0);

    report.add_exponent("p0", p0);
    report.add_exponent("nu1", 1.0 - c_prime * params.epsilon * r / 4.0);
    report.add_exponent("nu2", nu2);
    report.add_exponent("false_positive_budget",
                        std::pow(static_cast<double>(params.k_max), params.omega));
    return report;
}

ConstraintReport validate_scheme(const SchemeParams& params) {
    ConstraintReport report;
    report.add("scheme.blocks_ge_circles", static_cast<double>(params.blocks),
               Relation::greater_equal, static_cast<double>(params.circles));
    report.add("scheme.delta_gt_e", params.delta, Relation::greater, std::exp(1.0));
    report.add("scheme.zeta_positive", params.zeta, Relation::greater, 0.0);
    report.add_exponent("alpha", params.alpha());
    const OverflowBound ob = block_overflow_bound(params);
    report.add_exponent("block_overflow_q", ob.tight);
    report.add_exponent("block_overflow_loose", ob.loose);
    return report;
}

} // namespace neon
