#include "collectorlab/planner.hpp"

#include <algorithm>
#include <cmath>

#include "collectorlab/errors.hpp"
#include "collectorlab/exact_moments.hpp"

namespace collectorlab {

namespace {

void require_probability(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("target probability q must lie in (0, 1)");
}

}  // namespace

std::string_view to_string(PlanMethod method) {
    switch (method) {
        case PlanMethod::gumbel: return "gumbel";
        case PlanMethod::exact: return "exact";
        case PlanMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

PlanResult plan_gumbel(const CouponFamily& family, double q) {
    require_probability(q);
    const GumbelConstants c = matched_gumbel_constants(family);
    const double y = gumbel_quantile(q);
    const double raw = std::ceil(c.centering + c.scale * y);

    PlanResult r;
    r.method = PlanMethod::gumbel;
    r.target_q = q;
    r.quantile_y = y;
    r.constants = c;
    r.trials = std::max<std::uint64_t>(family.n_types(),
                                       raw > 0.0 ? static_cast<std::uint64_t>(raw) : 0);
    if (family.kind() == FamilyKind::mixed && family.pairs() == 50 &&
        family.zipf_exponent() == 1.0) {
        r.note =
            "centering = 2500*(ln 50 - ln ln 50) = 6369.92 by direct evaluation; a printed "
            "value of 6369.22 for this case is a typo and does not change the 11996-trial answer";
    }
    return r;
}

PlanResult plan_exact(const CouponFamily& family, double q) {
    require_probability(q);
    if (family.n_types() > kInclusionExclusionCap) {
        throw SizeLimitError("exact planning is limited to " +
                             std::to_string(kInclusionExclusionCap) + " types");
    }
    auto cdf = [&](std::uint64_t n) { return cdf_inclusion_exclusion(family, n); };

    std::uint64_t lo = family.n_types();  // cdf(lo - 1) == 0 < q
    PlanResult r;
    r.method = PlanMethod::exact;
    r.target_q = q;
    if (const double at_lo = cdf(lo); at_lo >= q) {
        r.trials = lo;
        r.achieved_q = at_lo;
        return r;
    }
    const double mean = expectation_inclusion_exclusion(family);
    std::uint64_t hi = std::max<std::uint64_t>(lo + 1, static_cast<std::uint64_t>(std::ceil(4.0 * mean)));
    while (cdf(hi) < q) {
        lo = hi;
        hi *= 2;
    }
    // Invariant: cdf(lo) < q <= cdf(hi).
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (cdf(mid) >= q ? hi : lo) = mid;
    }
    r.trials = hi;
    r.achieved_q = cdf(hi);
    return r;
}

PlanResult plan_monte_carlo(const CouponFamily& family, double q, std::uint64_t replicates,
                            std::uint64_t seed, const SimulationOptions& options) {
    require_probability(q);
    if (replicates < kMinPlanReplicates) {
        throw InvalidArgument("Monte Carlo planning needs at least " +
                              std::to_string(kMinPlanReplicates) + " replicates");
    }
    const auto sample = simulate_completion_times(family, replicates, seed, options);
    const auto k = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(replicates + 1)));
    PlanResult r;
    r.trials = sample.order_statistic(std::clamp<std::uint64_t>(k, 1, replicates));
    r.method = PlanMethod::monte_carlo;
    r.target_q = q;
    r.replicates = replicates;
    r.seed = seed;
    return r;
}

bool ExampleReproduction::matches() const {
    for (const auto& row : rows) {
        if (row.trials != row.expected_trials) return false;
    }
    return true;
}

ExampleReproduction reproduce_example() {
    constexpr double q = 0.90;
    ExampleReproduction out{q, gumbel_quantile(q), {}};
    auto add = [&](std::string label, const CouponFamily& family, std::uint64_t expected) {
        const PlanResult plan = plan_gumbel(family, q);
        out.rows.push_back({std::move(label), family.kind(), family.n_types(), *plan.constants,
                            plan.trials, expected, plan.note});
    };
    add("mixed m=50 p=1", build_mixed(50, 1.0), 11996);
    add("zipf N=100 p=1", build_zipf(100, 1.0), 2765);
    add("uniform N=100", build_uniform(100), 686);
    return out;
}

}  // namespace collectorlab
