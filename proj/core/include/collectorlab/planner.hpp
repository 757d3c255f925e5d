#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collectorlab/asymptotics.hpp"
#include "collectorlab/coupon_family.hpp"
#include "collectorlab/simulator.hpp"

namespace collectorlab {

enum class PlanMethod { gumbel, exact, monte_carlo };

std::string_view to_string(PlanMethod method);

/// Smallest number of trials after which a full collection has been
/// observed with probability at least `target_q`.
struct PlanResult {
    std::uint64_t trials = 0;
    PlanMethod method = PlanMethod::gumbel;
    double target_q = 0.0;
    std::optional<double> quantile_y;          // gumbel only
    std::optional<GumbelConstants> constants;  // gumbel only
    std::optional<double> achieved_q;          // exact only
    std::optional<std::uint64_t> replicates;   // monte_carlo only
    std::optional<std::uint64_t> seed;         // monte_carlo only
    std::string note;
};

/// ceil(m_N + k_N * gumbel_quantile(q)) with the family's own constants,
/// never below N.
PlanResult plan_gumbel(const CouponFamily& family, double q);

/// Binary search on the inclusion-exclusion CDF (N <= 24).
PlanResult plan_exact(const CouponFamily& family, double q);

/// The ceil(q (R + 1))-th order statistic of R simulated completion times.
PlanResult plan_monte_carlo(const CouponFamily& family, double q, std::uint64_t replicates,
                            std::uint64_t seed, const SimulationOptions& options = {});

inline constexpr std::uint64_t kMinPlanReplicates = 1000;

/// One row of the worked N = 100, q = 0.90 example.
struct ExampleRow {
    std::string label;
    FamilyKind kind;
    std::size_t n_types;
    GumbelConstants constants;
    std::uint64_t trials;
    std::uint64_t expected_trials;
    std::string note;
};

struct ExampleReproduction {
    double q;
    double quantile_y;
    std::vector<ExampleRow> rows;  // mixed (m = 50, p = 1), Zipf (p = 1), uniform

    bool matches() const;
};

/// Gumbel plans at q = 0.90 for the three N = 100 families, with the
/// published trial counts 11996, 2765 and 686 for comparison.
ExampleReproduction reproduce_example();

}  // namespace collectorlab
