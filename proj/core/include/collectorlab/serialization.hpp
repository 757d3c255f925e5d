#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "collectorlab/asymptotics.hpp"
#include "collectorlab/coupon_family.hpp"
#include "collectorlab/exact_moments.hpp"
#include "collectorlab/planner.hpp"
#include "collectorlab/simulator.hpp"

namespace collectorlab {

/// Every emitted document carries {"schema": "<name>", "schema_version": 1};
/// the matching JSON Schemas live under schemas/ in the source tree.
inline constexpr int kSchemaVersion = 1;

/// Rounds to 10 significant digits, the precision used for all output.
double significant(double x);

/// Parses {"kind": "uniform"|"zipf"|"mixed", "n": int, "p": float?} or
/// {"kind": "custom", "weights": [...]}. For mixed, n is the number of
/// types and must be even. Throws InvalidArgument on malformed input.
CouponFamily family_from_json(const nlohmann::json& spec);

/// The inverse of family_from_json.
nlohmann::json family_spec_to_json(const CouponFamily& family);

/// Family description plus derived data (weight sum and probabilities).
nlohmann::json family_to_json(const CouponFamily& family);

nlohmann::json to_json(const MomentReport& report);
nlohmann::json to_json(const AsymptoticReport& report);
nlohmann::json to_json(const GumbelConstants& constants);
nlohmann::json to_json(const SimulationSummary& summary);
nlohmann::json to_json(const PlanResult& plan);
nlohmann::json to_json(const DecompositionCheck& check);
nlohmann::json to_json(const ExampleReproduction& example);
nlohmann::json ks_trend_to_json(FamilyKind kind, double p, std::uint64_t replicates,
                                std::uint64_t seed, const std::vector<KsPoint>& points);

/// One completion time per line, ascending.
void write_completion_csv(std::ostream& out, const CompletionHistogram& sample);

}  // namespace collectorlab
