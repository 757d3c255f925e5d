#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "collectorlab/alias_table.hpp"
#include "collectorlab/asymptotics.hpp"
#include "collectorlab/coupon_family.hpp"
#include "collectorlab/random.hpp"

namespace collectorlab {

/// Hard cap on draws in a single episode.
inline constexpr std::uint64_t kEpisodeDrawCap = std::uint64_t{1} << 31;

/// Above this many replicates completion times are merged into per-worker
/// count maps instead of one flat array.
inline constexpr std::uint64_t kFlatSampleLimit = 10'000'000;

/// Draws from `table` until every category has been seen; returns the
/// number of draws. `seen` is caller-provided scratch of size table.size().
std::uint64_t run_episode(const AliasTable& table, Xoshiro256pp& rng, std::vector<std::uint8_t>& seen);

/// Convenience overload that builds its own table and scratch.
std::uint64_t run_episode(const CouponFamily& family, Xoshiro256pp& rng);

/// Sorted distinct completion times with their counts.
struct CompletionHistogram {
    struct Bin {
        std::uint64_t trials;
        std::uint64_t count;
    };
    std::vector<Bin> bins;
    std::uint64_t total = 0;

    /// k-th smallest completion time, 1-based.
    std::uint64_t order_statistic(std::uint64_t k) const;
};

struct SimulationOptions {
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct SimulationSummary {
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;
    std::size_t n_types = 0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;  // unbiased
    double sample_second_rising = 0.0;
    std::uint64_t min_trials = 0;
    std::uint64_t max_trials = 0;
    std::vector<std::pair<double, std::uint64_t>> quantiles;
    std::optional<GumbelConstants> gumbel;
    std::optional<double> ks_statistic;
};

inline constexpr double kSummaryQuantiles[] = {0.5, 0.9, 0.95, 0.99};

/// Runs `replicates` independent episodes; replicate i draws from the
/// stream Xoshiro256pp::for_stream(seed, i). The histogram is the same for
/// any thread count.
CompletionHistogram simulate_completion_times(const CouponFamily& family, std::uint64_t replicates,
                                              std::uint64_t seed,
                                              const SimulationOptions& options = {});

/// Moments, quantiles and (with constants) the KS distance
/// sup_x |F_emp(x) - G((x - m_N)/k_N)| to the standard Gumbel law.
SimulationSummary summarize(const CompletionHistogram& sample, std::uint64_t seed,
                            std::size_t n_types,
                            const std::optional<GumbelConstants>& gumbel = std::nullopt);

SimulationSummary simulate(const CouponFamily& family, std::uint64_t replicates, std::uint64_t seed,
                           const std::optional<GumbelConstants>& gumbel = std::nullopt,
                           const SimulationOptions& options = {});

/// Gumbel constants matching the family kind: Erdos-Renyi for uniform,
/// Zipf centering for zipf, mixed centering (m = N/2) for mixed.
GumbelConstants matched_gumbel_constants(const CouponFamily& family);

struct KsPoint {
    std::size_t size;  // N for uniform/zipf, m for mixed
    double ks_statistic;
};

/// KS distance to the Gumbel limit for each size in `sizes` (ascending).
std::vector<KsPoint> ks_trend(FamilyKind kind, double p, const std::vector<std::size_t>& sizes,
                              std::uint64_t replicates, std::uint64_t seed,
                              const SimulationOptions& options = {});

}  // namespace collectorlab
