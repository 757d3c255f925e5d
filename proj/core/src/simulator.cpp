#include "collectorlab/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "collectorlab/errors.hpp"

namespace collectorlab {

namespace {

constexpr std::uint64_t kChunkSize = 1024;

unsigned resolve_threads(unsigned requested, std::uint64_t chunks) {
    unsigned threads = requested;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));
}

// Runs `body(worker, first, last)` over fixed-size replicate chunks on a
// pool of threads. The chunk a replicate lands in never affects its stream.
template <class Body>
void for_each_chunk(std::uint64_t replicates, unsigned threads, Body&& body) {
    const std::uint64_t chunks = (replicates + kChunkSize - 1) / kChunkSize;
    const unsigned workers = resolve_threads(threads, chunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> stop{false};

    auto run = [&](unsigned worker) {
        try {
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) return;
                const std::uint64_t chunk = next.fetch_add(1, std::memory_order_relaxed);
                if (chunk >= chunks) return;
                const std::uint64_t first = chunk * kChunkSize;
                const std::uint64_t last = std::min(replicates, first + kChunkSize);
                body(worker, first, last);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            stop = true;
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::uint64_t run_episode(const AliasTable& table, Xoshiro256pp& rng,
                          std::vector<std::uint8_t>& seen) {
    seen.assign(table.size(), 0);
    std::size_t remaining = table.size();
    std::uint64_t draws = 0;
    while (remaining != 0) {
        if (++draws > kEpisodeDrawCap) {
            throw RunawayError("episode exceeded " + std::to_string(kEpisodeDrawCap) + " draws");
        }
        const std::uint32_t c = table(rng);
        if (!seen[c]) {
            seen[c] = 1;
            --remaining;
        }
    }
    return draws;
}

std::uint64_t run_episode(const CouponFamily& family, Xoshiro256pp& rng) {
    const AliasTable table(family.probs());
    std::vector<std::uint8_t> seen;
    return run_episode(table, rng, seen);
}

std::uint64_t CompletionHistogram::order_statistic(std::uint64_t k) const {
    if (k == 0 || k > total) throw InvalidArgument("order statistic index out of range");
    std::uint64_t cumulative = 0;
    for (const auto& bin : bins) {
        cumulative += bin.count;
        if (cumulative >= k) return bin.trials;
    }
    return bins.back().trials;
}

CompletionHistogram simulate_completion_times(const CouponFamily& family,
                                              std::uint64_t replicates, std::uint64_t seed,
                                              const SimulationOptions& options) {
    if (replicates == 0) throw InvalidArgument("simulate needs at least one replicate");
    const AliasTable table(family.probs());
    const std::uint64_t chunks = (replicates + kChunkSize - 1) / kChunkSize;
    const unsigned workers = resolve_threads(options.threads, chunks);
    std::vector<std::vector<std::uint8_t>> scratch(workers);

    CompletionHistogram out;
    out.total = replicates;

    if (replicates <= kFlatSampleLimit) {
        std::vector<std::uint32_t> times(replicates);
        for_each_chunk(replicates, workers, [&](unsigned w, std::uint64_t first, std::uint64_t last) {
            for (std::uint64_t i = first; i < last; ++i) {
                auto rng = Xoshiro256pp::for_stream(seed, i);
                times[i] = static_cast<std::uint32_t>(run_episode(table, rng, scratch[w]));
            }
        });
        std::sort(times.begin(), times.end());
        for (std::uint32_t t : times) {
            if (!out.bins.empty() && out.bins.back().trials == t) {
                ++out.bins.back().count;
            } else {
                out.bins.push_back({t, 1});
            }
        }
        return out;
    }

    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> counts(workers);
    for_each_chunk(replicates, workers, [&](unsigned w, std::uint64_t first, std::uint64_t last) {
        for (std::uint64_t i = first; i < last; ++i) {
            auto rng = Xoshiro256pp::for_stream(seed, i);
            ++counts[w][run_episode(table, rng, scratch[w])];
        }
    });
    std::map<std::uint64_t, std::uint64_t> merged;
    for (const auto& local : counts) {
        for (const auto& [t, c] : local) merged[t] += c;
    }
    out.bins.reserve(merged.size());
    for (const auto& [t, c] : merged) out.bins.push_back({t, c});
    return out;
}

SimulationSummary summarize(const CompletionHistogram& sample, std::uint64_t seed,
                            std::size_t n_types, const std::optional<GumbelConstants>& gumbel) {
    if (sample.total == 0 || sample.bins.empty()) {
        throw InvalidArgument("cannot summarize an empty sample");
    }
    SimulationSummary s;
    s.replicates = sample.total;
    s.seed = seed;
    s.n_types = n_types;
    s.min_trials = sample.bins.front().trials;
    s.max_trials = sample.bins.back().trials;

    // Integer power sums are exact, so the moments cannot depend on the
    // order in which replicates finished.
    uint128 sum1 = 0;
    uint128 sum2 = 0;
    for (const auto& bin : sample.bins) {
        const uint128 t = bin.trials;
        sum1 += t * bin.count;
        sum2 += t * t * bin.count;
    }
    const long double r = static_cast<long double>(sample.total);
    s.sample_mean = static_cast<double>(static_cast<long double>(sum1) / r);
    s.sample_second_rising = static_cast<double>(static_cast<long double>(sum2 + sum1) / r);
    if (sample.total > 1) {
        long double centered;
        if (sample.total <= (std::uint64_t{1} << 30)) {
            const uint128 scaled = sum2 * sample.total - sum1 * sum1;
            centered = static_cast<long double>(scaled) / r;
        } else {
            const long double s1 = static_cast<long double>(sum1);
            centered = static_cast<long double>(sum2) - s1 * s1 / r;
        }
        s.sample_variance = static_cast<double>(std::max(0.0L, centered) / (r - 1.0L));
    }

    for (double q : kSummaryQuantiles) {
        const auto k = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(sample.total)));
        s.quantiles.emplace_back(q, sample.order_statistic(std::clamp<std::uint64_t>(k, 1, sample.total)));
    }

    if (gumbel) {
        s.gumbel = gumbel;
        double d = 0.0;
        std::uint64_t cumulative = 0;
        for (const auto& bin : sample.bins) {
            const double before = static_cast<double>(cumulative) / static_cast<double>(sample.total);
            cumulative += bin.count;
            const double after = static_cast<double>(cumulative) / static_cast<double>(sample.total);
            const double g =
                gumbel_cdf((static_cast<double>(bin.trials) - gumbel->centering) / gumbel->scale);
            d = std::max({d, after - g, g - before});
        }
        s.ks_statistic = d;
    }
    return s;
}

SimulationSummary simulate(const CouponFamily& family, std::uint64_t replicates,
                           std::uint64_t seed, const std::optional<GumbelConstants>& gumbel,
                           const SimulationOptions& options) {
    return summarize(simulate_completion_times(family, replicates, seed, options), seed,
                     family.n_types(), gumbel);
}

GumbelConstants matched_gumbel_constants(const CouponFamily& family) {
    switch (family.kind()) {
        case FamilyKind::uniform: return uniform_gumbel_constants(family.n_types());
        case FamilyKind::zipf: return zipf_gumbel_constants(family.n_types(), *family.zipf_exponent());
        case FamilyKind::mixed: return mixed_gumbel_constants(family.pairs(), *family.zipf_exponent());
        case FamilyKind::custom: break;
    }
    throw DomainError("no Gumbel normalization is defined for custom families");
}

std::vector<KsPoint> ks_trend(FamilyKind kind, double p, const std::vector<std::size_t>& sizes,
                              std::uint64_t replicates, std::uint64_t seed,
                              const SimulationOptions& options) {
    if (!std::is_sorted(sizes.begin(), sizes.end())) {
        throw InvalidArgument("ks_trend sizes must be ascending");
    }
    std::vector<KsPoint> out;
    out.reserve(sizes.size());
    for (std::size_t size : sizes) {
        CouponFamily family = [&] {
            switch (kind) {
                case FamilyKind::uniform: return build_uniform(size);
                case FamilyKind::zipf: return build_zipf(size, p);
                case FamilyKind::mixed: return build_mixed(size, p);
                case FamilyKind::custom: break;
            }
            throw InvalidArgument("ks_trend supports uniform, zipf and mixed families");
        }();
        const auto summary =
            simulate(family, replicates, seed, matched_gumbel_constants(family), options);
        out.push_back({size, *summary.ks_statistic});
    }
    return out;
}

}  // namespace collectorlab
