#include "collectorlab/alias_table.hpp"

#include <cmath>
#include <limits>

#include "collectorlab/errors.hpp"

namespace collectorlab {

namespace {

constexpr long double kTwoTo64 = 18446744073709551616.0L;

std::uint64_t to_threshold(long double scaled) {
    if (scaled >= 1.0L) return std::numeric_limits<std::uint64_t>::max();
    if (scaled <= 0.0L) return 0;
    return static_cast<std::uint64_t>(scaled * kTwoTo64);
}

}  // namespace

AliasTable::AliasTable(std::span<const double> probs) {
    const std::size_t n = probs.size();
    if (n == 0) throw InvalidArgument("alias table needs at least one category");
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidArgument("alias table supports at most 2^32 - 1 categories");
    }
    threshold_.assign(n, std::numeric_limits<std::uint64_t>::max());
    alias_.resize(n);

    long double total = 0.0L;
    for (double p : probs) total += p;

    std::vector<long double> scaled(n);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = static_cast<long double>(probs[i]) * static_cast<long double>(n) / total;
        alias_[i] = static_cast<std::uint32_t>(i);
        (scaled[i] < 1.0L ? small : large).push_back(static_cast<std::uint32_t>(i));
    }

    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        threshold_[s] = to_threshold(scaled[s]);
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0L;
        if (scaled[l] < 1.0L) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // Leftovers carry mass 1 up to rounding.
    for (std::uint32_t i : small) threshold_[i] = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t i : large) threshold_[i] = std::numeric_limits<std::uint64_t>::max();
}

double AliasTable::probability(std::size_t category) const {
    const long double n = static_cast<long double>(alias_.size());
    long double mass = 0.0L;
    for (std::size_t col = 0; col < alias_.size(); ++col) {
        const long double keep = threshold_[col] == std::numeric_limits<std::uint64_t>::max()
                                     ? 1.0L
                                     : static_cast<long double>(threshold_[col]) / kTwoTo64;
        if (col == category) mass += keep;
        if (alias_[col] == category && alias_[col] != col) mass += 1.0L - keep;
    }
    return static_cast<double>(mass / n);
}

}  // namespace collectorlab
