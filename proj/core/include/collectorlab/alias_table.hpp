#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "collectorlab/random.hpp"

namespace collectorlab {

/// Walker/Vose alias table: O(n) construction, one 64-bit random word per
/// draw.
class AliasTable {
public:
    explicit AliasTable(std::span<const double> probs);

    std::size_t size() const noexcept { return alias_.size(); }

    /// Maps a uniform 64-bit word to a category. The high half of
    /// word * n picks the column, the low half decides between the column
    /// and its alias.
    std::uint32_t sample(std::uint64_t word) const noexcept {
        const uint128 scaled = static_cast<uint128>(word) * alias_.size();
        const auto column = static_cast<std::uint32_t>(scaled >> 64);
        const auto fraction = static_cast<std::uint64_t>(scaled);
        return fraction < threshold_[column] ? column : alias_[column];
    }

    template <class Rng>
    std::uint32_t operator()(Rng& rng) const noexcept {
        return sample(rng());
    }

    /// Probability that the table yields `category`; reconstructed from the
    /// thresholds, for testing.
    double probability(std::size_t category) const;

private:
    // Column keeps its own index when fraction < threshold. A threshold of
    // UINT64_MAX stands for "always keep" (probability 1 up to 2^-64).
    std::vector<std::uint64_t> threshold_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace collectorlab
