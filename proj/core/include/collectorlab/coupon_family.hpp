#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace collectorlab {

enum class FamilyKind { uniform, zipf, mixed, custom };

std::string_view to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view name);

/// A distinct coupon probability together with how many types share it.
struct ProbabilityGroup {
    double probability;
    std::size_t multiplicity;
};

/// Immutable categorical distribution over N coupon types, built from
/// positive weights b_j as p_j = b_j / B_N.
///
/// Instances are only produced by the build_* factories, which check that
/// every probability is strictly positive and that the probabilities sum
/// to one within 1e-12.
class CouponFamily {
public:
    FamilyKind kind() const noexcept { return kind_; }
    std::size_t n_types() const noexcept { return weights_.size(); }

    /// Zipf exponent p for zipf and mixed families.
    std::optional<double> zipf_exponent() const noexcept { return exponent_; }

    /// Number of uniform/Zipf pairs M = N/2 of a mixed family.
    std::size_t pairs() const noexcept { return weights_.size() / 2; }

    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> probs() const noexcept { return probs_; }
    double weight_sum() const noexcept { return weight_sum_; }

    double min_probability() const noexcept { return groups_.front().probability; }

    /// Distinct probabilities in ascending order with multiplicities.
    /// Integrands that are symmetric in the types only need these.
    std::span<const ProbabilityGroup> groups() const noexcept { return groups_; }

private:
    CouponFamily(FamilyKind kind, std::optional<double> exponent, std::vector<double> weights);

    friend CouponFamily build_uniform(std::size_t n);
    friend CouponFamily build_zipf(std::size_t n, double p);
    friend CouponFamily build_mixed(std::size_t m, double p);
    friend CouponFamily build_custom(std::vector<double> weights);

    FamilyKind kind_;
    std::optional<double> exponent_;
    std::vector<double> weights_;
    std::vector<double> probs_;
    double weight_sum_ = 0.0;
    std::vector<ProbabilityGroup> groups_;
};

/// N equally likely types.
CouponFamily build_uniform(std::size_t n);

/// Generalized Zipf weights b_j = j^{-p}, j = 1..n.
CouponFamily build_zipf(std::size_t n, double p);

/// Interleaved uniform/Zipf family with N = 2m types:
/// b_{2j-1} = 1 and b_{2j} = j^{-p} for j = 1..m, so B_N = m + A_m.
CouponFamily build_mixed(std::size_t m, double p);

/// Arbitrary positive weights (used by oracle tests and the JSON interface).
CouponFamily build_custom(std::vector<double> weights);

/// A_m = sum_{j=1}^m j^{-p}, compensated, summed from the smallest term up.
double partial_sum_A(std::size_t m, double p);

enum class GrowthRegime { zeta_limit, logarithmic, power_law };

std::string_view to_string(GrowthRegime regime);

struct PartialSumAsymptotic {
    double value;
    GrowthRegime regime;
};

/// Leading behaviour of A_m as m grows: zeta(p) for p > 1, ln m for p = 1,
/// m^{1-p}/(1-p) for 0 < p < 1.
PartialSumAsymptotic a_asymptotic(std::size_t m, double p);

/// Riemann zeta for real p > 1: partial sum over K = 10^4 terms plus an
/// Euler-Maclaurin tail through the B_2 term.
double zeta(double p);

}  // namespace collectorlab
