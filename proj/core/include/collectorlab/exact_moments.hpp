#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "collectorlab/coupon_family.hpp"

namespace collectorlab {

enum class MomentMethod { integral, inclusion_exclusion, monte_carlo, asymptotic };

std::string_view to_string(MomentMethod method);

/// Moments of the completion time T_N. Operations that compute a single
/// moment leave the other fields empty.
struct MomentReport {
    std::optional<double> expectation;
    std::optional<double> second_rising;  // E[T(T+1)]
    std::optional<double> variance;
    MomentMethod method = MomentMethod::integral;
    double abs_error_estimate = 0.0;
};

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double tail_epsilon = 1e-14;
    std::size_t max_subdivisions = 2000;
};

/// Largest family for which subset enumeration is allowed by default.
inline constexpr std::size_t kInclusionExclusionCap = 24;

/// P(T_N > t) for the Poissonized process:
/// 1 - prod_j (1 - exp(-p_j t)), evaluated through a log-sum that is
/// stable for both tiny and large p_j t.
double completion_survival(const CouponFamily& family, double t);

/// E[T_N] = int_0^inf P(T_N > t) dt, truncated where the tail bound
/// N exp(-p_min t) falls below tail_epsilon.
MomentReport expectation_integral(const CouponFamily& family,
                                  const QuadratureSettings& settings = {});

/// E[T_N (T_N + 1)] = 2 int_0^inf t P(T_N > t) dt.
MomentReport second_rising_integral(const CouponFamily& family,
                                    const QuadratureSettings& settings = {});

/// Both integrals combined as Var = E[T^(2)] - E[T] - E[T]^2.
MomentReport variance_exact(const CouponFamily& family, const QuadratureSettings& settings = {});

/// P(T_N <= n_trials) = sum_J (-1)^{|J|} (1 - P_J)^{n_trials}, clamped to [0, 1].
double cdf_inclusion_exclusion(const CouponFamily& family, std::uint64_t n_trials,
                               std::size_t max_types = kInclusionExclusionCap);

/// E[T_N] = sum_{J nonempty} (-1)^{|J|+1} / P_J.
double expectation_inclusion_exclusion(const CouponFamily& family,
                                       std::size_t max_types = kInclusionExclusionCap);

/// int_0^1 y^{k-1} prod_{j=1}^m (1 - y^{j^{-p}}) dy, or the same integrand
/// times ln y when `log_kernel` is set. The splitting identities use
/// 1 <= k <= m, but any k >= 1 is accepted.
double wk_integral(std::size_t m, double p, std::size_t k, bool log_kernel,
                   const QuadratureSettings& settings = {});

/// Both sides of the uniform/Zipf splitting identities for a mixed family
/// with m pairs:
///   E[T_N]     = B_N [ E[T~_M]/A_M - sum_k C(M,k) (-1)^k W_k ]
///   E[T_N^(2)] = B_N^2 [ E[T~_M^(2)]/A_M^2 + 2 sum_k C(M,k) (-1)^k Q_k ]
/// where T~_M is the completion time of the pure Zipf family on M types.
struct DecompositionCheck {
    double direct_mean;
    double split_mean;
    double residual;  // |split_mean / direct_mean - 1|
    double direct_second_rising;
    double split_second_rising;
    double second_rising_residual;
};

inline constexpr std::size_t kDecompositionMaxPairs = 12;

DecompositionCheck decomposition_check(std::size_t m, double p,
                                       const QuadratureSettings& settings = {});

}  // namespace collectorlab
