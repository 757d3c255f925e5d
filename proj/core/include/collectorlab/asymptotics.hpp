#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace collectorlab {

enum class ExpansionRegime { mixed_mean, mixed_second, mixed_variance, zipf_mean, uniform };

std::string_view to_string(ExpansionRegime regime);

struct ExpansionTerm {
    std::string name;
    double value;
};

/// Term-by-term evaluation of a large-N expansion. `total` is
/// `leading_factor * bracket_total`; the order-symbol remainder is reported
/// in `error_magnitude` and never added.
struct AsymptoticReport {
    ExpansionRegime regime;
    std::vector<ExpansionTerm> terms;
    double bracket_total = 0.0;
    double leading_factor = 0.0;
    double total = 0.0;
    double error_magnitude = 0.0;  // (lnln m / ln m)^2, relative to the bracket
};

/// Gumbel centering m_N and scale k_N: (T_N - m_N) / k_N converges to a
/// standard Gumbel variable.
struct GumbelConstants {
    double centering;
    double scale;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Mixed family, N = 2m:
/// E[T_N] ~ m^{p+1} [ ln m - lnln(m/p) + (gamma - ln p)
///                    + lnln(m/p)/ln m - (1 + gamma + 1/p)/ln m ].
/// Requires m/p > e.
AsymptoticReport mixed_mean_asymptotic(std::size_t m, double p);

/// Mixed family second rising moment E[T_N(T_N+1)], six-term bracket times m^{2p+2}.
AsymptoticReport mixed_second_asymptotic(std::size_t m, double p);

/// Variance assembled from the two expansions above:
/// E[T^(2)] - E[T] - E[T]^2, reported with the leading factor m^{2p+2}.
AsymptoticReport mixed_variance_asymptotic(std::size_t m, double p);

/// (pi^2/6) m^{2p+2}.
double mixed_variance_leading(std::size_t m, double p);

GumbelConstants mixed_gumbel_constants(std::size_t m, double p);
GumbelConstants zipf_gumbel_constants(std::size_t n, double p);
GumbelConstants uniform_gumbel_constants(std::size_t n);

/// Pure Zipf family on m types:
/// E[T~_m] ~ A_m m^p [ ln m - lnln(m/p) + (gamma - ln p)
///                     + lnln(m/p)/ln(m/p) - (1 + gamma + 1/p)/ln(m/p) ].
AsymptoticReport zipf_mean_asymptotic(std::size_t m, double p);

/// Uniform family: E[T_N] ~ N [ ln N + gamma ] (Gumbel mean shift).
AsymptoticReport uniform_mean_asymptotic(std::size_t n);

/// Standard Gumbel CDF exp(-e^{-y}).
double gumbel_cdf(double y);

/// Inverse of gumbel_cdf: -ln(-ln q) for 0 < q < 1.
double gumbel_quantile(double q);

/// Natural log of the large-m approximation to W_k(m):
///   (1/k) m^p ln(m/p) / ln(m^p ln(m/p)) e^{-1/ln(m/p)} e^{-k m^p ln(m/p)}.
/// Returned in log form because the value underflows quickly.
double log_wk_asymptotic(std::size_t m, double p, std::size_t k);

/// Natural log of |sum_k C(m,k)(-1)^k W_k(m)| at leading order; the sum
/// itself is negative.
double log_alternating_sum_asymptotic(std::size_t m, double p);

}  // namespace collectorlab
