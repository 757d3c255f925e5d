#include "collectorlab/exact_moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "collectorlab/errors.hpp"
#include "collectorlab/quadrature.hpp"
#include "collectorlab/summation.hpp"

namespace collectorlab {

namespace {

// ln(1 - e^{-x}) for x >= 0.
double log1mexp(double x) {
    if (x <= std::numbers::ln2) return std::log(-std::expm1(-x));
    return std::log1p(-std::exp(-x));
}

void validate(const QuadratureSettings& settings) {
    if (!(settings.rel_tol > 0.0) || !(settings.tail_epsilon > 0.0) ||
        settings.max_subdivisions == 0) {
        throw InvalidArgument("quadrature settings need rel_tol > 0, tail_epsilon > 0 and a "
                              "positive subdivision budget");
    }
}

quadrature::Tolerance tolerance_from(const QuadratureSettings& settings) {
    return {0.0, settings.rel_tol, settings.max_subdivisions};
}

constexpr std::size_t kInitialPanels = 32;

// Beyond this point the survival function is below tail_epsilon.
double survival_cutoff(const CouponFamily& family, const QuadratureSettings& settings) {
    const double n = static_cast<double>(family.n_types());
    return (std::log(n) + std::log(1.0 / settings.tail_epsilon)) / family.min_probability();
}

quadrature::Result integrate_survival(const CouponFamily& family,
                                      const QuadratureSettings& settings, bool weight_by_t,
                                      double upper) {
    auto integrand = [&](double t) {
        const double s = completion_survival(family, t);
        return weight_by_t ? t * s : s;
    };
    auto result =
        quadrature::integrate(integrand, 0.0, upper, tolerance_from(settings), kInitialPanels);
    return result;
}

[[noreturn]] void throw_accuracy(const char* what, double best, double err) {
    throw AccuracyError(std::string(what) + " did not reach the requested tolerance", best, err);
}

// Subset sums P_J over at most 24 types, split into a low-bit and a
// high-bit table so that each P_J is the sum of two table entries, each
// built from at most 12 additions.
class SubsetSums {
public:
    SubsetSums(std::span<const double> probs) : n_(probs.size()) {
        low_bits_ = n_ / 2;
        high_bits_ = n_ - low_bits_;
        low_ = build(probs.subspan(0, low_bits_));
        high_ = build(probs.subspan(low_bits_));
    }

    std::size_t n() const { return n_; }
    std::uint64_t subsets() const { return std::uint64_t{1} << n_; }

    double mass(std::uint64_t mask) const {
        return low_[mask & low_mask()] + high_[mask >> low_bits_];
    }

    // Mass of the complement, computed from the complement's own entries
    // so that 1 - P_J keeps full relative precision.
    double complement_mass(std::uint64_t mask) const {
        return low_[~mask & low_mask()] + high_[(~mask >> low_bits_) & high_mask()];
    }

private:
    static std::vector<double> build(std::span<const double> probs) {
        std::vector<double> table(std::size_t{1} << probs.size(), 0.0);
        for (std::size_t mask = 1; mask < table.size(); ++mask) {
            const auto lowest = static_cast<std::size_t>(std::countr_zero(mask));
            table[mask] = table[mask & (mask - 1)] + probs[lowest];
        }
        return table;
    }
    std::uint64_t low_mask() const { return (std::uint64_t{1} << low_bits_) - 1; }
    std::uint64_t high_mask() const { return (std::uint64_t{1} << high_bits_) - 1; }

    std::size_t n_;
    std::size_t low_bits_ = 0;
    std::size_t high_bits_ = 0;
    std::vector<double> low_;
    std::vector<double> high_;
};

void require_enumerable(const CouponFamily& family, std::size_t max_types) {
    const std::size_t hard_cap = 30;
    if (family.n_types() > std::min(max_types, hard_cap)) {
        throw SizeLimitError("subset enumeration is limited to " +
                             std::to_string(std::min(max_types, hard_cap)) + " types, family has " +
                             std::to_string(family.n_types()));
    }
}

double binomial(std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(c);
}

}  // namespace

std::string_view to_string(MomentMethod method) {
    switch (method) {
        case MomentMethod::integral: return "integral";
        case MomentMethod::inclusion_exclusion: return "inclusion_exclusion";
        case MomentMethod::monte_carlo: return "monte_carlo";
        case MomentMethod::asymptotic: return "asymptotic";
    }
    return "unknown";
}

double completion_survival(const CouponFamily& family, double t) {
    if (!(t > 0.0)) return 1.0;
    double log_covered = 0.0;
    for (const auto& g : family.groups()) {
        log_covered += static_cast<double>(g.multiplicity) * log1mexp(g.probability * t);
    }
    return -std::expm1(log_covered);
}

MomentReport expectation_integral(const CouponFamily& family, const QuadratureSettings& settings) {
    validate(settings);
    const double upper = survival_cutoff(family, settings);
    const auto r = integrate_survival(family, settings, false, upper);
    // int_T^inf N e^{-p_min t} dt = tail_epsilon / p_min.
    const double tail = settings.tail_epsilon / family.min_probability();
    if (!r.converged) throw_accuracy("expectation integral", r.value, r.error + tail);
    MomentReport report;
    report.expectation = r.value;
    report.method = MomentMethod::integral;
    report.abs_error_estimate = r.error + tail;
    return report;
}

MomentReport second_rising_integral(const CouponFamily& family,
                                    const QuadratureSettings& settings) {
    validate(settings);
    const double p_min = family.min_probability();
    double upper = survival_cutoff(family, settings);
    // The t-weighted tail is N e^{-p T}(T/p + 1/p^2); push T out by the log
    // of the extra polynomial factor.
    upper += std::log1p(p_min * upper) / p_min;
    const auto r = integrate_survival(family, settings, true, upper);
    const double tail = 2.0 * settings.tail_epsilon / (p_min * p_min);
    if (!r.converged) throw_accuracy("second rising moment integral", 2.0 * r.value, 2.0 * r.error + tail);
    MomentReport report;
    report.second_rising = 2.0 * r.value;
    report.method = MomentMethod::integral;
    report.abs_error_estimate = 2.0 * r.error + tail;
    return report;
}

MomentReport variance_exact(const CouponFamily& family, const QuadratureSettings& settings) {
    const MomentReport first = expectation_integral(family, settings);
    const MomentReport second = second_rising_integral(family, settings);
    const double mean = *first.expectation;
    MomentReport report;
    report.expectation = mean;
    report.second_rising = second.second_rising;
    report.variance = *second.second_rising - mean - mean * mean;
    report.method = MomentMethod::integral;
    report.abs_error_estimate =
        second.abs_error_estimate + (1.0 + 2.0 * mean) * first.abs_error_estimate;
    return report;
}

double cdf_inclusion_exclusion(const CouponFamily& family, std::uint64_t n_trials,
                               std::size_t max_types) {
    require_enumerable(family, max_types);
    if (n_trials < family.n_types()) return 0.0;
    const SubsetSums sums(family.probs());
    const double n = static_cast<double>(n_trials);
    CompensatedSum<long double> total;
    for (std::uint64_t mask = 0; mask < sums.subsets(); ++mask) {
        const double rest = std::max(0.0, sums.complement_mass(mask));
        const double term = std::pow(rest, n);
        total += (std::popcount(mask) % 2 == 0) ? term : -term;
    }
    return std::clamp(static_cast<double>(total.value()), 0.0, 1.0);
}

double expectation_inclusion_exclusion(const CouponFamily& family, std::size_t max_types) {
    require_enumerable(family, max_types);
    const SubsetSums sums(family.probs());
    CompensatedSum<long double> total;
    for (std::uint64_t mask = 1; mask < sums.subsets(); ++mask) {
        const long double term = 1.0L / static_cast<long double>(sums.mass(mask));
        total += (std::popcount(mask) % 2 == 1) ? term : -term;
    }
    return static_cast<double>(total.value());
}

double wk_integral(std::size_t m, double p, std::size_t k, bool log_kernel,
                   const QuadratureSettings& settings) {
    validate(settings);
    if (m == 0 || k == 0) {
        throw InvalidArgument("wk_integral needs m >= 1 and k >= 1");
    }
    if (!(p > 0.0)) throw InvalidArgument("wk_integral needs p > 0");

    std::vector<double> exponents(m);
    for (std::size_t j = 0; j < m; ++j) {
        exponents[j] = std::pow(static_cast<double>(j + 1), -p);
    }
    const double kd = static_cast<double>(k);

    // With y = e^{-s} the integral becomes
    //   int_0^inf e^{-k s} prod_j (1 - e^{-a_j s}) ds      (times -s for the log kernel),
    // which is smooth at both ends of the original interval.
    auto integrand = [&](double s) {
        if (!(s > 0.0)) return 0.0;
        double log_value = -kd * s;
        for (double a : exponents) log_value += log1mexp(a * s);
        const double v = std::exp(log_value);
        return log_kernel ? -s * v : v;
    };

    // Past s_cut the product differs from 1 by less than m e^{-a_min s} <= 1e-17
    // and the remainder integrates in closed form.
    const double a_min = exponents.back();
    const double s_cut = std::log(static_cast<double>(m) * 1e17) / a_min;
    const auto r = quadrature::integrate(integrand, 0.0, s_cut, tolerance_from(settings), 64);
    if (!r.converged) throw_accuracy("W_k integral", r.value, r.error);
    const double decay = std::exp(-kd * s_cut);
    const double tail = log_kernel ? -decay * (s_cut / kd + 1.0 / (kd * kd)) : decay / kd;
    return r.value + tail;
}

DecompositionCheck decomposition_check(std::size_t m, double p,
                                       const QuadratureSettings& settings) {
    if (m == 0 || m > kDecompositionMaxPairs) {
        throw InvalidArgument("decomposition_check supports 1 <= m <= " +
                              std::to_string(kDecompositionMaxPairs));
    }
    QuadratureSettings tight = settings;
    tight.rel_tol = std::min(settings.rel_tol, 1e-12);
    tight.tail_epsilon = std::min(settings.tail_epsilon, 1e-16);
    tight.max_subdivisions = std::max<std::size_t>(settings.max_subdivisions, 4000);

    const CouponFamily mixed = build_mixed(m, p);
    const CouponFamily zipf = build_zipf(m, p);
    const double a_sum = partial_sum_A(m, p);
    const double b_sum = static_cast<double>(m) + a_sum;

    const auto mixed_moments = variance_exact(mixed, tight);
    const auto zipf_moments = variance_exact(zipf, tight);

    CompensatedSum<long double> w_sum;
    CompensatedSum<long double> q_sum;
    for (std::size_t k = 1; k <= m; ++k) {
        const long double c = binomial(m, k) * ((k % 2 == 0) ? 1.0L : -1.0L);
        w_sum += c * wk_integral(m, p, k, false, tight);
        q_sum += c * wk_integral(m, p, k, true, tight);
    }

    DecompositionCheck out{};
    out.direct_mean = *mixed_moments.expectation;
    out.split_mean = static_cast<double>(
        b_sum * (static_cast<long double>(*zipf_moments.expectation) / a_sum - w_sum.value()));
    out.residual = std::abs(out.split_mean / out.direct_mean - 1.0);

    out.direct_second_rising = *mixed_moments.second_rising;
    out.split_second_rising = static_cast<double>(
        static_cast<long double>(b_sum) * b_sum *
        (static_cast<long double>(*zipf_moments.second_rising) / (a_sum * a_sum) +
         2.0L * q_sum.value()));
    out.second_rising_residual =
        std::abs(out.split_second_rising / out.direct_second_rising - 1.0);
    return out;
}

}  // namespace collectorlab
