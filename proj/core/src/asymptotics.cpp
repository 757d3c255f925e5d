#include "collectorlab/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "collectorlab/coupon_family.hpp"
#include "collectorlab/errors.hpp"

namespace collectorlab {

namespace {

constexpr double kGamma = kEulerGamma;
constexpr double kPiSquaredOverSix = std::numbers::pi * std::numbers::pi / 6.0;

// ln(x/p) and ln ln(x/p), rejecting x/p <= e where the double log is not positive.
struct LogPair {
    double log_ratio;
    double loglog_ratio;
};

LogPair checked_logs(double x, double p, const char* who) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw InvalidArgument(std::string(who) + ": exponent must be positive");
    }
    const double ratio = x / p;
    if (!(ratio > std::numbers::e)) {
        throw DomainError(std::string(who) + ": needs size/p > e so that ln ln(size/p) > 0 (got " +
                          std::to_string(ratio) + ")");
    }
    const double lr = std::log(ratio);
    return {lr, std::log(lr)};
}

double error_order(double m) {
    const double lm = std::log(m);
    const double r = std::log(lm) / lm;
    return r * r;
}

AsymptoticReport finish(ExpansionRegime regime, std::vector<ExpansionTerm> terms,
                        double leading, double error) {
    AsymptoticReport report;
    report.regime = regime;
    double bracket = 0.0;
    for (const auto& t : terms) bracket += t.value;
    report.terms = std::move(terms);
    report.bracket_total = bracket;
    report.leading_factor = leading;
    report.total = leading * bracket;
    report.error_magnitude = error;
    return report;
}

}  // namespace

std::string_view to_string(ExpansionRegime regime) {
    switch (regime) {
        case ExpansionRegime::mixed_mean: return "mixed_mean";
        case ExpansionRegime::mixed_second: return "mixed_second";
        case ExpansionRegime::mixed_variance: return "mixed_variance";
        case ExpansionRegime::zipf_mean: return "zipf_mean";
        case ExpansionRegime::uniform: return "uniform";
    }
    return "unknown";
}

AsymptoticReport mixed_mean_asymptotic(std::size_t m, double p) {
    const double md = static_cast<double>(m);
    const auto [lr, llr] = checked_logs(md, p, "mixed_mean_asymptotic");
    (void)lr;
    const double lm = std::log(md);
    std::vector<ExpansionTerm> terms = {
        {"ln M", lm},
        {"-lnln(M/p)", -llr},
        {"gamma - ln p", kGamma - std::log(p)},
        {"lnln(M/p)/ln M", llr / lm},
        {"-(1+gamma+1/p)/ln M", -(1.0 + kGamma + 1.0 / p) / lm},
    };
    return finish(ExpansionRegime::mixed_mean, std::move(terms), std::pow(md, p + 1.0),
                  error_order(md));
}

AsymptoticReport mixed_second_asymptotic(std::size_t m, double p) {
    const double md = static_cast<double>(m);
    const auto [lr, llr] = checked_logs(md, p, "mixed_second_asymptotic");
    (void)lr;
    const double lm = std::log(md);
    const double lp = std::log(p);
    std::vector<ExpansionTerm> terms = {
        {"ln^2 M", lm * lm},
        {"2(gamma - ln p) ln M", 2.0 * (kGamma - lp) * lm},
        {"-2 lnln(M/p) ln M", -2.0 * llr * lm},
        {"lnln(M/p)^2", llr * llr},
        {"2(ln p - gamma + 1) lnln(M/p)", 2.0 * (lp - kGamma + 1.0) * llr},
        {"gamma^2 + pi^2/6 - 2 gamma - 2 - 2/p + ln^2 p",
         kGamma * kGamma + kPiSquaredOverSix - 2.0 * kGamma - 2.0 - 2.0 / p + lp * lp},
    };
    return finish(ExpansionRegime::mixed_second, std::move(terms), std::pow(md, 2.0 * p + 2.0),
                  error_order(md));
}

AsymptoticReport mixed_variance_asymptotic(std::size_t m, double p) {
    const AsymptoticReport mean = mixed_mean_asymptotic(m, p);
    const AsymptoticReport second = mixed_second_asymptotic(m, p);
    const double leading = second.leading_factor;
    std::vector<ExpansionTerm> terms = {
        {"E[T^(2)] bracket", second.bracket_total},
        {"-E[T] / M^{2p+2}", -mean.total / leading},
        {"-E[T]^2 / M^{2p+2}", -mean.bracket_total * mean.bracket_total},
    };
    return finish(ExpansionRegime::mixed_variance, std::move(terms), leading,
                  second.error_magnitude);
}

double mixed_variance_leading(std::size_t m, double p) {
    if (m == 0) throw InvalidArgument("mixed_variance_leading needs m >= 1");
    if (!(p > 0.0)) throw InvalidArgument("mixed_variance_leading needs p > 0");
    return kPiSquaredOverSix * std::pow(static_cast<double>(m), 2.0 * p + 2.0);
}

GumbelConstants mixed_gumbel_constants(std::size_t m, double p) {
    const double md = static_cast<double>(m);
    const auto [lr, llr] = checked_logs(md, p, "mixed_gumbel_constants");
    const double scale = std::pow(md, p + 1.0);
    return {scale * (lr - llr), scale};
}

GumbelConstants zipf_gumbel_constants(std::size_t n, double p) {
    const double nd = static_cast<double>(n);
    const auto [lr, llr] = checked_logs(nd, p, "zipf_gumbel_constants");
    const double scale = partial_sum_A(n, p) * std::pow(nd, p);
    return {scale * (lr - llr), scale};
}

GumbelConstants uniform_gumbel_constants(std::size_t n) {
    if (n < 2) throw DomainError("uniform_gumbel_constants needs n >= 2");
    const double nd = static_cast<double>(n);
    return {nd * std::log(nd), nd};
}

AsymptoticReport zipf_mean_asymptotic(std::size_t m, double p) {
    const double md = static_cast<double>(m);
    const auto [lr, llr] = checked_logs(md, p, "zipf_mean_asymptotic");
    std::vector<ExpansionTerm> terms = {
        {"ln M", std::log(md)},
        {"-lnln(M/p)", -llr},
        {"gamma - ln p", kGamma - std::log(p)},
        {"lnln(M/p)/ln(M/p)", llr / lr},
        {"-(1+gamma+1/p)/ln(M/p)", -(1.0 + kGamma + 1.0 / p) / lr},
    };
    return finish(ExpansionRegime::zipf_mean, std::move(terms),
                  partial_sum_A(m, p) * std::pow(md, p), error_order(md));
}

AsymptoticReport uniform_mean_asymptotic(std::size_t n) {
    if (n < 2) throw DomainError("uniform_mean_asymptotic needs n >= 2");
    const double nd = static_cast<double>(n);
    std::vector<ExpansionTerm> terms = {
        {"ln N", std::log(nd)},
        {"gamma", kGamma},
    };
    return finish(ExpansionRegime::uniform, std::move(terms), nd, 1.0 / (nd * std::log(nd)));
}

double gumbel_cdf(double y) {
    return std::exp(-std::exp(-y));
}

double gumbel_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("gumbel_quantile needs 0 < q < 1");
    }
    return -std::log(-std::log(q));
}

double log_wk_asymptotic(std::size_t m, double p, std::size_t k) {
    if (k == 0) throw InvalidArgument("log_wk_asymptotic needs k >= 1");
    const double md = static_cast<double>(m);
    const auto [lr, llr] = checked_logs(md, p, "log_wk_asymptotic");
    const double mp = std::pow(md, p);
    const double inner = mp * lr;  // M^p ln(M/p)
    if (!(inner > 1.0)) throw DomainError("log_wk_asymptotic needs M^p ln(M/p) > 1");
    return -std::log(static_cast<double>(k)) + p * std::log(md) + llr - std::log(std::log(inner)) -
           1.0 / lr - static_cast<double>(k) * inner;
}

double log_alternating_sum_asymptotic(std::size_t m, double p) {
    return log_wk_asymptotic(m, p, 1);
}

}  // namespace collectorlab
