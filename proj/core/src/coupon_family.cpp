#include "collectorlab/coupon_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "collectorlab/errors.hpp"
#include "collectorlab/summation.hpp"

namespace collectorlab {

namespace {

void require_positive_exponent(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw InvalidArgument("zipf exponent must be a finite positive number, got " +
                              std::to_string(p));
    }
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::uniform: return "uniform";
        case FamilyKind::zipf: return "zipf";
        case FamilyKind::mixed: return "mixed";
        case FamilyKind::custom: return "custom";
    }
    return "unknown";
}

FamilyKind family_kind_from_string(std::string_view name) {
    if (name == "uniform") return FamilyKind::uniform;
    if (name == "zipf") return FamilyKind::zipf;
    if (name == "mixed") return FamilyKind::mixed;
    if (name == "custom") return FamilyKind::custom;
    throw InvalidArgument("unknown family kind '" + std::string(name) + "'");
}

std::string_view to_string(GrowthRegime regime) {
    switch (regime) {
        case GrowthRegime::zeta_limit: return "zeta";
        case GrowthRegime::logarithmic: return "log";
        case GrowthRegime::power_law: return "power";
    }
    return "unknown";
}

CouponFamily::CouponFamily(FamilyKind kind, std::optional<double> exponent,
                           std::vector<double> weights)
    : kind_(kind), exponent_(exponent), weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw InvalidArgument("a coupon family needs at least one type");
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InvalidArgument("coupon weights must be finite and strictly positive");
        }
    }

    // Ascending order keeps the compensated sum tight for decaying weights.
    std::vector<double> sorted = weights_;
    std::sort(sorted.begin(), sorted.end());
    CompensatedSum<double> total;
    for (double w : sorted) total += w;
    weight_sum_ = total.value();

    probs_.reserve(weights_.size());
    for (double w : weights_) {
        const double pj = w / weight_sum_;
        if (!(pj > 0.0)) {
            throw InvalidArgument(
                "a coupon probability underflows to zero; completion time would be infinite");
        }
        probs_.push_back(pj);
    }

    std::vector<double> ascending = probs_;
    std::sort(ascending.begin(), ascending.end());
    CompensatedSum<double> mass;
    for (double pj : ascending) {
        mass += pj;
        if (!groups_.empty() && groups_.back().probability == pj) {
            ++groups_.back().multiplicity;
        } else {
            groups_.push_back({pj, 1});
        }
    }
    if (std::abs(mass.value() - 1.0) > 1e-12) {
        throw InvalidArgument("coupon probabilities do not sum to one");
    }
}

CouponFamily build_uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("uniform family needs n >= 1");
    return CouponFamily(FamilyKind::uniform, std::nullopt, std::vector<double>(n, 1.0));
}

CouponFamily build_zipf(std::size_t n, double p) {
    if (n == 0) throw InvalidArgument("zipf family needs n >= 1");
    require_positive_exponent(p);
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = std::pow(static_cast<double>(j + 1), -p);
    }
    return CouponFamily(FamilyKind::zipf, p, std::move(w));
}

CouponFamily build_mixed(std::size_t m, double p) {
    if (m == 0) throw InvalidArgument("mixed family needs m >= 1");
    require_positive_exponent(p);
    std::vector<double> w(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
        w[2 * j] = 1.0;
        w[2 * j + 1] = std::pow(static_cast<double>(j + 1), -p);
    }
    return CouponFamily(FamilyKind::mixed, p, std::move(w));
}

CouponFamily build_custom(std::vector<double> weights) {
    return CouponFamily(FamilyKind::custom, std::nullopt, std::move(weights));
}

double partial_sum_A(std::size_t m, double p) {
    if (m == 0) throw InvalidArgument("partial_sum_A needs m >= 1");
    require_positive_exponent(p);
    CompensatedSum<double> sum;
    for (std::size_t j = m; j >= 1; --j) {
        sum += std::pow(static_cast<double>(j), -p);
    }
    return sum.value();
}

PartialSumAsymptotic a_asymptotic(std::size_t m, double p) {
    require_positive_exponent(p);
    if (m < 2) throw InvalidArgument("a_asymptotic needs m >= 2");
    const double md = static_cast<double>(m);
    if (p > 1.0) return {zeta(p), GrowthRegime::zeta_limit};
    if (p == 1.0) return {std::log(md), GrowthRegime::logarithmic};
    return {std::pow(md, 1.0 - p) / (1.0 - p), GrowthRegime::power_law};
}

double zeta(double p) {
    if (!(p > 1.0)) {
        throw InvalidArgument("zeta(p) diverges for p <= 1");
    }
    constexpr std::size_t K = 10000;
    const double k = static_cast<double>(K);
    CompensatedSum<double> sum;
    for (std::size_t j = K; j >= 1; --j) {
        sum += std::pow(static_cast<double>(j), -p);
    }
    // Tail sum_{j>K} j^{-p} = int_K^inf - f(K)/2 - (B_2/2!) f'(K) + ...;
    // the partial sum above already contains f(K), hence the signs below.
    sum += std::pow(k, 1.0 - p) / (p - 1.0);
    sum += -0.5 * std::pow(k, -p);
    sum += p * std::pow(k, -p - 1.0) / 12.0;
    return sum.value();
}

}  // namespace collectorlab
