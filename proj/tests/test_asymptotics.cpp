#include <cmath>
#include <numbers>

#include "doctest.h"

#include "collectorlab/asymptotics.hpp"
#include "collectorlab/errors.hpp"
#include "collectorlab/exact_moments.hpp"

using namespace collectorlab;

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

double sum_terms(const AsymptoticReport& r) {
    double s = 0.0;
    for (const auto& t : r.terms) s += t.value;
    return s;
}

}  // namespace

TEST_CASE("mixed_mean_asymptotic") {
    const auto r = mixed_mean_asymptotic(50, 1.0);
    CHECK(r.regime == ExpansionRegime::mixed_mean);
    CHECK(r.leading_factor == 2500.0);
    REQUIRE(r.terms.size() == 5);
    CHECK(std::abs(r.terms[0].value + r.terms[1].value - 2.54796) < 1e-5);
    CHECK(r.bracket_total == doctest::Approx(sum_terms(r)).epsilon(1e-15));
    CHECK(r.total == doctest::Approx(r.leading_factor * r.bracket_total).epsilon(1e-15));
    CHECK(r.error_magnitude > 0.0);

    // p = 2: the gap is 6.1% at m = 100 and shrinks with m.
    double previous = INFINITY;
    for (std::size_t m : {100, 200, 400}) {
        const double exact = *expectation_integral(build_mixed(m, 2.0)).expectation;
        const double gap = std::abs(mixed_mean_asymptotic(m, 2.0).total / exact - 1.0);
        MESSAGE("p=2 m=" << m << " mean gap " << gap);
        CHECK(gap < previous);
        CHECK(gap < 0.07);
        previous = gap;
    }
}

TEST_CASE("mixed_second_asymptotic") {
    const auto r = mixed_second_asymptotic(50, 1.0);
    CHECK(r.leading_factor == 6.25e6);
    REQUIRE(r.terms.size() == 6);
    const double g = kEulerGamma;
    // ln p = 0 and 2/p = 2 at p = 1.
    CHECK(r.terms.back().value == doctest::Approx(g * g + kPi2Over6 - 2.0 * g - 2.0 - 2.0).epsilon(1e-14));
    CHECK(r.total == doctest::Approx(r.leading_factor * sum_terms(r)).epsilon(1e-14));

    const double gap50 =
        std::abs(r.total / *second_rising_integral(build_mixed(50, 1.0)).second_rising - 1.0);
    const double gap200 = std::abs(mixed_second_asymptotic(200, 1.0).total /
                                       *second_rising_integral(build_mixed(200, 1.0)).second_rising -
                                   1.0);
    MESSAGE("second moment gap m=50 " << gap50 << " m=200 " << gap200);
    CHECK(gap200 < gap50);
    CHECK(gap200 < 0.101);
    const double gap400 = std::abs(mixed_second_asymptotic(400, 1.0).total /
                                       *second_rising_integral(build_mixed(400, 1.0)).second_rising -
                                   1.0);
    CHECK(gap400 < 0.10);
}

TEST_CASE("mixed_variance_asymptotic assembles the two expansions") {
    const auto mean = mixed_mean_asymptotic(80, 1.5);
    const auto second = mixed_second_asymptotic(80, 1.5);
    const auto var = mixed_variance_asymptotic(80, 1.5);
    CHECK(var.regime == ExpansionRegime::mixed_variance);
    CHECK(var.total ==
          doctest::Approx(second.total - mean.total - mean.total * mean.total).epsilon(1e-12));
}

TEST_CASE("mixed_variance_leading") {
    CHECK(mixed_variance_leading(1, 1.0) == doctest::Approx(1.6449).epsilon(1e-4));
    CHECK(mixed_variance_leading(50, 1.0) == doctest::Approx(1.0281e7).epsilon(1e-4));
    CHECK(mixed_variance_leading(100, 0.5) == doctest::Approx(kPi2Over6 * 1e6).epsilon(1e-15));
}

TEST_CASE("mixed_gumbel_constants") {
    const auto c = mixed_gumbel_constants(50, 1.0);
    CHECK(c.scale == 2500.0);
    CHECK(std::abs(c.centering - 6369.90) <= 0.05);

    const auto five = mixed_gumbel_constants(5, 1.0);  // nearest integer to 2e
    CHECK(five.centering == doctest::Approx(25.0 * (std::log(5.0) - std::log(std::log(5.0)))).epsilon(1e-15));

    CHECK(mixed_gumbel_constants(50, 2.0).scale == 125000.0);
}

TEST_CASE("zipf_gumbel_constants") {
    const auto c = zipf_gumbel_constants(100, 1.0);
    CHECK(std::abs(c.centering - 1596.67) <= 0.01);
    CHECK(std::abs(c.scale - 518.738) <= 5e-4);

    // H_10 = 7381/2520.
    const double k10 = 10.0 * 7381.0 / 2520.0;
    const auto ten = zipf_gumbel_constants(10, 1.0);
    CHECK(ten.scale == doctest::Approx(k10).epsilon(1e-15));
    CHECK(ten.centering == doctest::Approx(k10 * (std::log(10.0) - std::log(std::log(10.0)))).epsilon(1e-14));
    CHECK(ten.centering == doctest::Approx(43.01340).epsilon(1e-6));
}

TEST_CASE("uniform_gumbel_constants") {
    const auto c = uniform_gumbel_constants(100);
    CHECK(c.centering == doctest::Approx(460.517).epsilon(1e-6));
    CHECK(c.scale == 100.0);
    CHECK(uniform_gumbel_constants(2).centering == doctest::Approx(1.3863).epsilon(1e-4));
    CHECK(uniform_gumbel_constants(1'000'000).centering == doctest::Approx(1e6 * std::log(1e6)).epsilon(1e-15));
}

TEST_CASE("zipf_mean_asymptotic") {
    const auto r = zipf_mean_asymptotic(100, 1.0);
    CHECK(std::abs(r.leading_factor - 518.738) <= 5e-4);
    CHECK(r.terms[0].value + r.terms[1].value == doctest::Approx(3.07799).epsilon(2e-6));
    CHECK(std::abs(r.leading_factor * (r.terms[0].value + r.terms[1].value) - 1596.67) <= 0.01);

    const double gap100 = std::abs(r.total / *expectation_integral(build_zipf(100, 1.0)).expectation - 1.0);
    const double gap400 = std::abs(zipf_mean_asymptotic(400, 1.0).total /
                                       *expectation_integral(build_zipf(400, 1.0)).expectation -
                                   1.0);
    CHECK(gap400 < 0.05);
    CHECK(gap400 < gap100);
}

TEST_CASE("mixed and Zipf brackets coincide term by term at p = 1") {
    for (std::size_t m : {10, 50, 1000}) {
        const auto a = mixed_mean_asymptotic(m, 1.0);
        const auto b = zipf_mean_asymptotic(m, 1.0);
        REQUIRE(a.terms.size() == b.terms.size());
        for (std::size_t i = 0; i < a.terms.size(); ++i) CHECK(a.terms[i].value == b.terms[i].value);
    }
}

TEST_CASE("scale squared times pi^2/6 is the variance leading term") {
    for (double p : {0.5, 1.0, 2.0}) {
        for (std::size_t m : {10, 50, 400}) {
            const double k = mixed_gumbel_constants(m, p).scale;
            CHECK(k * k * kPi2Over6 == doctest::Approx(mixed_variance_leading(m, p)).epsilon(1e-15));
        }
    }
}

TEST_CASE("uniform_mean_asymptotic") {
    const auto r = uniform_mean_asymptotic(1000);
    CHECK(r.total == doctest::Approx(1000.0 * (std::log(1000.0) + kEulerGamma)).epsilon(1e-15));
    // N H_N - N(ln N + gamma) -> 1/2.
    const double exact = *expectation_integral(build_uniform(1000)).expectation;
    CHECK(exact - r.total == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("gumbel_cdf") {
    CHECK(gumbel_cdf(2.25037) == doctest::Approx(0.90).epsilon(1e-6));
    CHECK(gumbel_cdf(0.0) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(gumbel_cdf(50.0) == 1.0);
    CHECK(gumbel_cdf(-50.0) == 0.0);
    CHECK(gumbel_cdf(INFINITY) == 1.0);
    CHECK(gumbel_cdf(-INFINITY) == 0.0);
}

TEST_CASE("gumbel_quantile") {
    CHECK(gumbel_quantile(0.90) == doctest::Approx(2.25037).epsilon(2e-6));
    CHECK(std::abs(gumbel_quantile(std::exp(-1.0))) < 1e-15);
    CHECK(gumbel_quantile(0.5) == doctest::Approx(0.366513).epsilon(2e-6));
    for (double q : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        CHECK(std::abs(gumbel_cdf(gumbel_quantile(q)) - q) <= 1e-12);
    }
    CHECK_THROWS_AS(gumbel_quantile(0.0), DomainError);
    CHECK_THROWS_AS(gumbel_quantile(1.0), DomainError);
    CHECK_THROWS_AS(gumbel_quantile(-0.2), DomainError);
}

TEST_CASE("domain guard rejects small m / p") {
    CHECK_THROWS_AS(mixed_mean_asymptotic(2, 1.0), DomainError);
    CHECK_THROWS_AS(mixed_second_asymptotic(5, 2.0), DomainError);
    CHECK_THROWS_AS(mixed_gumbel_constants(1, 1.0), DomainError);
    CHECK_THROWS_AS(zipf_mean_asymptotic(2, 1.0), DomainError);
    CHECK_NOTHROW(zipf_mean_asymptotic(2, 0.5));
    CHECK_NOTHROW(mixed_mean_asymptotic(3, 1.0));
    CHECK_THROWS_AS(uniform_gumbel_constants(1), DomainError);
    CHECK_THROWS_AS(mixed_mean_asymptotic(50, 0.0), InvalidArgument);
}

TEST_CASE("mean expansion approaches the exact mean along the m ladder") {
    for (double p : {0.5, 1.0, 2.0}) {
        double previous = INFINITY;
        for (std::size_t m : {50, 100, 200, 400}) {
            const double exact = *expectation_integral(build_mixed(m, p)).expectation;
            const double gap = std::abs(exact / mixed_mean_asymptotic(m, p).total - 1.0);
            CHECK(gap < previous);
            previous = gap;
        }
    }
}
