// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "collectorlab/collectorlab.hpp"
#include "oracles/oracles.hpp"

using namespace collectorlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::string join(const std::vector<double>& xs, const char* format) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(format, xs[i]);
    }
    return out;
}

bool strictly_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] < xs[i - 1])) return false;
    }
    return true;
}

double rel_gap(double a, double b) { return std::abs(a / b - 1.0); }

void example_reproduction() {
    const auto start = Clock::now();
    const auto ex = reproduce_example();
    const double elapsed = seconds_since(start);
    const auto& mixed = ex.rows[0];
    const auto& zipf = ex.rows[1];
    const auto& uniform = ex.rows[2];
    const bool pass = mixed.trials == 11996 && zipf.trials == 2765 && uniform.trials == 686 &&
                      std::abs(ex.quantile_y - 2.25037) < 5e-6 &&
                      std::abs(zipf.constants.scale - 518.738) < 5e-4 &&
                      std::abs(zipf.constants.centering - 1596.67) <= 0.01 &&
                      std::abs(mixed.constants.centering - 6369.90) <= 0.05 && elapsed < 1.0;
    report(1, "Example reproduction", pass,
           fmt("trials %llu/%llu/%llu, lambda=%.6f, zipf k=%.4f m=%.4f, mixed m=%.4f, %.3fs",
               static_cast<unsigned long long>(mixed.trials),
               static_cast<unsigned long long>(zipf.trials),
               static_cast<unsigned long long>(uniform.trials), ex.quantile_y,
               zipf.constants.scale, zipf.constants.centering, mixed.constants.centering,
               elapsed));
}

void oracle_equivalence() {
    const auto start = Clock::now();
    double worst_ie = 0.0;
    for (std::size_t n : {2, 4, 8, 16}) {
        std::vector<CouponFamily> families = {build_uniform(n)};
        for (double p : {0.5, 1.0, 2.0}) {
            families.push_back(build_zipf(n, p));
            families.push_back(build_mixed(n / 2, p));
        }
        for (const auto& f : families) {
            worst_ie = std::max(worst_ie, rel_gap(*expectation_integral(f).expectation,
                                                  expectation_inclusion_exclusion(f)));
        }
    }
    double worst_chain = 0.0;
    const QuadratureSettings tight{1e-13, 1e-16, 4000};
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto f = build_uniform(n);
        const double chain = static_cast<double>(oracles::uniform_chain(n).mean);
        worst_chain = std::max({worst_chain, rel_gap(*expectation_integral(f, tight).expectation, chain),
                                rel_gap(expectation_inclusion_exclusion(f), chain)});
    }
    const double elapsed = seconds_since(start);
    report(2, "Oracle equivalence", worst_ie <= 1e-8 && worst_chain <= 1e-10 && elapsed < 30.0,
           fmt("max rel gap integral vs subsets %.2e (<= 1e-8), vs Markov chain %.2e (<= 1e-10), %.2fs",
               worst_ie, worst_chain, elapsed));
}

void decomposition_identity() {
    double worst = 0.0;
    for (std::size_t m = 1; m <= 10; ++m) {
        for (double p : {0.5, 1.0, 2.0}) worst = std::max(worst, decomposition_check(m, p).residual);
    }
    report(3, "Decomposition identity", worst <= 1e-6,
           fmt("max residual over m <= 10, p in {0.5,1,2}: %.2e (<= 1e-6)", worst));
}

void asymptotic_trend() {
    const auto start = Clock::now();
    std::vector<double> mean_gaps;
    std::vector<double> second_gaps;
    for (std::size_t m : {50, 100, 200, 400}) {
        const auto family = build_mixed(m, 1.0);
        const auto exact = variance_exact(family);
        mean_gaps.push_back(rel_gap(*exact.expectation, mixed_mean_asymptotic(m, 1.0).total));
        second_gaps.push_back(rel_gap(*exact.second_rising, mixed_second_asymptotic(m, 1.0).total));
    }
    const double elapsed = seconds_since(start);
    report(4, "Asymptotic convergence trend",
           strictly_decreasing(mean_gaps) && strictly_decreasing(second_gaps) && elapsed < 120.0,
           "mean gaps [" + join(mean_gaps, "%.4f") + "], second-moment gaps [" +
               join(second_gaps, "%.4f") + "] over m = 50,100,200,400; " + fmt("%.2fs", elapsed));
}

void variance_trend() {
    std::vector<double> ratios;
    std::vector<double> gaps;
    for (std::size_t m : {50, 100, 200, 400}) {
        const double ratio = *variance_exact(build_mixed(m, 1.0)).variance / mixed_variance_leading(m, 1.0);
        ratios.push_back(ratio);
        gaps.push_back(std::abs(ratio - 1.0));
    }
    report(5, "Variance leading term", strictly_decreasing(gaps),
           "Var/((pi^2/6) m^4) = [" + join(ratios, "%.4f") + "] over m = 50,100,200,400");
}

void gumbel_limit() {
    const auto start = Clock::now();
    const std::uint64_t replicates = 100'000;
    struct Ladder {
        const char* name;
        FamilyKind kind;
        std::vector<std::size_t> sizes;
    };
    const Ladder ladders[] = {{"uniform", FamilyKind::uniform, {50, 200, 800}},
                              {"zipf", FamilyKind::zipf, {50, 200, 800}},
                              {"mixed(m)", FamilyKind::mixed, {25, 50, 100}}};
    bool pass = true;
    std::string detail;
    for (const auto& ladder : ladders) {
        std::vector<double> ks;
        for (const auto& pt : ks_trend(ladder.kind, 1.0, ladder.sizes, replicates, 0)) {
            ks.push_back(pt.ks_statistic);
        }
        const bool ok = strictly_decreasing(ks) && ks.back() < 0.05;
        pass = pass && ok;
        detail += std::string(ladder.name) + " [" + join(ks, "%.4f") + "]" + (ok ? "" : " (fails)") + "; ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 180.0;
    report(6, "Gumbel limit", pass, detail + fmt("final KS must be < 0.05; %.1fs", elapsed));
}

void determinism() {
    const std::vector<CouponFamily> families = {build_uniform(100), build_zipf(100, 1.0),
                                                build_mixed(50, 1.0)};
    bool pass = true;
    for (const auto& f : families) {
        const auto g = matched_gumbel_constants(f);
        std::string reference;
        for (unsigned threads : {1u, 4u, 8u}) {
            const auto bytes = to_json(simulate(f, 20'000, 2024, g, {threads})).dump();
            if (reference.empty()) reference = bytes;
            pass = pass && bytes == reference;
        }
    }
    report(7, "Simulation determinism", pass,
           "JSON summaries at 1, 4 and 8 threads for uniform, Zipf and mixed N = 100");
}

void statistical_consistency() {
    const auto start = Clock::now();
    const std::uint64_t replicates = 100'000;
    struct Case {
        const char* name;
        CouponFamily family;
    };
    const Case cases[] = {{"uniform", build_uniform(16)},
                          {"zipf", build_zipf(16, 1.0)},
                          {"mixed", build_mixed(8, 1.0)}};
    bool pass = true;
    std::string detail;
    for (const auto& c : cases) {
        const double exact = *expectation_integral(c.family).expectation;
        int within = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto s = simulate(c.family, replicates, seed);
            const double se = std::sqrt(s.sample_variance / static_cast<double>(replicates));
            within += std::abs(s.sample_mean - exact) < 3.0 * se;
        }
        pass = pass && within >= 95;
        detail += fmt("%s %d/100; ", c.name, within);
    }
    report(8, "Statistical consistency", pass, detail + fmt("need >= 95; %.1fs", seconds_since(start)));
}

}  // namespace

int main() {
    example_reproduction();
    oracle_equivalence();
    decomposition_identity();
    asymptotic_trend();
    variance_trend();
    gumbel_limit();
    determinism();
    statistical_consistency();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
