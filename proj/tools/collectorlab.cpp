// collectorlab command-line front end.
//
// Exit status: 0 success, 2 invalid input (bad flags, arguments outside a
// formula's domain, size limits), 3 numerical failure (quadrature did not
// converge, runaway simulation), 1 anything else.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "collectorlab/collectorlab.hpp"

using namespace collectorlab;
using nlohmann::json;

namespace {

enum class Output { json, csv, human };

struct FamilyArgs {
    std::string kind = "uniform";
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    double p = 1.0;
    std::vector<double> weights;
    std::string family_json;
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
    cmd->add_option("--kind", f.kind, "Family kind")
        ->check(CLI::IsMember({"uniform", "zipf", "mixed", "custom"}));
    cmd->add_option("--n", f.n, "Number of types N (mixed: even, m = N/2)");
    cmd->add_option("--m", f.m, "Number of uniform/Zipf pairs for the mixed family");
    cmd->add_option("--p", f.p, "Zipf exponent p > 0");
    cmd->add_option("--weights", f.weights, "Comma-separated weights for --kind custom")
        ->delimiter(',');
    cmd->add_option("--family", f.family_json, "Family as JSON, e.g. '{\"kind\":\"zipf\",\"n\":10,\"p\":1}'");
}

CouponFamily make_family(const FamilyArgs& f) {
    if (!f.family_json.empty()) {
        json spec;
        try {
            spec = json::parse(f.family_json);
        } catch (const json::parse_error& e) {
            throw InvalidArgument(std::string("--family is not valid JSON: ") + e.what());
        }
        return family_from_json(spec);
    }
    const FamilyKind kind = family_kind_from_string(f.kind);
    if (kind == FamilyKind::custom) {
        if (f.weights.empty()) throw InvalidArgument("--kind custom needs --weights");
        return build_custom(f.weights);
    }
    if (kind == FamilyKind::mixed) {
        if (f.m && f.n && *f.n != 2 * *f.m) throw InvalidArgument("--n must equal 2 * --m");
        if (f.m) return build_mixed(*f.m, f.p);
        if (!f.n) throw InvalidArgument("--kind mixed needs --m or --n");
        if (*f.n % 2 != 0) throw InvalidArgument("mixed families need an even --n");
        return build_mixed(*f.n / 2, f.p);
    }
    if (!f.n) throw InvalidArgument("--n is required");
    if (kind == FamilyKind::zipf) return build_zipf(*f.n, f.p);
    return build_uniform(*f.n);
}

SimulationOptions simulation_options() {
    SimulationOptions options;
    if (const char* env = std::getenv("COLLECTORLAB_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long t = std::strtoul(env, &end, 10);
        if (*end != '\0' || t == 0) throw InvalidArgument("COLLECTORLAB_THREADS must be a positive integer");
        options.threads = static_cast<unsigned>(t);
    }
    return options;
}

std::string num(double x) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : ""; }

void emit_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---- subcommands -----------------------------------------------------------

struct ExactArgs {
    FamilyArgs family;
    std::string method = "integral";
    double tol = 1e-9;
};

void run_family(const FamilyArgs& args, Output out) {
    const auto f = make_family(args);
    if (out == Output::json) return emit_json(family_to_json(f));
    if (out == Output::csv) {
        std::cout << "index,weight,probability\n";
        for (std::size_t j = 0; j < f.n_types(); ++j) {
            std::cout << j + 1 << ',' << num(f.weights()[j]) << ',' << num(f.probs()[j]) << '\n';
        }
        return;
    }
    std::cout << to_string(f.kind()) << " family, N = " << f.n_types()
              << ", weight sum = " << num(f.weight_sum())
              << ", smallest probability = " << num(f.min_probability()) << '\n';
}

void run_exact(const ExactArgs& args, Output out) {
    const auto f = make_family(args.family);
    MomentReport r;
    if (args.method == "integral") {
        r = variance_exact(f, {args.tol, 1e-14, 2000});
    } else {
        r.expectation = expectation_inclusion_exclusion(f);
        r.method = MomentMethod::inclusion_exclusion;
    }
    if (out == Output::json) {
        json j = to_json(r);
        j["family"] = family_spec_to_json(f);
        return emit_json(j);
    }
    if (out == Output::csv) {
        std::cout << "quantity,value\n"
                  << "expectation," << opt_num(r.expectation) << '\n'
                  << "second_rising," << opt_num(r.second_rising) << '\n'
                  << "variance," << opt_num(r.variance) << '\n'
                  << "abs_error_estimate," << num(r.abs_error_estimate) << '\n';
        return;
    }
    std::cout << "E[T]        = " << opt_num(r.expectation) << '\n';
    if (r.second_rising) std::cout << "E[T(T+1)]   = " << opt_num(r.second_rising) << '\n';
    if (r.variance) std::cout << "Var[T]      = " << opt_num(r.variance) << '\n';
    std::cout << "method      = " << to_string(r.method) << '\n';
}

struct AsymArgs {
    std::string kind = "mixed";
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    double p = 1.0;
    std::string expansion = "mean";
};

void run_asym(const AsymArgs& args, Output out) {
    const FamilyKind kind = family_kind_from_string(args.kind);
    std::size_t size = 0;
    if (kind == FamilyKind::mixed) {
        if (args.m) {
            size = *args.m;
        } else if (args.n && *args.n % 2 == 0) {
            size = *args.n / 2;
        } else {
            throw InvalidArgument("--kind mixed needs --m or an even --n");
        }
    } else {
        if (!args.n) throw InvalidArgument("--n is required");
        size = *args.n;
    }

    std::optional<AsymptoticReport> report;
    std::optional<GumbelConstants> constants;
    if (args.expansion == "constants") {
        switch (kind) {
            case FamilyKind::mixed: constants = mixed_gumbel_constants(size, args.p); break;
            case FamilyKind::zipf: constants = zipf_gumbel_constants(size, args.p); break;
            case FamilyKind::uniform: constants = uniform_gumbel_constants(size); break;
            case FamilyKind::custom: throw InvalidArgument("no normalization for custom families");
        }
    } else if (kind == FamilyKind::mixed) {
        if (args.expansion == "mean") report = mixed_mean_asymptotic(size, args.p);
        if (args.expansion == "second") report = mixed_second_asymptotic(size, args.p);
        if (args.expansion == "variance") report = mixed_variance_asymptotic(size, args.p);
    } else if (args.expansion == "mean") {
        if (kind == FamilyKind::zipf) report = zipf_mean_asymptotic(size, args.p);
        if (kind == FamilyKind::uniform) report = uniform_mean_asymptotic(size);
    }
    if (!report && !constants) {
        throw InvalidArgument("expansion '" + args.expansion + "' is not available for " + args.kind);
    }

    if (constants) {
        if (out == Output::json) {
            json j = to_json(*constants);
            j = json{{"schema", "gumbel_constants"}, {"schema_version", kSchemaVersion},
                     {"kind", args.kind}, {"size", size},
                     {"p", kind == FamilyKind::uniform ? json(nullptr) : json(args.p)},
                     {"centering", j["centering"]}, {"scale", j["scale"]}};
            return emit_json(j);
        }
        if (out == Output::csv) {
            std::cout << "quantity,value\ncentering," << num(constants->centering) << "\nscale,"
                      << num(constants->scale) << '\n';
            return;
        }
        std::cout << "m_N = " << num(constants->centering) << ", k_N = " << num(constants->scale) << '\n';
        return;
    }
    if (out == Output::json) return emit_json(to_json(*report));
    if (out == Output::csv) {
        std::cout << "term,value\n";
        for (const auto& t : report->terms) std::cout << '"' << t.name << "\"," << num(t.value) << '\n';
        return;
    }
    for (const auto& t : report->terms) std::cout << "  " << t.name << " = " << num(t.value) << '\n';
    std::cout << "bracket = " << num(report->bracket_total) << ", factor = " << num(report->leading_factor)
              << ", total = " << num(report->total) << " (relative error order "
              << num(report->error_magnitude) << ")\n";
}

struct SimulateArgs {
    FamilyArgs family;
    std::uint64_t replicates = 100000;
    std::uint64_t seed = 0;
    bool no_gumbel = false;
    std::string dump;
};

void run_simulate(const SimulateArgs& args, Output out) {
    const auto f = make_family(args.family);
    const auto sample = simulate_completion_times(f, args.replicates, args.seed, simulation_options());
    std::optional<GumbelConstants> g;
    if (!args.no_gumbel && f.kind() != FamilyKind::custom) g = matched_gumbel_constants(f);
    const auto s = summarize(sample, args.seed, f.n_types(), g);

    if (!args.dump.empty()) {
        std::ofstream file(args.dump);
        if (!file) throw Error("cannot open '" + args.dump + "' for writing");
        write_completion_csv(file, sample);
    }
    if (out == Output::json) {
        json j = to_json(s);
        j["family"] = family_spec_to_json(f);
        return emit_json(j);
    }
    if (out == Output::csv) return write_completion_csv(std::cout, sample);
    std::cout << "replicates " << s.replicates << ", seed " << s.seed << '\n'
              << "mean " << num(s.sample_mean) << ", variance " << num(s.sample_variance)
              << ", range [" << s.min_trials << ", " << s.max_trials << "]\n";
    for (const auto& [q, t] : s.quantiles) std::cout << "  q" << num(q) << " = " << t << '\n';
    if (s.ks_statistic) std::cout << "KS distance to Gumbel = " << num(*s.ks_statistic) << '\n';
}

struct PlanArgs {
    FamilyArgs family;
    double q = 0.90;
    std::string method = "gumbel";
    std::uint64_t replicates = 100000;
    std::uint64_t seed = 0;
};

void run_plan(const PlanArgs& args, Output out) {
    const auto f = make_family(args.family);
    PlanResult r;
    if (args.method == "gumbel") {
        r = plan_gumbel(f, args.q);
    } else if (args.method == "exact") {
        r = plan_exact(f, args.q);
    } else {
        r = plan_monte_carlo(f, args.q, args.replicates, args.seed, simulation_options());
    }
    if (out == Output::json) {
        json j = to_json(r);
        j["family"] = family_spec_to_json(f);
        return emit_json(j);
    }
    if (out == Output::csv) {
        std::cout << "method,q,trials\n" << to_string(r.method) << ',' << num(r.target_q) << ',' << r.trials << '\n';
        return;
    }
    std::cout << r.trials << " trials give a complete set with probability >= " << num(r.target_q) << " ("
              << to_string(r.method) << ")\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
}

struct KsArgs {
    std::string kind = "uniform";
    double p = 1.0;
    std::vector<std::size_t> sizes;
    std::uint64_t replicates = 100000;
    std::uint64_t seed = 0;
};

void run_ks_trend(const KsArgs& args, Output out) {
    const FamilyKind kind = family_kind_from_string(args.kind);
    const auto points = ks_trend(kind, args.p, args.sizes, args.replicates, args.seed, simulation_options());
    if (out == Output::json) return emit_json(ks_trend_to_json(kind, args.p, args.replicates, args.seed, points));
    if (out == Output::csv) std::cout << "size,ks_statistic\n";
    for (const auto& pt : points) {
        if (out == Output::csv) {
            std::cout << pt.size << ',' << num(pt.ks_statistic) << '\n';
        } else {
            std::cout << "size " << pt.size << ": KS = " << num(pt.ks_statistic) << '\n';
        }
    }
}

struct WkArgs {
    std::size_t m = 5;
    double p = 1.0;
};

void run_wk_check(const WkArgs& args, Output out) {
    struct Row {
        std::size_t k;
        double w;
        double q;
        std::optional<double> log_asymptotic;
    };
    std::vector<Row> rows;
    for (std::size_t k = 1; k <= args.m; ++k) {
        std::optional<double> la;
        try {
            la = log_wk_asymptotic(args.m, args.p, k);
        } catch (const DomainError&) {
        }
        rows.push_back({k, wk_integral(args.m, args.p, k, false), wk_integral(args.m, args.p, k, true), la});
    }
    std::optional<DecompositionCheck> check;
    if (args.m <= kDecompositionMaxPairs) check = decomposition_check(args.m, args.p);

    if (out == Output::json) {
        json j{{"schema", "wk_check"}, {"schema_version", kSchemaVersion}, {"m", args.m}, {"p", args.p}};
        json w = json::array();
        for (const auto& r : rows) {
            w.push_back({{"k", r.k},
                         {"w", significant(r.w)},
                         {"q", significant(r.q)},
                         {"log_w", significant(std::log(r.w))},
                         {"log_asymptotic", r.log_asymptotic ? json(significant(*r.log_asymptotic)) : json(nullptr)}});
        }
        j["integrals"] = std::move(w);
        j["decomposition"] = check ? to_json(*check) : json(nullptr);
        return emit_json(j);
    }
    if (out == Output::csv) std::cout << "k,w,q,log_w,log_asymptotic\n";
    for (const auto& r : rows) {
        if (out == Output::csv) {
            std::cout << r.k << ',' << num(r.w) << ',' << num(r.q) << ',' << num(std::log(r.w)) << ','
                      << opt_num(r.log_asymptotic) << '\n';
        } else {
            std::cout << "W_" << r.k << " = " << num(r.w) << ", ln W_" << r.k << " = " << num(std::log(r.w));
            if (r.log_asymptotic) std::cout << " (approximation " << num(*r.log_asymptotic) << ')';
            std::cout << '\n';
        }
    }
    if (check && out == Output::human) {
        std::cout << "mean: direct " << num(check->direct_mean) << ", split " << num(check->split_mean)
                  << ", residual " << num(check->residual) << '\n'
                  << "second rising: direct " << num(check->direct_second_rising) << ", split "
                  << num(check->split_second_rising) << ", residual " << num(check->second_rising_residual)
                  << '\n';
    }
}

void run_reproduce_example(Output out) {
    const auto ex = reproduce_example();
    if (out == Output::json) return emit_json(to_json(ex));
    if (out == Output::csv) {
        std::cout << "family,centering,scale,trials,expected\n";
        for (const auto& r : ex.rows) {
            std::cout << r.label << ',' << num(r.constants.centering) << ',' << num(r.constants.scale) << ','
                      << r.trials << ',' << r.expected_trials << '\n';
        }
        return;
    }
    std::cout << "q = " << num(ex.q) << ", lambda = -ln(-ln q) = " << num(ex.quantile_y) << '\n';
    for (const auto& r : ex.rows) {
        std::cout << "  " << r.label << ": m_N = " << num(r.constants.centering)
                  << ", k_N = " << num(r.constants.scale) << ", trials = " << r.trials;
        if (r.trials != r.expected_trials) std::cout << "  (expected " << r.expected_trials << ")";
        std::cout << '\n';
        if (!r.note.empty()) std::cout << "    note: " << r.note << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupon collector moments, asymptotics, simulation and planning"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output = "json";
    app.add_option("--output", output, "Output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();

    FamilyArgs family_args;
    auto* family_cmd = app.add_subcommand("family", "Show a family's probabilities");
    add_family_options(family_cmd, family_args);

    ExactArgs exact_args;
    auto* exact_cmd = app.add_subcommand("exact", "Exact moments by quadrature or subset enumeration");
    add_family_options(exact_cmd, exact_args.family);
    exact_cmd->add_option("--method", exact_args.method)
        ->check(CLI::IsMember({"integral", "inclusion-exclusion"}))
        ->capture_default_str();
    exact_cmd->add_option("--tol", exact_args.tol, "Relative quadrature tolerance")->capture_default_str();

    AsymArgs asym_args;
    auto* asym_cmd = app.add_subcommand("asym", "Large-N expansions and Gumbel constants");
    asym_cmd->add_option("--kind", asym_args.kind)->check(CLI::IsMember({"uniform", "zipf", "mixed"}));
    asym_cmd->add_option("--n", asym_args.n);
    asym_cmd->add_option("--m", asym_args.m);
    asym_cmd->add_option("--p", asym_args.p);
    asym_cmd->add_option("--expansion", asym_args.expansion)
        ->check(CLI::IsMember({"mean", "second", "variance", "constants"}))
        ->capture_default_str();

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo completion times");
    add_family_options(sim_cmd, sim_args.family);
    sim_cmd->add_option("--replicates", sim_args.replicates)->capture_default_str();
    sim_cmd->add_option("--seed", sim_args.seed)->capture_default_str();
    sim_cmd->add_flag("--no-gumbel", sim_args.no_gumbel, "Skip the KS distance to the Gumbel limit");
    sim_cmd->add_option("--dump", sim_args.dump, "Write sorted completion times (CSV) to this file");

    PlanArgs plan_args;
    auto* plan_cmd = app.add_subcommand("plan", "Trials needed for a complete set with probability q");
    add_family_options(plan_cmd, plan_args.family);
    plan_cmd->add_option("--q", plan_args.q)->capture_default_str();
    plan_cmd->add_option("--method", plan_args.method)
        ->check(CLI::IsMember({"gumbel", "exact", "monte-carlo"}))
        ->capture_default_str();
    plan_cmd->add_option("--replicates", plan_args.replicates)->capture_default_str();
    plan_cmd->add_option("--seed", plan_args.seed)->capture_default_str();

    KsArgs ks_args;
    auto* ks_cmd = app.add_subcommand("ks-trend", "KS distance to the Gumbel limit across sizes");
    ks_cmd->add_option("--kind", ks_args.kind)->check(CLI::IsMember({"uniform", "zipf", "mixed"}));
    ks_cmd->add_option("--p", ks_args.p);
    ks_cmd->add_option("--sizes", ks_args.sizes, "Comma list of N (mixed: m)")->delimiter(',')->required();
    ks_cmd->add_option("--replicates", ks_args.replicates)->capture_default_str();
    ks_cmd->add_option("--seed", ks_args.seed)->capture_default_str();

    WkArgs wk_args;
    auto* wk_cmd = app.add_subcommand("wk-check", "W_k integrals and the splitting identities");
    wk_cmd->add_option("--m", wk_args.m)->capture_default_str();
    wk_cmd->add_option("--p", wk_args.p)->capture_default_str();

    auto* example_cmd = app.add_subcommand("reproduce-example", "The N = 100, q = 0.90 worked example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Output out = output == "csv" ? Output::csv : output == "human" ? Output::human : Output::json;
    try {
        if (*family_cmd) run_family(family_args, out);
        if (*exact_cmd) run_exact(exact_args, out);
        if (*asym_cmd) run_asym(asym_args, out);
        if (*sim_cmd) run_simulate(sim_args, out);
        if (*plan_cmd) run_plan(plan_args, out);
        if (*ks_cmd) run_ks_trend(ks_args, out);
        if (*wk_cmd) run_wk_check(wk_args, out);
        if (*example_cmd) run_reproduce_example(out);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const AccuracyError& e) {
        std::cerr << "error: " << e.what() << " (best estimate " << num(e.best_estimate()) << ", error "
                  << num(e.error_estimate()) << ")\n";
        return 3;
    } catch (const RunawayError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
