#include "collectorlab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "collectorlab/errors.hpp"

namespace collectorlab {

using nlohmann::json;

namespace {

json header(const char* schema) {
    return json{{"schema", schema}, {"schema_version", kSchemaVersion}};
}

json optional_number(const std::optional<double>& v) {
    return v ? json(significant(*v)) : json(nullptr);
}

std::size_t read_size(const json& spec, const char* key) {
    if (!spec.contains(key)) throw InvalidArgument(std::string("family spec is missing '") + key + "'");
    const json& v = spec.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw InvalidArgument(std::string("family spec field '") + key + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

double read_exponent(const json& spec) {
    if (!spec.contains("p") || !spec.at("p").is_number()) {
        throw InvalidArgument("family spec needs a numeric 'p'");
    }
    return spec.at("p").get<double>();
}

}  // namespace

double significant(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::strtod(buf, nullptr);
}

CouponFamily family_from_json(const json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
        throw InvalidArgument("family spec must be an object with a string 'kind'");
    }
    const FamilyKind kind = family_kind_from_string(spec.at("kind").get<std::string>());
    switch (kind) {
        case FamilyKind::uniform: return build_uniform(read_size(spec, "n"));
        case FamilyKind::zipf: return build_zipf(read_size(spec, "n"), read_exponent(spec));
        case FamilyKind::mixed: {
            const std::size_t n = read_size(spec, "n");
            if (n % 2 != 0) throw InvalidArgument("mixed families need an even number of types");
            return build_mixed(n / 2, read_exponent(spec));
        }
        case FamilyKind::custom: {
            if (!spec.contains("weights") || !spec.at("weights").is_array()) {
                throw InvalidArgument("custom family spec needs a 'weights' array");
            }
            std::vector<double> w;
            for (const auto& x : spec.at("weights")) {
                if (!x.is_number()) throw InvalidArgument("custom weights must be numbers");
                w.push_back(x.get<double>());
            }
            return build_custom(std::move(w));
        }
    }
    throw InvalidArgument("unsupported family kind");
}

json family_spec_to_json(const CouponFamily& family) {
    json j{{"kind", std::string(to_string(family.kind()))}};
    if (family.kind() == FamilyKind::custom) {
        j["weights"] = std::vector<double>(family.weights().begin(), family.weights().end());
        return j;
    }
    j["n"] = family.n_types();
    if (family.zipf_exponent()) j["p"] = *family.zipf_exponent();
    return j;
}

json family_to_json(const CouponFamily& family) {
    json j = header("family");
    j["family"] = family_spec_to_json(family);
    j["n_types"] = family.n_types();
    j["weight_sum"] = significant(family.weight_sum());
    json probs = json::array();
    for (double p : family.probs()) probs.push_back(significant(p));
    j["probs"] = std::move(probs);
    return j;
}

json to_json(const MomentReport& report) {
    json j = header("moments");
    j["expectation"] = optional_number(report.expectation);
    j["second_rising"] = optional_number(report.second_rising);
    j["variance"] = optional_number(report.variance);
    j["method"] = std::string(to_string(report.method));
    j["abs_error_estimate"] = significant(report.abs_error_estimate);
    return j;
}

json to_json(const AsymptoticReport& report) {
    json j = header("asymptotic");
    j["regime"] = std::string(to_string(report.regime));
    json terms = json::array();
    for (const auto& t : report.terms) {
        terms.push_back({{"name", t.name}, {"value", significant(t.value)}});
    }
    j["terms"] = std::move(terms);
    j["bracket_total"] = significant(report.bracket_total);
    j["leading_factor"] = significant(report.leading_factor);
    j["total"] = significant(report.total);
    j["error_magnitude"] = significant(report.error_magnitude);
    return j;
}

json to_json(const GumbelConstants& c) {
    return json{{"centering", significant(c.centering)}, {"scale", significant(c.scale)}};
}

json to_json(const SimulationSummary& s) {
    json j = header("simulation");
    j["replicates"] = s.replicates;
    j["seed"] = s.seed;
    j["n_types"] = s.n_types;
    j["sample_mean"] = significant(s.sample_mean);
    j["sample_variance"] = significant(s.sample_variance);
    j["sample_second_rising"] = significant(s.sample_second_rising);
    j["min_trials"] = s.min_trials;
    j["max_trials"] = s.max_trials;
    json q = json::array();
    for (const auto& [prob, trials] : s.quantiles) {
        q.push_back({{"q", prob}, {"trials", trials}});
    }
    j["quantiles"] = std::move(q);
    j["gumbel"] = s.gumbel ? to_json(*s.gumbel) : json(nullptr);
    j["ks_statistic"] = optional_number(s.ks_statistic);
    return j;
}

json to_json(const PlanResult& plan) {
    json j = header("plan");
    j["trials"] = plan.trials;
    j["method"] = std::string(to_string(plan.method));
    j["target_q"] = plan.target_q;
    j["quantile_y"] = optional_number(plan.quantile_y);
    j["constants"] = plan.constants ? to_json(*plan.constants) : json(nullptr);
    j["achieved_q"] = optional_number(plan.achieved_q);
    j["replicates"] = plan.replicates ? json(*plan.replicates) : json(nullptr);
    j["seed"] = plan.seed ? json(*plan.seed) : json(nullptr);
    if (!plan.note.empty()) j["note"] = plan.note;
    return j;
}

json to_json(const DecompositionCheck& c) {
    json j = header("decomposition");
    j["direct_mean"] = significant(c.direct_mean);
    j["split_mean"] = significant(c.split_mean);
    j["residual"] = significant(c.residual);
    j["direct_second_rising"] = significant(c.direct_second_rising);
    j["split_second_rising"] = significant(c.split_second_rising);
    j["second_rising_residual"] = significant(c.second_rising_residual);
    return j;
}

json to_json(const ExampleReproduction& example) {
    json j = header("example");
    j["q"] = example.q;
    j["quantile_y"] = significant(example.quantile_y);
    json rows = json::array();
    for (const auto& row : example.rows) {
        json r{{"label", row.label},
               {"kind", std::string(to_string(row.kind))},
               {"n_types", row.n_types},
               {"constants", to_json(row.constants)},
               {"trials", row.trials},
               {"expected_trials", row.expected_trials},
               {"matches", row.trials == row.expected_trials}};
        if (!row.note.empty()) r["note"] = row.note;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["matches"] = example.matches();
    return j;
}

json ks_trend_to_json(FamilyKind kind, double p, std::uint64_t replicates, std::uint64_t seed,
                      const std::vector<KsPoint>& points) {
    json j = header("ks_trend");
    j["kind"] = std::string(to_string(kind));
    j["p"] = kind == FamilyKind::uniform ? json(nullptr) : json(p);
    j["replicates"] = replicates;
    j["seed"] = seed;
    json rows = json::array();
    for (const auto& pt : points) {
        rows.push_back({{"size", pt.size}, {"ks_statistic", significant(pt.ks_statistic)}});
    }
    j["points"] = std::move(rows);
    return j;
}

void write_completion_csv(std::ostream& out, const CompletionHistogram& sample) {
    for (const auto& bin : sample.bins) {
        for (std::uint64_t i = 0; i < bin.count; ++i) out << bin.trials << '\n';
    }
}

}  // namespace collectorlab
