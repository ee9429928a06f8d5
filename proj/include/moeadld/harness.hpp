#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include <moeadld/engine.hpp>
#include <moeadld/io.hpp>
#include <moeadld/metrics.hpp>
#include <moeadld/problems.hpp>
#include <moeadld/weights.hpp>

namespace moeadld {

/// One requested quality indicator.
struct MetricSpec {
    std::string name;            // "igd" or "hv"
    std::optional<HvConfig::Mode> mode; // hv only; default exact up to 10 objectives
    std::size_t samples = 1000000;      // monte-carlo sample count
    bool normalize = true;              // hv values rescaled by the reference box
};

/// Fully resolved description of one experiment: problem instance, weight
/// spec, algorithm settings, metric list, seeding, and output policy.
struct ExperimentConfig {
    std::string problem;
    std::size_t objectives = 3;
    std::size_t runs = 20;

    std::optional<std::size_t> divisions;          // single-layer D
    std::optional<std::size_t> boundary_divisions; // two-layer D1
    std::optional<std::size_t> inside_divisions;   // two-layer D2
    double tau = 0.5;

    AlgoConfig algo; // algo.generations/normalize/constrained resolved on load
    std::vector<MetricSpec> metrics;
    std::uint64_t base_seed = 1;
    std::size_t workers = 1;
    std::string output_dir;
    std::optional<std::string> reference_file; // external reference set override
    std::string format = "csv";                // results file format
};

namespace harness_detail {

struct TableDefaults {
    std::optional<std::size_t> divisions, boundary, inside;
    bool known = false;
};

// population-size table: divisions per objective count
inline TableDefaults weight_defaults(std::size_t m) {
    TableDefaults t;
    t.known = true;
    switch (m) {
    case 3: t.divisions = 12; break;
    case 5: t.divisions = 6; break;
    case 8: t.boundary = 3; t.inside = 2; break;
    case 10: t.boundary = 3; t.inside = 2; break;
    case 15: t.boundary = 2; t.inside = 1; break;
    default: t.known = false;
    }
    return t;
}

// generation budgets per instance; constrained problems inherit their
// parent's row, the WFG family always runs 3000
inline std::optional<std::size_t> generation_default(const std::string& problem, std::size_t m) {
    if (problem.rfind("wfg", 0) == 0) return 3000;
    std::string base = problem;
    if (base == "c1_dtlz1" || base == "c3_dtlz1") base = "dtlz1";
    else if (base == "c2_dtlz2") base = "dtlz2";
    else if (base == "c3_dtlz4") base = "dtlz4";
    static const std::size_t table[4][5] = {
        {400, 600, 750, 1000, 1500},   // dtlz1
        {250, 350, 500, 750, 1000},    // dtlz2
        {1000, 1000, 1000, 1500, 2000}, // dtlz3
        {600, 1000, 1250, 2000, 3000},  // dtlz4
    };
    std::size_t col;
    switch (m) {
    case 3: col = 0; break;
    case 5: col = 1; break;
    case 8: col = 2; break;
    case 10: col = 3; break;
    case 15: col = 4; break;
    default: return std::nullopt;
    }
    if (base.rfind("dtlz", 0) == 0 && base.size() == 5) {
        int id = base[4] - '0';
        if (id >= 1 && id <= 4) return table[id - 1][col];
    }
    return std::nullopt;
}

inline std::string default_metric_for(const Problem& problem) {
    return problem.name().rfind("wfg", 0) == 0 ? "hv" : "igd";
}

} // namespace harness_detail

/// Generate the experiment's weight set from its (possibly defaulted)
/// divisions spec.
inline WeightSet experiment_weights(const ExperimentConfig& config) {
    if (config.boundary_divisions && config.inside_divisions)
        return generate_two_layer(config.objectives, *config.boundary_divisions,
                                  *config.inside_divisions, config.tau);
    if (config.divisions) return generate_simplex_lattice(config.objectives, *config.divisions);
    throw std::invalid_argument("no weight spec: give divisions or boundary/inside divisions");
}

/// Fill everything the file left out: weight spec and generation budget
/// from the parameter tables, normalization by problem family, constraint
/// handling by constraint count, and the family's customary metric.
inline ExperimentConfig resolve_defaults(ExperimentConfig config) {
    config.problem = canonical_problem_name(config.problem);
    auto problem = make_problem(config.problem, config.objectives); // validates the pair

    if (!config.divisions && !config.boundary_divisions) {
        auto t = harness_detail::weight_defaults(config.objectives);
        if (!t.known)
            throw std::invalid_argument(
                "no default weight spec for " + std::to_string(config.objectives) +
                " objectives: set divisions or boundary/inside divisions explicitly");
        config.divisions = t.divisions;
        config.boundary_divisions = t.boundary;
        config.inside_divisions = t.inside;
    }
    if (config.boundary_divisions.has_value() != config.inside_divisions.has_value())
        throw std::invalid_argument("two-layer weights need both boundary and inside divisions");

    if (config.algo.generations == 0) {
        auto g = harness_detail::generation_default(config.problem, config.objectives);
        if (!g)
            throw std::invalid_argument("no default generation budget for " + config.problem +
                                        " with " + std::to_string(config.objectives) +
                                        " objectives: set generations explicitly");
        config.algo.generations = *g;
    }

    config.algo.constrained = problem->constraint_count() > 0;

    if (config.metrics.empty()) {
        MetricSpec spec;
        spec.name = harness_detail::default_metric_for(*problem);
        config.metrics.push_back(spec);
    }
    for (MetricSpec& spec : config.metrics) {
        if (spec.name != "igd" && spec.name != "hv")
            throw std::invalid_argument("unknown metric: " + spec.name);
        if (spec.name == "hv" && !spec.mode)
            spec.mode = config.objectives <= 10 ? HvConfig::Mode::exact
                                                : HvConfig::Mode::monte_carlo;
        if (spec.name == "igd" && config.problem.rfind("wfg", 0) == 0 &&
            !config.reference_file)
            throw std::invalid_argument(
                "igd on wfg needs an external reference file (no closed-form front)");
    }

    if (config.runs < 1) throw std::invalid_argument("run count must be at least 1");
    if (config.workers < 1) config.workers = 1;
    if (config.format != "csv" && config.format != "json")
        throw std::invalid_argument("format must be csv or json");

    if (config.output_dir.empty()) {
        if (const char* env = std::getenv("MOEADLD_OUT_DIR")) config.output_dir = env;
        else config.output_dir = ".";
    }
    return config;
}

/// Parse an experiment config file (JSON) and resolve its defaults. The
/// `normalize` flag follows the problem family unless the file pins it.
inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed config " + path + ": " + e.what());
    }

    ExperimentConfig c;
    c.problem = j.at("problem").get<std::string>();
    c.objectives = j.at("objectives").get<std::size_t>();
    if (j.contains("runs")) c.runs = j["runs"].get<std::size_t>();
    if (j.contains("generations")) c.algo.generations = j["generations"].get<std::size_t>();
    if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("workers")) c.workers = j["workers"].get<std::size_t>();
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("reference_file")) c.reference_file = j["reference_file"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();

    if (j.contains("weights")) {
        const auto& w = j["weights"];
        if (w.contains("divisions")) c.divisions = w["divisions"].get<std::size_t>();
        if (w.contains("boundary_divisions"))
            c.boundary_divisions = w["boundary_divisions"].get<std::size_t>();
        if (w.contains("inside_divisions"))
            c.inside_divisions = w["inside_divisions"].get<std::size_t>();
        if (w.contains("tau")) c.tau = w["tau"].get<double>();
    }

    bool normalize_set = false;
    if (j.contains("algorithm")) {
        const auto& a = j["algorithm"];
        if (a.contains("theta")) c.algo.theta = a["theta"].get<double>();
        if (a.contains("neighborhood_size"))
            c.algo.neighborhood_size = a["neighborhood_size"].get<std::size_t>();
        if (a.contains("normalize")) {
            c.algo.normalize = a["normalize"].get<bool>();
            normalize_set = true;
        }
        if (a.contains("crossover_probability"))
            c.algo.variation.crossover_probability = a["crossover_probability"].get<double>();
        if (a.contains("crossover_index"))
            c.algo.variation.crossover_index = a["crossover_index"].get<double>();
        if (a.contains("mutation_probability"))
            c.algo.variation.mutation_probability = a["mutation_probability"].get<double>();
        if (a.contains("mutation_index"))
            c.algo.variation.mutation_index = a["mutation_index"].get<double>();
        if (a.contains("neighborhood_selection_probability"))
            c.algo.variation.neighborhood_selection_probability =
                a["neighborhood_selection_probability"].get<double>();
    }
    if (!normalize_set)
        c.algo.normalize = make_problem(c.problem, c.objectives)->disparately_scaled();

    if (j.contains("metrics")) {
        for (const auto& entry : j["metrics"]) {
            MetricSpec spec;
            if (entry.is_string()) {
                spec.name = entry.get<std::string>();
            } else {
                spec.name = entry.at("name").get<std::string>();
                if (entry.contains("mode")) {
                    std::string mode = entry["mode"].get<std::string>();
                    if (mode == "exact") spec.mode = HvConfig::Mode::exact;
                    else if (mode == "monte-carlo" || mode == "mc")
                        spec.mode = HvConfig::Mode::monte_carlo;
                    else throw std::runtime_error("unknown hv mode: " + mode);
                }
                if (entry.contains("samples")) spec.samples = entry["samples"].get<std::size_t>();
                if (entry.contains("normalize")) spec.normalize = entry["normalize"].get<bool>();
            }
            c.metrics.push_back(std::move(spec));
        }
    }
    return resolve_defaults(std::move(c));
}

/// Values of one metric across every run, seed-ordered, with the
/// best/median/worst summary (median is the lower-middle element for even
/// run counts).
struct MetricAggregate {
    std::string metric;
    bool higher_is_better = false;
    std::vector<double> values;
    std::vector<double> standard_errors; // only for sampled hypervolume
    double best = 0.0, median = 0.0, worst = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<RunRecord> records;                 // seed-ordered
    std::vector<std::vector<double>> metric_values; // [metric][run]
    std::vector<std::vector<double>> metric_errors; // [metric][run], hv mc only
    std::vector<MetricAggregate> aggregates;
};

namespace harness_detail {

inline MetricAggregate aggregate(const std::string& metric, bool higher_is_better,
                                 std::vector<double> values, std::vector<double> errors) {
    MetricAggregate a;
    a.metric = metric;
    a.higher_is_better = higher_is_better;
    a.values = std::move(values);
    a.standard_errors = std::move(errors);
    std::vector<double> sorted = a.values;
    std::sort(sorted.begin(), sorted.end());
    a.median = sorted[(sorted.size() - 1) / 2];
    if (higher_is_better) {
        a.best = sorted.back();
        a.worst = sorted.front();
    } else {
        a.best = sorted.front();
        a.worst = sorted.back();
    }
    return a;
}

// monte-carlo stream decoupled from the engine stream but tied to the run
inline std::uint64_t metric_seed(std::uint64_t run_seed) {
    return run_seed ^ 0x9e3779b97f4a7c15ULL;
}

} // namespace harness_detail

/// Execute the configured runs (optionally across worker threads), compute
/// every requested metric per run, and aggregate seed-ordered results.
inline ExperimentResult run_experiment(const ExperimentConfig& config_in) {
    ExperimentConfig config = config_in; // assumed resolved; cheap re-checks below
    auto problem = make_problem(config.problem, config.objectives);
    WeightSet weights = experiment_weights(config);

    // reference set for igd: external file override or the generated front
    PointSet reference;
    bool need_igd = false;
    for (const MetricSpec& spec : config.metrics) need_igd = need_igd || spec.name == "igd";
    if (need_igd) {
        if (config.reference_file) reference = load_points_file(*config.reference_file);
        else reference = problem->reference_front(weights);
    }

    const std::size_t n_runs = config.runs;
    std::vector<RunRecord> records(n_runs);
    std::vector<std::vector<double>> values(config.metrics.size(),
                                            std::vector<double>(n_runs, 0.0));
    std::vector<std::vector<double>> errors(config.metrics.size(),
                                            std::vector<double>(n_runs, 0.0));

    std::atomic<std::size_t> cursor{0};
    std::mutex failure_mutex;
    std::optional<std::string> failure;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= n_runs) return;
            AlgoConfig algo = config.algo;
            algo.seed = config.base_seed + i;
            try {
                RunRecord record = run(*problem, weights, algo);
                PointSet obtained;
                for (const Individual& ind : record.final_population)
                    obtained.push_back(ind.objectives);
                for (std::size_t s = 0; s < config.metrics.size(); ++s) {
                    const MetricSpec& spec = config.metrics[s];
                    if (spec.name == "igd") {
                        values[s][i] = igd(obtained, reference);
                    } else {
                        HvConfig hv;
                        hv.reference = problem->hv_reference_point();
                        hv.mode = spec.mode.value_or(HvConfig::Mode::exact);
                        hv.samples = spec.samples;
                        hv.normalize = spec.normalize;
                        Rng metric_rng(harness_detail::metric_seed(algo.seed));
                        HvEstimate e = hypervolume(obtained, hv, &metric_rng);
                        values[s][i] = e.value;
                        errors[s][i] = e.standard_error;
                    }
                }
                records[i] = std::move(record);
            } catch (const std::exception& e) {
                std::scoped_lock lock(failure_mutex);
                if (!failure)
                    failure = "run with seed " + std::to_string(config.base_seed + i) +
                              " failed: " + e.what();
                return;
            }
        }
    };

    if (config.workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < config.workers; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    if (failure) throw std::runtime_error(*failure);

    ExperimentResult result;
    result.config = config;
    result.records = std::move(records);
    result.metric_values = values;
    result.metric_errors = errors;
    for (std::size_t s = 0; s < config.metrics.size(); ++s)
        result.aggregates.push_back(harness_detail::aggregate(
            config.metrics[s].name, config.metrics[s].name == "hv", values[s], errors[s]));
    return result;
}

// --------------------------------------------------------------- export ----

/// CSV rows: problem, M, seed, metric, value (17 significant digits).
inline void export_results_csv(const ExperimentResult& result, std::ostream& os) {
    os << "problem,M,seed,metric,value\n";
    for (std::size_t s = 0; s < result.config.metrics.size(); ++s)
        for (std::size_t i = 0; i < result.config.runs; ++i)
            os << result.config.problem << ',' << result.config.objectives << ','
               << result.config.base_seed + i << ',' << result.config.metrics[s].name << ','
               << format_full(result.metric_values[s][i]) << '\n';
}

inline nlohmann::json experiment_config_json(const ExperimentConfig& c) {
    nlohmann::json weights;
    if (c.divisions) weights["divisions"] = *c.divisions;
    if (c.boundary_divisions) weights["boundary_divisions"] = *c.boundary_divisions;
    if (c.inside_divisions) weights["inside_divisions"] = *c.inside_divisions;
    weights["tau"] = c.tau;
    nlohmann::json metrics = nlohmann::json::array();
    for (const MetricSpec& m : c.metrics) {
        nlohmann::json j{{"name", m.name}};
        if (m.mode)
            j["mode"] = *m.mode == HvConfig::Mode::exact ? "exact" : "monte-carlo";
        if (m.name == "hv") {
            j["samples"] = m.samples;
            j["normalize"] = m.normalize;
        }
        metrics.push_back(std::move(j));
    }
    return nlohmann::json{{"problem", c.problem},
                          {"objectives", c.objectives},
                          {"runs", c.runs},
                          {"weights", std::move(weights)},
                          {"algorithm", to_json(c.algo)},
                          {"metrics", std::move(metrics)},
                          {"base_seed", c.base_seed},
                          {"workers", c.workers},
                          {"output_dir", c.output_dir},
                          {"format", c.format}};
}

/// JSON mirror of the aggregate structure, including every per-run value.
inline nlohmann::json export_results_json(const ExperimentResult& result) {
    nlohmann::json aggregates = nlohmann::json::array();
    for (const MetricAggregate& a : result.aggregates) {
        nlohmann::json j{{"metric", a.metric},
                         {"higher_is_better", a.higher_is_better},
                         {"values", a.values},
                         {"best", a.best},
                         {"median", a.median},
                         {"worst", a.worst},
                         {"median_convention", "lower middle of the sorted values"}};
        bool any_err = false;
        for (double e : a.standard_errors) any_err = any_err || e != 0.0;
        if (any_err) j["standard_errors"] = a.standard_errors;
        aggregates.push_back(std::move(j));
    }
    return nlohmann::json{{"config", experiment_config_json(result.config)},
                          {"aggregates", std::move(aggregates)}};
}

/// Write every run record plus the aggregate and the results table under
/// the configured output directory.
inline void persist_experiment(const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::path dir(result.config.output_dir);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        nlohmann::json j = to_json(result.records[i]);
        nlohmann::json per_run = nlohmann::json::object();
        for (std::size_t s = 0; s < result.config.metrics.size(); ++s) {
            per_run[result.config.metrics[s].name] = result.metric_values[s][i];
            if (result.config.metrics[s].name == "hv" && result.metric_errors[s][i] != 0.0)
                per_run["hv_stderr"] = result.metric_errors[s][i];
        }
        j["metrics"] = std::move(per_run);
        std::ofstream os(dir / ("run_" + std::to_string(result.records[i].seed) + ".json"));
        os << j.dump(2) << '\n';
    }
    {
        std::ofstream os(dir / "aggregate.json");
        os << export_results_json(result).dump(2) << '\n';
    }
    if (result.config.format == "csv") {
        std::ofstream os(dir / "results.csv");
        export_results_csv(result, os);
    } else {
        std::ofstream os(dir / "results.json");
        os << export_results_json(result).dump(2) << '\n';
    }
}

} // namespace moeadld
