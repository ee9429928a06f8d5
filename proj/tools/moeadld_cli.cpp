// Command-line front end: weight-set generation, indicator evaluation on
// point files, and config-driven experiment runs.

#include <CLI11.hpp>

#include <moeadld/harness.hpp>
#include <moeadld/io.hpp>
#include <moeadld/metrics.hpp>
#include <moeadld/weights.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

int cmd_weights(std::size_t m, std::size_t d, std::optional<std::size_t> d2, double tau,
                const std::string& out) {
    moeadld::WeightSet w = d2 ? moeadld::generate_two_layer(m, d, *d2, tau)
                              : moeadld::generate_simplex_lattice(m, d);
    if (out.empty()) moeadld::save_weights(w, std::cout);
    else moeadld::save_weights(w, out);
    std::cerr << w.size() << " weight vectors\n";
    return 0;
}

int cmd_front(const std::string& problem, std::size_t m, std::size_t d,
              std::optional<std::size_t> d2, double tau, const std::string& out) {
    auto prob = moeadld::make_problem(problem, m);
    moeadld::WeightSet w = d2 ? moeadld::generate_two_layer(m, d, *d2, tau)
                              : moeadld::generate_simplex_lattice(m, d);
    moeadld::PointSet front = prob->reference_front(w);
    if (out.empty()) moeadld::save_points(front, std::cout);
    else moeadld::save_points(front, out);
    std::cerr << front.size() << " reference points\n";
    return 0;
}

int cmd_metrics(const std::string& points_file, const std::string& metric,
                const std::string& ref_file, const std::vector<double>& ref_point,
                const std::string& mode, std::size_t samples, bool normalize,
                std::uint64_t seed) {
    moeadld::PointSet points = moeadld::load_points_file(points_file);
    nlohmann::json record;
    if (metric == "igd") {
        if (ref_file.empty()) throw CLI::ValidationError("igd needs --ref <reference-file>");
        moeadld::PointSet reference = moeadld::load_points_file(ref_file);
        double value = moeadld::igd(points, reference);
        record = moeadld::indicator_record("igd", value, std::nullopt,
                                           {{"reference_file", ref_file}});
    } else {
        if (ref_point.empty()) throw CLI::ValidationError("hv needs --ref-point <csv-list>");
        moeadld::HvConfig cfg;
        cfg.reference = ref_point;
        cfg.mode = mode == "mc" ? moeadld::HvConfig::Mode::monte_carlo
                                : moeadld::HvConfig::Mode::exact;
        cfg.samples = samples;
        cfg.normalize = normalize;
        moeadld::Rng rng(seed);
        moeadld::HvEstimate e = moeadld::hypervolume(points, cfg, &rng);
        nlohmann::json cfg_json{{"reference_point", ref_point},
                                {"mode", mode},
                                {"normalize", normalize}};
        if (mode == "mc") cfg_json["samples"] = samples;
        record = moeadld::indicator_record(
            "hv", e.value,
            cfg.mode == moeadld::HvConfig::Mode::monte_carlo
                ? std::optional<double>(e.standard_error)
                : std::nullopt,
            std::move(cfg_json));
    }
    std::cout << record.dump(2) << '\n';
    return 0;
}

int cmd_run(const std::string& config_file, std::optional<std::uint64_t> seed,
            std::optional<std::size_t> runs, std::optional<std::size_t> workers,
            const std::string& out, const std::string& format) {
    moeadld::ExperimentConfig config = moeadld::load_config(config_file);
    if (seed) config.base_seed = *seed;
    if (runs) config.runs = *runs;
    if (workers) config.workers = *workers;
    if (!out.empty()) config.output_dir = out;
    if (!format.empty()) config.format = format;
    config = moeadld::resolve_defaults(std::move(config));

    moeadld::ExperimentResult result = moeadld::run_experiment(config);
    moeadld::persist_experiment(result);

    for (const moeadld::MetricAggregate& a : result.aggregates)
        std::cout << config.problem << " M=" << config.objectives << " " << a.metric
                  << ": best=" << moeadld::format_full(a.best)
                  << " median=" << moeadld::format_full(a.median)
                  << " worst=" << moeadld::format_full(a.worst) << '\n';
    std::cerr << "artifacts written to " << config.output_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MOEA/DLD experiment toolkit"};
    app.require_subcommand(1);

    // weights
    auto* weights = app.add_subcommand("weights", "generate a weight-vector set");
    std::size_t w_m = 3, w_d = 12;
    std::optional<std::size_t> w_d2;
    double w_tau = 0.5;
    std::string w_out;
    weights->add_option("--m,-m", w_m, "objective count")->required();
    weights->add_option("--d,-d", w_d, "divisions (boundary layer when --d2 is given)")
        ->required();
    weights->add_option("--d2", w_d2, "inside-layer divisions (enables two-layer mode)");
    weights->add_option("--tau", w_tau, "inside-layer shrinkage factor")->capture_default_str();
    weights->add_option("--out,-o", w_out, "output file (stdout when omitted)");

    // front
    auto* front = app.add_subcommand("front", "export a problem's reference front");
    std::string f_problem;
    std::size_t f_m = 3, f_d = 12;
    std::optional<std::size_t> f_d2;
    double f_tau = 0.5;
    std::string f_out;
    front->add_option("--problem,-p", f_problem, "problem name (dtlz/c-dtlz family)")
        ->required();
    front->add_option("--m,-m", f_m, "objective count")->required();
    front->add_option("--d,-d", f_d, "divisions (boundary layer when --d2 is given)")
        ->required();
    front->add_option("--d2", f_d2, "inside-layer divisions");
    front->add_option("--tau", f_tau, "inside-layer shrinkage factor")->capture_default_str();
    front->add_option("--out,-o", f_out, "output file (stdout when omitted)");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "evaluate an indicator on a point file");
    std::string m_points, m_ref, m_metric = "igd", m_mode = "exact";
    std::vector<double> m_ref_point;
    std::size_t m_samples = 1000000;
    bool m_normalize = false;
    std::uint64_t m_seed = 1;
    metrics->add_option("points", m_points, "solution point file (text or .json)")->required();
    metrics->add_option("--metric", m_metric, "igd or hv")
        ->check(CLI::IsMember({"igd", "hv"}))
        ->capture_default_str();
    metrics->add_option("--ref", m_ref, "reference point-set file (igd)");
    metrics->add_option("--ref-point", m_ref_point, "reference point coordinates (hv)")
        ->delimiter(',');
    metrics->add_option("--mode", m_mode, "hv computation mode")
        ->check(CLI::IsMember({"exact", "mc"}))
        ->capture_default_str();
    metrics->add_option("--samples", m_samples, "monte-carlo sample count")
        ->capture_default_str();
    metrics->add_flag("--normalize", m_normalize, "divide hv by the reference-box volume");
    metrics->add_option("--seed", m_seed, "monte-carlo stream seed")->capture_default_str();

    // run
    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    std::string r_config, r_out, r_format;
    std::optional<std::uint64_t> r_seed;
    std::optional<std::size_t> r_runs, r_workers;
    run->add_option("config", r_config, "experiment config file (json)")->required();
    run->add_option("--seed", r_seed, "override the base seed");
    run->add_option("--runs", r_runs, "override the run count");
    run->add_option("--workers", r_workers, "parallel worker count");
    run->add_option("--out,-o", r_out, "output directory");
    run->add_option("--format", r_format, "results table format")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*weights) return cmd_weights(w_m, w_d, w_d2, w_tau, w_out);
        if (*front) return cmd_front(f_problem, f_m, f_d, f_d2, f_tau, f_out);
        if (*metrics)
            return cmd_metrics(m_points, m_metric, m_ref, m_ref_point, m_mode, m_samples,
                               m_normalize, m_seed);
        if (*run) return cmd_run(r_config, r_seed, r_runs, r_workers, r_out, r_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
