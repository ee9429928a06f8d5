// Acceptance suite: prints one pass/fail line per criterion and exits
// with the number of failed criteria.

#include <moeadld/engine.hpp>
#include <moeadld/harness.hpp>
#include <moeadld/io.hpp>
#include <moeadld/metrics.hpp>
#include <moeadld/problems.hpp>
#include <moeadld/weights.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace moeadld;
namespace fs = std::filesystem;

namespace {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

std::vector<CriterionResult> g_results;

void record(int id, const std::string& name, std::function<std::pair<bool, std::string>()> body) {
    auto t0 = std::chrono::steady_clock::now();
    bool passed = false;
    std::string detail;
    try {
        auto [ok, msg] = body();
        passed = ok;
        detail = msg;
    } catch (const std::exception& e) {
        passed = false;
        detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g_results.push_back({id, name, passed, detail, dt});
    std::printf("criterion %d (%s): %s  [%.2fs] %s\n", id, name.c_str(),
                passed ? "PASS" : "FAIL", dt, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

WeightSet table_weights(std::size_t m) {
    switch (m) {
    case 3: return generate_simplex_lattice(3, 12);
    case 5: return generate_simplex_lattice(5, 6);
    case 8: return generate_two_layer(8, 3, 2);
    case 10: return generate_two_layer(10, 3, 2);
    case 15: return generate_two_layer(15, 2, 1);
    }
    throw std::logic_error("no table row");
}

// grid-counting oracle; integer point coordinates and a reference whose
// coordinates divide the cell count keep every box face on a cell boundary
double grid_hv(const PointSet& pts, const std::vector<double>& ref, std::size_t cells) {
    const std::size_t m = ref.size();
    std::vector<std::vector<std::size_t>> k0(pts.size(), std::vector<std::size_t>(m));
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (std::size_t d = 0; d < m; ++d) {
            double k = static_cast<double>(cells) * pts[p][d] / ref[d];
            k0[p][d] = static_cast<std::size_t>(std::ceil(k - 0.5));
        }
    double cell_volume = 1.0;
    for (std::size_t d = 0; d < m; ++d) cell_volume *= ref[d] / static_cast<double>(cells);
    std::size_t count = 0;
    if (m == 2) {
        for (std::size_t i = 0; i < cells; ++i) {
            std::size_t best = cells;
            for (std::size_t p = 0; p < pts.size(); ++p)
                if (i >= k0[p][0]) best = std::min(best, k0[p][1]);
            count += cells - best;
        }
    } else {
        for (std::size_t i = 0; i < cells; ++i)
            for (std::size_t j = 0; j < cells; ++j) {
                std::size_t best = cells;
                for (std::size_t p = 0; p < pts.size(); ++p)
                    if (i >= k0[p][0] && j >= k0[p][1]) best = std::min(best, k0[p][2]);
                count += cells - best;
            }
    }
    return static_cast<double>(count) * cell_volume;
}

ExperimentConfig desk_config(const std::string& problem, std::size_t generations,
                             std::size_t runs, const std::string& metric) {
    ExperimentConfig c;
    c.problem = problem;
    c.objectives = 3;
    c.runs = runs;
    c.algo.generations = generations;
    c.base_seed = 1;
    c.workers = std::min<std::size_t>(runs, std::thread::hardware_concurrency());
    MetricSpec spec;
    spec.name = metric;
    c.metrics.push_back(spec);
    c.output_dir = "unused";
    return resolve_defaults(std::move(c));
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

} // namespace

int main() {
    record(1, "weight-count identities", []() -> std::pair<bool, std::string> {
        const struct {
            std::size_t m, expected;
        } rows[] = {{3, 91}, {5, 210}, {8, 156}, {10, 275}, {15, 135}};
        for (auto [m, expected] : rows) {
            std::size_t got = table_weights(m).size();
            if (got != expected)
                return {false, fmt("M=%zu gave %zu, expected %zu", m, got, expected)};
        }
        return {true, "91/210/156/275/135"};
    });

    record(2, "reference-set validity", []() -> std::pair<bool, std::string> {
        for (std::size_t m : {3u, 5u, 8u, 10u, 15u}) {
            WeightSet w = table_weights(m);
            for (const auto& f : make_problem("dtlz1", m)->reference_front(w)) {
                double s = 0.0;
                for (double v : f) s += v;
                if (std::fabs(s - 0.5) > 1e-9)
                    return {false, fmt("dtlz1 M=%zu plane residual %.3e", m, s - 0.5)};
            }
            for (const char* name : {"dtlz2", "dtlz3", "dtlz4"})
                for (const auto& f : make_problem(name, m)->reference_front(w)) {
                    double s = 0.0;
                    for (double v : f) s += v * v;
                    if (std::fabs(s - 1.0) > 1e-9)
                        return {false, fmt("%s M=%zu sphere residual %.3e", name, s - 1.0)};
                }
            for (const char* name : {"c3_dtlz1", "c3_dtlz4"}) {
                auto p = make_problem(name, m);
                auto& c = dynamic_cast<const ConstrainedDtlz&>(*p);
                for (const auto& f : p->reference_front(w))
                    for (double g : c.constraints_of(f))
                        if (g < -1e-9)
                            return {false, fmt("%s M=%zu constraint %.3e", name, g)};
            }
            auto c2 = make_problem("c2_dtlz2", m);
            auto& c2c = dynamic_cast<const ConstrainedDtlz&>(*c2);
            for (const auto& f : c2->reference_front(w))
                if (c2c.constraints_of(f)[0] < 0.0)
                    return {false, fmt("c2_dtlz2 M=%zu retained infeasible point", m)};
        }
        return {true, "plane/sphere/constraint residuals within 1e-9 for all five M"};
    });

    record(3, "hv oracle equivalence", []() -> std::pair<bool, std::string> {
        Rng rng(2025);
        const std::size_t cells = 400;
        int mc_hits = 0;
        double worst_grid_gap = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t m = trial < 25 ? 2 : 3;
            std::vector<double> ref(m, 10.0);
            PointSet s;
            const std::size_t count = 1 + rng.index(8);
            for (std::size_t i = 0; i < count; ++i) {
                std::vector<double> p(m);
                for (double& v : p) v = static_cast<double>(rng.index(10));
                s.push_back(std::move(p));
            }
            double cell_volume = std::pow(10.0 / cells, static_cast<double>(m));
            double exact = hv_exact(s, ref);
            double grid = grid_hv(s, ref, cells);
            worst_grid_gap = std::max(worst_grid_gap, std::fabs(exact - grid) / cell_volume);
            if (std::fabs(exact - grid) > cell_volume + 1e-9)
                return {false, fmt("trial %d: exact %.6f vs grid %.6f", trial, exact, grid)};
            HvEstimate e = hv_monte_carlo(s, ref, 1000000, rng);
            if (std::fabs(e.value - exact) <= 4.0 * e.standard_error + 1e-12) ++mc_hits;
        }
        if (mc_hits < 46) return {false, fmt("monte-carlo within 4 SE only %d/50", mc_hits)};
        return {true, fmt("grid gap <= %.3f cells, monte-carlo within 4 SE %d/50",
                          worst_grid_gap, mc_hits)};
    });

    record(4, "igd hand values", []() -> std::pair<bool, std::string> {
        PointSet s{{0.0, 0.0}};
        PointSet r{{0.0, 0.0}, {1.0, 1.0}};
        double v = igd(s, r);
        if (std::fabs(v - std::sqrt(2.0) / 2.0) > 1e-12)
            return {false, fmt("igd gave %.17g", v)};
        PointSet self{{0.3, 0.7}, {0.7, 0.3}, {0.5, 0.5}};
        if (igd(self, self) != 0.0) return {false, "igd(S,S) != 0"};
        return {true, "sqrt(2)/2 within 1e-12 and igd(S,S) = 0"};
    });

    record(5, "desk-scale DTLZ IGD", []() -> std::pair<bool, std::string> {
        auto run_case = [](const std::string& problem, std::size_t gens) {
            ExperimentConfig c = desk_config(problem, gens, 5, "igd");
            return run_experiment(c).metric_values[0];
        };
        std::vector<double> d2 = run_case("dtlz2", 250);
        double med2 = median_of(d2);
        if (med2 > 5e-3) return {false, fmt("dtlz2 median %.3e > 5e-3", med2)};

        std::vector<double> d1 = run_case("dtlz1", 400);
        double med1 = median_of(d1);
        int under = 0;
        for (double v : d1)
            if (v <= 5e-3) ++under;
        if (med1 > 1e-2) return {false, fmt("dtlz1 median %.3e > 1e-2", med1)};
        if (under < 3) return {false, fmt("dtlz1 only %d/5 runs <= 5e-3", under)};

        std::vector<double> d4 = run_case("dtlz4", 600);
        double med4 = median_of(d4);
        if (med4 > 5e-3) return {false, fmt("dtlz4 median %.3e > 5e-3", med4)};
        return {true, fmt("medians: dtlz2 %.2e, dtlz1 %.2e (%d/5 <= 5e-3), dtlz4 %.2e",
                          med2, med1, under, med4)};
    });

    record(6, "constrained desk-scale check", []() -> std::pair<bool, std::string> {
        ExperimentConfig c = desk_config("c1_dtlz1", 500, 5, "igd");
        ExperimentResult result = run_experiment(c);
        for (const RunRecord& rec : result.records)
            for (const Individual& ind : rec.final_population)
                if (ind.cv != 0.0)
                    return {false, fmt("seed %llu has an infeasible final individual (cv=%.3e)",
                                       (unsigned long long)rec.seed, ind.cv)};
        double med = median_of(result.metric_values[0]);
        if (med > 2e-2) return {false, fmt("median igd %.3e > 2e-2", med)};
        return {true, fmt("all 5 populations feasible, median igd %.2e", med)};
    });

    record(7, "wfg property check", []() -> std::pair<bool, std::string> {
        ExperimentConfig c = desk_config("wfg4", 500, 3, "hv");
        ExperimentResult result = run_experiment(c);
        auto problem = make_problem("wfg4", 3);
        std::vector<double> ref = problem->hv_reference_point(); // (3,5,7)
        for (const RunRecord& rec : result.records)
            for (const Individual& ind : rec.final_population)
                for (std::size_t i = 0; i < ind.objectives.size(); ++i)
                    if (ind.objectives[i] < 0.0 || ind.objectives[i] > ref[i])
                        return {false,
                                fmt("objective %zu = %.4f outside [0, %.0f]", i,
                                    ind.objectives[i], ref[i])};
        for (double v : result.metric_values[0])
            if (v < 0.60) return {false, fmt("normalized hv %.4f < 0.60", v)};
        double med = median_of(result.metric_values[0]);
        return {true, fmt("normalized hv median %.4f, all objectives inside the box", med)};
    });

    record(8, "algorithm-order properties", []() -> std::pair<bool, std::string> {
        Rng rng(99);
        IdealNadir bounds;
        bounds.ideal = {0.0, 0.0, 0.0};
        bounds.nadir = {1.0, 1.0, 1.0};
        CompareContext ctx{&bounds, 5.0, false, false};

        // compare asymmetry under strict dominance
        for (int rep = 0; rep < 10000; ++rep) {
            Individual x, y;
            x.objectives = {rng.uniform(), rng.uniform(), rng.uniform()};
            y.objectives = x.objectives;
            for (double& v : y.objectives) v += rng.uniform() * 0.5;
            y.objectives[rng.index(3)] += 1e-6;
            WeightVector w;
            w.components = {rng.uniform() + 1e-6, rng.uniform(), rng.uniform()};
            w.norm = detail::norm(w.components);
            if (!(compare(x, y, w, ctx) && !compare(y, x, w, ctx)))
                return {false, fmt("compare asymmetry violated at rep %d", rep)};
        }

        // algorithm-4 feasibility dominance
        CompareContext cctx{&bounds, 5.0, false, true};
        for (int rep = 0; rep < 10000; ++rep) {
            Individual feas, infeas;
            feas.objectives = {rng.uniform(), rng.uniform(), rng.uniform()};
            infeas.objectives = {rng.uniform(), rng.uniform(), rng.uniform()};
            feas.cv = 0.0;
            infeas.cv = 1e-12 + rng.uniform();
            WeightVector w;
            w.components = {rng.uniform() + 1e-6, rng.uniform(), rng.uniform()};
            w.norm = detail::norm(w.components);
            if (!compare_constrained(feas, infeas, w, cctx) ||
                compare_constrained(infeas, feas, w, cctx))
                return {false, fmt("feasibility dominance violated at rep %d", rep)};
        }

        // elitist-selection level monotonicity
        for (int rep = 0; rep < 10000; ++rep) {
            std::size_t n_subs = 2 + rng.index(6);
            std::vector<Subpopulation> subs(n_subs);
            std::size_t total = 0;
            for (std::size_t i = 0; i < n_subs; ++i) {
                subs[i].weight_index = i;
                std::size_t size = rng.index(4);
                for (std::size_t j = 0; j < size; ++j) {
                    Individual ind;
                    ind.objectives = {static_cast<double>(j), 0.0};
                    subs[i].members.push_back(std::move(ind));
                    ++total;
                }
            }
            if (total == 0) continue;
            std::vector<std::size_t> level_sizes;
            for (std::size_t level = 0;; ++level) {
                std::size_t c = 0;
                for (const auto& s : subs)
                    if (level < s.members.size()) ++c;
                if (c == 0) break;
                level_sizes.push_back(c);
            }
            std::size_t n = 1 + rng.index(total);
            auto next = elitist_selection(std::move(subs), n, rng);
            if (next.size() != n) return {false, fmt("selection size off at rep %d", rep)};
            std::vector<std::size_t> got(level_sizes.size(), 0);
            for (const Individual& ind : next)
                got[static_cast<std::size_t>(ind.objectives[0])]++;
            bool partial_seen = false;
            for (std::size_t level = 0; level < got.size(); ++level) {
                if (partial_seen && got[level] != 0)
                    return {false, fmt("level skipped at rep %d", rep)};
                if (got[level] < level_sizes[level]) partial_seen = true;
            }
        }

        // partition size conservation
        WeightSet w = generate_simplex_lattice(3, 3); // 10 weights
        for (int rep = 0; rep < 10000; ++rep) {
            std::vector<Individual> pool;
            const std::size_t count = 2 * w.size();
            for (std::size_t i = 0; i < count; ++i) {
                Individual ind;
                ind.objectives = {rng.uniform(), rng.uniform(), rng.uniform()};
                pool.push_back(std::move(ind));
            }
            auto subs = partition(std::move(pool), w, ctx);
            std::size_t total = 0;
            for (const auto& sub : subs) total += sub.members.size();
            if (total != count) return {false, fmt("partition lost members at rep %d", rep)};
        }

        return {true, "4 x 10000 cases, zero violations"};
    });

    record(9, "determinism of persisted CSV", []() -> std::pair<bool, std::string> {
        fs::path base = fs::temp_directory_path() / "moeadld_acceptance";
        fs::remove_all(base);
        auto run_once = [&](const std::string& sub) {
            ExperimentConfig c = desk_config("dtlz2", 60, 3, "igd");
            c.metrics.push_back([] {
                MetricSpec s;
                s.name = "hv";
                return s;
            }());
            c = resolve_defaults(std::move(c));
            c.divisions = 5; // small population for speed
            c.workers = 3;
            c.output_dir = (base / sub).string();
            ExperimentResult r = run_experiment(c);
            persist_experiment(r);
            std::ifstream is(base / sub / "results.csv", std::ios::binary);
            std::stringstream ss;
            ss << is.rdbuf();
            return ss.str();
        };
        std::string first = run_once("a");
        std::string second = run_once("b");
        fs::remove_all(base);
        if (first.empty()) return {false, "no CSV produced"};
        if (first != second) return {false, "CSV bytes differ between identical reruns"};
        return {true, fmt("byte-identical results.csv (%zu bytes) across reruns",
                          first.size())};
    });

    int failures = 0;
    for (const CriterionResult& r : g_results)
        if (!r.passed) ++failures;
    std::printf("%zu criteria, %d failed\n", g_results.size(), failures);
    return failures;
}
