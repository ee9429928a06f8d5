#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <moeadld/engine.hpp>
#include <moeadld/metrics.hpp>

namespace moeadld {

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------- point sets ----

/// One point per line, coordinates space-separated, full precision.
inline void save_points(const PointSet& points, std::ostream& os) {
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) os << ' ';
            os << format_full(p[i]);
        }
        os << '\n';
    }
}

inline void save_points(const PointSet& points, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    save_points(points, os);
}

inline PointSet load_points(std::istream& is) {
    PointSet points;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<double> p;
        double v;
        while (ls >> v) p.push_back(v);
        if (!p.empty()) points.push_back(std::move(p));
    }
    return points;
}

inline nlohmann::json points_to_json(const PointSet& points) {
    return nlohmann::json(points);
}

inline PointSet points_from_json(const nlohmann::json& j) {
    return j.get<PointSet>();
}

/// Reads either a JSON array-of-arrays (.json) or the plain-text format.
inline PointSet load_points_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json j;
        is >> j;
        return points_from_json(j);
    }
    return load_points(is);
}

// ----------------------------------------------------------- run records ----

inline nlohmann::json to_json(const VariationConfig& v) {
    nlohmann::json j{{"crossover_probability", v.crossover_probability},
                     {"crossover_index", v.crossover_index},
                     {"mutation_index", v.mutation_index},
                     {"neighborhood_selection_probability",
                      v.neighborhood_selection_probability}};
    if (v.mutation_probability) j["mutation_probability"] = *v.mutation_probability;
    else j["mutation_probability"] = nullptr; // resolved to 1/n at run time
    return j;
}

inline nlohmann::json to_json(const AlgoConfig& c) {
    return nlohmann::json{{"theta", c.theta},
                          {"neighborhood_size", c.neighborhood_size},
                          {"normalize", c.normalize},
                          {"constrained", c.constrained},
                          {"generations", c.generations},
                          {"seed", c.seed},
                          {"variation", to_json(c.variation)}};
}

inline nlohmann::json to_json(const RunRecord& r) {
    nlohmann::json final_x = nlohmann::json::array();
    nlohmann::json final_f = nlohmann::json::array();
    nlohmann::json final_cv = nlohmann::json::array();
    for (const Individual& ind : r.final_population) {
        final_x.push_back(ind.x);
        final_f.push_back(ind.objectives);
        final_cv.push_back(ind.cv);
    }
    return nlohmann::json{{"problem", r.problem},
                          {"seed", r.seed},
                          {"config", to_json(r.config)},
                          {"final_decision_vectors", std::move(final_x)},
                          {"final_objectives", std::move(final_f)},
                          {"final_constraint_violations", std::move(final_cv)},
                          {"ideal_trace", r.ideal_trace},
                          {"nadir_trace", r.nadir_trace},
                          {"wall_seconds", r.wall_seconds}};
}

// ------------------------------------------------------ indicator records ----

/// The JSON record emitted for one indicator evaluation.
inline nlohmann::json indicator_record(const std::string& metric, double value,
                                       std::optional<double> standard_error,
                                       nlohmann::json config) {
    nlohmann::json j{{"metric", metric}, {"value", value}, {"config", std::move(config)}};
    if (standard_error) j["stderr"] = *standard_error;
    return j;
}

} // namespace moeadld
