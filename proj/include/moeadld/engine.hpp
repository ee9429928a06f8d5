#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <moeadld/operators.hpp>
#include <moeadld/problem.hpp>
#include <moeadld/rng.hpp>
#include <moeadld/weights.hpp>

namespace moeadld {

/// One candidate solution: decision vector, raw objectives, cached
/// constraint violation, and the id of its associated weight vector.
struct Individual {
    std::vector<double> x;
    std::vector<double> objectives;
    double cv = 0.0;
    std::size_t assoc = 0;
};

/// Running per-objective extremes over everything evaluated so far.
/// `ideal` never increases and `nadir` never decreases.
struct IdealNadir {
    std::vector<double> ideal;
    std::vector<double> nadir;

    bool initialized() const { return !ideal.empty(); }

    void merge(std::span<const double> objectives) {
        if (ideal.empty()) {
            ideal.assign(objectives.begin(), objectives.end());
            nadir.assign(objectives.begin(), objectives.end());
            return;
        }
        for (std::size_t i = 0; i < objectives.size(); ++i) {
            ideal[i] = std::min(ideal[i], objectives[i]);
            nadir[i] = std::max(nadir[i], objectives[i]);
        }
    }
};

/// Members of one subproblem, kept ordered best-first under the hybrid
/// comparison.
struct Subpopulation {
    std::size_t weight_index = 0;
    std::vector<Individual> members;
};

struct AlgoConfig {
    double theta = 5.0;                  // PBI penalty
    std::size_t neighborhood_size = 20;  // T, clamped to |W|
    bool normalize = false;              // scale objectives by ideal/nadir range
    bool constrained = false;            // use the feasibility-aware comparison
    std::size_t generations = 0;
    std::uint64_t seed = 0;
    VariationConfig variation;
    bool debug_checks = false;           // audit every partition (slow)
};

/// Everything needed to replay and analyze one run.
struct RunRecord {
    std::string problem;
    std::uint64_t seed = 0;
    AlgoConfig config;
    std::vector<std::vector<double>> ideal_trace; // entry 0 is post-initialization
    std::vector<std::vector<double>> nadir_trace;
    std::vector<Individual> final_population;
    double wall_seconds = 0.0;
};

/// Per-objective scaling to [0,1] by the extremes found so far. An
/// objective whose range is still empty is scaled by 1: it is constant, so
/// any positive denominator preserves the ordering.
inline std::vector<double> normalize_objectives(std::span<const double> f,
                                                const IdealNadir& bounds) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double range = bounds.nadir[i] - bounds.ideal[i];
        out[i] = (f[i] - bounds.ideal[i]) / (range > 0.0 ? range : 1.0);
    }
    return out;
}

namespace detail {

// Objective vector as seen by angles and PBI: translated by the ideal
// point, or fully normalized when requested.
inline std::vector<double> scalarization_vector(std::span<const double> f,
                                                const IdealNadir& bounds, bool normalize) {
    if (normalize) return normalize_objectives(f, bounds);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] - bounds.ideal[i];
    return out;
}

} // namespace detail

/// Penalty-based boundary intersection value of an objective vector for
/// one weight direction: d1 + theta * d2 on the translated (or
/// normalized) objectives.
inline double pbi(std::span<const double> f, const WeightVector& w, const IdealNadir& bounds,
                  double theta, bool normalize) {
    auto u = detail::scalarization_vector(f, bounds, normalize);
    ProjectionSplit s = project_onto_direction(u, w.components, w.norm);
    return s.along + theta * s.perp;
}

/// Pareto dominance: a is no worse everywhere and strictly better
/// somewhere.
inline bool dominates(std::span<const double> a, std::span<const double> b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

struct CompareContext {
    const IdealNadir* bounds = nullptr;
    double theta = 5.0;
    bool normalize = false;
    bool constrained = false;
};

/// Hybrid local comparison: dominance first, PBI as the tie-breaker among
/// mutually non-dominated pairs. Returns true when x is better than y.
inline bool compare(const Individual& x, const Individual& y, const WeightVector& w,
                    const CompareContext& ctx) {
    if (dominates(x.objectives, y.objectives)) return true;
    if (dominates(y.objectives, x.objectives)) return false;
    return pbi(x.objectives, w, *ctx.bounds, ctx.theta, ctx.normalize) <
           pbi(y.objectives, w, *ctx.bounds, ctx.theta, ctx.normalize);
}

/// Feasibility-aware variant: feasible beats infeasible; two infeasible
/// solutions compare by violation and the hybrid criterion together.
inline bool compare_constrained(const Individual& s1, const Individual& s2,
                                const WeightVector& w, const CompareContext& ctx) {
    const bool f1 = s1.cv == 0.0;
    const bool f2 = s2.cv == 0.0;
    if (f1 && f2) return compare(s1, s2, w, ctx);
    if (f1) return true;
    if (!f2) return s1.cv <= s2.cv && compare(s1, s2, w, ctx);
    return false;
}

inline bool better(const Individual& a, const Individual& b, const WeightVector& w,
                   const CompareContext& ctx) {
    return ctx.constrained ? compare_constrained(a, b, w, ctx) : compare(a, b, w, ctx);
}

/// Index of the weight vector with the smallest included angle to the
/// translated (or normalized) objective vector; ties go to the lower id.
inline std::size_t associate(std::span<const double> objectives, const WeightSet& weights,
                             const IdealNadir& bounds, bool normalize) {
    auto u = detail::scalarization_vector(objectives, bounds, normalize);
    std::size_t best = 0;
    double best_angle = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        ProjectionSplit s = project_onto_direction(u, weights[i].components, weights[i].norm);
        double angle = std::atan2(s.perp, s.along); // 0 for the zero vector
        if (angle < best_angle) {
            best_angle = angle;
            best = i;
        }
    }
    return best;
}

/// Split a pool of individuals into one ordered subpopulation per weight
/// vector. Each individual goes to its associated weight and is inserted
/// at the first position where it beats the incumbent, so equal and
/// incomparable members keep their insertion order.
inline std::vector<Subpopulation> partition(std::vector<Individual> pool,
                                            const WeightSet& weights,
                                            const CompareContext& ctx) {
    std::vector<Subpopulation> subs(weights.size());
    for (std::size_t i = 0; i < subs.size(); ++i) subs[i].weight_index = i;
    for (Individual& ind : pool) {
        ind.assoc = associate(ind.objectives, weights, *ctx.bounds, ctx.normalize);
        Subpopulation& sub = subs[ind.assoc];
        auto pos = std::find_if(sub.members.begin(), sub.members.end(),
                                [&](const Individual& m) {
                                    return better(ind, m, weights[ind.assoc], ctx);
                                });
        sub.members.insert(pos, std::move(ind));
    }
    return subs;
}

struct PartitionAudit {
    std::size_t order_violations = 0;      // consecutive pair sorted the wrong way
    std::size_t dominance_inversions = 0;  // later member dominating an earlier one
    std::size_t feasibility_inversions = 0; // feasible member after an infeasible one
};

/// Full sweep over every subpopulation checking the ordering contract.
inline PartitionAudit audit_partition(const std::vector<Subpopulation>& subs,
                                      const WeightSet& weights, const CompareContext& ctx) {
    PartitionAudit audit;
    for (const Subpopulation& sub : subs) {
        const WeightVector& w = weights[sub.weight_index];
        const auto& m = sub.members;
        for (std::size_t i = 0; i + 1 < m.size(); ++i)
            if (!better(m[i], m[i + 1], w, ctx) && better(m[i + 1], m[i], w, ctx))
                ++audit.order_violations;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                if (dominates(m[j].objectives, m[i].objectives)) ++audit.dominance_inversions;
                if (ctx.constrained && m[j].cv == 0.0 && m[i].cv > 0.0)
                    ++audit.feasibility_inversions;
            }
    }
    return audit;
}

/// Keep the best N individuals, level by level: level i holds the i-th
/// member of every subpopulation. Whole levels are admitted while they
/// fit; the first level that does not fit contributes a uniform random
/// remainder without replacement.
inline std::vector<Individual> elitist_selection(std::vector<Subpopulation> subs, std::size_t n,
                                                 Rng& rng) {
    std::vector<Individual> next;
    next.reserve(n);
    std::size_t level = 0;
    while (next.size() < n) {
        std::vector<Individual*> members;
        for (Subpopulation& sub : subs)
            if (level < sub.members.size()) members.push_back(&sub.members[level]);
        if (members.empty()) break; // pool smaller than n
        if (next.size() + members.size() <= n) {
            for (Individual* m : members) next.push_back(std::move(*m));
        } else {
            std::size_t want = n - next.size();
            for (std::size_t i = 0; i < want; ++i) {
                std::size_t j = i + rng.index(members.size() - i);
                std::swap(members[i], members[j]);
                next.push_back(std::move(*members[i]));
            }
            break;
        }
        ++level;
    }
    return next;
}

/// The main loop: generate one offspring per weight vector, merge parents
/// and offspring, partition them around the weights, then keep the best N
/// by levels. Returns the full run record.
inline RunRecord run(const Problem& problem, const WeightSet& weight_input,
                     const AlgoConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    const std::size_t n = weight_input.size();
    const std::size_t m = problem.objective_count();
    if (n == 0) throw std::invalid_argument("empty weight set");
    for (const WeightVector& w : weight_input)
        if (w.components.size() != m)
            throw std::invalid_argument("weight dimension does not match problem objectives");

    WeightSet weights = weight_input;
    const std::size_t t = std::min(config.neighborhood_size, n);
    assign_neighborhoods(weights, t);

    Rng rng(config.seed);
    IdealNadir bounds;
    CompareContext ctx{&bounds, config.theta, config.normalize, config.constrained};

    const auto& lb = problem.lower_bounds();
    const auto& ub = problem.upper_bounds();

    auto evaluate = [&](std::vector<double> x) {
        Evaluation e = problem.evaluate(x);
        for (double f : e.objectives)
            if (!std::isfinite(f))
                throw std::runtime_error(problem.name() + ": non-finite objective value");
        Individual ind;
        ind.x = std::move(x);
        ind.objectives = std::move(e.objectives);
        ind.cv = constraint_violation(e);
        return ind;
    };

    // initial population, extreme scan, initial association
    std::vector<Individual> population;
    population.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x(problem.variable_count());
        for (std::size_t v = 0; v < x.size(); ++v) x[v] = rng.uniform(lb[v], ub[v]);
        population.push_back(evaluate(std::move(x)));
    }
    for (const Individual& ind : population) bounds.merge(ind.objectives);
    for (Individual& ind : population)
        ind.assoc = associate(ind.objectives, weights, bounds, config.normalize);

    RunRecord record;
    record.problem = problem.name();
    record.seed = config.seed;
    record.config = config;
    record.ideal_trace.push_back(bounds.ideal);
    record.nadir_trace.push_back(bounds.nadir);

    const double pm = config.variation.resolved_mutation_probability(problem.variable_count());

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        std::vector<Individual> merged;
        merged.reserve(2 * n);
        std::vector<std::size_t> assoc_ids(population.size());
        for (std::size_t p = 0; p < population.size(); ++p) assoc_ids[p] = population[p].assoc;
        for (std::size_t i = 0; i < n; ++i) {
            auto [a, b] = mating_selection(weights[i].neighbors, assoc_ids,
                                           config.variation.neighborhood_selection_probability,
                                           rng);
            std::vector<double> child =
                sbx_crossover(population[a].x, population[b].x, lb, ub,
                              config.variation.crossover_probability,
                              config.variation.crossover_index, rng);
            polynomial_mutation(child, lb, ub, pm, config.variation.mutation_index, rng);
            Individual offspring = evaluate(std::move(child));
            bounds.merge(offspring.objectives);
            merged.push_back(std::move(offspring));
        }
        for (Individual& ind : population) merged.push_back(std::move(ind));

        std::vector<Subpopulation> subs = partition(std::move(merged), weights, ctx);
        if (config.debug_checks) {
            PartitionAudit audit = audit_partition(subs, weights, ctx);
            if (audit.order_violations != 0)
                throw std::logic_error("partition ordering contract violated");
        }
        population = elitist_selection(std::move(subs), n, rng);

        record.ideal_trace.push_back(bounds.ideal);
        record.nadir_trace.push_back(bounds.nadir);
    }

    record.final_population = std::move(population);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return record;
}

} // namespace moeadld
