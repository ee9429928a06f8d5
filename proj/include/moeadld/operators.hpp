#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <moeadld/rng.hpp>

namespace moeadld {

/// Variation parameters. The mutation probability defaults to 1/n, which
/// is only known once the problem is chosen, hence the optional.
struct VariationConfig {
    double crossover_probability = 1.0;        // p_c
    double crossover_index = 20.0;             // eta_c
    std::optional<double> mutation_probability; // p_m, 1/n when unset
    double mutation_index = 20.0;              // eta_m
    double neighborhood_selection_probability = 0.8; // delta

    double resolved_mutation_probability(std::size_t variable_count) const {
        return mutation_probability.value_or(1.0 / static_cast<double>(variable_count));
    }
};

/// Pick the two mating-parent indices for one subproblem. With probability
/// delta the pool is every individual currently associated with one of the
/// neighborhood's weight ids; otherwise (or when that pool is empty) the
/// whole population. Parents are distinct whenever the pool has at least
/// two members.
inline std::pair<std::size_t, std::size_t> mating_selection(
    std::span<const std::size_t> neighborhood,
    std::span<const std::size_t> associations, double delta, Rng& rng) {
    if (associations.empty()) throw std::invalid_argument("mating selection on empty population");

    std::vector<std::size_t> pool;
    if (rng.flip(delta)) {
        for (std::size_t m = 0; m < associations.size(); ++m)
            if (std::find(neighborhood.begin(), neighborhood.end(), associations[m]) !=
                neighborhood.end())
                pool.push_back(m);
    }
    const std::size_t pool_size = pool.empty() ? associations.size() : pool.size();
    auto member = [&](std::size_t i) { return pool.empty() ? i : pool[i]; };

    std::size_t first = rng.index(pool_size);
    std::size_t second = first;
    if (pool_size >= 2) {
        second = rng.index(pool_size - 1);
        if (second >= first) ++second;
    }
    return {member(first), member(second)};
}

namespace detail {

// One SBX variable pair (bounded form); `u` drives both children.
inline std::pair<double, double> sbx_pair(double y1, double y2, double lb, double ub,
                                          double eta, double u) {
    auto spread = [&](double beta) {
        double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
        if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
        return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    };
    double beta_low = 1.0 + 2.0 * (y1 - lb) / (y2 - y1);
    double c1 = 0.5 * (y1 + y2 - spread(beta_low) * (y2 - y1));
    double beta_high = 1.0 + 2.0 * (ub - y2) / (y2 - y1);
    double c2 = 0.5 * (y1 + y2 + spread(beta_high) * (y2 - y1));
    return {std::clamp(c1, lb, ub), std::clamp(c2, lb, ub)};
}

} // namespace detail

/// Bounded simulated binary crossover. Generates the usual child pair and
/// returns one of the two, chosen uniformly at random; the other is
/// dropped so each mating produces exactly one offspring.
inline std::vector<double> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                         std::span<const double> lower,
                                         std::span<const double> upper, double pc, double eta,
                                         Rng& rng) {
    constexpr double eps = 1.0e-14;
    std::vector<double> a(p1.begin(), p1.end());
    std::vector<double> b(p2.begin(), p2.end());
    if (rng.flip(pc)) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!rng.flip(0.5)) continue;
            if (std::fabs(p1[i] - p2[i]) <= eps) continue;
            double y1 = std::min(p1[i], p2[i]);
            double y2 = std::max(p1[i], p2[i]);
            auto [c1, c2] = detail::sbx_pair(y1, y2, lower[i], upper[i], eta, rng.uniform());
            if (rng.flip(0.5)) std::swap(c1, c2);
            a[i] = c1;
            b[i] = c2;
        }
    }
    return rng.flip(0.5) ? std::move(b) : std::move(a);
}

/// Bounded polynomial mutation, applied in place: each variable mutates
/// independently with probability pm and never leaves its bounds.
inline void polynomial_mutation(std::vector<double>& x, std::span<const double> lower,
                                std::span<const double> upper, double pm, double eta, Rng& rng) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!rng.flip(pm)) continue;
        double lb = lower[i], ub = upper[i];
        if (lb == ub) {
            x[i] = lb;
            continue;
        }
        double y = x[i];
        double d1 = (y - lb) / (ub - lb);
        double d2 = (ub - y) / (ub - lb);
        double u = rng.uniform();
        double exp = 1.0 / (eta + 1.0);
        double dq;
        if (u <= 0.5) {
            double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
            dq = std::pow(v, exp) - 1.0;
        } else {
            double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
            dq = 1.0 - std::pow(v, exp);
        }
        x[i] = std::clamp(y + dq * (ub - lb), lb, ub);
    }
}

} // namespace moeadld
