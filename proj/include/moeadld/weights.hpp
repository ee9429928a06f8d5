#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace moeadld {

/// One subproblem direction: a point on the unit simplex plus the ids of
/// its nearest (by angle) peers. `neighbors` always starts with the
/// vector's own id, since the angle to itself is zero.
struct WeightVector {
    std::vector<double> components;
    std::size_t index = 0;
    std::vector<std::size_t> neighbors;
    double norm = 0.0; // cached Euclidean norm of components
};

using WeightSet = std::vector<WeightVector>;

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace detail

/// Projection of u onto the direction of v, split into the length along v
/// (`along`) and the perpendicular remainder (`perp`). This is the d1/d2
/// pair used both for angles between directions and for PBI scalarization.
struct ProjectionSplit {
    double along = 0.0;
    double perp = 0.0;
};

inline ProjectionSplit project_onto_direction(std::span<const double> u,
                                              std::span<const double> v,
                                              double v_norm) {
    ProjectionSplit r;
    r.along = std::fabs(detail::dot(u, v)) / v_norm;
    double sq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double d = u[i] - r.along * v[i] / v_norm;
        sq += d * d;
    }
    r.perp = std::sqrt(sq);
    return r;
}

/// Included angle between two directions, in [0, pi/2]. Orthogonal inputs
/// (zero projection) give exactly pi/2.
inline double angle_between(std::span<const double> u, std::span<const double> v) {
    ProjectionSplit s = project_onto_direction(u, v, detail::norm(v));
    return std::atan2(s.perp, s.along);
}

/// Number of lattice points: C(divisions + m - 1, m - 1).
inline std::size_t simplex_lattice_size(std::size_t m, std::size_t divisions) {
    // product form, evaluated to stay in integer range for m <= 15, D <= 12
    std::size_t n = 1;
    for (std::size_t i = 1; i < m; ++i) {
        n = n * (divisions + i) / i;
    }
    return n;
}

namespace detail {

inline void enumerate_lattice(std::size_t m, std::size_t divisions,
                              std::size_t position, std::size_t remaining,
                              std::vector<std::size_t>& ticks, WeightSet& out) {
    if (position == m - 1) {
        ticks[position] = remaining;
        WeightVector w;
        w.components.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            w.components[i] = static_cast<double>(ticks[i]) / static_cast<double>(divisions);
        w.index = out.size();
        w.norm = norm(w.components);
        out.push_back(std::move(w));
        return;
    }
    for (std::size_t k = remaining + 1; k-- > 0;) {
        ticks[position] = k;
        enumerate_lattice(m, divisions, position + 1, remaining - k, ticks, out);
    }
}

} // namespace detail

/// All vectors with components k/divisions (k integer >= 0) summing to 1.
/// Emitted in descending-first-component order; ids follow emission order.
inline WeightSet generate_simplex_lattice(std::size_t m, std::size_t divisions) {
    if (m < 2) throw std::invalid_argument("simplex lattice needs at least 2 objectives");
    if (divisions < 1) throw std::invalid_argument("simplex lattice needs at least 1 division");
    WeightSet out;
    out.reserve(simplex_lattice_size(m, divisions));
    std::vector<std::size_t> ticks(m, 0);
    detail::enumerate_lattice(m, divisions, 0, divisions, ticks, out);
    return out;
}

/// Boundary-layer lattice plus an inside layer shrunk toward the centroid:
/// v = (1 - tau)/m + tau * w. The transform preserves the simplex sum, so
/// every emitted vector still sums to 1.
inline WeightSet generate_two_layer(std::size_t m, std::size_t boundary_divisions,
                                    std::size_t inside_divisions, double tau = 0.5) {
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("shrinkage factor must be in [0, 1]");
    WeightSet out = generate_simplex_lattice(m, boundary_divisions);
    WeightSet inner = generate_simplex_lattice(m, inside_divisions);
    out.reserve(out.size() + inner.size());
    for (WeightVector& w : inner) {
        for (double& c : w.components)
            c = (1.0 - tau) / static_cast<double>(m) + tau * c;
        w.norm = detail::norm(w.components);
        w.index = out.size();
        out.push_back(std::move(w));
    }
    return out;
}

/// For each vector, the ids of the `t` vectors with the smallest included
/// angle to it, ascending, ties broken by lower id. Entry 0 is always the
/// vector itself.
inline std::vector<std::vector<std::size_t>> neighborhoods(const WeightSet& weights,
                                                           std::size_t t) {
    const std::size_t n = weights.size();
    if (t < 1 || t > n) throw std::invalid_argument("neighborhood size must be in [1, |W|]");
    std::vector<std::vector<std::size_t>> result(n);
    std::vector<std::pair<double, std::size_t>> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            angles[j] = {angle_between(weights[i].components, weights[j].components), j};
        std::partial_sort(angles.begin(), angles.begin() + static_cast<std::ptrdiff_t>(t),
                          angles.end());
        result[i].reserve(t);
        for (std::size_t k = 0; k < t; ++k) result[i].push_back(angles[k].second);
    }
    return result;
}

/// Compute and store neighborhoods on the weight set itself.
inline void assign_neighborhoods(WeightSet& weights, std::size_t t) {
    auto lists = neighborhoods(weights, t);
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i].neighbors = std::move(lists[i]);
}

/// One vector per line, components space-separated, full double precision.
inline void save_weights(const WeightSet& weights, std::ostream& os) {
    char buf[40];
    for (const WeightVector& w : weights) {
        for (std::size_t i = 0; i < w.components.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", w.components[i]);
            if (i) os << ' ';
            os << buf;
        }
        os << '\n';
    }
}

inline void save_weights(const WeightSet& weights, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    save_weights(weights, os);
}

} // namespace moeadld
