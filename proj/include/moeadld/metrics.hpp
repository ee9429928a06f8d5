#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <moeadld/rng.hpp>

namespace moeadld {

/// A set of objective vectors sharing one dimension.
using PointSet = std::vector<std::vector<double>>;

namespace metric_detail {

inline void validate(const PointSet& s, const char* what) {
    if (s.empty()) throw std::invalid_argument(std::string(what) + ": empty point set");
    const std::size_t m = s.front().size();
    for (const auto& p : s) {
        if (p.size() != m)
            throw std::invalid_argument(std::string(what) + ": inconsistent dimensions");
        for (double v : p)
            if (!std::isfinite(v))
                throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
    }
}

// points with any coordinate beyond the reference contribute nothing
inline PointSet clip_to_reference(const PointSet& s, std::span<const double> ref) {
    PointSet kept;
    for (const auto& p : s) {
        bool inside = true;
        for (std::size_t i = 0; i < ref.size(); ++i)
            if (p[i] > ref[i]) {
                inside = false;
                break;
            }
        if (inside) kept.push_back(p);
    }
    return kept;
}

inline bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline PointSet nondominated(const PointSet& s) {
    PointSet kept;
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < s.size() && !drop; ++j) {
            if (j == i) continue;
            // strict index order breaks duplicate ties so one copy survives
            if (weakly_dominates(s[j], s[i]) && (!weakly_dominates(s[i], s[j]) || j < i))
                drop = true;
        }
        if (!drop) kept.push_back(s[i]);
    }
    return kept;
}

inline double inclusive_volume(std::span<const double> p, std::span<const double> ref) {
    double v = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) v *= ref[i] - p[i];
    return v;
}

// WFG recursive scheme: points assumed mutually non-dominated and within
// the reference box, sorted descending by the last objective.
inline double wfg_recurse(PointSet points, std::span<const double> ref) {
    if (points.empty()) return 0.0;
    const std::size_t m = ref.size();
    if (points.size() == 1) return inclusive_volume(points[0], ref);
    if (m == 2) {
        std::sort(points.begin(), points.end());
        double hv = 0.0;
        double upper = ref[1];
        for (const auto& p : points) {
            hv += (ref[0] - p[0]) * (upper - p[1]);
            upper = p[1];
        }
        return hv;
    }
    std::sort(points.begin(), points.end(), [m](const auto& a, const auto& b) {
        return a[m - 1] > b[m - 1];
    });
    double hv = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        // exclusive contribution of point i against the ones after it
        PointSet limited;
        limited.reserve(points.size() - i - 1);
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            std::vector<double> q(m);
            for (std::size_t d = 0; d < m; ++d) q[d] = std::max(points[i][d], points[j][d]);
            limited.push_back(std::move(q));
        }
        hv += inclusive_volume(points[i], ref) - wfg_recurse(nondominated(limited), ref);
    }
    return hv;
}

} // namespace metric_detail

/// Inverted generational distance: mean distance from each reference point
/// to its nearest solution. Lower is better.
inline double igd(const PointSet& solutions, const PointSet& reference) {
    metric_detail::validate(solutions, "igd solutions");
    metric_detail::validate(reference, "igd reference");
    if (solutions.front().size() != reference.front().size())
        throw std::invalid_argument("igd: dimension mismatch between sets");
    double total = 0.0;
    for (const auto& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : solutions) {
            double sq = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                double d = r[i] - s[i];
                sq += d * d;
            }
            best = std::min(best, sq);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

/// Exact hypervolume dominated by `solutions` and bounded by `ref`
/// (minimization). Points beyond the reference are filtered out first.
inline double hv_exact(const PointSet& solutions, std::span<const double> ref) {
    metric_detail::validate(solutions, "hypervolume");
    if (solutions.front().size() != ref.size())
        throw std::invalid_argument("hypervolume: reference dimension mismatch");
    PointSet pts = metric_detail::clip_to_reference(solutions, ref);
    if (pts.empty()) return 0.0;
    if (ref.size() == 1) {
        double best = ref[0];
        for (const auto& p : pts) best = std::min(best, p[0]);
        return ref[0] - best;
    }
    return metric_detail::wfg_recurse(metric_detail::nondominated(pts), ref);
}

struct HvEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo hypervolume: uniform samples over the box spanned by the
/// componentwise minimum of the set and the reference point (the dominated
/// region lies entirely inside that box). Reports the binomial standard
/// error of the estimate.
inline HvEstimate hv_monte_carlo(const PointSet& solutions, std::span<const double> ref,
                                 std::size_t samples, Rng& rng) {
    metric_detail::validate(solutions, "hypervolume");
    if (solutions.front().size() != ref.size())
        throw std::invalid_argument("hypervolume: reference dimension mismatch");
    if (samples == 0) throw std::invalid_argument("hypervolume: zero samples");
    PointSet pts = metric_detail::clip_to_reference(solutions, ref);
    if (pts.empty()) return {};

    const std::size_t m = ref.size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    for (const auto& p : pts)
        for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], p[i]);
    double volume = 1.0;
    for (std::size_t i = 0; i < m; ++i) volume *= ref[i] - lo[i];
    if (volume <= 0.0) return {};

    std::size_t hits = 0;
    std::vector<double> y(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i) y[i] = rng.uniform(lo[i], ref[i]);
        for (const auto& p : pts) {
            if (metric_detail::weakly_dominates(p, y)) {
                ++hits;
                break;
            }
        }
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    HvEstimate e;
    e.value = p_hat * volume;
    e.standard_error =
        volume * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
    return e;
}

/// How to measure hypervolume: reference point, exact or sampled mode, and
/// whether to rescale into [0,1] by the reference-box volume.
struct HvConfig {
    std::vector<double> reference;
    enum class Mode { exact, monte_carlo } mode = Mode::exact;
    std::size_t samples = 1000000;
    bool normalize = false;
};

inline HvEstimate hypervolume(const PointSet& solutions, const HvConfig& config, Rng* rng = nullptr) {
    HvEstimate e;
    if (config.mode == HvConfig::Mode::exact) {
        e.value = hv_exact(solutions, config.reference);
    } else {
        if (rng == nullptr)
            throw std::invalid_argument("monte-carlo hypervolume needs a random stream");
        e = hv_monte_carlo(solutions, config.reference, config.samples, *rng);
    }
    if (config.normalize) {
        double denom = 1.0;
        for (double z : config.reference) denom *= z;
        e.value /= denom;
        e.standard_error /= denom;
    }
    return e;
}

} // namespace moeadld
