#pragma once

#include <cassert>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <moeadld/problem.hpp>

namespace moeadld {
namespace wfg_detail {

// Clamp values that drift out of [0,1] by floating-point fuzz only.
inline double correct_to_01(double a) {
    constexpr double eps = 1.0e-10;
    if (a <= 0.0 && a >= -eps) return 0.0;
    if (a >= 1.0 && a <= 1.0 + eps) return 1.0;
    return a;
}

inline double b_poly(double y, double alpha) { return correct_to_01(std::pow(y, alpha)); }

inline double b_flat(double y, double a, double b, double c) {
    double t1 = std::min(0.0, std::floor(y - b)) * a * (b - y) / b;
    double t2 = std::min(0.0, std::floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c);
    return correct_to_01(a + t1 - t2);
}

inline double b_param(double y, double u, double a, double b, double c) {
    double v = a - (1.0 - 2.0 * u) * std::fabs(std::floor(0.5 - u) + a);
    return correct_to_01(std::pow(y, b + (c - b) * v));
}

inline double s_linear(double y, double a) {
    return correct_to_01(std::fabs(y - a) / std::fabs(std::floor(a - y) + a));
}

inline double s_decept(double y, double a, double b, double c) {
    double t1 = std::floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b);
    double t2 = std::floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    return correct_to_01(1.0 + (std::fabs(y - a) - b) * (t1 + t2 + 1.0 / b));
}

inline double s_multi(double y, int a, double b, double c) {
    double t1 = std::fabs(y - c) / (2.0 * (std::floor(c - y) + c));
    double t2 = (4.0 * a + 2.0) * std::numbers::pi * (0.5 - t1);
    return correct_to_01((1.0 + std::cos(t2) + 4.0 * b * t1 * t1) / (b + 2.0));
}

inline double r_sum(std::span<const double> y, std::span<const double> w) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += w[i] * y[i];
        den += w[i];
    }
    return correct_to_01(num / den);
}

inline double r_sum_unit(std::span<const double> y) {
    double num = 0.0;
    for (double v : y) num += v;
    return correct_to_01(num / static_cast<double>(y.size()));
}

inline double r_nonsep(std::span<const double> y, std::size_t a) {
    const std::size_t n = y.size();
    double num = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        num += y[j];
        for (std::size_t k = 0; k + 2 <= a; ++k) num += std::fabs(y[j] - y[(j + k + 1) % n]);
    }
    const double half_up = std::ceil(static_cast<double>(a) / 2.0);
    const double den = static_cast<double>(n) * half_up *
                       (1.0 + 2.0 * static_cast<double>(a) - 2.0 * half_up) /
                       static_cast<double>(a);
    return correct_to_01(num / den);
}

// Shape functions take the full x of length M; m is 1-based.
inline double shape_linear(std::span<const double> x, std::size_t m) {
    const std::size_t big_m = x.size();
    double r = 1.0;
    for (std::size_t i = 0; i < big_m - m; ++i) r *= x[i];
    if (m != 1) r *= 1.0 - x[big_m - m];
    return correct_to_01(r);
}

inline double shape_convex(std::span<const double> x, std::size_t m) {
    const std::size_t big_m = x.size();
    constexpr double half_pi = std::numbers::pi / 2.0;
    double r = 1.0;
    for (std::size_t i = 0; i < big_m - m; ++i) r *= 1.0 - std::cos(x[i] * half_pi);
    if (m != 1) r *= 1.0 - std::sin(x[big_m - m] * half_pi);
    return correct_to_01(r);
}

inline double shape_concave(std::span<const double> x, std::size_t m) {
    const std::size_t big_m = x.size();
    constexpr double half_pi = std::numbers::pi / 2.0;
    double r = 1.0;
    for (std::size_t i = 0; i < big_m - m; ++i) r *= std::sin(x[i] * half_pi);
    if (m != 1) r *= std::cos(x[big_m - m] * half_pi);
    return correct_to_01(r);
}

inline double shape_mixed(std::span<const double> x, int a, double alpha) {
    const double t = 2.0 * a * std::numbers::pi;
    return correct_to_01(std::pow(1.0 - x[0] - std::cos(t * x[0] + std::numbers::pi / 2.0) / t, alpha));
}

inline double shape_disc(std::span<const double> x, int a, double alpha, double beta) {
    const double t = std::cos(a * std::pow(x[0], beta) * std::numbers::pi);
    return correct_to_01(1.0 - std::pow(x[0], alpha) * t * t);
}

} // namespace wfg_detail

/// WFG1..WFG9 with k = 2(M-1) position and l = 20 distance parameters;
/// variable i has domain [0, 2(i+1)] and objective i is scaled by 2(i+1),
/// so the optimal front of WFG4..WFG9 lies on the hyper-ellipse with radii
/// 2, 4, ..., 2M.
class Wfg : public Problem {
public:
    Wfg(int id, std::size_t objectives)
        : Problem("wfg" + std::to_string(id), objectives,
                  2 * (objectives - 1) + 20, 0,
                  std::vector<double>(2 * (objectives - 1) + 20, 0.0),
                  upper_for(2 * (objectives - 1) + 20)),
          id_(id),
          position_count_(2 * (objectives - 1)) {
        if (id < 1 || id > 9) throw std::invalid_argument("wfg id must be in [1,9]");
    }

    bool disparately_scaled() const override { return true; }

    std::vector<double> hv_reference_point() const override {
        std::vector<double> r(objective_count());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = 2.0 * static_cast<double>(i + 1) + 1.0;
        return r;
    }

protected:
    Evaluation evaluate_impl(std::span<const double> z) const override {
        namespace d = wfg_detail;
        const std::size_t n = variable_count();
        const std::size_t k = position_count_;
        const std::size_t m = objective_count();

        // working parameters normalized to [0,1]
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = d::correct_to_01(z[i] / (2.0 * static_cast<double>(i + 1)));

        std::vector<double> t;
        switch (id_) {
        case 1:
            reduce_distance(y, k, [](double v) { return d::s_linear(v, 0.35); });
            reduce_distance(y, k, [](double v) { return d::b_flat(v, 0.8, 0.75, 0.85); });
            for (double& v : y) v = d::b_poly(v, 0.02);
            t = rsum_scaled_groups(y, k, m);
            break;
        case 2:
        case 3:
            reduce_distance(y, k, [](double v) { return d::s_linear(v, 0.35); });
            y = pair_nonsep_distance(y, k);
            t = rsum_unit_groups(y, k, m);
            break;
        case 4:
            for (double& v : y) v = d::s_multi(v, 30, 10.0, 0.35);
            t = rsum_unit_groups(y, k, m);
            break;
        case 5:
            for (double& v : y) v = d::s_decept(v, 0.35, 0.001, 0.05);
            t = rsum_unit_groups(y, k, m);
            break;
        case 6:
            reduce_distance(y, k, [](double v) { return d::s_linear(v, 0.35); });
            t = nonsep_groups(y, k, m);
            break;
        case 7:
            for (std::size_t i = 0; i < k; ++i)
                y[i] = d::b_param(y[i], d::r_sum_unit(std::span(y).subspan(i + 1)),
                                  0.98 / 49.98, 0.02, 50.0);
            reduce_distance(y, k, [](double v) { return d::s_linear(v, 0.35); });
            t = rsum_unit_groups(y, k, m);
            break;
        case 8: {
            // each dependency sum reads the untransformed predecessors
            const std::vector<double> base(y);
            for (std::size_t i = k; i < n; ++i)
                y[i] = d::b_param(base[i], d::r_sum_unit(std::span(base).first(i)),
                                  0.98 / 49.98, 0.02, 50.0);
            reduce_distance(y, k, [](double v) { return d::s_linear(v, 0.35); });
            t = rsum_unit_groups(y, k, m);
            break;
        }
        case 9: {
            std::vector<double> shifted(y);
            for (std::size_t i = 0; i + 1 < n; ++i)
                shifted[i] = d::b_param(y[i], d::r_sum_unit(std::span(y).subspan(i + 1)),
                                        0.98 / 49.98, 0.02, 50.0);
            y = std::move(shifted);
            for (std::size_t i = 0; i < k; ++i) y[i] = d::s_decept(y[i], 0.35, 0.001, 0.05);
            for (std::size_t i = k; i < n; ++i) y[i] = d::s_multi(y[i], 30, 95.0, 0.35);
            t = nonsep_groups(y, k, m);
            break;
        }
        default:
            throw std::logic_error("unreachable");
        }

        // underlying parameters; WFG3 degenerates all but the first axis
        std::vector<double> x(m);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double a = (id_ == 3 && i > 0) ? 0.0 : 1.0;
            x[i] = std::max(t[m - 1], a) * (t[i] - 0.5) + 0.5;
        }
        x[m - 1] = t[m - 1];

        Evaluation e;
        e.objectives.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double h = shape_value(x, i + 1);
            e.objectives[i] = x[m - 1] + 2.0 * static_cast<double>(i + 1) * h;
        }
        return e;
    }

private:
    static std::vector<double> upper_for(std::size_t n) {
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = 2.0 * static_cast<double>(i + 1);
        return u;
    }

    template <typename F>
    static void reduce_distance(std::vector<double>& y, std::size_t k, F f) {
        for (std::size_t i = k; i < y.size(); ++i) y[i] = f(y[i]);
    }

    // WFG2/WFG3 second stage: fold distance parameters pairwise.
    static std::vector<double> pair_nonsep_distance(const std::vector<double>& y, std::size_t k) {
        const std::size_t l = y.size() - k;
        assert(l % 2 == 0);
        std::vector<double> out(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t i = 0; i < l / 2; ++i) {
            const double pair[2] = {y[k + 2 * i], y[k + 2 * i + 1]};
            out.push_back(wfg_detail::r_nonsep(pair, 2));
        }
        return out;
    }

    // weighted sums over k/(M-1)-sized position groups plus one distance group
    static std::vector<double> rsum_scaled_groups(const std::vector<double>& y, std::size_t k,
                                                  std::size_t m) {
        std::vector<double> w(y.size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 * static_cast<double>(i + 1);
        std::vector<double> t(m);
        const std::size_t gap = k / (m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            t[i] = wfg_detail::r_sum(std::span(y).subspan(i * gap, gap),
                                     std::span(w).subspan(i * gap, gap));
        t[m - 1] = wfg_detail::r_sum(std::span(y).subspan(k), std::span(w).subspan(k));
        return t;
    }

    static std::vector<double> rsum_unit_groups(const std::vector<double>& y, std::size_t k,
                                                std::size_t m) {
        std::vector<double> t(m);
        const std::size_t gap = k / (m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            t[i] = wfg_detail::r_sum_unit(std::span(y).subspan(i * gap, gap));
        t[m - 1] = wfg_detail::r_sum_unit(std::span(y).subspan(k));
        return t;
    }

    static std::vector<double> nonsep_groups(const std::vector<double>& y, std::size_t k,
                                             std::size_t m) {
        std::vector<double> t(m);
        const std::size_t gap = k / (m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            t[i] = wfg_detail::r_nonsep(std::span(y).subspan(i * gap, gap), gap);
        t[m - 1] = wfg_detail::r_nonsep(std::span(y).subspan(k), y.size() - k);
        return t;
    }

    double shape_value(std::span<const double> x, std::size_t m_index) const {
        namespace d = wfg_detail;
        const std::size_t m = x.size();
        switch (id_) {
        case 1:
            return m_index == m ? d::shape_mixed(x, 5, 1.0) : d::shape_convex(x, m_index);
        case 2:
            return m_index == m ? d::shape_disc(x, 5, 1.0, 1.0) : d::shape_convex(x, m_index);
        case 3:
            return d::shape_linear(x, m_index);
        default:
            return d::shape_concave(x, m_index);
        }
    }

    int id_;
    std::size_t position_count_;
};

} // namespace moeadld
