#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <moeadld/problem.hpp>

namespace moeadld {

/// DTLZ1..DTLZ4 with n = M + r - 1 decision variables in [0,1]
/// (r = 5 for DTLZ1, r = 10 otherwise). DTLZ4 uses the usual bias
/// exponent alpha = 100.
class Dtlz : public Problem {
public:
    static constexpr double kBiasExponent = 100.0;

    Dtlz(int id, std::size_t objectives)
        : Problem("dtlz" + std::to_string(id), objectives,
                  objectives + (id == 1 ? 5 : 10) - 1, 0,
                  std::vector<double>(objectives + (id == 1 ? 5 : 10) - 1, 0.0),
                  std::vector<double>(objectives + (id == 1 ? 5 : 10) - 1, 1.0)),
          id_(id) {
        if (id < 1 || id > 4) throw std::invalid_argument("dtlz id must be in [1,4]");
    }

    std::vector<double> hv_reference_point() const override {
        return std::vector<double>(objective_count(), id_ == 1 ? 1.0 : 2.0);
    }

    std::vector<std::vector<double>> reference_front(const WeightSet& weights) const override {
        check_weight_dimension(weights);
        std::vector<std::vector<double>> front;
        front.reserve(weights.size());
        for (const WeightVector& w : weights) front.push_back(front_point(w));
        return front;
    }

    /// Intersection of one weight direction with the Pareto surface:
    /// the Sum f = 0.5 plane for DTLZ1, the unit sphere for DTLZ2..4.
    std::vector<double> front_point(const WeightVector& w) const {
        std::vector<double> f(w.components);
        if (id_ == 1) {
            double sum = 0.0;
            for (double c : f) sum += c;
            for (double& c : f) c = 0.5 * c / sum;
        } else {
            for (double& c : f) c /= w.norm;
        }
        return f;
    }

protected:
    Evaluation evaluate_impl(std::span<const double> x) const override {
        const std::size_t m = objective_count();
        std::span<const double> dist = x.subspan(m - 1);
        Evaluation e;
        e.objectives.resize(m);
        if (id_ == 1) {
            const double g = rastrigin_g(dist);
            for (std::size_t i = 0; i < m; ++i) {
                double v = 0.5 * (1.0 + g);
                for (std::size_t j = 0; j + i + 1 < m; ++j) v *= x[j];
                if (i > 0) v *= 1.0 - x[m - 1 - i];
                e.objectives[i] = v;
            }
            return e;
        }
        const double g = id_ == 3 ? rastrigin_g(dist) : sphere_g(dist);
        constexpr double half_pi = std::numbers::pi / 2.0;
        for (std::size_t i = 0; i < m; ++i) {
            double v = 1.0 + g;
            for (std::size_t j = 0; j + i + 1 < m; ++j) v *= std::cos(position(x[j]) * half_pi);
            if (i > 0) v *= std::sin(position(x[m - 1 - i]) * half_pi);
            e.objectives[i] = v;
        }
        return e;
    }

private:
    double position(double xi) const { return id_ == 4 ? std::pow(xi, kBiasExponent) : xi; }

    // multimodal distance function of DTLZ1/DTLZ3; zero at x = 0.5
    static double rastrigin_g(std::span<const double> dist) {
        double s = 0.0;
        for (double xi : dist)
            s += (xi - 0.5) * (xi - 0.5) - std::cos(20.0 * std::numbers::pi * (xi - 0.5));
        return 100.0 * (static_cast<double>(dist.size()) + s);
    }

    static double sphere_g(std::span<const double> dist) {
        double s = 0.0;
        for (double xi : dist) s += (xi - 0.5) * (xi - 0.5);
        return s;
    }

    int id_;
};

} // namespace moeadld
