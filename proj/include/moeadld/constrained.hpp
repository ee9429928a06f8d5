#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <moeadld/dtlz.hpp>
#include <moeadld/problem.hpp>

namespace moeadld {

/// Constrained DTLZ variants: the objectives are exactly the parent
/// problem's, with inequality constraints (feasible when g >= 0) added on
/// top of the objective values.
///
///   c1_dtlz1  one constraint keeping only a band near the DTLZ1 plane
///   c2_dtlz2  one constraint carving the DTLZ2 sphere into patches
///             (radius 0.4 when M = 3, 0.5 otherwise)
///   c3_dtlz1  M linear constraints whose surfaces form the front
///   c3_dtlz4  M quadratic constraints whose surfaces form the front
class ConstrainedDtlz : public Problem {
public:
    enum class Kind { c1_dtlz1, c2_dtlz2, c3_dtlz1, c3_dtlz4 };

    ConstrainedDtlz(Kind kind, std::size_t objectives)
        : Problem(kind_name(kind), objectives, parent_for(kind, objectives).variable_count(),
                  constraint_count_for(kind, objectives),
                  parent_for(kind, objectives).lower_bounds(),
                  parent_for(kind, objectives).upper_bounds()),
          kind_(kind),
          parent_(parent_for(kind, objectives)) {}

    std::vector<double> hv_reference_point() const override {
        return parent_.hv_reference_point();
    }

    const Dtlz& parent() const { return parent_; }

    /// Disc radius of the c2_dtlz2 constraint for a given objective count.
    static double c2_radius(std::size_t objectives) { return objectives == 3 ? 0.4 : 0.5; }

    /// Signed constraint values as a function of an objective vector.
    std::vector<double> constraints_of(std::span<const double> f) const {
        const std::size_t m = objective_count();
        std::vector<double> g;
        switch (kind_) {
        case Kind::c1_dtlz1: {
            double c = 1.0 - f[m - 1] / 0.6;
            for (std::size_t i = 0; i + 1 < m; ++i) c -= f[i] / 0.5;
            g.push_back(c);
            break;
        }
        case Kind::c2_dtlz2: {
            const double r2 = c2_radius(m) * c2_radius(m);
            double sq = 0.0;
            for (double fi : f) sq += fi * fi;
            // p: nearest of the M spheres centred on the unit axis points
            double p = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                double v = (f[i] - 1.0) * (f[i] - 1.0) + (sq - f[i] * f[i]) - r2;
                p = std::min(p, v);
            }
            double q = -r2;
            const double centre = 1.0 / std::sqrt(static_cast<double>(m));
            for (double fi : f) q += (fi - centre) * (fi - centre);
            g.push_back(-std::min(p, q));
            break;
        }
        case Kind::c3_dtlz1: {
            double sum = 0.0;
            for (double fi : f) sum += fi;
            for (std::size_t i = 0; i < m; ++i) g.push_back(sum - f[i] + f[i] / 0.5 - 1.0);
            break;
        }
        case Kind::c3_dtlz4: {
            double sq = 0.0;
            for (double fi : f) sq += fi * fi;
            for (std::size_t i = 0; i < m; ++i)
                g.push_back(f[i] * f[i] / 4.0 + (sq - f[i] * f[i]) - 1.0);
            break;
        }
        }
        return g;
    }

    std::vector<std::vector<double>> reference_front(const WeightSet& weights) const override {
        check_weight_dimension(weights);
        const std::size_t m = objective_count();
        std::vector<std::vector<double>> front;
        front.reserve(weights.size());
        switch (kind_) {
        case Kind::c1_dtlz1:
            return parent_.reference_front(weights);
        case Kind::c2_dtlz2:
            // the DTLZ2 sphere points, minus those the constraint removes
            for (const WeightVector& w : weights) {
                std::vector<double> f = parent_.front_point(w);
                if (constraints_of(f)[0] >= 0.0) front.push_back(std::move(f));
            }
            if (front.empty()) throw std::logic_error(name() + ": empty reference front");
            return front;
        case Kind::c3_dtlz1:
            for (const WeightVector& w : weights) {
                double t = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    double sum_others = 0.0;
                    for (std::size_t k = 0; k < m; ++k)
                        sum_others += k == j ? 2.0 * w.components[k] : w.components[k];
                    t = std::max(t, 1.0 / sum_others);
                }
                std::vector<double> f(w.components);
                for (double& fi : f) fi *= t;
                front.push_back(std::move(f));
            }
            return front;
        case Kind::c3_dtlz4:
            for (const WeightVector& w : weights) {
                double t = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < m; ++k) {
                        double c = w.components[k];
                        s += k == j ? c * c / 4.0 : c * c;
                    }
                    t = std::max(t, 1.0 / std::sqrt(s));
                }
                std::vector<double> f(w.components);
                for (double& fi : f) fi *= t;
                front.push_back(std::move(f));
            }
            return front;
        }
        throw std::logic_error("unreachable");
    }

protected:
    Evaluation evaluate_impl(std::span<const double> x) const override {
        Evaluation e = parent_.evaluate(x);
        e.constraints = constraints_of(e.objectives);
        return e;
    }

private:
    static const char* kind_name(Kind kind) {
        switch (kind) {
        case Kind::c1_dtlz1: return "c1_dtlz1";
        case Kind::c2_dtlz2: return "c2_dtlz2";
        case Kind::c3_dtlz1: return "c3_dtlz1";
        case Kind::c3_dtlz4: return "c3_dtlz4";
        }
        throw std::logic_error("unreachable");
    }

    static Dtlz parent_for(Kind kind, std::size_t objectives) {
        switch (kind) {
        case Kind::c1_dtlz1:
        case Kind::c3_dtlz1: return Dtlz(1, objectives);
        case Kind::c2_dtlz2: return Dtlz(2, objectives);
        case Kind::c3_dtlz4: return Dtlz(4, objectives);
        }
        throw std::logic_error("unreachable");
    }

    static std::size_t constraint_count_for(Kind kind, std::size_t objectives) {
        return kind == Kind::c3_dtlz1 || kind == Kind::c3_dtlz4 ? objectives : 1;
    }

    Kind kind_;
    Dtlz parent_;
};

} // namespace moeadld
