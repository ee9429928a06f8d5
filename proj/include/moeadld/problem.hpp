#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <moeadld/weights.hpp>

namespace moeadld {

/// Result of evaluating one decision vector. `constraints` holds the
/// signed g-values (feasible means every entry >= 0) and is empty for
/// unconstrained problems.
struct Evaluation {
    std::vector<double> objectives;
    std::vector<double> constraints;
};

/// Sum of violation magnitudes: zero iff feasible. All benchmark problems
/// here use inequality constraints only.
inline double constraint_violation(const Evaluation& e) {
    double cv = 0.0;
    for (double g : e.constraints)
        if (g < 0.0) cv -= g;
    return cv;
}

/// Evaluation contract shared by every benchmark problem: objective count,
/// variable bounds, optional constraints, and (where a closed form exists)
/// a Pareto-front reference-set generator.
class Problem {
public:
    virtual ~Problem() = default;

    const std::string& name() const { return name_; }
    std::size_t objective_count() const { return objectives_; }
    std::size_t variable_count() const { return variables_; }
    std::size_t constraint_count() const { return constraints_; }
    const std::vector<double>& lower_bounds() const { return lower_; }
    const std::vector<double>& upper_bounds() const { return upper_; }

    /// True when the objectives live on disparately scaled ranges and the
    /// optimizer should normalize them (the WFG family).
    virtual bool disparately_scaled() const { return false; }

    /// Conventional reference point for hypervolume on this problem.
    virtual std::vector<double> hv_reference_point() const = 0;

    Evaluation evaluate(std::span<const double> x) const {
        if (x.size() != variables_)
            throw std::invalid_argument(name_ + ": expected " + std::to_string(variables_) +
                                        " variables, got " + std::to_string(x.size()));
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!(x[i] >= lower_[i] && x[i] <= upper_[i]))
                throw std::domain_error(name_ + ": variable " + std::to_string(i) +
                                        " out of bounds");
        return evaluate_impl(x);
    }

    /// One Pareto-front point per weight vector (some problems drop the
    /// infeasible ones). Throws for families with no closed-form front.
    virtual std::vector<std::vector<double>> reference_front(const WeightSet& weights) const {
        (void)weights;
        throw std::logic_error(name_ + ": no closed-form reference front");
    }

protected:
    Problem(std::string name, std::size_t objectives, std::size_t variables,
            std::size_t constraints, std::vector<double> lower, std::vector<double> upper)
        : name_(std::move(name)),
          objectives_(objectives),
          variables_(variables),
          constraints_(constraints),
          lower_(std::move(lower)),
          upper_(std::move(upper)) {
        if (objectives_ < 2) throw std::invalid_argument(name_ + ": needs at least 2 objectives");
    }

    void check_weight_dimension(const WeightSet& weights) const {
        for (const WeightVector& w : weights)
            if (w.components.size() != objectives_)
                throw std::invalid_argument(name_ + ": weight dimension mismatch");
    }

    virtual Evaluation evaluate_impl(std::span<const double> x) const = 0;

private:
    std::string name_;
    std::size_t objectives_;
    std::size_t variables_;
    std::size_t constraints_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

} // namespace moeadld
