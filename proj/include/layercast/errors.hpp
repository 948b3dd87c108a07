#pragma once

#include <stdexcept>
#include <string>

namespace layercast {

// Bad inputs: violated preconditions, malformed descriptors, dimension mismatches.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A constraint set with no feasible point. Carries the name of the violated
// constraint and by how much it is violated at the best point found.
class infeasible_error : public std::runtime_error {
public:
    infeasible_error(const std::string& what, std::string constraint, double violation)
        : std::runtime_error(what), constraint_(std::move(constraint)), violation_(violation) {}

    const std::string& constraint() const noexcept { return constraint_; }
    double violation() const noexcept { return violation_; }

private:
    std::string constraint_;
    double violation_;
};

// Numerical procedure failed to converge or left its domain (lost bracket,
// divergent quadrature, singular Newton system).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace layercast
