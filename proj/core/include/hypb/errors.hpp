#pragma once

#include <stdexcept>
#include <string>

namespace hypb {

/// A parameter (table parameter, area, grid size, ...) lies outside its domain.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A point lies outside the region where the map is defined (inside the
/// table, outside the unit square, or degenerate input).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The requested quantity is undefined on a singularity line of the map.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hypb
