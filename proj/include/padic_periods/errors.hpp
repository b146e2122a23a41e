#pragma once

#include <stdexcept>
#include <string>

namespace padic_periods {

/// Invalid arguments: non-prime moduli, out-of-domain inputs, malformed words.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Schottky geometry refused: ball systems not in good position, orbit collisions.
class geometry_error : public std::runtime_error {
public:
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated computation did not reach the precision it needs.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficient field or variable mismatch in q-expansion arithmetic.
class field_error : public std::domain_error {
public:
    explicit field_error(const std::string& what) : std::domain_error(what) {}
};

} // namespace padic_periods
