#pragma once

#include <stdexcept>
#include <string>

namespace apfrac {

/// Input violates a documented precondition (bad constraint, square D, Q out of range, ...).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A digit stream ran out before the requested index or width was reachable.
class HorizonError : public std::runtime_error {
public:
    explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

/// A certified decision was still ambiguous at the configured precision cap.
class PrecisionCapError : public std::runtime_error {
public:
    explicit PrecisionCapError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace apfrac
