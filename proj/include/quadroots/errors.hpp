#pragma once

#include <stdexcept>
#include <string>

namespace quadroots {

/// Base class for all failures raised by the solver pipeline.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A zero of the radicand lies on (or too close to) the ray [0, inf).
struct RadicandOnAxis : SolverError {
    explicit RadicandOnAxis(const std::string& what) : SolverError(what) {}
};

/// Argument continuation hit a point where |W| fell below the zero floor.
struct PathThroughZero : SolverError {
    explicit PathThroughZero(const std::string& what) : SolverError(what) {}
};

/// No admissible shift found within the escalation budget.
struct ShiftPlanningFailed : SolverError {
    explicit ShiftPlanningFailed(const std::string& what) : SolverError(what) {}
};

/// The linear solve for a branch root had a denominator below the floor.
struct DegenerateDenominator : SolverError {
    explicit DegenerateDenominator(const std::string& what) : SolverError(what) {}
};

/// A branch value at one of the fixed poles +/-i is numerically zero.
struct PoleValueZero : SolverError {
    explicit PoleValueZero(const std::string& what) : SolverError(what) {}
};

/// The comparison function or the radicand vanished at a contour sample.
struct ContourTouchesZero : SolverError {
    explicit ContourTouchesZero(const std::string& what) : SolverError(what) {}
};

} // namespace quadroots
