#pragma once

#include <stdexcept>
#include <string>

namespace rgflow {

// Failure classes raised by the solver. The CLI maps each one to a
// distinct exit code (see tools/rgflow_main.cpp and README).

// A non-finite value appeared during time integration.
struct BlowUpError : std::runtime_error {
    BlowUpError(int substep_, double time_, double x_)
        : std::runtime_error("blow-up at substep " + std::to_string(substep_) +
                             ", t = " + std::to_string(time_) +
                             ", first bad node x = " + std::to_string(x_)),
          substep(substep_), time(time_), x(x_) {}
    int substep;
    double time;
    double x;
};

// The profile vanished or changed sign at the origin, so the exponent
// extraction is undefined.
struct DegenerateProfileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A renormalized coefficient overflowed (a relevant term under the
// chosen rescaling policy).
struct DivergingCoefficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Too few usable points for a fit.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Relative difference against a field with zero norm.
struct ZeroNormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ErrorClass {
    BlowUp,
    DegenerateProfile,
    DivergingCoefficient,
    InsufficientData,
    Other,
};

// Wrapper thrown by run(): the original failure class plus the RG
// iteration (1-based) at which it occurred.
struct RunError : std::runtime_error {
    RunError(int iteration_, ErrorClass cls_, const std::string& what_)
        : std::runtime_error("rg iteration " + std::to_string(iteration_) +
                             ": " + what_),
          iteration(iteration_), cls(cls_) {}
    int iteration;
    ErrorClass cls;
};

// Config text could not be parsed or violates an invariant.
struct ConfigError : std::runtime_error {
    ConfigError(int line_, const std::string& key_, const std::string& what_)
        : std::runtime_error("config line " + std::to_string(line_) + ", key '" +
                             key_ + "': " + what_),
          line(line_), key(key_) {}
    int line;
    std::string key;
};

} // namespace rgflow
