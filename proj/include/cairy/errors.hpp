#pragma once

#include <stdexcept>
#include <string>

namespace cairy {

/// Base class of all typed computation errors. The error name is baked into
/// what() so callers (and the CLI) can report it without RTTI games.
struct Error : std::runtime_error {
    Error(const std::string& name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(name) {}
    const std::string& name() const noexcept { return name_; }

  private:
    std::string name_;
};

#define CAIRY_ERROR(Name)                                                      \
    struct Name : Error {                                                      \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}           \
    }

CAIRY_ERROR(DomainError);
CAIRY_ERROR(OverflowError);
CAIRY_ERROR(ConvergenceError);
CAIRY_ERROR(BranchJumpError);
CAIRY_ERROR(StepFailure);
CAIRY_ERROR(SimplicityError);
CAIRY_ERROR(ContourOnZeroError);
CAIRY_ERROR(DegenerateScaleError);
CAIRY_ERROR(FrequencySolveError);
CAIRY_ERROR(EigenFailure);
CAIRY_ERROR(NearSpectrumError);
CAIRY_ERROR(QuadratureError);
CAIRY_ERROR(DegenerateZeroError);
CAIRY_ERROR(NondegeneracyError);
CAIRY_ERROR(EmptyPerpSetError);
CAIRY_ERROR(GridResolutionError);

#undef CAIRY_ERROR

} // namespace cairy
