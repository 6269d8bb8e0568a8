#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace plb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The estimate does not apply to the given inputs. `constraint` names the
/// violated condition (e.g. "nu(alpha, K) < 1").
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string constraint, const std::string& detail)
      : Error("infeasible: " + constraint + (detail.empty() ? "" : " (" + detail + ")")),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// A numerical integral did not settle under refinement.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double coarse, double fine)
      : Error(what), coarse_(coarse), fine_(fine) {}

  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

/// Two routes to the same quantity disagree beyond tolerance.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// A geometric construction produced an invalid object (e.g. a non-simple curve).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Mesh generation failed; the message carries the offending region.
class MeshingError : public Error {
 public:
  using Error::Error;
};

}  // namespace plb
