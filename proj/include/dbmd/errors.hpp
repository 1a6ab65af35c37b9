#pragma once

#include <stdexcept>
#include <string>

namespace dbmd {

/// Base class for all simulator errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad config document or a named-constraint violation (CLI exit code 2).
class config_error : public error {
 public:
  using error::error;
};

/// Particle or probe position outside [0, l_SE].
class out_of_domain_error : public error {
 public:
  using error::error;
};

/// An effective barrier quantity became non-positive (lambda*q <= -1).
class degenerate_state_error : public error {
 public:
  using error::error;
};

/// Operating-point solve failed to bracket or converge (CLI exit code 3).
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, double best_residual)
      : error(what), best_residual(best_residual) {}
  double best_residual;
};

/// File read/write failure; message carries the path (CLI exit code 4).
class io_error : public error {
 public:
  using error::error;
};

/// Trace too short for a requested metric.
class insufficient_data_error : public error {
 public:
  using error::error;
};

/// Traces cannot be compared at a common voltage sample.
class alignment_error : public error {
 public:
  using error::error;
};

}  // namespace dbmd
