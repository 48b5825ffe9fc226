#ifndef GIBC_ERRORS_HPP
#define GIBC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gibc {

/// Thrown when a factorization or solve meets a pivot below the
/// admissible threshold. `row` identifies where the degeneracy surfaced.
class NumericallySingular : public std::runtime_error {
public:
    explicit NumericallySingular(int row_, const std::string& what_ = "")
        : std::runtime_error(what_.empty()
              ? "numerically singular system (row " + std::to_string(row_) + ")"
              : what_),
          row(row_) {}
    int row;
};

/// Thrown by iterative eigenvalue/inf-sup routines that exhaust their
/// iteration budget before the convergence test is met.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(int iterations_, const std::string& what_ = "")
        : std::runtime_error(what_.empty()
              ? "iteration did not converge after " + std::to_string(iterations_) + " steps"
              : what_),
          iterations(iterations_) {}
    int iterations;
};

} // namespace gibc

#endif
