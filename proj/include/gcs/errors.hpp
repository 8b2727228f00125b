#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcs {

// A certified series did not reach its stopping condition within the
// configured index budget.
struct NonConvergent : std::runtime_error {
    explicit NonConvergent(std::size_t max_index)
        : std::runtime_error("series did not converge within " + std::to_string(max_index) +
                             " terms"),
          max_index(max_index) {}
    std::size_t max_index;
};

// A Cholesky pivot fell below the tolerance: either the parameters give a
// non-positive-definite form or the working precision is too low for the
// requested size. Raising the precision is the usual remedy.
struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(std::size_t pivot_index)
        : std::runtime_error("matrix is not positive definite at pivot " +
                             std::to_string(pivot_index) +
                             " (invalid parameters or insufficient precision)"),
          pivot_index(pivot_index) {}
    std::size_t pivot_index;
};

// An LU pivot underflowed the comparison tolerance.
struct Singular : std::runtime_error {
    explicit Singular(std::size_t pivot_index)
        : std::runtime_error("matrix is singular at working precision (pivot " +
                             std::to_string(pivot_index) + ")"),
          pivot_index(pivot_index) {}
    std::size_t pivot_index;
};

// The forward Laguerre-Freud iteration hit the gamma_n -> z cancellation:
// |gamma_n - z| underflowed, so the remaining digits are exhausted. The
// divergence index grows with working precision.
struct DivergedFromOracle : std::runtime_error {
    explicit DivergedFromOracle(std::size_t index)
        : std::runtime_error("recurrence iteration lost all precision at index " +
                             std::to_string(index)),
          index(index) {}
    std::size_t index;
};

// A recurrence denominator underflowed the comparison tolerance.
struct ZeroDenominator : std::runtime_error {
    explicit ZeroDenominator(std::size_t index)
        : std::runtime_error("recurrence denominator underflowed at index " +
                             std::to_string(index)),
          index(index) {}
    std::size_t index;
};

// A norm that must stay positive underflowed; cannot happen for valid
// parameters, so it signals an internal error.
struct Degenerate : std::runtime_error {
    explicit Degenerate(std::size_t index)
        : std::runtime_error("sequence value underflowed at index " + std::to_string(index)),
          index(index) {}
    std::size_t index;
};

}  // namespace gcs
