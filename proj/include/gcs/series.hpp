#pragma once

#include <cstddef>
#include <functional>

#include "gcs/errors.hpp"
#include "gcs/precision.hpp"
#include "gcs/real.hpp"

namespace gcs {

// Certified summation of an infinite series.
//
// `term(k)` is the k-th term; `ratio_bound(k)` must be a proven upper bound on
// |term(k+1)/term(k)| for all k >= first_test_index, decreasing to 0.
// Truncation happens at the first K >= first_test_index where
// ratio_bound(K) <= 1/2 and |term(K)| <= 2^-(working+guard) * |partial sum|;
// from there the tail is geometrically dominated, |tail| <= 2*|term(K+1)|,
// which is below the truncation threshold. Terms are called with strictly
// increasing k, so stateful term closures are fine.
inline Real sum_certified(const std::function<Real(std::size_t)>& term,
                          const std::function<Real(std::size_t)>& ratio_bound,
                          const PrecisionPolicy& policy, std::size_t first_test_index = 0) {
    const Real half = Real(1l, policy.internal_bits()) / 2l;
    const Real trunc = policy.truncation_tolerance();
    Real sum(0l, policy.internal_bits());
    const std::size_t max_index = static_cast<std::size_t>(policy.max_series_index);
    for (std::size_t k = 0; k <= max_index; ++k) {
        Real t = term(k);
        sum += t;
        if (k < first_test_index) continue;
        if (ratio_bound(k) <= half && abs(t) <= trunc * abs(sum)) return sum;
    }
    throw NonConvergent(max_index);
}

}  // namespace gcs
