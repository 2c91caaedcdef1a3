#pragma once

#include <cstddef>

#include "replica/precision.hpp"

namespace replica {

/// sum_k (p)_k (q)_k / (k!)^2 * (a + b k) * z^k
///
/// `stride` records the power m when z = x^m; it does not change the sum.
struct SeriesSpec {
  Rational p;
  Rational q;
  Real a;
  Real b;
  Real z;
  int stride = 1;
};

struct SeriesSum {
  Real value;
  std::size_t terms;  // number of summed terms k = 0 .. terms-1
};

/// Sums the series until the geometric tail bound guarantees an absolute
/// truncation error below 10^(2 - working_digits).
///
/// Requires 0 <= z < 1 and p, q in (0, 1]; z >= 1 raises DivergenceError.
SeriesSum sum_series(const SeriesSpec& spec, const PrecisionContext& ctx);
Real evaluate_series(const SeriesSpec& spec, const PrecisionContext& ctx);

/// Plain partial sum of the first `terms` terms, no stopping rule.
Real partial_series(const SeriesSpec& spec, std::size_t terms, const PrecisionContext& ctx);

/// The two Ramanujan-type sums at z = 1/2 with weights 1 and k.
struct CoupleValues {
  Real s0;  // sum (s)_k (1-s)_k / (k!)^2 / 2^k
  Real s1;  // sum (s)_k (1-s)_k / (k!)^2 * k / 2^k
};

/// s must be 1/2 or 1/3.
CoupleValues ramanujan_couple(const Rational& s, const PrecisionContext& ctx);

/// s0^w * s1, the limit of the matching iteration family with parameter w.
Real couple_product(const Rational& s, const Rational& w, const PrecisionContext& ctx);

/// F = sum ((1/2)_k / k!)^2 (1 + 2k) (1 - b^2/a^2)^k, so that the ellipse
/// perimeter is (2 pi b^2 / a) F. Rejects 1 - b^2/a^2 > 0.99 with
/// SlowConvergenceError.
Real ellipse_factor(const Real& semi_major, const Real& semi_minor, const PrecisionContext& ctx);

/// 1 - b^2/a^2 after validating 0 < b <= a.
Real ellipse_parameter(const Real& semi_major, const Real& semi_minor);

}  // namespace replica
