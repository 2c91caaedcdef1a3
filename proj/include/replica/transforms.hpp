#pragma once

#include "replica/precision.hpp"

namespace replica {

/// Coefficients (alpha, beta) of the replicated series sum (alpha + beta k) t^(mk).
struct ReplicatedCoefficients {
  Real alpha;
  Real beta;
};

// Descend maps x -> t. Each contracts [0, 1) toward 0 with the degree of the
// underlying algebraic transformation (t ~ x^2/4, x^3/9, x^4/8 near 0).
// All throw DomainError outside 0 <= x < 1.

/// t = (1 - sqrt(1 - x^2)) / (1 + sqrt(1 - x^2))
Real quad_descend(const Real& x);
/// t = (1 - cbrt(1 - x^3)) / (1 + 2 cbrt(1 - x^3))
Real cubic_descend(const Real& x);
/// t = (1 - (1 - x^4)^(1/4)) / (1 + (1 - x^4)^(1/4))
Real quartic_descend(const Real& x);

// Replication maps (a, b) -> (alpha, beta) such that
//   sum c_k (a + b k) x^(mk) = sum c_k (alpha + beta k) t^(mk)
// with t the matching descend image of x. Throw DomainError unless 0 <= t < 1.

ReplicatedCoefficients quad_replicate(const Real& a, const Real& b, const Real& t);
ReplicatedCoefficients cubic_replicate(const Real& a, const Real& b, const Real& t);
ReplicatedCoefficients quartic_replicate(const Real& a, const Real& b, const Real& t);

}  // namespace replica
