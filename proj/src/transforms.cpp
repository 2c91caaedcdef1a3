#include "replica/transforms.hpp"

namespace replica {

namespace {

void require_unit_interval(const Real& v, const char* what) {
  if (!(v >= 0L) || !(v < 1L)) {
    throw DomainError(std::string(what) + " must lie in [0, 1)");
  }
}

}  // namespace

// The descend maps are evaluated in the cancellation-free form obtained by
// multiplying through by the conjugate: with y = (1 - x^m)^(1/m),
// 1 - y = x^m / (1 + y + ... + y^(m-1)). Values are identical, but small x no
// longer loses digits to 1 - y.

Real quad_descend(const Real& x) {
  require_unit_interval(x, "quad_descend argument");
  const Real x2 = x.squared();
  const Real y = nth_root(1L - x2, 2);
  const Real one_plus_y = y + 1L;
  return x2 / one_plus_y.squared();
}

Real cubic_descend(const Real& x) {
  require_unit_interval(x, "cubic_descend argument");
  const Real x3 = x.pow(3);
  const Real y = nth_root(1L - x3, 3);
  const Real one_minus_y = x3 / (y.squared() + y + 1L);
  return one_minus_y / (y * 2L + 1L);
}

Real quartic_descend(const Real& x) {
  require_unit_interval(x, "quartic_descend argument");
  const Real x4 = x.pow(4);
  const Real y = nth_root(1L - x4, 4);
  const Real one_plus_y = y + 1L;
  return x4 / (one_plus_y.squared() * (y.squared() + 1L));
}

ReplicatedCoefficients quad_replicate(const Real& a, const Real& b, const Real& t) {
  require_unit_interval(t, "quad_replicate t");
  const Real one_plus_t = t + 1L;
  const Real one_minus_t = 1L - t;
  Real alpha = a * one_plus_t + b * t * one_plus_t / one_minus_t;
  Real beta = b * 2L * one_plus_t.squared() / one_minus_t;
  return {std::move(alpha), std::move(beta)};
}

ReplicatedCoefficients cubic_replicate(const Real& a, const Real& b, const Real& t) {
  require_unit_interval(t, "cubic_replicate t");
  const Real one_plus_2t = t * 2L + 1L;
  const Real one_minus_t3 = 1L - t.pow(3);
  const Real cube = (1L - t).pow(3);
  Real alpha = a * one_plus_2t + b * 2L * t * one_plus_2t * one_minus_t3 / cube;
  Real beta = b * 3L * one_minus_t3 * one_plus_2t.squared() / cube;
  return {std::move(alpha), std::move(beta)};
}

ReplicatedCoefficients quartic_replicate(const Real& a, const Real& b, const Real& t) {
  require_unit_interval(t, "quartic_replicate t");
  const Real one_plus_t = t + 1L;
  const Real one_plus_t2 = t.squared() + 1L;
  const Real cube = (1L - t).pow(3);
  Real alpha = a * one_plus_t.squared() + b * 2L * t * one_plus_t2 * one_plus_t.squared() / cube;
  Real beta = b * 4L * one_plus_t2 * one_plus_t.pow(3) / cube;
  return {std::move(alpha), std::move(beta)};
}

}  // namespace replica
