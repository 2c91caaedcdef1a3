#pragma once

#include <optional>

#include "replica/algorithms.hpp"

namespace replica {

/// A constant extracted from one converged run.
struct ConstantValue {
  Constant constant;
  Family family;
  Rational w;
  PrecisionContext ctx;
  RunResult run;
  Real value;
};

/// Runs the recipe for `c` (or the given family) at `target_digits` and
/// post-processes the limit. `guard_scale` multiplies the guard allowance.
ConstantValue compute_constant(Constant c, int target_digits, std::optional<Family> family = std::nullopt,
                               int guard_scale = 1);

/// Context for `family` at `target_digits` with the guard scaled.
PrecisionContext scaled_context(Family family, int target_digits, int guard_scale = 1);

/// Product of two extracted Gamma values against the reflection formula.
struct ReflectionCheck {
  Real product;   // e.g. Gamma(1/4) Gamma(3/4)
  Real expected;  // e.g. pi sqrt(2), pi from the quartic w = 1 run
  int digits;
};

ReflectionCheck check_quarter_reflection(int target_digits, int guard_scale = 1);
ReflectionCheck check_third_reflection(int target_digits, int guard_scale = 1);

/// Compares the cubic w = 1/2 limit with two candidate closed forms:
/// the general limit formula, 3^(3/4) 2^(-4/3) (Gamma(2/3)/pi)^(3/2), and the
/// shorter (2 / (sqrt 3 Gamma(1/3)))^(3/2). Gamma(2/3) comes from the cubic
/// w = 2 run, pi from the quartic w = 1 run.
struct CubicHalfProbe {
  Real limit;
  Real series_value;   // couple_product(1/3, 1/2)
  Real general_form;
  Real short_form;
  Real ratio;          // limit / short_form
  Real expected_ratio; // 3^(3/4) 2^(-4/3)
  int series_digits;
  int general_digits;
  int short_digits;
  int ratio_digits;
  int hardware_gamma_digits;  // extracted Gamma(2/3) vs std::tgamma
  bool general_supported() const { return general_digits > short_digits; }
};

CubicHalfProbe probe_cubic_half_limit(int target_digits);

}  // namespace replica
