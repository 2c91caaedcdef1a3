#include "replica/constants.hpp"

#include <cmath>
#include <future>

#include "replica/series.hpp"

namespace replica {

PrecisionContext scaled_context(Family family, int target_digits, int guard_scale) {
  const PrecisionContext ctx = make_context(target_digits, order_of(family));
  if (guard_scale == 1) return ctx;
  return ctx.with_guard_digits(ctx.guard_digits() * guard_scale);
}

ConstantValue compute_constant(Constant c, int target_digits, std::optional<Family> family, int guard_scale) {
  const ConstantRecipe recipe = recipe_for(c);
  const Family chosen = family.value_or(recipe.family);
  if (!family_supports(c, chosen)) {
    throw InvalidArgument(std::string(constant_name(c)) + " is not produced by the " +
                          std::string(family_name(chosen)) + " family");
  }
  PrecisionContext ctx = scaled_context(chosen, target_digits, guard_scale);
  RunResult run = run_borwein(chosen, recipe.w, ctx);
  Real value = postprocess_constant(c, run.value, ctx);
  return {c, chosen, recipe.w, ctx, std::move(run), std::move(value)};
}

namespace {

ReflectionCheck check_reflection(Constant first, Constant second, int target_digits, int guard_scale,
                                 bool thirds) {
  auto a = std::async(std::launch::async, compute_constant, first, target_digits, std::nullopt, guard_scale);
  auto b = std::async(std::launch::async, compute_constant, second, target_digits, std::nullopt, guard_scale);
  const ConstantValue pi = compute_constant(Constant::pi, target_digits, std::nullopt, guard_scale);
  const ConstantValue ga = a.get();
  const ConstantValue gb = b.get();
  Real product = ga.value * gb.value;
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z): pi sqrt(2) at z = 1/4, 2 pi / sqrt(3) at z = 1/3.
  Real expected = thirds ? pi.value * 2L / nth_root(pi.ctx.real(3L), 2) : pi.value * nth_root(pi.ctx.real(2L), 2);
  const int digits = agreement_digits(product, expected);
  return {std::move(product), std::move(expected), digits};
}

int hardware_agreement(const Real& value, double reference) {
  const double rel = std::fabs(value.to_double() - reference) / std::fabs(reference);
  if (rel == 0.0) return 16;
  return static_cast<int>(std::floor(-std::log10(rel)));
}

}  // namespace

ReflectionCheck check_quarter_reflection(int target_digits, int guard_scale) {
  return check_reflection(Constant::gamma14, Constant::gamma34, target_digits, guard_scale, false);
}

ReflectionCheck check_third_reflection(int target_digits, int guard_scale) {
  return check_reflection(Constant::gamma13, Constant::gamma23, target_digits, guard_scale, true);
}

CubicHalfProbe probe_cubic_half_limit(int target_digits) {
  const PrecisionContext ctx = make_context(target_digits, 3);
  auto limit_run = std::async(std::launch::async, [&] { return run_borwein(Family::cubic, Rational(1, 2), ctx); });
  auto series = std::async(std::launch::async, [&] { return couple_product(Rational(1, 3), Rational(1, 2), ctx); });
  auto gamma23 = std::async(std::launch::async, compute_constant, Constant::gamma23, target_digits, std::nullopt, 1);
  const ConstantValue pi = compute_constant(Constant::pi, target_digits);

  Real limit = limit_run.get().value;
  Real series_value = series.get();
  const ConstantValue g23 = gamma23.get();

  const Real sqrt3 = nth_root(ctx.real(3L), 2);
  Real expected_ratio = pow_rational(ctx.real(3L), 3, 4) * pow_rational(ctx.real(2L), -4, 3);
  Real general_form = expected_ratio * pow_rational(g23.value / pi.value, 3, 2);
  const Real gamma13 = pi.value * 2L / (sqrt3 * g23.value);
  Real short_form = pow_rational(2L / (sqrt3 * gamma13), 3, 2);
  Real ratio = limit / short_form;

  CubicHalfProbe probe{limit, series_value, general_form, short_form, ratio, expected_ratio, 0, 0, 0, 0, 0};
  probe.series_digits = agreement_digits(limit, series_value);
  probe.general_digits = agreement_digits(limit, general_form);
  probe.short_digits = agreement_digits(limit, short_form);
  probe.ratio_digits = agreement_digits(ratio, expected_ratio);
  probe.hardware_gamma_digits = hardware_agreement(g23.value, std::tgamma(2.0 / 3.0));
  return probe;
}

}  // namespace replica
