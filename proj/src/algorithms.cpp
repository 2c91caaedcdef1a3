#include "replica/algorithms.hpp"

#include <cmath>
#include <limits>

#include "replica/series.hpp"
#include "replica/transforms.hpp"

namespace replica {

namespace {

// Per-family pieces of one step d_n -> d_(n+1), c_n -> c_(n+1), a_n -> a_(n+1):
//   quadratic  f = 1 + d,  c' = 2 c f^(w-1),   a' = a f^(w+1) + c' d (1 - d) / 2
//   cubic      f = 1 + 2d, c' = 3 c f^(w-1),   a' = a f^(w+1) + 2 c' d (1 - d^3) / (3 f)
//   quartic    f = 1 + d,  c' = 4 c f^(2w-2),  a' = a f^(2w+2) + c' d (1 - d^4) / (2 f)
Real descend(Family family, const Real& d) {
  switch (family) {
    case Family::quadratic: return quad_descend(d);
    case Family::cubic: return cubic_descend(d);
    case Family::quartic: return quartic_descend(d);
  }
  throw InvalidArgument("unknown family");
}

IterationState advance(Family family, const Rational& w, const IterationState& s) {
  const int m = order_of(family);
  Real d = descend(family, s.d);
  const Real f = family == Family::cubic ? d * 2L + 1L : d + 1L;
  const Rational one(1);
  const Rational c_exp = family == Family::quartic ? Rational(2) * (w - one) : w - one;
  const Rational a_exp = family == Family::quartic ? Rational(2) * (w + one) : w + one;

  Real c = s.c * static_cast<long>(m) * pow_rational(f, c_exp);
  Real a = s.a * pow_rational(f, a_exp);
  switch (family) {
    case Family::quadratic: a += c * d * (1L - d) / 2L; break;
    case Family::cubic: a += c * 2L * d * (1L - d.pow(3)) / (f * 3L); break;
    case Family::quartic: a += c * d * (1L - d.pow(4)) / (f * 2L); break;
  }
  return {s.n + 1, std::move(d), std::move(c), std::move(a)};
}

void require_matching_context(Family family, const PrecisionContext& ctx) {
  if (ctx.algorithm_order() != order_of(family)) {
    throw InvalidArgument("context built for order " + std::to_string(ctx.algorithm_order()) +
                          " used with the " + std::string(family_name(family)) + " family");
  }
}

// The iteration budget is calibrated on the start d_0 = 2^(-1/m). Steps
// taken from d above that point (flat ellipses) are warm-up and are not
// charged, up to `warmup_limit` of them.
RunResult iterate(Family family, const Rational& w, IterationState initial, const PrecisionContext& ctx,
                  int warmup_limit = 0) {
  const double stop_exponent = -static_cast<double>(ctx.target_digits() + 8);
  const Real reference_start = pow_rational(ctx.real(2L), -1, order_of(family));
  std::vector<TraceEntry> trace;
  trace.push_back({std::move(initial), std::nullopt});
  int small_steps = 0;
  int warmups = 0;
  for (int charged = 0; charged < ctx.max_iterations();) {
    if (warmups < warmup_limit && trace.back().state.d > reference_start) {
      ++warmups;
    } else {
      ++charged;
    }
    IterationState next = advance(family, w, trace.back().state);
    const Real delta = (next.a - trace.back().state.a).abs();
    std::optional<long> delta_exp;
    if (!delta.is_zero()) delta_exp = static_cast<long>(std::floor(delta.log10_abs()));
    trace.push_back({std::move(next), delta_exp});
    small_steps = delta.log10_abs() < stop_exponent ? small_steps + 1 : 0;
    if (small_steps == 2) {
      Real value = trace.back().state.a;
      RunResult result{std::move(value), std::move(trace), {}, std::nullopt};
      try {
        result.orders = measure_orders(result.trace, result.value, ctx.target_digits());
      } catch (const InsufficientTraceError&) {
        // Runs that converge in very few steps have nothing to measure.
      }
      return result;
    }
  }
  const std::string message = "no convergence to " + std::to_string(ctx.target_digits()) + " digits within " +
                              std::to_string(trace.back().state.n) + " iterations";
  throw NonConvergenceError(message, std::move(trace));
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::quadratic: return "quad";
    case Family::cubic: return "cubic";
    case Family::quartic: return "quartic";
  }
  return "?";
}

Rational couple_parameter(Family f) { return f == Family::cubic ? Rational(1, 3) : Rational(1, 2); }

RunResult run_borwein(Family family, const Rational& w, const PrecisionContext& ctx) {
  require_matching_context(family, ctx);
  const int m = order_of(family);
  IterationState initial{0, pow_rational(ctx.real(2L), -1, m), ctx.real(2L), ctx.zero()};
  return iterate(family, w, std::move(initial), ctx);
}

RunResult run_ellipse(Family family, const Real& semi_major, const Real& semi_minor,
                      const PrecisionContext& ctx) {
  if (family == Family::cubic) throw InvalidArgument("ellipse perimeter uses the quad or quartic family");
  require_matching_context(family, ctx);
  const Real a_axis = ctx.zero() + semi_major;
  const Real b_axis = ctx.zero() + semi_minor;
  const Real z = ellipse_parameter(a_axis, b_axis);
  Real d0 = nth_root(z, order_of(family));
  if (!(d0 < 1L) || !(z < 1L)) {
    throw PrecisionInsufficientError("eccentricity rounds to 1 at " + std::to_string(ctx.working_digits()) +
                                     " digits; raise the precision");
  }
  const Real ratio = a_axis / b_axis;
  IterationState initial{0, std::move(d0), ratio.squared() * 2L, ctx.real(1L)};
  return iterate(family, Rational(0), std::move(initial), ctx, ctx.max_iterations());
}

std::vector<MeasuredOrder> orders_from_error_exponents(std::span<const double> log10_errors) {
  auto usable = [](double e) { return std::isfinite(e) && e < 0.0; };
  std::vector<MeasuredOrder> orders;
  for (std::size_t n = 0; n + 1 < log10_errors.size(); ++n) {
    if (usable(log10_errors[n]) && usable(log10_errors[n + 1])) {
      orders.push_back({static_cast<int>(n), log10_errors[n + 1] / log10_errors[n]});
    }
  }
  if (orders.empty()) throw InsufficientTraceError("need two consecutive errors in (0, 1) to measure an order");
  return orders;
}

std::vector<MeasuredOrder> measure_orders(std::span<const TraceEntry> trace, const Real& final_value,
                                          int floor_digits) {
  std::vector<double> exponents;
  exponents.reserve(trace.size());
  for (const TraceEntry& entry : trace) {
    const double e = (entry.state.a - final_value).log10_abs();
    exponents.push_back(e > -static_cast<double>(floor_digits) ? e
                                                                : std::numeric_limits<double>::quiet_NaN());
  }
  return orders_from_error_exponents(exponents);
}

Real replication_invariant(Family family, const Rational& w, const IterationState& state,
                           const PrecisionContext& ctx) {
  if (state.d.sign() < 0 || !(state.d < 1L)) throw DomainError("iteration state needs 0 <= d < 1");
  const int m = order_of(family);
  const Rational p = couple_parameter(family);
  const Rational q = Rational(1) - p;
  Real z = ctx.zero() + state.d.pow(static_cast<unsigned long>(m));
  Real b = state.c * (1L - z);
  Real weighted = evaluate_series({p, q, state.a, std::move(b), z, m}, ctx);
  if (w.num() == 0) return weighted;
  const Real plain = evaluate_series({p, q, ctx.real(1L), ctx.zero(), std::move(z), m}, ctx);
  return pow_rational(plain, w) * weighted;
}

std::optional<Constant> parse_constant(std::string_view name) {
  if (name == "pi") return Constant::pi;
  if (name == "gamma14") return Constant::gamma14;
  if (name == "gamma13") return Constant::gamma13;
  if (name == "gamma23") return Constant::gamma23;
  if (name == "gamma34") return Constant::gamma34;
  return std::nullopt;
}

std::string_view constant_name(Constant c) {
  switch (c) {
    case Constant::pi: return "pi";
    case Constant::gamma14: return "gamma14";
    case Constant::gamma13: return "gamma13";
    case Constant::gamma23: return "gamma23";
    case Constant::gamma34: return "gamma34";
  }
  return "?";
}

ConstantRecipe recipe_for(Constant c) {
  switch (c) {
    case Constant::pi: return {Family::quartic, Rational(1)};
    case Constant::gamma14: return {Family::quartic, Rational(1, 3)};
    case Constant::gamma34: return {Family::quartic, Rational(3)};
    case Constant::gamma23: return {Family::cubic, Rational(2)};
    case Constant::gamma13: return {Family::cubic, Rational(1, 2)};
  }
  throw InvalidArgument("unknown constant");
}

bool family_supports(Constant c, Family f) {
  const bool cubic_constant = c == Constant::gamma13 || c == Constant::gamma23;
  return cubic_constant == (f == Family::cubic);
}

Real postprocess_constant(Constant c, const Real& raw, const PrecisionContext& ctx) {
  const Real x = ctx.zero() + raw;
  switch (c) {
    case Constant::pi: return 1L / x;
    case Constant::gamma34: return pow_rational(x, -1, 4);
    case Constant::gamma14: return nth_root(ctx.real(2L), 2) * pow_rational(x, -3, 4);
    case Constant::gamma23: return pow_rational(pow_rational(ctx.real(2L), -1, 3) / x, 1, 3);
    case Constant::gamma13: {
      const Real scale = pow_rational(ctx.real(3L), 3, 4) * pow_rational(ctx.real(2L), -4, 3);
      return 2L / nth_root(ctx.real(3L), 2) * pow_rational(scale / x, 2, 3);
    }
  }
  throw InvalidArgument("unknown constant");
}

}  // namespace replica
