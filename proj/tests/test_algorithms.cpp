#include <doctest.h>

#include <cmath>
#include <vector>

#include "reference_values.hpp"
#include "replica/algorithms.hpp"
#include "replica/constants.hpp"
#include "replica/series.hpp"

using namespace replica;

namespace {

bool matches(const Real& x, const char* reference, int digits) {
  return agreement_digits(x, make_context(100, 2).parse(reference)) >= digits;
}

const Family kFamilies[] = {Family::quadratic, Family::cubic, Family::quartic};

}  // namespace

TEST_CASE("quadratic w = 1: first step and limit") {
  const auto ctx = make_context(200, 2);
  const RunResult run = run_borwein(Family::quadratic, Rational(1), ctx);
  REQUIRE(run.trace.size() >= 2);
  const IterationState& first = run.trace[1].state;
  CHECK(matches(first.a, reference::kQuadFirstA, 75));
  CHECK(matches(first.d, reference::kThreeMinus2Sqrt2, 75));
  CHECK(agreement_digits(first.c, ctx.real(4L)) >= ctx.working_digits() - 3);
  CHECK(matches(run.value, reference::kInvPi, 75));
  CHECK(run.value == run.trace.back().state.a);
  CHECK_FALSE(run.trace[0].delta_exp.has_value());
}

TEST_CASE("cubic w = 1 converges to sqrt(3) / (2 pi)") {
  const auto ctx = make_context(200, 3);
  const RunResult run = run_borwein(Family::cubic, Rational(1), ctx);
  CHECK(matches(run.value, reference::kSqrt3Over2Pi, 75));
  CHECK(agreement_digits(run.value, couple_product(Rational(1, 3), Rational(1), ctx)) >= 200);
}

TEST_CASE("quartic limits coincide with quadratic limits") {
  for (const Rational w : {Rational(1, 3), Rational(1), Rational(3)}) {
    CAPTURE(w.to_string());
    const RunResult quad = run_borwein(Family::quadratic, w, make_context(300, 2));
    const RunResult quartic = run_borwein(Family::quartic, w, make_context(300, 4));
    CHECK(agreement_digits(quad.value, quartic.value) >= 300);
  }
}

TEST_CASE("limits match the series couple for every family and w") {
  const Rational ws[] = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(2), Rational(3), Rational(-1, 4),
                         Rational(5, 6), Rational(7, 12)};
  for (const Family family : kFamilies) {
    for (const Rational& w : ws) {
      CAPTURE(family_name(family));
      CAPTURE(w.to_string());
      const auto ctx = make_context(150, order_of(family));
      const RunResult run = run_borwein(family, w, ctx);
      CHECK(agreement_digits(run.value, couple_product(couple_parameter(family), w, ctx)) >= 150);
    }
  }
}

TEST_CASE("frozen limits for the documented w values") {
  const auto quad = [](Rational w) { return run_borwein(Family::quadratic, w, make_context(90, 2)).value; };
  const auto cubic = [](Rational w) { return run_borwein(Family::cubic, w, make_context(90, 3)).value; };
  CHECK(matches(quad(Rational(1, 3)), reference::kCoupleHalfWThird, 75));
  CHECK(matches(quad(Rational(1, 2)), reference::kCoupleHalfWHalf, 75));
  CHECK(matches(quad(Rational(2)), reference::kCoupleHalfW2, 75));
  CHECK(matches(quad(Rational(3)), reference::kCoupleHalfW3, 75));
  CHECK(matches(cubic(Rational(1, 3)), reference::kCoupleThirdWThird, 75));
  CHECK(matches(cubic(Rational(1, 2)), reference::kCoupleThirdWHalf, 75));
  CHECK(matches(cubic(Rational(2)), reference::kCoupleThirdW2, 75));
  CHECK(matches(cubic(Rational(3)), reference::kCoupleThirdW3, 75));
}

TEST_CASE("run_borwein requires a context of matching order") {
  CHECK_THROWS_AS(run_borwein(Family::quartic, Rational(1), make_context(50, 2)), InvalidArgument);
  CHECK_THROWS_AS(run_borwein(Family::quadratic, Rational(1, 5), make_context(50, 2)), UnsupportedExponentError);
}

TEST_CASE("iteration cap raises NonConvergenceError with the trace") {
  // One digit gives a cap of 3 steps, while the stopping rule asks for
  // two steps below 10^-9.
  const auto ctx = make_context(1, 2);
  try {
    run_borwein(Family::quadratic, Rational(1), ctx);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.trace().size() == static_cast<std::size_t>(ctx.max_iterations() + 1));
    CHECK(e.trace().back().state.n == ctx.max_iterations());
  }
}

TEST_CASE("iteration states contract and stay positive") {
  for (const Family family : kFamilies) {
    CAPTURE(family_name(family));
    const RunResult run = run_borwein(family, Rational(1), make_context(300, order_of(family)));
    const int m = order_of(family);
    for (std::size_t i = 1; i < run.trace.size(); ++i) {
      const IterationState& prev = run.trace[i - 1].state;
      const IterationState& cur = run.trace[i].state;
      CHECK(cur.c > 0L);
      CHECK(cur.d >= 0L);
      CHECK(cur.d < 1L);
      if (!cur.d.is_zero()) {
        CHECK(cur.d < prev.d);
        CHECK(cur.d < prev.d.pow(static_cast<unsigned long>(m)));
      }
    }
  }
}

TEST_CASE("replication invariant is constant along a run") {
  for (const Family family : kFamilies) {
    CAPTURE(family_name(family));
    const auto ctx = make_context(200, order_of(family));
    const RunResult run = run_borwein(family, Rational(1), ctx);
    const Real a0 = replication_invariant(family, Rational(1), run.trace[0].state, ctx);
    CHECK(agreement_digits(a0, couple_product(couple_parameter(family), Rational(1), ctx)) >=
          ctx.working_digits() - 10);
    for (std::size_t i = 1; i < 4; ++i) {
      const Real ai = replication_invariant(family, Rational(1), run.trace[i].state, ctx);
      CHECK(agreement_digits(ai, a0) >= ctx.working_digits() - 10);
    }
  }
}

TEST_CASE("replication invariant examples") {
  const auto ctx = make_context(100, 2);
  SUBCASE("initial quadratic state gives 1/pi") {
    const IterationState s0{0, pow_rational(ctx.real(2L), -1, 2), ctx.real(2L), ctx.zero()};
    CHECK(matches(replication_invariant(Family::quadratic, Rational(1), s0, ctx), reference::kInvPi, 75));
  }
  SUBCASE("d = 0 collapses to a") {
    const IterationState s{5, ctx.zero(), ctx.real(7L), ctx.parse("0.125")};
    CHECK(replication_invariant(Family::cubic, Rational(2), s, ctx) == ctx.parse("0.125"));
  }
  SUBCASE("d at 1 is rejected") {
    const IterationState s{1, ctx.real(1L), ctx.real(1L), ctx.zero()};
    CHECK_THROWS_AS(replication_invariant(Family::quartic, Rational(1), s, ctx), DomainError);
  }
}

TEST_CASE("orders from error exponents") {
  const std::vector<double> doubling = {-2.0, -4.0, -8.0};
  const auto o = orders_from_error_exponents(doubling);
  REQUIRE(o.size() == 2);
  CHECK(o[0].order == doctest::Approx(2.0));
  CHECK(o[1].order == doctest::Approx(2.0));

  const std::vector<double> tripling = {-3.0, -9.0};
  const auto t = orders_from_error_exponents(tripling);
  REQUIRE(t.size() == 1);
  CHECK(t[0].order == doctest::Approx(3.0));

  const std::vector<double> single = {-3.0};
  CHECK_THROWS_AS(orders_from_error_exponents(single), InsufficientTraceError);
  const std::vector<double> too_big = {0.5, -1.0, 1.0};
  CHECK_THROWS_AS(orders_from_error_exponents(too_big), InsufficientTraceError);
}

TEST_CASE("measured orders approach the family order") {
  for (const Family family : kFamilies) {
    CAPTURE(family_name(family));
    const int m = order_of(family);
    const auto ctx = make_context(1000, m);
    const RunResult run = run_borwein(family, Rational(1), ctx);
    REQUIRE(run.orders.size() >= 3);
    // log(err_(n+1)) / log(err_n) = m + log C / log err_n: the bias shrinks
    // as the error falls, so the last measured order is the sharpest.
    CHECK(std::fabs(run.orders.back().order - m) < 0.1);
    for (std::size_t i = 1; i < run.orders.size(); ++i) {
      CHECK(std::fabs(run.orders[i].order - m) <= std::fabs(run.orders[i - 1].order - m));
    }
  }
}

TEST_CASE("ellipse: circle is exact at every iteration") {
  for (const Family family : {Family::quadratic, Family::quartic}) {
    const auto ctx = make_context(100, order_of(family));
    const RunResult run = run_ellipse(family, ctx.real(5L), ctx.real(5L), ctx);
    for (const TraceEntry& e : run.trace) CHECK(e.state.a == 1L);
    CHECK(run.value == 1L);
  }
}

TEST_CASE("ellipse: a = 2, b = 1 by both families and the series") {
  const auto quad_ctx = make_context(200, 2);
  const auto quartic_ctx = make_context(200, 4);
  const RunResult quad = run_ellipse(Family::quadratic, quad_ctx.real(2L), quad_ctx.real(1L), quad_ctx);
  const RunResult quartic = run_ellipse(Family::quartic, quartic_ctx.real(2L), quartic_ctx.real(1L), quartic_ctx);
  CHECK(matches(quad.value, reference::kEllipseFactor21, 75));
  CHECK(agreement_digits(quad.value, quartic.value) >= 200);
  CHECK(agreement_digits(quad.value, ellipse_factor(quad_ctx.real(2L), quad_ctx.real(1L), quad_ctx)) >= 200);
}

TEST_CASE("ellipse: scale invariance and a flat ellipse") {
  const auto ctx = make_context(120, 4);
  const RunResult base = run_ellipse(Family::quartic, ctx.parse("3"), ctx.parse("1.25"), ctx);
  const RunResult scaled = run_ellipse(Family::quartic, ctx.parse("3e7"), ctx.parse("1.25e7"), ctx);
  CHECK(agreement_digits(base.value, scaled.value) >= 120);

  // z > 0.99 is out of reach for the series; the two families still agree.
  // 1 - d_0^m recovers b^2/a^2 by cancellation, costing 2 log10(a/b) digits.
  const auto flat_ctx = ctx.with_guard_digits(ctx.guard_digits() + 6);
  const RunResult flat4 = run_ellipse(Family::quartic, flat_ctx.real(1L), flat_ctx.parse("0.001"), flat_ctx);
  const auto quad_base = make_context(120, 2);
  const auto quad_ctx = quad_base.with_guard_digits(quad_base.guard_digits() + 6);
  const RunResult flat2 = run_ellipse(Family::quadratic, quad_ctx.real(1L), quad_ctx.parse("0.001"), quad_ctx);
  CHECK(agreement_digits(flat4.value, flat2.value) >= 120);
}

TEST_CASE("ellipse: errors") {
  const auto ctx = make_context(50, 4);
  CHECK_THROWS_AS(run_ellipse(Family::quartic, ctx.real(1L), ctx.real(2L), ctx), DomainError);
  CHECK_THROWS_AS(run_ellipse(Family::quartic, ctx.real(1L), ctx.zero(), ctx), DomainError);
  CHECK_THROWS_AS(run_ellipse(Family::cubic, ctx.real(2L), ctx.real(1L), make_context(50, 3)), InvalidArgument);
  const Real tiny = 1L / ctx.real(10L).pow(200);
  CHECK_THROWS_AS(run_ellipse(Family::quartic, ctx.real(1L), tiny, ctx), PrecisionInsufficientError);
}

TEST_CASE("postprocessed constants") {
  const int digits = 120;
  CHECK(matches(compute_constant(Constant::pi, digits).value, reference::kPi, 75));
  CHECK(matches(compute_constant(Constant::pi, digits, Family::quadratic).value, reference::kPi, 75));
  CHECK(matches(compute_constant(Constant::gamma34, digits).value, reference::kGamma34, 65));
  CHECK(matches(compute_constant(Constant::gamma14, digits).value, reference::kGamma14, 65));
  CHECK(matches(compute_constant(Constant::gamma23, digits).value, reference::kGamma23, 65));
  CHECK(matches(compute_constant(Constant::gamma13, digits).value, reference::kGamma13, 65));
  CHECK_THROWS_AS(compute_constant(Constant::gamma13, digits, Family::quartic), InvalidArgument);

  CHECK(check_quarter_reflection(digits).digits >= digits);
  CHECK(check_third_reflection(digits).digits >= digits);
}

TEST_CASE("cubic w = 1/2 probe favours the general limit formula") {
  const CubicHalfProbe probe = probe_cubic_half_limit(100);
  CHECK(probe.series_digits >= 100);
  CHECK(probe.general_digits >= 100);
  CHECK(probe.short_digits <= 2);
  CHECK(probe.ratio_digits >= 100);
  CHECK(probe.general_supported());
  CHECK(probe.hardware_gamma_digits >= 13);
  CHECK(probe.ratio.digits(10).plain() == "0.9046229750");
}

TEST_CASE("constant names round-trip") {
  for (const Constant c : {Constant::pi, Constant::gamma14, Constant::gamma13, Constant::gamma23, Constant::gamma34}) {
    CHECK(parse_constant(constant_name(c)) == c);
    CHECK(family_supports(c, recipe_for(c).family));
  }
  CHECK_FALSE(parse_constant("e").has_value());
}
