#include "replica/series.hpp"

#include <cmath>
#include <limits>

namespace replica {

namespace {

void validate(const SeriesSpec& spec) {
  auto in_unit = [](const Rational& r) { return r.num() > 0 && r.num() <= r.den(); };
  if (!in_unit(spec.p) || !in_unit(spec.q)) {
    throw DomainError("series parameters must lie in (0, 1], got " + spec.p.to_string() + ", " +
                      spec.q.to_string());
  }
  if (spec.stride < 1) throw DomainError("series stride must be at least 1");
  if (spec.z.sign() < 0) throw DomainError("series argument must be non-negative");
  if (!(spec.z < 1L)) throw DivergenceError("series argument must be below 1");
}

// Advances (p)_k (q)_k / (k!)^2 z^k to index k + 1.
void advance_term(Real& term, const SeriesSpec& spec, unsigned long k) {
  const auto pn = static_cast<unsigned long>(spec.p.num());
  const auto pd = static_cast<unsigned long>(spec.p.den());
  const auto qn = static_cast<unsigned long>(spec.q.num());
  const auto qd = static_cast<unsigned long>(spec.q.den());
  mpfr_mul_ui(term.get(), term.get(), pn + k * pd, MPFR_RNDN);
  mpfr_mul_ui(term.get(), term.get(), qn + k * qd, MPFR_RNDN);
  mpfr_div_ui(term.get(), term.get(), pd * qd * (k + 1), MPFR_RNDN);
  mpfr_div_ui(term.get(), term.get(), k + 1, MPFR_RNDN);
  term *= spec.z;
}

}  // namespace

SeriesSum sum_series(const SeriesSpec& spec, const PrecisionContext& ctx) {
  validate(spec);
  const mpfr_prec_t bits = ctx.bits();
  Real sum = ctx.zero();
  sum += spec.a;
  if (spec.z.is_zero()) return {std::move(sum), 1};

  // Coefficient ratios (p+k)(q+k)/(1+k)^2 never exceed 1, so past index k the
  // terms are majorized by term_k z^j and the weights by |a| + |b|(k + j):
  //   tail <= |term_k| (W_k z/(1-z) + |b| z/(1-z)^2).
  // The stopping test multiplies the first part by an extra (1 + k).
  const double z = spec.z.to_double();
  const double one_minus_z = (1L - spec.z).to_double();
  const double ratio = z / one_minus_z;
  const double abs_a = std::fabs(spec.a.to_double());
  const double abs_b = std::fabs(spec.b.to_double());
  const double threshold = -static_cast<double>(ctx.working_digits());

  Real term(bits);
  mpfr_set_ui(term.get(), 1, MPFR_RNDN);
  Real weight = spec.a;
  for (unsigned long k = 0;; ++k) {
    const double w_k = std::max(1.0, abs_a + abs_b * static_cast<double>(k));
    const double majorant = w_k * ratio * static_cast<double>(k + 1) + abs_b * ratio / one_minus_z;
    if (term.log10_abs() + std::log10(majorant) < threshold) {
      return {std::move(sum), static_cast<std::size_t>(k + 1)};
    }
    advance_term(term, spec, k);
    weight += spec.b;
    sum += term * weight;
  }
}

Real evaluate_series(const SeriesSpec& spec, const PrecisionContext& ctx) {
  return sum_series(spec, ctx).value;
}

Real partial_series(const SeriesSpec& spec, std::size_t terms, const PrecisionContext& ctx) {
  validate(spec);
  Real sum = ctx.zero();
  if (terms == 0) return sum;
  sum += spec.a;
  Real term = ctx.real(1L);
  Real weight = spec.a;
  for (unsigned long k = 0; k + 1 < terms; ++k) {
    advance_term(term, spec, k);
    weight += spec.b;
    sum += term * weight;
  }
  return sum;
}

CoupleValues ramanujan_couple(const Rational& s, const PrecisionContext& ctx) {
  if (s != Rational(1, 2) && s != Rational(1, 3)) {
    throw UnsupportedParameterError("series couple available for s = 1/2 and 1/3 only, got " +
                                    s.to_string());
  }
  const Rational complement = Rational(1) - s;
  const Real half = ctx.real(Rational(1, 2));
  Real s0 = evaluate_series({s, complement, ctx.real(1L), ctx.zero(), half, 1}, ctx);
  Real s1 = evaluate_series({s, complement, ctx.zero(), ctx.real(1L), half, 1}, ctx);
  return {std::move(s0), std::move(s1)};
}

Real couple_product(const Rational& s, const Rational& w, const PrecisionContext& ctx) {
  CoupleValues couple = ramanujan_couple(s, ctx);
  if (w.num() == 0) return std::move(couple.s1);
  return pow_rational(couple.s0, w) * couple.s1;
}

Real ellipse_parameter(const Real& semi_major, const Real& semi_minor) {
  if (!(semi_minor > 0L)) throw DomainError("semi-minor axis must be positive");
  if (semi_minor > semi_major) throw DomainError("semi-minor axis exceeds semi-major axis");
  const Real ratio = semi_minor / semi_major;
  return 1L - ratio.squared();
}

Real ellipse_factor(const Real& semi_major, const Real& semi_minor, const PrecisionContext& ctx) {
  Real z = ellipse_parameter(semi_major, semi_minor);
  if (z > ctx.real(Rational(99, 100))) {
    throw SlowConvergenceError("ellipse series too slow for 1 - b^2/a^2 > 0.99; use the iterations");
  }
  const Rational half(1, 2);
  return evaluate_series({half, half, ctx.real(1L), ctx.real(2L), std::move(z), 1}, ctx);
}

}  // namespace replica
