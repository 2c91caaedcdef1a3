#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "replica/precision.hpp"

namespace replica {

/// Iteration family, identified by its convergence order.
enum class Family { quadratic = 2, cubic = 3, quartic = 4 };

inline int order_of(Family f) { return static_cast<int>(f); }
std::string_view family_name(Family f);
/// Parameter s of the series couple feeding the family (1/2 or 1/3).
Rational couple_parameter(Family f);

/// (n, d_n, c_n, a_n) with c_n = b_n / (1 - d_n^m).
struct IterationState {
  int n;
  Real d;
  Real c;
  Real a;
};

struct TraceEntry {
  IterationState state;
  /// floor(log10 |a_n - a_(n-1)|); empty for n = 0 or a zero step.
  std::optional<long> delta_exp;
};

struct MeasuredOrder {
  int n;         // index of the earlier error
  double order;  // log(err_(n+1)) / log(err_n)
};

struct RunResult {
  Real value;
  std::vector<TraceEntry> trace;
  std::vector<MeasuredOrder> orders;
  std::optional<int> oracle_digits;

  int iterations() const { return trace.back().state.n; }
};

/// Raised when the iteration cap is hit; the partial trace travels with it.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, std::vector<TraceEntry> trace)
      : Error(message), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Runs the family with free parameter w from d_0 = 2^(-1/m), c_0 = 2, a_0 = 0.
///
/// Stops after two consecutive steps with |a_(n+1) - a_n| < 10^(-target-8).
/// The limit equals couple_product(couple_parameter(family), w). The context
/// must have been built for the family's order.
RunResult run_borwein(Family family, const Rational& w, const PrecisionContext& ctx);

/// Normalized ellipse perimeter v, P(a, b) = (2 pi b^2 / a) v, by the
/// quadratic or quartic family at w = 0. Steps taken while d_n exceeds
/// 2^(-1/m) do not count against max_iterations (at most max_iterations of
/// them), so flat ellipses get room to reach the asymptotic regime.
RunResult run_ellipse(Family family, const Real& semi_major, const Real& semi_minor,
                      const PrecisionContext& ctx);

/// Orders from decimal error exponents log10(err_n); only consecutive pairs
/// with both errors in (0, 1) count. Needs at least one such pair.
std::vector<MeasuredOrder> orders_from_error_exponents(std::span<const double> log10_errors);

/// Orders of a trace against its limit. Errors below 10^-floor_digits are
/// dominated by rounding and are skipped; pass the target digits.
std::vector<MeasuredOrder> measure_orders(std::span<const TraceEntry> trace, const Real& final_value,
                                          int floor_digits);

/// A_n = (sum c_k d^(mk))^w * sum c_k (a_n + b_n k) d^(mk), b_n = c_n (1 - d^m).
/// Constant along a run and equal to its limit.
Real replication_invariant(Family family, const Rational& w, const IterationState& state,
                           const PrecisionContext& ctx);

enum class Constant { pi, gamma14, gamma13, gamma23, gamma34 };

std::optional<Constant> parse_constant(std::string_view name);
std::string_view constant_name(Constant c);

/// Which run yields a constant: the family default and the parameter w.
struct ConstantRecipe {
  Family family;
  Rational w;
};
ConstantRecipe recipe_for(Constant c);
/// Families whose limit the post-processing formula for `c` understands.
bool family_supports(Constant c, Family f);

/// Inverts the closed form of a_inf(w) to recover the constant:
///   pi      = 1 / a(1)                              (quadratic/quartic)
///   gamma34 = a(3)^(-1/4)                           (quadratic/quartic)
///   gamma14 = sqrt(2) a(1/3)^(-3/4)                 (quadratic/quartic)
///   gamma23 = (2^(-1/3) / a(2))^(1/3)               (cubic)
///   gamma13 = (2/sqrt 3) (3^(3/4) 2^(-4/3) / a(1/2))^(2/3)   (cubic)
Real postprocess_constant(Constant c, const Real& raw, const PrecisionContext& ctx);

}  // namespace replica
