#include "replica/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "replica/algorithms.hpp"
#include "replica/constants.hpp"
#include "replica/series.hpp"

namespace replica::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kDefaultMaxDigits = 1'000'000;
constexpr int kMinOrdersDigits = 100;

struct Request {
  std::string command;
  std::vector<std::string> positional;
  int digits = 50;
  std::string algorithm = "auto";
  std::optional<std::string> w;
  bool json = false;
  bool trace = false;
  bool plain = false;
  bool normalized = false;
  bool verify = false;
  bool paper_example = false;
};

// Error raised for bad command-line input that the engine never sees.
class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

int max_digits_from_env() {
  const char* raw = std::getenv("REPLICA_MAX_DIGITS");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxDigits;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value <= 0) throw UsageError("REPLICA_MAX_DIGITS must be a positive integer");
  return static_cast<int>(std::min<long>(value, kDefaultMaxDigits * 1000L));
}

void check_digits(const Request& req) {
  if (req.digits < 1) throw UsageError("--digits must be at least 1");
  const int cap = max_digits_from_env();
  if (req.digits > cap) {
    throw UsageError("--digits " + std::to_string(req.digits) + " exceeds REPLICA_MAX_DIGITS (" +
                     std::to_string(cap) + ")");
  }
}

int compute_digits(const Request& req) { return std::max(req.digits, kMinComputeDigits); }

std::optional<Family> parse_family(const std::string& name) {
  if (name == "quad") return Family::quadratic;
  if (name == "cubic") return Family::cubic;
  if (name == "quartic") return Family::quartic;
  return std::nullopt;  // auto
}

Rational parse_w(const std::string& text) {
  const Rational w = Rational::parse(text);
  const auto den = w.den();
  if (den != 1 && den != 2 && den != 3 && den != 4 && den != 6 && den != 12) {
    throw UsageError("--w denominator must divide 12, got " + w.to_string());
  }
  return w;
}

void require_positionals(const Request& req, std::size_t count, const char* usage) {
  if (req.positional.size() != count) throw UsageError(std::string("usage: replica ") + usage);
}

json orders_json(const std::vector<MeasuredOrder>& orders) {
  json out = json::array();
  for (const MeasuredOrder& o : orders) out.push_back(o.order);
  return out;
}

json trace_json(const std::vector<TraceEntry>& trace) {
  json out = json::array();
  for (const TraceEntry& e : trace) {
    json item;
    item["n"] = e.state.n;
    item["delta_exp"] = e.delta_exp ? json(*e.delta_exp) : json(nullptr);
    out.push_back(std::move(item));
  }
  return out;
}

json oracle_json(std::optional<int> digits) { return digits ? json(*digits) : json(nullptr); }

// Shared tail of every result document; --trace swaps the iteration count
// for the per-step records.
void add_run_fields(json& doc, const Request& req, const RunResult& run, const std::string& value) {
  doc["value"] = value;
  if (req.trace) {
    doc["result"] = value;
    doc["iteration_count"] = run.iterations();
    doc["iterations"] = trace_json(run.trace);
  } else {
    doc["iterations"] = run.iterations();
  }
  doc["orders"] = orders_json(run.orders);
  doc["oracle_digits"] = oracle_json(run.oracle_digits);
}

void print_trace(std::ostream& out, const RunResult& run) {
  out << "trace:\n";
  for (const TraceEntry& e : run.trace) {
    out << "  n=" << e.state.n << " delta_exp=";
    if (e.delta_exp) {
      out << *e.delta_exp;
    } else {
      out << '-';
    }
    out << '\n';
  }
  if (!run.orders.empty()) {
    out << "orders:";
    for (const MeasuredOrder& o : run.orders) out << ' ' << std::fixed << std::setprecision(4) << o.order;
    out << std::defaultfloat << '\n';
  }
}

std::string w_text(const Rational& w) { return w.to_string(); }

// ---------------------------------------------------------------------------

struct Selection {
  std::optional<Constant> constant;  // empty for custom
  Family family;
  Rational w;
};

Selection select_run(const Request& req, const std::string& id) {
  const std::optional<Family> requested = parse_family(req.algorithm);
  if (id == "custom") {
    if (!req.w) throw UsageError("custom requires --w p/q");
    return {std::nullopt, requested.value_or(Family::quartic), parse_w(*req.w)};
  }
  const std::optional<Constant> constant = parse_constant(id);
  if (!constant) throw UsageError("unknown constant '" + id + "' (pi, gamma14, gamma13, gamma23, gamma34, custom)");
  if (req.w) throw UsageError("--w applies to 'custom' only; " + id + " fixes its own w");
  const ConstantRecipe recipe = recipe_for(*constant);
  const Family family = requested.value_or(recipe.family);
  if (!family_supports(*constant, family)) {
    throw UsageError(id + " is not produced by the " + std::string(family_name(family)) + " family");
  }
  return {constant, family, recipe.w};
}

int cmd_constant(const Request& req, std::ostream& out) {
  require_positionals(req, 1, "constant <pi|gamma14|gamma13|gamma23|gamma34|custom> [--w p/q]");
  const std::string& id = req.positional[0];
  const Selection sel = select_run(req, id);
  const PrecisionContext ctx = make_context(compute_digits(req), order_of(sel.family));
  RunResult run = run_borwein(sel.family, sel.w, ctx);
  const Real value = sel.constant ? postprocess_constant(*sel.constant, run.value, ctx) : run.value;
  const DecimalDigits digits = value.digits(req.digits);

  if (req.json) {
    json doc;
    doc["command"] = "constant";
    doc["constant"] = id;
    doc["algorithm"] = std::string(family_name(sel.family));
    doc["w"] = w_text(sel.w);
    doc["digits"] = req.digits;
    doc["target_digits"] = ctx.target_digits();
    doc["working_digits"] = ctx.working_digits();
    add_run_fields(doc, req, run, digits.plain());
    out << doc.dump(2) << '\n';
  } else {
    out << format_digits(digits, req.plain) << '\n';
    if (req.trace) print_trace(out, run);
  }
  return kSuccess;
}

// Axes are parsed exactly at working precision. 1 - d_0^2 = b^2/a^2 is
// recovered by cancellation, so flat ellipses get 2 log10(a/b) extra digits.
PrecisionContext ellipse_context(const Request& req, Family family) {
  const PrecisionContext base = make_context(compute_digits(req), order_of(family));
  const Real a = base.parse(req.positional[0]);
  const Real b = base.parse(req.positional[1]);
  ellipse_parameter(a, b);
  const double flatness = a.log10_abs() - b.log10_abs();
  const int extra = static_cast<int>(std::ceil(2.0 * std::max(0.0, flatness)));
  return base.with_guard_digits(base.guard_digits() + extra);
}

Family ellipse_family(const Request& req) {
  const Family family = parse_family(req.algorithm).value_or(Family::quartic);
  if (family == Family::cubic) throw UsageError("ellipse supports --algorithm quad or quartic");
  return family;
}

int cmd_ellipse(const Request& req, std::ostream& out, std::ostream& err) {
  require_positionals(req, 2, "ellipse <semi_major> <semi_minor>");
  const Family family = ellipse_family(req);
  const PrecisionContext ctx = ellipse_context(req, family);
  const Real a = ctx.parse(req.positional[0]);
  const Real b = ctx.parse(req.positional[1]);
  const Real z = ellipse_parameter(a, b);

  const PrecisionContext pi_base = make_context(ctx.target_digits(), 4);
  const PrecisionContext pi_ctx = pi_base.with_guard_digits(std::max(pi_base.guard_digits(), ctx.guard_digits()));
  auto pi_run = std::async(std::launch::async, [&] { return run_borwein(Family::quartic, Rational(1), pi_ctx); });
  RunResult run = run_ellipse(family, a, b, ctx);
  const Real inv_pi = pi_run.get().value;

  const bool slow_oracle = z > ctx.real(Rational(99, 100));
  if (req.verify) {
    if (slow_oracle) {
      err << "warning: 1 - b^2/a^2 > 0.99, series oracle too slow; verification skipped\n";
    } else {
      run.oracle_digits = agreement_digits(run.value, ellipse_factor(a, b, ctx));
    }
  }

  const Real perimeter = b.squared() * 2L * run.value / (a * inv_pi);
  const Real& shown = req.normalized ? run.value : perimeter;
  const DecimalDigits digits = shown.digits(req.digits);
  if (req.json) {
    json doc;
    doc["command"] = "ellipse";
    doc["semi_major"] = req.positional[0];
    doc["semi_minor"] = req.positional[1];
    doc["algorithm"] = std::string(family_name(family));
    doc["w"] = "0";
    doc["digits"] = req.digits;
    doc["target_digits"] = ctx.target_digits();
    doc["working_digits"] = ctx.working_digits();
    doc["normalized"] = req.normalized;
    doc["eccentricity"] = nth_root(z, 2).digits(req.digits).plain();
    add_run_fields(doc, req, run, digits.plain());
    out << doc.dump(2) << '\n';
  } else {
    out << format_digits(digits, req.plain) << '\n';
    if (req.trace) print_trace(out, run);
    if (run.oracle_digits) out << "oracle: series agrees to " << *run.oracle_digits << " digits\n";
  }
  if (run.oracle_digits && *run.oracle_digits < req.digits) return kVerificationFailure;
  return kSuccess;
}

void print_probe(std::ostream& out, const CubicHalfProbe& probe, int digits) {
  auto show = [&](const Real& x) { return x.digits(std::min(digits, 30)).plain(); };
  out << "paper-example probe (cubic, w = 1/2):\n"
      << "  limit a(1/2)                          " << show(probe.limit) << '\n'
      << "  series couple s0^(1/2) s1             " << show(probe.series_value) << "  agree "
      << probe.series_digits << " digits\n"
      << "  3^(3/4) 2^(-4/3) (G(2/3)/pi)^(3/2)    " << show(probe.general_form) << "  agree "
      << probe.general_digits << " digits\n"
      << "  (2/(sqrt3 G(1/3)))^(3/2)              " << show(probe.short_form) << "  agree "
      << probe.short_digits << " digits\n"
      << "  ratio limit / short form              " << show(probe.ratio) << '\n'
      << "  3^(3/4) 2^(-4/3)                      " << show(probe.expected_ratio) << "  agree "
      << probe.ratio_digits << " digits\n"
      << "  G(2/3) vs hardware tgamma             " << probe.hardware_gamma_digits << " digits\n"
      << "  oracle supports: "
      << (probe.general_supported() ? "general limit formula 3^(1-w/2) 2^(2w/3-5/3) / (pi^(2-w) G(2/3)^(3w-3))"
                                    : "short example (2/(sqrt3 G(1/3)))^(3/2)")
      << '\n';
}

json probe_json(const CubicHalfProbe& probe, int digits) {
  json doc;
  doc["limit"] = probe.limit.digits(digits).plain();
  doc["general_form_digits"] = probe.general_digits;
  doc["short_form_digits"] = probe.short_digits;
  doc["ratio"] = probe.ratio.digits(digits).plain();
  doc["expected_ratio"] = probe.expected_ratio.digits(digits).plain();
  doc["ratio_digits"] = probe.ratio_digits;
  doc["supported"] = probe.general_supported() ? "general" : "short";
  return doc;
}

int cmd_verify(const Request& req, std::ostream& out, std::ostream& err) {
  if (req.positional.empty()) throw UsageError("usage: replica verify <constant|custom|ellipse a b>");
  const std::string& target = req.positional[0];
  RunResult run{Real(2), {}, {}, std::nullopt};
  std::optional<PrecisionContext> used;
  std::string algorithm;
  std::string w;
  std::string oracle_name;
  std::optional<CubicHalfProbe> probe;

  if (target == "ellipse") {
    if (req.positional.size() != 3) throw UsageError("usage: replica verify ellipse <semi_major> <semi_minor>");
    if (req.paper_example) throw UsageError("--paper-example applies to the cubic w = 1/2 limit");
    Request axes = req;
    axes.positional.erase(axes.positional.begin());
    const Family family = ellipse_family(axes);
    const PrecisionContext ctx = ellipse_context(axes, family);
    const Real a = ctx.parse(axes.positional[0]);
    const Real b = ctx.parse(axes.positional[1]);
    const bool slow = ellipse_parameter(a, b) > ctx.real(Rational(99, 100));
    std::future<Real> oracle;
    if (slow) {
      err << "warning: 1 - b^2/a^2 > 0.99, series oracle too slow; cross-checking the other family instead\n";
      const Family other = family == Family::quartic ? Family::quadratic : Family::quartic;
      const PrecisionContext base = make_context(ctx.target_digits(), order_of(other));
      const PrecisionContext other_ctx = base.with_guard_digits(std::max(base.guard_digits(), ctx.guard_digits()));
      oracle = std::async(std::launch::async, [=] { return run_ellipse(other, a, b, other_ctx).value; });
      oracle_name = std::string(family_name(other)) + " perimeter iteration";
    } else {
      oracle = std::async(std::launch::async, [&] { return ellipse_factor(a, b, ctx); });
      oracle_name = "ellipse series";
    }
    run = run_ellipse(family, a, b, ctx);
    run.oracle_digits = agreement_digits(run.value, oracle.get());
    used = ctx;
    algorithm = family_name(family);
    w = "0";
  } else {
    require_positionals(req, 1, "verify <constant|custom> [--w p/q]");
    const Selection sel = select_run(req, target);
    const PrecisionContext ctx = make_context(compute_digits(req), order_of(sel.family));
    const Rational s = couple_parameter(sel.family);
    auto oracle = std::async(std::launch::async, [&] { return couple_product(s, sel.w, ctx); });
    if (req.paper_example) {
      if (sel.family != Family::cubic || sel.w != Rational(1, 2)) {
        throw UsageError("--paper-example applies to the cubic w = 1/2 limit (custom --w 1/2 --algorithm cubic)");
      }
      probe = probe_cubic_half_limit(ctx.target_digits());
    }
    run = run_borwein(sel.family, sel.w, ctx);
    run.oracle_digits = agreement_digits(run.value, oracle.get());
    used = ctx;
    algorithm = family_name(sel.family);
    w = w_text(sel.w);
    oracle_name = "series couple s=" + s.to_string();
  }

  const bool agree = *run.oracle_digits >= req.digits;
  if (req.json) {
    json doc;
    doc["command"] = "verify";
    doc["target"] = target;
    doc["algorithm"] = algorithm;
    doc["w"] = w;
    doc["digits"] = req.digits;
    doc["target_digits"] = used->target_digits();
    doc["working_digits"] = used->working_digits();
    doc["oracle"] = oracle_name;
    add_run_fields(doc, req, run, run.value.digits(req.digits).plain());
    doc["agree"] = agree;
    if (probe) doc["paper_example"] = probe_json(*probe, std::min(req.digits, 30));
    out << doc.dump(2) << '\n';
  } else {
    out << "verify " << target << ": algorithm=" << algorithm << " w=" << w << " iterations=" << run.iterations()
        << '\n'
        << "oracle: " << oracle_name << '\n';
    if (agree) {
      out << "agree: ≥" << req.digits << " digits (measured " << *run.oracle_digits << ")\n";
    } else {
      out << "disagree: " << *run.oracle_digits << " digits, " << req.digits << " required\n";
    }
    if (req.trace) print_trace(out, run);
    if (probe) print_probe(out, *probe, req.digits);
  }
  return agree ? kSuccess : kVerificationFailure;
}

int cmd_orders(const Request& req, std::ostream& out) {
  if (!req.positional.empty()) throw UsageError("usage: replica orders --algorithm <family> [--w p/q] --digits N");
  if (req.digits < kMinOrdersDigits) throw UsageError("orders needs --digits of at least 100");
  const Family family = parse_family(req.algorithm).value_or(Family::quartic);
  const Rational w = req.w ? parse_w(*req.w) : Rational(1);
  const PrecisionContext ctx = make_context(req.digits, order_of(family));
  const RunResult run = run_borwein(family, w, ctx);

  std::vector<std::optional<double>> per_step(run.trace.size());
  for (const MeasuredOrder& o : run.orders) per_step[static_cast<std::size_t>(o.n)] = o.order;

  if (req.json) {
    json doc;
    doc["command"] = "orders";
    doc["algorithm"] = std::string(family_name(family));
    doc["w"] = w_text(w);
    doc["digits"] = req.digits;
    doc["target_digits"] = ctx.target_digits();
    doc["working_digits"] = ctx.working_digits();
    doc["result"] = run.value.digits(req.digits).plain();
    json steps = json::array();
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
      const TraceEntry& e = run.trace[i];
      const double err_exp = (e.state.a - run.value).log10_abs();
      json item;
      item["n"] = e.state.n;
      item["delta_exp"] = e.delta_exp ? json(*e.delta_exp) : json(nullptr);
      item["err_exp"] = std::isfinite(err_exp) ? json(std::floor(err_exp)) : json(nullptr);
      item["order"] = per_step[i] ? json(*per_step[i]) : json(nullptr);
      steps.push_back(std::move(item));
    }
    doc["iterations"] = std::move(steps);
    doc["orders"] = orders_json(run.orders);
    doc["oracle_digits"] = nullptr;
    out << doc.dump(2) << '\n';
    return kSuccess;
  }

  out << "orders: " << family_name(family) << " w=" << w_text(w) << ", " << req.digits << " digits, "
      << run.iterations() << " iterations\n";
  out << std::setw(4) << "n" << std::setw(12) << "delta_exp" << std::setw(12) << "err_exp" << std::setw(10)
      << "order" << '\n';
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    const TraceEntry& e = run.trace[i];
    const double err_exp = (e.state.a - run.value).log10_abs();
    out << std::setw(4) << e.state.n << std::setw(12) << (e.delta_exp ? std::to_string(*e.delta_exp) : "-");
    std::ostringstream err_cell;
    std::ostringstream order_cell;
    if (std::isfinite(err_exp)) {
      err_cell << std::fixed << std::setprecision(2) << err_exp;
    } else {
      err_cell << "-";
    }
    if (per_step[i]) {
      order_cell << std::fixed << std::setprecision(4) << *per_step[i];
    } else {
      order_cell << "-";
    }
    out << std::setw(12) << err_cell.str() << std::setw(10) << order_cell.str() << '\n';
  }
  return kSuccess;
}

void add_common_options(CLI::App* sub, Request& req) {
  sub->add_option("--digits", req.digits, "Significant decimal digits to produce");
  sub->add_option("--algorithm", req.algorithm, "Iteration family")
      ->check(CLI::IsMember({"quad", "cubic", "quartic", "auto"}));
  sub->add_option("--w", req.w, "Free parameter w as p/q");
  sub->add_flag("--json", req.json, "Machine-readable output");
  sub->add_flag("--trace", req.trace, "Include per-iteration records");
  sub->add_flag("--plain", req.plain, "Disable digit grouping");
}

}  // namespace

std::string format_digits(const DecimalDigits& digits, bool plain) {
  std::string text = digits.plain();
  const std::string marker = digits.exact ? "" : "...";
  const auto dot = text.find('.');
  if (plain || dot == std::string::npos) return text + marker;

  const std::string head = text.substr(0, dot + 1);
  const std::string fraction = text.substr(dot + 1);
  const std::string indent(head.size(), ' ');
  std::string out = head;
  for (std::size_t i = 0; i < fraction.size(); i += 10) {
    if (i > 0) out += (i % 50 == 0) ? "\n" + indent : " ";
    out += fraction.substr(i, 10);
  }
  return out + marker;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-replicating Borwein-type iterations for pi, Gamma values and ellipse perimeters", "replica"};
  app.require_subcommand(1);
  Request req;

  CLI::App* constant = app.add_subcommand("constant", "Compute pi, a Gamma value, or a custom limit a(w)");
  add_common_options(constant, req);
  constant->add_option("id", req.positional, "pi | gamma14 | gamma13 | gamma23 | gamma34 | custom");

  CLI::App* ellipse = app.add_subcommand("ellipse", "Perimeter of the ellipse with semi-axes a >= b");
  add_common_options(ellipse, req);
  ellipse->add_option("axes", req.positional, "semi_major semi_minor");
  ellipse->add_flag("--normalized", req.normalized, "Print P / (2 pi b^2 / a) instead of P");
  ellipse->add_flag("--verify", req.verify, "Cross-check against the hypergeometric series");

  CLI::App* verify = app.add_subcommand("verify", "Compare an algorithm against its series oracle");
  add_common_options(verify, req);
  verify->add_option("target", req.positional, "constant id, custom, or ellipse a b");
  verify->add_flag("--paper-example", req.paper_example,
                   "Measure the cubic w = 1/2 limit against both candidate closed forms");

  CLI::App* orders = app.add_subcommand("orders", "Measure convergence orders of an iteration family");
  add_common_options(orders, req);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kArgumentError;
  }

  std::ostringstream buffer;
  try {
    check_digits(req);
    int code = kSuccess;
    if (constant->parsed()) code = cmd_constant(req, buffer);
    if (ellipse->parsed()) code = cmd_ellipse(req, buffer, err);
    if (verify->parsed()) code = cmd_verify(req, buffer, err);
    if (orders->parsed()) code = cmd_orders(req, buffer);
    out << buffer.str();
    return code;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  }
}

}  // namespace replica::cli
