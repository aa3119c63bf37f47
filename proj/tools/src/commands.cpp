#include "fbmsig_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbmsig/bound_constants.hpp"
#include "fbmsig/cubature.hpp"
#include "fbmsig/expected_signature.hpp"
#include "fbmsig/grid_approx.hpp"
#include "fbmsig/sde.hpp"
#include "fbmsig/word.hpp"
#include "fbmsig_cli/config.hpp"

namespace fbmsig::cli {

std::string Settings::get(std::string_view key, std::string_view fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? std::string(fallback) : it->second;
}

namespace {

std::string num(double x) { return format_number(x); }
std::string num(std::int64_t x) { return format_number(x); }

/// H list; cubature commands also accept the Brownian endpoint H = 1/2.
std::vector<double> hurst_list(const Settings& s, std::string_view fallback, bool allow_half) {
  std::vector<double> hs = parse_doubles("H", s.get("H", fallback));
  if (hs.empty()) throw UsageError("--H: empty list");
  for (double h : hs) {
    const bool ok = allow_half ? (h >= 0.5 && h < 1.0) : (h > 0.5 && h < 1.0);
    if (!ok) {
      throw UsageError("--H: " + format_number(h) + " is outside " +
                       (allow_half ? "[1/2, 1)" : "(1/2, 1)"));
    }
  }
  return hs;
}

std::vector<Word> word_list(const Settings& s, std::string_view fallback) {
  std::vector<Word> ws = parse_words(s.get("words", fallback));
  if (ws.empty()) throw UsageError("--words: empty list");
  return ws;
}

std::vector<int> m_list(const Settings& s, std::string_view fallback) {
  std::vector<int> ms = parse_ints("m", s.get("m", fallback));
  if (ms.empty()) throw UsageError("--m: empty list");
  for (int m : ms) {
    if (m < 1) throw UsageError("--m: grid sizes must be positive");
  }
  return ms;
}

int positive_int(const Settings& s, std::string_view key, std::string_view fallback) {
  const long long v = parse_integer(key, s.get(key, fallback));
  if (v < 1 || v > INT32_MAX) throw UsageError("--" + std::string(key) + ": must be a positive integer");
  return static_cast<int>(v);
}

double positive_double(const Settings& s, std::string_view key, std::string_view fallback) {
  const double v = parse_double(key, s.get(key, fallback));
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("--" + std::string(key) + ": must be positive");
  return v;
}

QuadConfig quad_config(const Settings& s) {
  QuadConfig q;
  q.tolerance = positive_double(s, "tol", "1e-8");
  return q;
}

/// All spatial words of even length 2..depth over letters 1..d.
std::vector<Word> spatial_words(int depth, int d) {
  std::vector<Word> out;
  std::vector<std::vector<int>> layer{{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      for (int l = 1; l <= d; ++l) {
        next.push_back(w);
        next.back().push_back(l);
      }
    }
    layer = std::move(next);
    if (len % 2 == 0) {
      for (const auto& w : layer) out.emplace_back(w);
    }
  }
  return out;
}

bool decay_applies(const Word& w) {
  return !w.empty() && w.size() % 2 == 0 && w.size() <= 6 && w.count(0) == 0;
}

RootBranch parse_branch(const std::string& text) {
  if (text == "minus") return RootBranch::Minus;
  if (text == "plus") return RootBranch::Plus;
  throw UsageError("--branch: expected minus or plus, got '" + text + "'");
}

const char* branch_name(RootBranch b) { return b == RootBranch::Minus ? "minus" : "plus"; }

}  // namespace

CommandResult cmd_expected_sig(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.75", false);
  std::vector<Word> words;
  if (s.has("words")) {
    words = word_list(s, "");
  } else {
    const int depth = positive_int(s, "depth", "4");
    const int d = positive_int(s, "d", "2");
    if (depth > 6 || d > 3) throw UsageError("--depth <= 6 and --d <= 3 when enumerating words");
    words = spatial_words(depth, d);
  }
  const QuadConfig quad = quad_config(s);

  Table t{"expected_signature",
          {"word", "H", "value", "err_bar", "bound_1_over_k!2^k", "refined_bound", "pass"},
          {}};
  CommandResult out;
  for (double h : hs) {
    ExpectedSignatureCalculator calc(h, quad);
    for (const Word& w : words) {
      const Estimate e = calc.expected_word(w);
      if (decay_applies(w)) {
        const DecayReport r = decay_bound_check(w, calc);
        t.add_row({w.to_string(), num(h), num(e.value), num(e.error), num(r.bound), num(r.refined_bound),
                   format_bool(r.within_bound)});
        if (!r.within_bound) out.exit_code = kVerificationFailure;
      } else {
        t.add_row({w.to_string(), num(h), num(e.value), num(e.error), "", "", "n/a"});
      }
    }
  }
  out.report.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_approx_sig(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.75", false);
  const std::vector<Word> words = word_list(s, "1,1,2,2;1,2,1,2");
  const std::vector<int> ms = m_list(s, "4,8,16,32,64");
  const std::uint64_t budget = parse_u64("budget", s.get("budget", "20000000"));

  Table t{"approx_signature", {"word", "H", "m", "approx"}, {}};
  for (double h : hs) {
    for (const Word& w : words) {
      for (int m : ms) {
        t.add_row({w.to_string(), num(h), num(std::int64_t{m}), num(approx_expected_word(w, h, m, budget))});
      }
    }
  }
  CommandResult out;
  out.report.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_convergence(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.6,0.75", false);
  const std::vector<Word> words = word_list(s, "1,1,2,2;1,2,1,2");
  const std::vector<int> ms = m_list(s, "4,8,16,32,64");
  if (ms.size() < 4) throw UsageError("--m: a slope fit needs at least four grid sizes");
  const QuadConfig quad = quad_config(s);

  Table points{"points", {"word", "H", "m", "exact", "approx", "gap", "m2H_gap", "err_bar"}, {}};
  Table summary{"summary",
                {"word", "H", "fitted", "slope", "target_slope", "intercept", "residual", "max_m2H_gap",
                 "coefficient_bound", "bound_pass", "note"},
                {}};
  CommandResult out;
  for (double h : hs) {
    ExpectedSignatureCalculator calc(h, quad);
    for (const Word& w : words) {
      const CoefficientBoundReport cb = coefficient_bound_check(w, ms, calc);
      for (const GapEstimate& g : cb.points) {
        points.add_row({w.to_string(), num(h), num(std::int64_t{g.m}), num(g.exact), num(g.approx), num(g.gap),
                        num(std::pow(g.m, 2 * h) * g.gap), num(g.error_bar)});
      }
      const SlopeFit fit = convergence_slope(w, ms, calc);
      summary.add_row({w.to_string(), num(h), format_bool(fit.fitted), fit.fitted ? num(fit.slope) : "",
                       num(-2 * h), fit.fitted ? num(fit.intercept) : "", fit.fitted ? num(fit.residual) : "",
                       num(cb.max_scaled_gap), num(cb.bound), format_bool(cb.passed), fit.reason});
      if (!cb.passed) out.exit_code = kVerificationFailure;
    }
  }
  out.report.tables.push_back(std::move(points));
  out.report.tables.push_back(std::move(summary));
  return out;
}

CommandResult cmd_cubature_verify(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.5,0.6,0.7,0.8,0.9", true);
  const RootBranch branch = parse_branch(s.get("branch", "minus"));
  const double tol = positive_double(s, "tol", "1e-9");

  Table words{"words", {"H", "word", "weight", "lhs", "rhs", "abs_err", "matched"}, {}};
  Table summary{"summary",
                {"H", "branch", "degree", "claimed_degree", "passed", "max_abs_err", "max_chen_direct_gap",
                 "empirical_degree", "probe_degree", "first_failure"},
                {}};
  CommandResult out;
  for (double h : hs) {
    const CubatureFormula f = solve_ansatz(h, branch).to_formula();
    const int degree = s.has("degree") ? positive_int(s, "degree", "") : f.claimed_degree;
    const CubatureReport r = verify_cubature(f, h, degree, QuadConfig{}, tol);
    for (const WordCheck& c : r.words) {
      words.add_row({num(h), c.word.to_string(), num(c.weight), num(c.lhs), num(c.rhs), num(c.abs_err),
                     format_bool(c.matched)});
    }
    summary.add_row({num(h), branch_name(branch), num(std::int64_t{degree}), num(std::int64_t{f.claimed_degree}),
                     format_bool(r.passed), num(r.max_abs_err), num(r.max_chen_direct_gap),
                     num(std::int64_t{r.empirical_degree}), num(std::int64_t{r.probe_degree}),
                     r.first_failure ? r.first_failure->word.to_string() : ""});
    if (!r.passed) out.exit_code = kVerificationFailure;
  }
  out.report.tables.push_back(std::move(words));
  out.report.tables.push_back(std::move(summary));
  return out;
}

CommandResult cmd_cubature_solve(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.5", true);
  std::vector<RootBranch> branches{RootBranch::Minus, RootBranch::Plus};
  if (s.has("branch")) branches = {parse_branch(s.get("branch", ""))};

  Table t{"ansatz",
          {"H", "branch", "lambda1", "lambda3", "a", "b1", "b0", "c1", "c0", "max_system_residual",
           "max_continuity_residual"},
          {}};
  for (double h : hs) {
    for (RootBranch b : branches) {
      const AnsatzSolution a = solve_ansatz(h, b);
      double sys = 0.0;
      for (double r : a.system_residuals()) sys = std::max(sys, std::abs(r));
      double cont = 0.0;
      for (double r : a.continuity_residuals()) cont = std::max(cont, std::abs(r));
      t.add_row({num(h), branch_name(b), num(a.lambda1), num(a.lambda3), num(a.a), num(a.b1), num(a.b0),
                 num(a.c1), num(a.c0), num(sys), num(cont)});
    }
  }
  CommandResult out;
  out.report.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_sde_compare(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.75", false);
  const std::string problem = s.get("problem", "quadratic");
  const double T = positive_double(s, "T", "1");
  const double x0 = parse_double("x0", s.get("x0", "0.5"));
  const double sigma = parse_double("sigma", s.get("sigma", "0.5"));
  const long long paths = parse_integer("paths", s.get("paths", "10000"));
  if (paths < 1) throw UsageError("--paths: must be positive");
  const int steps = positive_int(s, "steps", "32");
  const std::uint64_t seed = parse_u64("seed", s.get("seed", "1"));
  const double M = positive_double(s, "M", "1");
  const double gamma = parse_double("gamma", s.get("gamma", "0"));

  VectorFieldSet vf;
  Observable f;
  bool cubature_exact = false;
  const auto zero = [](const State& y) -> State { return State::Zero(y.size()); };
  if (problem == "zero") {
    vf.fields = {zero, zero};
    f = [](const State& y) { return y(0) * y(0); };
    cubature_exact = true;
  } else if (problem == "quadratic") {
    vf.fields = {zero, [](const State& y) -> State { return State::Ones(y.size()); }};
    f = [](const State& y) { return y(0) * y(0); };
    cubature_exact = true;
  } else if (problem == "linear") {
    vf.fields = {zero, [sigma](const State& y) -> State { return sigma * y; }};
    f = [](const State& y) { return y(0); };
  } else {
    throw UsageError("--problem: expected zero, quadratic or linear, got '" + problem + "'");
  }

  Table t{"solve_report",
          {"problem", "H", "T", "x0", "exact", "cubature_value", "cubature_err", "mc_value", "mc_stderr", "mc_z",
           "paths", "steps", "seed", "bound_shape", "log_bound_shape", "bound_branch"},
          {}};
  CommandResult out;
  const State start = State::Constant(1, x0);
  for (double h : hs) {
    double exact = x0 * x0;
    if (problem == "quadratic") exact += std::pow(T, 2 * h);
    if (problem == "linear") exact = x0 * std::exp(0.5 * sigma * sigma * std::pow(T, 2 * h));

    const CubatureFormula formula = lv_formula(h);
    const double cub = cubature_weak_value(vf, f, start, formula, T, h);
    const McEstimate mc = mc_weak_value(vf, f, start, h, T, static_cast<std::size_t>(paths), steps, seed);
    ErrorBoundParams bp;
    bp.M = M;
    bp.gamma = gamma;
    bp.d = 1;
    bp.degree = formula.claimed_degree;
    bp.hurst = h;
    bp.validate();
    const BoundShape shape = error_bound_shape(bp, T);
    const double z = mc.std_error > 0 ? (mc.mean - exact) / mc.std_error : 0.0;
    t.add_row({problem, num(h), num(T), num(x0), num(exact), num(cub), num(cub - exact), num(mc.mean),
               num(mc.std_error), num(z), num(static_cast<std::int64_t>(paths)), num(std::int64_t{steps}),
               std::to_string(seed), num(shape.value), num(shape.log_value),
               shape.branch == BoundBranch::LongTime ? "long_time" : "short_time"});
    if (cubature_exact && std::abs(cub - exact) > 1e-9) out.exit_code = kVerificationFailure;
  }
  out.report.tables.push_back(std::move(t));
  return out;
}

CommandResult cmd_bounds(const Settings& s) {
  const std::vector<double> hs = hurst_list(s, "0.6,0.75,0.9", false);
  const std::vector<double> Ts = parse_doubles("T", s.get("T", "0.01,0.1,0.5,1,2,4"));
  for (double T : Ts) {
    if (!(T > 0.0)) throw UsageError("--T: horizons must be positive");
  }
  const double tol = positive_double(s, "tol", "1e-12");
  const double M = positive_double(s, "M", "1");
  const double gamma = parse_double("gamma", s.get("gamma", "0"));
  const int d = positive_int(s, "d", "1");

  Table constants{"constants",
                  {"H", "A", "A_lower", "A_upper", "Atilde", "Atilde_lower", "Atilde_upper", "series_terms", "K"},
                  {}};
  Table shapes{"error_bound", {"H", "T", "M", "gamma", "d", "degree", "branch", "value", "log_value"}, {}};
  for (double h : hs) {
    const CertifiedValue a = constant_A(h, tol);
    const CertifiedValue at = constant_Atilde(h, tol);
    ErrorBoundParams bp;
    bp.M = M;
    bp.gamma = gamma;
    bp.d = d;
    bp.degree = lv_formula(h).claimed_degree;
    bp.hurst = h;
    bp.validate();
    constants.add_row({num(h), num(a.value), num(a.lower), num(a.upper), num(at.value), num(at.lower),
                       num(at.upper), num(static_cast<std::int64_t>(at.terms)), num(bp.K())});
    for (double T : Ts) {
      const BoundShape b = error_bound_shape(bp, T);
      shapes.add_row({num(h), num(T), num(M), num(gamma), num(std::int64_t{d}), num(std::int64_t{bp.degree}),
                      b.branch == BoundBranch::LongTime ? "long_time" : "short_time", num(b.value),
                      num(b.log_value)});
    }
  }
  CommandResult out;
  out.report.tables.push_back(std::move(constants));
  out.report.tables.push_back(std::move(shapes));
  return out;
}

}  // namespace fbmsig::cli
