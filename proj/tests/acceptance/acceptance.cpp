// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "roots/analysis.hpp"
#include "roots/bench.hpp"
#include "roots/methods.hpp"

using roots::MethodSpec;
using roots::Problem;
using roots::Real;
using roots::WorkingPrecision;

namespace {

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }

  void note(const std::string& line) { notes_.push_back(line); }

  bool report() const {
    const bool ok = failures_.empty() && checks_ > 0;
    std::printf("[%s] criterion %d: %s (%d checks, %zu failed)\n", ok ? "PASS" : "FAIL", id_,
                title_.c_str(), checks_, failures_.size());
    for (const auto& n : notes_) std::printf("    %s\n", n.c_str());
    std::size_t shown = 0;
    for (const auto& f : failures_) {
      if (++shown > 20) {
        std::printf("    ... %zu more\n", failures_.size() - 20);
        break;
      }
      std::printf("    failed: %s\n", f.c_str());
    }
    std::fflush(stdout);
    return ok;
  }

 private:
  int id_;
  std::string title_;
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

std::string label(const roots::RunRecord& r) { return r.method.name + "/" + r.problem; }

// Published iteration counts at 10^-3000, rows f1..f7, columns in all_methods() order.
constexpr std::array<std::array<int, 9>, 7> kTableCounts = {{
    {13, 7, 9, 6, 6, 7, 6, 5, 5},
    {13, 7, 8, 6, 5, 7, 5, 5, 5},
    {11, 6, 8, 5, 5, 6, 5, 4, 4},
    {13, 7, 8, 6, 5, 7, 5, 5, 5},
    {14, 8, 9, 6, 6, 7, 6, 6, 5},
    {11, 6, 8, 5, 5, 6, 5, 5, 4},
    {12, 6, 8, 6, 5, 6, 5, 5, 4},
}};
constexpr std::array<long, 9> kTableIter = {87, 47, 58, 40, 37, 46, 37, 35, 32};
constexpr std::array<long, 9> kEvals = {2, 3, 3, 4, 4, 4, 5, 5, 5};
constexpr std::array<int, 9> kOrders = {2, 4, 3, 5, 6, 4, 6, 7, 8};

bool criterion1(const roots::BenchmarkReport& report, double seconds) {
  Criterion c(1, "published iteration counts, totals and TNFE at eta = 3000");
  const auto& methods = roots::all_methods();
  c.expect(report.methods.size() == 9 && report.problems.size() == 7, "report shape");
  c.expect(report.all_converged(), "all 63 runs converged");
  for (std::size_t p = 0; p < 7; ++p) {
    for (std::size_t m = 0; m < 9; ++m) {
      const auto& r = report.cell(p, m);
      const int expected = kTableCounts[p][m];
      c.expect(r.converged && std::abs(r.iter_count - expected) <= 1,
               label(r) + ": " + std::to_string(r.iter_count) + " vs " + std::to_string(expected));
      if (r.iter_count != expected) {
        c.note(label(r) + " differs by " + std::to_string(r.iter_count - expected));
      }
      c.expect(r.tnfe == static_cast<long>(r.iter_count) * kEvals[m],
               label(r) + ": measured tnfe " + std::to_string(r.tnfe));
    }
  }
  std::string iters = "Iter:";
  std::string tnfe = "TNFE:";
  for (std::size_t m = 0; m < 9; ++m) {
    c.expect(methods[m].evals == kEvals[m], methods[m].name + " evals");
    c.expect(std::abs(report.iter_totals[m] - kTableIter[m]) <= 4,
             methods[m].name + " total " + std::to_string(report.iter_totals[m]) + " vs " +
                 std::to_string(kTableIter[m]));
    c.expect(report.tnfe_totals[m] == report.iter_totals[m] * kEvals[m],
             methods[m].name + " tnfe total");
    iters += " " + std::to_string(report.iter_totals[m]);
    tnfe += " " + std::to_string(report.tnfe_totals[m]);
  }
  c.expect(seconds < 300.0, "runtime " + fmt(seconds, 1) + " s");
  c.note(iters);
  c.note(tnfe);
  c.note("runtime " + fmt(seconds, 1) + " s");
  return c.report();
}

bool criterion2() {
  Criterion c(2, "efficiency indices to 3 decimals");
  struct Entry {
    int order;
    int evals;
    double value;
  };
  // Rows: base method, q = 2, q = 3, q = 4; columns p = 2, 3, 4.
  const std::array<Entry, 10> table = {{
      {2, 2, 1.414}, {3, 3, 1.442}, {4, 4, 1.414},
      {4, 3, 1.587}, {5, 4, 1.495}, {6, 5, 1.431},
      {6, 4, 1.565}, {7, 5, 1.476},
      {8, 5, 1.516},
      {3, 3, 1.442},
  }};
  for (const auto& e : table) {
    const double ei = roots::efficiency_index(e.order, e.evals);
    c.expect(std::abs(ei - e.value) < 5e-4,
             std::to_string(e.order) + "^(1/" + std::to_string(e.evals) + ") = " + fmt(ei, 6));
  }
  for (const auto& m : roots::all_methods()) {
    const double ei = roots::efficiency_index(m.order, m.evals);
    c.note(m.name + " EI " + fmt(ei, 3));
  }
  return c.report();
}

bool criterion3() {
  Criterion c(3, "Jabotinsky sums equal the coefficient table on random rationals");
  oracle::RationalSource source(2024);
  for (int q = 1; q <= 4; ++q) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto coeffs = source.coefficients(5);
      c.expect(roots::jabotinsky_b(q, coeffs) == oracle::table1(q, coeffs),
               "q = " + std::to_string(q) + " trial " + std::to_string(trial));
    }
  }
  return c.report();
}

bool criterion4() {
  Criterion c(4, "asymptotic error constants on polynomial fixtures within 5%");
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Problem> fixtures = {
      Problem::polynomial("quadratic", {-1, 0, 1}, "1.4"),
      Problem::polynomial("cubic", {-2, 1, 0, 1}, "1.3"),
      Problem::polynomial("quintic", {-5, 1, 1, 1, 1, 1}, "1.2"),
  };
  constexpr long kEta = 3000;
  for (const Problem& fixture : fixtures) {
    const auto coeffs = roots::a_coeffs(fixture, 60);
    for (const char* name : {"psi2_4", "psi3_5", "psi3_6", "psi4_8"}) {
      const MethodSpec& m = roots::method_by_name(name);
      WorkingPrecision guard = WorkingPrecision::from_digits(60);
      const Real K = roots::base_error_constant(m.p, coeffs);
      const auto model = roots::predicted_error_constant(m.p, m.q, K, coeffs);
      const Real predicted = roots::abs(model.C);
      const auto r = roots::run(m, fixture, kEta);
      const std::string tag = std::string(name) + "/" + fixture.formula();
      if (!r.converged || !r.empirical_constant || r.iterations.size() < 3) {
        c.expect(false, tag + ": no terminal ratio (" + r.diagnostic + ")");
        continue;
      }
      const double measured = r.empirical_constant->to_double();
      const double expected = predicted.to_double();
      const double rel = std::abs(measured - expected) / expected;
      c.expect(expected > 0 && rel < 0.05,
               tag + ": measured " + fmt(measured, 6) + " predicted " + fmt(expected, 6));
      c.note(tag + ": C = " + fmt(expected, 6) + ", measured " + fmt(measured, 6) +
             ", rel " + fmt(rel, 8));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(seconds < 60.0, "runtime " + fmt(seconds, 1) + " s");
  return c.report();
}

bool criterion5(const roots::BenchmarkReport& report) {
  Criterion c(5, "computational order of convergence within 0.15 of theory");
  double worst = 0.0;
  std::string worst_label;
  for (std::size_t p = 0; p < report.cells.size(); ++p) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto& r = report.cell(p, m);
      if (!r.converged) continue;
      const double dev = std::abs(r.coc - kOrders[m]);
      c.expect(std::isfinite(r.coc) && dev <= 0.15,
               label(r) + ": coc " + fmt(r.coc) + " vs " + std::to_string(kOrders[m]));
      if (!(dev <= worst)) {
        worst = dev;
        worst_label = label(r);
      }
    }
  }
  c.note("largest deviation " + fmt(worst) + " at " + worst_label);
  return c.report();
}

bool criterion6(const roots::BenchmarkReport& report) {
  Criterion c(6, "generic composition matches the closed forms at every iterate");
  double margin = -1e9;
  for (std::size_t p = 0; p < report.cells.size(); ++p) {
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const auto& r = report.cell(p, m);
      const std::string& name = r.method.name;
      if (name != "psi2_4" && name != "psi3_6" && name != "psi4_8") continue;
      for (std::size_t k = 1; k < r.iterations.size(); ++k) {
        const auto& it = r.iterations[k];
        if (!it.closed_form_gap) {
          c.expect(false, label(r) + " iterate " + std::to_string(k) + ": no gap recorded");
          continue;
        }
        const double gap = roots::log10_magnitude(*it.closed_form_gap);
        const double bound = -static_cast<double>(it.digits_used - 5);
        c.expect(gap <= bound, label(r) + " iterate " + std::to_string(k) + ": log10 gap " +
                                   fmt(gap, 1) + " > " + fmt(bound, 1));
        if (std::isfinite(gap)) margin = std::max(margin, gap - bound);
      }
    }
  }
  c.note("closest approach to the bound: " + fmt(margin, 1) + " decades");
  return c.report();
}

double slope_fit(const std::array<double, 3>& xs, const std::array<double, 3>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    mx += xs[i] / 3;
    my += ys[i] / 3;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

bool identical(const roots::BenchmarkReport& a, const roots::BenchmarkReport& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t p = 0; p < a.cells.size(); ++p) {
    for (std::size_t m = 0; m < a.cells[p].size(); ++m) {
      const auto& ra = a.cell(p, m);
      const auto& rb = b.cell(p, m);
      if (ra.iterations.size() != rb.iterations.size()) return false;
      for (std::size_t k = 0; k < ra.iterations.size(); ++k) {
        const auto& ia = ra.iterations[k];
        const auto& ib = rb.iterations[k];
        if (ia.x.precision_bits() != ib.x.precision_bits() || !(ia.x == ib.x) ||
            !(ia.err == ib.err) || ia.digits_used != ib.digits_used)
          return false;
      }
    }
  }
  return true;
}

bool criterion7(const roots::BenchmarkReport& first) {
  Criterion c(7, "property suite");

  // Affine one-step exactness.
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> coef(-60, 60);
  for (int trial = 0; trial < 12; ++trial) {
    long a = 0;
    while (a == 0) a = coef(rng);
    const long b = coef(rng);
    const Problem line =
        Problem::polynomial("affine", {b, a}, std::to_string(coef(rng)) + ".375");
    for (const MethodSpec& m : roots::all_methods()) {
      constexpr long kDigits = 60;
      WorkingPrecision guard = WorkingPrecision::from_digits(kDigits);
      roots::Evaluator f(line);
      const Real next = roots::step(m, f, line.x0()).next;
      const Real root = Real(-b) / Real(a);
      const Real gap = roots::abs(next - root);
      const double scale = std::max(0.0, roots::log10_magnitude(root));
      c.expect(gap.is_zero() || roots::log10_magnitude(gap) - scale < -(kDigits - 3),
               "affine " + line.formula() + " with " + m.name);
    }
  }

  // g'_q exact on affine f: f(x) = a x + b gives g' = 1/a.
  for (long a : {2L, -3L, 7L}) {
    WorkingPrecision guard = WorkingPrecision::from_digits(60);
    const Real x(5L), z(-1L);
    const Real y = x * a + 1, w = z * a + 1;
    const auto jet = roots::inverse_jet(Real(a), Real(0L), Real(0L), 3);
    const Real truth = Real(1L) / Real(a);
    for (int q = 2; q <= 4; ++q) {
      const Real gq = roots::gq_prime(q, jet, x, z, y, w);
      const Real gap = roots::abs(gq - truth);
      c.expect(gap.is_zero() || roots::log10_magnitude(gap) < -57, "gq_prime q = " + std::to_string(q) + " slope " + std::to_string(a));
    }
  }

  // Approximation order of g'_q on x^2 - 1.
  const Problem quad = Problem::polynomial("quadratic", {-1, 0, 1}, "1.5");
  for (int q = 2; q <= 4; ++q) {
    WorkingPrecision guard = WorkingPrecision::from_digits(80);
    std::array<double, 3> log_h{};
    std::array<double, 3> log_err{};
    const std::array<const char*, 3> starts = {"1.1", "1.01", "1.001"};
    for (std::size_t i = 0; i < 3; ++i) {
      const Real x(starts[i]);
      roots::Evaluator f(quad);
      const Real z = roots::base_step(roots::method_by_name("psi2_2"), f, x).next;
      const Real y = quad.evaluate(x, 0);
      const Real w = quad.evaluate(z, 0);
      const auto jet =
          roots::inverse_jet(quad.evaluate(x, 1), quad.evaluate(x, 2), quad.evaluate(x, 3), q - 1);
      const Real gq = roots::gq_prime(q, jet, x, z, y, w);
      log_h[i] = roots::log10_magnitude(w - y);
      log_err[i] = roots::log10_magnitude(gq - 1 / quad.evaluate(z, 1));
    }
    const double slope = slope_fit(log_h, log_err);
    c.expect(std::abs(slope - q) <= 0.2,
             "g'_" + std::to_string(q) + " slope " + fmt(slope, 3));
    c.note("g'_" + std::to_string(q) + " slope " + fmt(slope, 3));
  }

  // Closed-form derivatives against central differences.
  for (const Problem& p : roots::catalog()) {
    WorkingPrecision guard = WorkingPrecision::from_digits(60);
    const Real h("1e-20");
    for (const Real& x : {p.x0(), p.reference_root(60)}) {
      for (int k = 1; k <= 3; ++k) {
        const Real fd = (p.evaluate(x + h, k - 1) - p.evaluate(x - h, k - 1)) / (2 * h);
        const Real exact = p.evaluate(x, k);
        const double rel = roots::log10_magnitude(fd - exact) - roots::log10_magnitude(exact);
        c.expect(rel < -25.0, p.id() + " derivative " + std::to_string(k) + ": " + fmt(rel, 1));
      }
    }
  }

  // Bit-identical reruns of the whole table, serial against threaded.
  roots::RunOptions options;
  options.check_closed_form = true;
  const auto rerun = roots::table4(roots::all_methods(), roots::catalog(), first.eta, options, 1);
  c.expect(identical(first, rerun), "table rerun is bit-identical");
  c.expect(roots::to_json(first).dump() == roots::to_json(rerun).dump(), "report JSON identical");

  return c.report();
}

}  // namespace

int main() {
  bool ok = true;

  roots::RunOptions options;
  options.check_closed_form = true;
  const auto start = std::chrono::steady_clock::now();
  const auto report = roots::table4(roots::all_methods(), roots::catalog(), 3000, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s\n", roots::to_markdown(report).c_str());

  ok &= criterion1(report, seconds);
  ok &= criterion2();
  ok &= criterion3();
  ok &= criterion4();
  ok &= criterion5(report);
  ok &= criterion6(report);
  ok &= criterion7(report);

  std::printf("%s\n", ok ? "ACCEPTANCE: ALL PASS" : "ACCEPTANCE: FAILURES");
  return ok ? 0 : 1;
}
