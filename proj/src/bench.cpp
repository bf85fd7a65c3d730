#include "roots/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "roots/analysis.hpp"

namespace roots {
namespace {

// |x - alpha| evaluated at the precision of the reference root.
Real error_against(const Real& x, const Real& alpha) {
  WorkingPrecision guard(std::max(alpha.precision_bits(), x.precision_bits()));
  return abs(x - alpha);
}

bool below_target(const Real& err, long eta) {
  return err.is_zero() || log10_magnitude(err) < -static_cast<double>(eta);
}

void finish(RunRecord& record) {
  const std::vector<Real> errors = record.error_magnitudes();
  try {
    record.coc = coc_estimate(errors);
  } catch (const InsufficientData&) {
    record.coc = std::numeric_limits<double>::quiet_NaN();
  }
  const std::size_t n = errors.size();
  if (n >= 2 && !errors[n - 1].is_zero() && !errors[n - 2].is_zero()) {
    record.empirical_constant =
        empirical_error_constant(errors[n - 1], errors[n - 2], record.method.order);
  }
}

}  // namespace

std::vector<Real> RunRecord::error_magnitudes() const {
  std::vector<Real> errors;
  errors.reserve(iterations.size());
  for (const IterationRecord& it : iterations) errors.push_back(it.err);
  return errors;
}

RunRecord run(const MethodSpec& method, const Problem& problem, const PrecisionPolicy& policy,
              const RunOptions& options) {
  policy.validate();
  if (policy.rho != method.order) {
    throw ContractViolation("precision policy rho (" + std::to_string(policy.rho) +
                            ") must equal the order of " + method.name);
  }
  if (method.p - 1 > problem.max_order()) {
    throw ContractViolation(method.name + " needs derivatives problem " + problem.id() +
                            " does not supply");
  }

  RunRecord record;
  record.method = method;
  record.problem = problem.id();
  record.eta = policy.eta;

  long reference_digits = reference_digits_for(policy.eta);
  Real alpha = problem.reference_root(reference_digits);
  Evaluator f(problem);

  Real x;
  {
    WorkingPrecision guard(alpha.precision_bits());
    x = problem.x0();
  }
  record.iterations.push_back({0, x, error_against(x, alpha), 0, 0, std::nullopt});

  try {
    for (int k = 0;; ++k) {
      const Real& err = record.iterations.back().err;
      if (below_target(err, policy.eta)) {
        record.converged = true;
        break;
      }
      if (k >= options.max_iter) {
        record.diagnostic = "no convergence within " + std::to_string(options.max_iter) +
                            " iterations";
        break;
      }

      const long digits = required_digits(policy, err);
      IterationRecord next;
      next.k = k + 1;
      next.digits_used = digits;
      {
        WorkingPrecision guard = WorkingPrecision::from_digits(digits);
        const Real x_in = x.rounded(WorkingPrecision::bits());
        const long before = f.count();
        StepResult result = step(method, f, x_in);
        next.evals = static_cast<int>(f.count() - before);
        if (options.check_closed_form && method.composed() && method.p == method.q) {
          Evaluator aux(problem);
          const Real closed = closed_form_step(method, aux, x_in);
          next.closed_form_gap = abs(closed - result.next);
        }
        x = std::move(result.next);
      }

      if (digits + 20 > reference_digits) {
        reference_digits = digits + 20;
        alpha = problem.reference_root(reference_digits);
      }
      next.x = x;
      next.err = error_against(x, alpha);
      record.iterations.push_back(std::move(next));
    }
  } catch (const Error& e) {
    record.converged = false;
    record.diagnostic = e.what();
  }

  record.iter_count = static_cast<int>(record.iterations.size()) - 1;
  for (const IterationRecord& it : record.iterations) record.tnfe += it.evals;
  finish(record);
  return record;
}

RunRecord run(const MethodSpec& method, const Problem& problem, long eta,
              const RunOptions& options) {
  return run(method, problem, default_policy(method.order, eta), options);
}

bool BenchmarkReport::all_converged() const {
  for (const auto& row : cells) {
    for (const RunRecord& r : row) {
      if (!r.converged) return false;
    }
  }
  return true;
}

BenchmarkReport table4(const std::vector<MethodSpec>& methods, const std::vector<Problem>& problems,
                       long eta, const RunOptions& options, unsigned threads) {
  BenchmarkReport report;
  report.eta = eta;
  report.methods = methods;
  for (const Problem& p : problems) report.problems.push_back(p.id());
  report.cells.assign(problems.size(), std::vector<RunRecord>(methods.size()));

  // Bootstrap reference roots up front so workers do not queue on the cache.
  for (const Problem& p : problems) p.reference_root(reference_digits_for(eta));

  const std::size_t total = problems.size() * methods.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (!arithmetic_is_thread_safe()) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t pi = i / methods.size();
      const std::size_t mi = i % methods.size();
      try {
        report.cells[pi][mi] = run(methods[mi], problems[pi], eta, options);
      } catch (const std::exception& e) {
        RunRecord& failed = report.cells[pi][mi];
        failed.method = methods[mi];
        failed.problem = problems[pi].id();
        failed.eta = eta;
        failed.coc = std::numeric_limits<double>::quiet_NaN();
        failed.diagnostic = e.what();
      }
    }
    mpfr_free_cache();
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  report.iter_totals.assign(methods.size(), 0);
  report.tnfe_totals.assign(methods.size(), 0);
  report.incomplete.assign(methods.size(), false);
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (std::size_t pi = 0; pi < problems.size(); ++pi) {
      const RunRecord& r = report.cells[pi][mi];
      if (!r.converged) {
        report.incomplete[mi] = true;
        report.warnings.push_back(methods[mi].name + " on " + r.problem +
                                  " diverged (excluded from totals): " + r.diagnostic);
        continue;
      }
      report.iter_totals[mi] += r.iter_count;
    }
    report.tnfe_totals[mi] = report.iter_totals[mi] * methods[mi].evals;
  }
  return report;
}

}  // namespace roots
