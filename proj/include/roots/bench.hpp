#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "roots/methods.hpp"
#include "roots/precision.hpp"
#include "roots/problems.hpp"

namespace roots {

struct IterationRecord {
  int k = 0;
  Real x;
  Real err;             // |x_k - alpha|, measured against the reference root
  long digits_used = 0; // working digits of the step that produced x_k (0 for x_0)
  int evals = 0;        // evaluations spent producing x_k
  /// |generic - closed form| for psi2_4, psi3_6, psi4_8 when requested.
  std::optional<Real> closed_form_gap;
};

struct RunOptions {
  int max_iter = 200;
  bool check_closed_form = false;
};

struct RunRecord {
  MethodSpec method;
  std::string problem;
  long eta = 0;
  std::vector<IterationRecord> iterations;  // x_0 first
  bool converged = false;
  int iter_count = 0;
  long tnfe = 0;
  double coc = 0.0;  // NaN when fewer than three nonzero errors exist
  /// |e_n| / |e_{n-1}|^order for the final step.
  std::optional<Real> empirical_constant;
  std::string diagnostic;

  std::vector<Real> error_magnitudes() const;
};

/// Solves problem from x_0 with the adaptive precision schedule until
/// |x_k - alpha| < 10^-eta.
///
/// Working digits for each step come from required_digits on the previous
/// error; the reference root is extended whenever a step runs at more digits
/// than it carries, so errors stay measurable. Failures (singular derivative,
/// degenerate step, max_iter) yield converged == false and a diagnostic.
/// Throws ContractViolation when policy.rho != method.order.
RunRecord run(const MethodSpec& method, const Problem& problem, const PrecisionPolicy& policy,
              const RunOptions& options = {});

/// Runs with default_policy(method.order, eta).
RunRecord run(const MethodSpec& method, const Problem& problem, long eta,
              const RunOptions& options = {});

struct BenchmarkReport {
  long eta = 0;
  std::vector<MethodSpec> methods;
  std::vector<std::string> problems;
  std::vector<std::vector<RunRecord>> cells;  // [problem][method]
  std::vector<long> iter_totals;              // per method, converged cells only
  std::vector<long> tnfe_totals;              // iter_totals[j] * methods[j].evals
  std::vector<bool> incomplete;               // a column had a diverged cell
  std::vector<std::string> warnings;

  bool all_converged() const;
  const RunRecord& cell(std::size_t problem, std::size_t method) const {
    return cells.at(problem).at(method);
  }
};

/// Every (method, problem) pair at accuracy 10^-eta. Independent runs are
/// spread over `threads` workers (0 = hardware concurrency).
BenchmarkReport table4(const std::vector<MethodSpec>& methods, const std::vector<Problem>& problems,
                       long eta, const RunOptions& options = {}, unsigned threads = 0);

// --- serialisation (report.cpp) ---------------------------------------------

nlohmann::json to_json(const RunRecord& record);
nlohmann::json to_json(const BenchmarkReport& report);
std::string to_markdown(const BenchmarkReport& report);
std::string to_csv(const BenchmarkReport& report);
std::string to_csv(const RunRecord& record);
std::string to_table(const RunRecord& record);

}  // namespace roots
