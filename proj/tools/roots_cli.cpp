// Command-line front end: run single solves, regenerate the iteration-count
// table, and print error-constant / efficiency analysis for a problem.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "roots/analysis.hpp"
#include "roots/bench.hpp"

namespace {

constexpr int kExitDiverged = 2;

void print_run(const roots::RunRecord& record, const std::string& format) {
  if (format == "json") {
    std::cout << roots::to_json(record).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << roots::to_csv(record);
  } else {
    std::cout << roots::to_table(record);
  }
}

void print_report(const roots::BenchmarkReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << roots::to_json(report).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << roots::to_csv(report);
  } else {
    std::cout << roots::to_markdown(report);
  }
}

int cmd_list() {
  std::cout << "problems:\n";
  for (const roots::Problem& p : roots::catalog()) {
    std::cout << "  " << std::left << std::setw(4) << p.id() << std::setw(28) << p.formula()
              << " alpha ~ " << std::setw(10) << p.table_root() << " x0 = "
              << p.x0().to_string(4) << '\n';
  }
  std::cout << "methods:\n";
  for (const roots::MethodSpec& m : roots::all_methods()) {
    std::cout << "  " << std::left << std::setw(8) << m.name << std::setw(9) << m.notation()
              << " p=" << m.p << " q=" << m.q << " order=" << m.order << " evals/step=" << m.evals
              << " EI=" << std::fixed << std::setprecision(3)
              << roots::efficiency_index(m.order, m.evals) << '\n';
    std::cout.unsetf(std::ios::floatfield);
  }
  return 0;
}

int cmd_analyze(const roots::Problem& problem, long eta) {
  constexpr long kDigits = 60;
  const roots::CoefficientVector coeffs = roots::a_coeffs(problem, kDigits);
  roots::WorkingPrecision guard = roots::WorkingPrecision::from_digits(kDigits);

  std::cout << "problem " << problem.id() << ": " << problem.formula() << "\n";
  std::cout << "alpha = " << problem.reference_root(kDigits).to_string(50) << "\n";
  std::cout << "f'(alpha) = " << coeffs.fprime_alpha.to_string(20) << "\n\n";
  for (int k = 2; k <= coeffs.highest(); ++k) {
    std::cout << "A" << k << " = " << coeffs.A(k).to_string(20) << '\n';
  }

  static const char* const kTable1[] = {
      "-A2",
      "2 A2^2 - A3",
      "-5 A2^3 + 5 A2 A3 - A4",
      "14 A2^4 - 21 A2^2 A3 + 6 A2 A4 + 3 A3^2 - A5",
  };
  std::cout << "\nf'(alpha)^q B_{q+1}:\n";
  for (int q = 1; q <= 4; ++q) {
    std::cout << "  q=" << q << "  " << std::left << std::setw(48) << kTable1[q - 1];
    if (q + 1 <= coeffs.highest()) {
      std::cout << roots::jabotinsky_b(q, coeffs).to_string(20);
    } else {
      std::cout << "(needs A" << q + 1 << ")";
    }
    std::cout << '\n';
  }

  std::cout << "\npredicted error constants C (e_{n+1} ~ C e_n^{p+q}):\n";
  for (const roots::MethodSpec& m : roots::all_methods()) {
    std::cout << "  " << std::left << std::setw(9) << m.notation();
    try {
      const roots::Real K = roots::base_error_constant(m.p, coeffs);
      if (!m.composed()) {
        std::cout << "K = " << K.to_string(12) << '\n';
      } else {
        const roots::ErrorModel model = roots::predicted_error_constant(m.p, m.q, K, coeffs);
        std::cout << "C = " << model.C.to_string(12) << '\n';
      }
    } catch (const roots::UnsupportedOrder& e) {
      std::cout << "unavailable: " << e.what() << '\n';
    }
  }

  std::cout << "\nefficiency index m^(1/r):\n";
  for (const roots::MethodSpec& m : roots::all_methods()) {
    std::cout << "  " << std::left << std::setw(9) << m.notation() << std::fixed
              << std::setprecision(3) << roots::efficiency_index(m.order, m.evals) << '\n';
    std::cout.unsetf(std::ios::floatfield);
  }

  std::cout << "\nruns at eta = " << eta << ":\n";
  bool all_converged = true;
  for (const roots::MethodSpec& m : roots::all_methods()) {
    if (m.p - 1 > problem.max_order()) continue;
    const roots::RunRecord r = roots::run(m, problem, eta);
    all_converged = all_converged && r.converged;
    std::cout << "  " << std::left << std::setw(9) << m.notation() << " iter=" << std::setw(3)
              << r.iter_count << " tnfe=" << std::setw(4) << r.tnfe;
    if (std::isfinite(r.coc)) {
      std::cout << " COC=" << std::fixed << std::setprecision(3) << r.coc;
      std::cout.unsetf(std::ios::floatfield);
    }
    if (r.empirical_constant) std::cout << " |e_n|/|e_n-1|^m=" << r.empirical_constant->to_string(6);
    if (!r.converged) std::cout << " DIVERGED: " << r.diagnostic;
    std::cout << '\n';
  }
  return all_converged ? 0 : kExitDiverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-precision root finders with a composed modified Newton step"};
  app.require_subcommand(1);

  std::string method_name;
  std::string problem_id;
  long eta = 3000;
  int max_iter = 200;
  std::string output = "table";
  unsigned threads = 0;

  auto* run_cmd = app.add_subcommand("run", "Solve one problem with one method");
  run_cmd->add_option("--method", method_name, "psi2_2, psi2_4, psi3_3, psi3_5, psi3_6, psi4_4, "
                                               "psi4_6, psi4_7 or psi4_8")
      ->required();
  run_cmd->add_option("--problem", problem_id, "f1..f7")->required();
  run_cmd->add_option("--eta", eta, "stop when |x_k - alpha| < 10^-eta")->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-iter", max_iter, "iteration limit")->check(CLI::PositiveNumber);
  run_cmd->add_option("--output", output, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  auto* table_cmd = app.add_subcommand("table4", "Iteration counts and TNFE for all methods and problems");
  table_cmd->add_option("--eta", eta, "stop when |x_k - alpha| < 10^-eta")->check(CLI::PositiveNumber);
  table_cmd->add_option("--max-iter", max_iter, "iteration limit")->check(CLI::PositiveNumber);
  table_cmd->add_option("--output", output, "json, csv or table (markdown)")
      ->check(CLI::IsMember({"json", "csv", "table", "markdown"}));
  table_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Error constants, efficiencies and COC for a problem");
  analyze_cmd->add_option("--problem", problem_id, "f1..f7")->required();
  analyze_cmd->add_option("--eta", eta, "accuracy target for the COC runs")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("list", "List problems and methods");

  CLI11_PARSE(app, argc, argv);

  try {
    roots::RunOptions options;
    options.max_iter = max_iter;
    if (*run_cmd) {
      const roots::RunRecord record = roots::run(roots::method_by_name(method_name),
                                                 roots::problem_by_id(problem_id), eta, options);
      print_run(record, output);
      return record.converged ? 0 : kExitDiverged;
    }
    if (*table_cmd) {
      const roots::BenchmarkReport report =
          roots::table4(roots::all_methods(), roots::catalog(), eta, options, threads);
      print_report(report, output);
      for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
      return report.all_converged() ? 0 : kExitDiverged;
    }
    if (*analyze_cmd) return cmd_analyze(roots::problem_by_id(problem_id), eta);
    return cmd_list();
  } catch (const roots::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
