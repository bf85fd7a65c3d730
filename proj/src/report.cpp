#include <cmath>
#include <iomanip>
#include <sstream>

#include "roots/bench.hpp"

namespace roots {
namespace {

std::string short_error(const Real& err) {
  if (err.is_zero()) return "0";
  return err.to_string(6);
}

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::json to_json(const RunRecord& record) {
  nlohmann::json iters = nlohmann::json::array();
  for (const IterationRecord& it : record.iterations) {
    nlohmann::json entry = {
        {"k", it.k},
        {"x", it.x.to_string(40)},
        {"err", short_error(it.err)},
        {"log10_err", number_or_null(log10_magnitude(it.err))},
        {"digits", it.digits_used},
        {"evals", it.evals},
    };
    if (it.closed_form_gap) entry["closed_form_gap"] = short_error(*it.closed_form_gap);
    iters.push_back(std::move(entry));
  }
  nlohmann::json out = {
      {"method", record.method.name},
      {"problem", record.problem},
      {"iters", std::move(iters)},
      {"iter_count", record.iter_count},
      {"tnfe", record.tnfe},
      {"coc", number_or_null(record.coc)},
      {"converged", record.converged},
      {"order", record.method.order},
      {"evals_per_step", record.method.evals},
      {"eta", record.eta},
  };
  if (record.empirical_constant) {
    out["empirical_constant"] = record.empirical_constant->to_string(12);
  }
  if (!record.diagnostic.empty()) out["diagnostic"] = record.diagnostic;
  return out;
}

nlohmann::json to_json(const BenchmarkReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  nlohmann::json iter_totals = nlohmann::json::object();
  nlohmann::json tnfe_totals = nlohmann::json::object();
  for (const auto& row : report.cells) {
    for (const RunRecord& r : row) {
      nlohmann::json j = to_json(r);
      j.erase("iters");  // per-iteration traces are available from `run`
      runs.push_back(std::move(j));
    }
  }
  for (std::size_t m = 0; m < report.methods.size(); ++m) {
    iter_totals[report.methods[m].name] = report.iter_totals[m];
    tnfe_totals[report.methods[m].name] = report.tnfe_totals[m];
  }
  nlohmann::json methods = nlohmann::json::array();
  for (const MethodSpec& m : report.methods) methods.push_back(m.name);
  return {
      {"eta", report.eta},
      {"methods", std::move(methods)},
      {"problems", report.problems},
      {"runs", std::move(runs)},
      {"iter_totals", std::move(iter_totals)},
      {"tnfe_totals", std::move(tnfe_totals)},
      {"all_converged", report.all_converged()},
      {"warnings", report.warnings},
  };
}

std::string to_markdown(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "| |";
  for (const MethodSpec& m : report.methods) out << ' ' << m.notation() << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < report.methods.size(); ++i) out << "---:|";
  out << '\n';
  for (std::size_t p = 0; p < report.problems.size(); ++p) {
    out << "| " << report.problems[p] << " |";
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const RunRecord& r = report.cell(p, m);
      out << ' ' << (r.converged ? std::to_string(r.iter_count) : std::string("div")) << " |";
    }
    out << '\n';
  }
  out << "| Iter |";
  for (std::size_t m = 0; m < report.methods.size(); ++m) {
    out << ' ' << report.iter_totals[m] << (report.incomplete[m] ? "*" : "") << " |";
  }
  out << "\n| TNFE |";
  for (std::size_t m = 0; m < report.methods.size(); ++m) {
    out << ' ' << report.tnfe_totals[m] << (report.incomplete[m] ? "*" : "") << " |";
  }
  out << '\n';
  for (const std::string& w : report.warnings) out << "\n* " << w;
  if (!report.warnings.empty()) out << '\n';
  return out.str();
}

std::string to_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "row";
  for (const MethodSpec& m : report.methods) out << ',' << m.name;
  out << '\n';
  for (std::size_t p = 0; p < report.problems.size(); ++p) {
    out << report.problems[p];
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      const RunRecord& r = report.cell(p, m);
      out << ',' << (r.converged ? std::to_string(r.iter_count) : std::string("div"));
    }
    out << '\n';
  }
  out << "Iter";
  for (long v : report.iter_totals) out << ',' << v;
  out << "\nTNFE";
  for (long v : report.tnfe_totals) out << ',' << v;
  out << '\n';
  return out.str();
}

std::string to_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "k,digits,evals,log10_err,err,x\n";
  for (const IterationRecord& it : record.iterations) {
    const double l = log10_magnitude(it.err);
    out << it.k << ',' << it.digits_used << ',' << it.evals << ',';
    if (std::isfinite(l)) out << std::fixed << std::setprecision(3) << l;
    out.unsetf(std::ios::floatfield);
    out << ',' << short_error(it.err) << ',' << it.x.to_string(40) << '\n';
  }
  return out.str();
}

std::string to_table(const RunRecord& record) {
  std::ostringstream out;
  out << record.method.notation() << " (" << record.method.name << ") on " << record.problem
      << ", eta = " << record.eta << '\n';
  out << std::setw(4) << "k" << std::setw(8) << "digits" << std::setw(7) << "evals"
      << std::setw(14) << "log10|e_k|" << "  x_k\n";
  for (const IterationRecord& it : record.iterations) {
    const double l = log10_magnitude(it.err);
    std::ostringstream le;
    if (std::isfinite(l)) le << std::fixed << std::setprecision(2) << l;
    else le << "-inf";
    out << std::setw(4) << it.k << std::setw(8) << it.digits_used << std::setw(7) << it.evals
        << std::setw(14) << le.str() << "  " << it.x.to_string(30) << '\n';
  }
  out << (record.converged ? "converged" : "NOT converged") << " after " << record.iter_count
      << " iterations, TNFE = " << record.tnfe;
  if (std::isfinite(record.coc)) {
    out << ", COC = " << std::fixed << std::setprecision(4) << record.coc;
  }
  if (record.empirical_constant) {
    out << ", |e_n|/|e_{n-1}|^" << record.method.order << " = "
        << record.empirical_constant->to_string(8);
  }
  out << '\n';
  if (!record.diagnostic.empty()) out << "diagnostic: " << record.diagnostic << '\n';
  return out.str();
}

}  // namespace roots
