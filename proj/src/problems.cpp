#include "roots/problems.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <utility>

namespace roots {

struct Problem::RootCache {
  std::mutex mutex;
  std::optional<Real> root;
  long digits = 0;
};

Problem::Problem(std::string id, std::string formula, std::vector<DerivativeFn> derivatives,
                 std::string x0, std::string table_root, DomainFn in_domain)
    : id_(std::move(id)),
      formula_(std::move(formula)),
      derivatives_(std::move(derivatives)),
      x0_(std::move(x0)),
      table_root_(std::move(table_root)),
      in_domain_(std::move(in_domain)),
      max_order_(static_cast<int>(derivatives_.size()) - 1),
      cache_(std::make_shared<RootCache>()) {
  if (derivatives_.size() < 2) {
    throw ContractViolation("problem " + id_ + " needs at least f and f'");
  }
}

Problem Problem::polynomial(std::string id, std::vector<long> coefficients, std::string x0,
                            std::string table_root) {
  if (coefficients.size() < 2) throw ContractViolation("polynomial must have degree >= 1");
  const int degree = static_cast<int>(coefficients.size()) - 1;
  const int orders = std::max(degree, 5);

  std::string formula;
  for (int i = degree; i >= 0; --i) {
    const long c = coefficients[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!formula.empty()) formula += c < 0 ? " - " : " + ";
    else if (c < 0) formula += "-";
    const long mag = c < 0 ? -c : c;
    if (mag != 1 || i == 0) formula += std::to_string(mag);
    if (i >= 1) formula += "x";
    if (i >= 2) formula += "^" + std::to_string(i);
  }

  std::vector<DerivativeFn> derivatives;
  std::vector<long> current = coefficients;
  for (int k = 0; k <= orders; ++k) {
    derivatives.emplace_back([poly = current](const Real& x) {
      Real acc(0L);
      for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
      return acc;
    });
    std::vector<long> next;
    for (std::size_t i = 1; i < current.size(); ++i) {
      next.push_back(current[i] * static_cast<long>(i));
    }
    if (next.empty()) next.push_back(0);
    current = std::move(next);
  }
  return Problem(std::move(id), std::move(formula), std::move(derivatives), std::move(x0),
                 std::move(table_root));
}

Real Problem::evaluate(const Real& x, int k) const {
  if (k < 0 || k > max_order_) {
    throw UnsupportedOrder("problem " + id_ + " has no derivative of order " + std::to_string(k),
                           k);
  }
  if (in_domain_ && !in_domain_(x)) {
    throw DomainError("problem " + id_ + " evaluated outside its domain at x = " +
                      x.to_string(20));
  }
  return derivatives_[static_cast<std::size_t>(k)](x);
}

Real Problem::x0() const { return Real(x0_); }

Real Problem::reference_root(long digits) const {
  if (digits < 1) throw ContractViolation("reference_root needs a positive digit count");
  std::lock_guard lock(cache_->mutex);
  if (cache_->root && cache_->digits >= digits) {
    return cache_->root->rounded(digits_to_bits(digits));
  }

  const long working = digits + 20;
  WorkingPrecision guard = WorkingPrecision::from_digits(working);
  Real x = cache_->root ? cache_->root->rounded(WorkingPrecision::bits())
                        : Real(table_root_.empty() ? x0_ : table_root_);
  const double tolerance = -static_cast<double>(digits + 10);

  constexpr int kMaxSteps = 2000;
  bool settled = false;
  for (int step = 0; step < kMaxSteps; ++step) {
    const Real fx = evaluate(x, 0);
    if (fx.is_zero()) {
      settled = true;
      break;
    }
    const Real dfx = evaluate(x, 1);
    if (dfx.is_zero()) {
      throw RootBootstrapFailure("problem " + id_ + ": f' vanished during root bootstrap");
    }
    const Real dx = fx / dfx;
    x -= dx;
    if (!x.is_finite()) break;
    const double scale = x.is_zero() ? 0.0 : std::max(0.0, log10_magnitude(x));
    if (dx.is_zero() || log10_magnitude(dx) - scale < tolerance) {
      // one extra step polishes the last quadratic gain
      const Real d1 = evaluate(x, 1);
      if (!d1.is_zero()) x -= evaluate(x, 0) / d1;
      settled = true;
      break;
    }
  }
  if (!settled) {
    throw RootBootstrapFailure("problem " + id_ + ": Newton did not converge from x0 = " + x0_);
  }

  cache_->root = x;
  cache_->digits = digits;
  return x.rounded(digits_to_bits(digits));
}

// --- catalog ------------------------------------------------------------------

namespace {

std::vector<Problem> build_catalog() {
  std::vector<Problem> problems;

  problems.push_back(Problem::polynomial("f1", {-2, 1, -3, 1}, "2.5", "2.893289"));

  problems.emplace_back(
      "f2", "x^3 + cos(x) - 2",
      std::vector<DerivativeFn>{
          [](const Real& x) { return x * x * x + cos(x) - 2; },
          [](const Real& x) { return 3 * (x * x) - sin(x); },
          [](const Real& x) { return 6 * x - cos(x); },
          [](const Real& x) { return 6 + sin(x); },
      },
      "1.5", "1.172578");

  problems.emplace_back(
      "f3", "2 sin(x) + 1 - x",
      std::vector<DerivativeFn>{
          [](const Real& x) { return 2 * sin(x) + 1 - x; },
          [](const Real& x) { return 2 * cos(x) - 1; },
          [](const Real& x) { return -2 * sin(x); },
          [](const Real& x) { return -2 * cos(x); },
      },
      "2.5", "2.380061");

  // Shifted exponent: (x + 1) exp(-x) - 1 has only the double root 0.
  problems.emplace_back(
      "f4", "(x + 1) exp(x - 1) - 1",
      std::vector<DerivativeFn>{
          [](const Real& x) { return (x + 1) * exp(x - 1) - 1; },
          [](const Real& x) { return (x + 2) * exp(x - 1); },
          [](const Real& x) { return (x + 3) * exp(x - 1); },
          [](const Real& x) { return (x + 4) * exp(x - 1); },
      },
      "1.0", "0.557146");

  // s = x^2 + 7x - 30, f = e^s - 1
  problems.emplace_back(
      "f5", "exp(x^2 + 7x - 30) - 1",
      std::vector<DerivativeFn>{
          [](const Real& x) { return exp(x * x + 7 * x - 30) - 1; },
          [](const Real& x) { return (2 * x + 7) * exp(x * x + 7 * x - 30); },
          [](const Real& x) {
            const Real ds = 2 * x + 7;
            return (ds * ds + 2) * exp(x * x + 7 * x - 30);
          },
          [](const Real& x) {
            const Real ds = 2 * x + 7;
            return (ds * ds * ds + 6 * ds) * exp(x * x + 7 * x - 30);
          },
      },
      "2.94", "3.0");

  problems.emplace_back(
      "f6", "exp(-x) + cos(x)",
      std::vector<DerivativeFn>{
          [](const Real& x) { return exp(-x) + cos(x); },
          [](const Real& x) { return -exp(-x) - sin(x); },
          [](const Real& x) { return exp(-x) - cos(x); },
          [](const Real& x) { return sin(x) - exp(-x); },
      },
      "1.5", "1.746140");

  problems.emplace_back(
      "f7", "x - 3 ln(x)",
      std::vector<DerivativeFn>{
          [](const Real& x) { return x - 3 * log(x); },
          [](const Real& x) { return 1 - 3 / x; },
          [](const Real& x) { return 3 / (x * x); },
          [](const Real& x) { return -6 / (x * x * x); },
      },
      "2.0", "1.857184", [](const Real& x) { return x.sign() > 0; });

  return problems;
}

}  // namespace

const std::vector<Problem>& catalog() {
  static const std::vector<Problem> problems = build_catalog();
  return problems;
}

const Problem& problem_by_id(std::string_view id) {
  for (const Problem& p : catalog()) {
    if (p.id() == id) return p;
  }
  throw ContractViolation("unknown problem id '" + std::string(id) + "' (expected f1..f7)");
}

}  // namespace roots
