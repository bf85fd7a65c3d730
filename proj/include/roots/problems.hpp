#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "roots/precision.hpp"

namespace roots {

/// One derivative order of a test function, evaluated at the working precision.
using DerivativeFn = std::function<Real(const Real&)>;
using DomainFn = std::function<bool(const Real&)>;

/// A scalar equation f(x) = 0 with closed-form derivatives, a starting
/// point and a lazily computed high-precision reference root.
///
/// Problems are immutable; copies share the reference-root cache, which is
/// internally synchronised.
class Problem {
 public:
  /// `derivatives[k]` evaluates f^(k); max_order() is derivatives.size() - 1.
  Problem(std::string id, std::string formula, std::vector<DerivativeFn> derivatives,
          std::string x0, std::string table_root, DomainFn in_domain = {});

  /// Polynomial with integer coefficients in ascending powers. Derivatives of
  /// every order are available; max_order() is at least 5.
  static Problem polynomial(std::string id, std::vector<long> coefficients, std::string x0,
                            std::string table_root = {});

  const std::string& id() const noexcept { return id_; }
  const std::string& formula() const noexcept { return formula_; }
  /// The root as printed in the published test table (7 significant digits).
  const std::string& table_root() const noexcept { return table_root_; }
  int max_order() const noexcept { return max_order_; }

  /// f^(k)(x). Throws UnsupportedOrder for k outside [0, max_order()] and
  /// DomainError when x is outside the function's domain.
  Real evaluate(const Real& x, int k) const;

  /// Initial approximation x0 at the working precision.
  Real x0() const;

  /// The simple root to at least `digits` significant digits.
  ///
  /// Computed by plain Newton iteration at digits + 20 working digits, seeded
  /// from the table root when one is given and from x0 otherwise, and
  /// cached; later requests for more digits refine the cached value.
  /// Throws RootBootstrapFailure if Newton does not settle in 2000 steps.
  Real reference_root(long digits) const;

 private:
  struct RootCache;

  std::string id_;
  std::string formula_;
  std::vector<DerivativeFn> derivatives_;
  std::string x0_;
  std::string table_root_;
  DomainFn in_domain_;
  int max_order_ = 0;
  std::shared_ptr<RootCache> cache_;
};

/// The seven published test equations f1..f7.
const std::vector<Problem>& catalog();

/// Catalog lookup by id ("f1".."f7"). Throws ContractViolation when unknown.
const Problem& problem_by_id(std::string_view id);

/// Reference precision needed to measure errors down to 10^-eta.
constexpr long reference_digits_for(long eta) { return eta + 100; }

/// Counts every evaluation of f or one of its derivatives.
///
/// Each solver run owns one; the count is what TNFE reports.
class Evaluator {
 public:
  explicit Evaluator(const Problem& problem) : problem_(&problem) {}

  Real operator()(const Real& x, int k) {
    Real v = problem_->evaluate(x, k);
    ++count_;
    return v;
  }

  long count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }
  const Problem& problem() const noexcept { return *problem_; }

 private:
  const Problem* problem_;
  long count_ = 0;
};

}  // namespace roots
