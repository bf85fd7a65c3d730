#include "roots/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roots {

CoefficientVector a_coeffs(const Problem& problem, long digits) {
  const Real alpha = problem.reference_root(digits);
  WorkingPrecision guard = WorkingPrecision::from_digits(digits);
  const Real fprime = problem.evaluate(alpha, 1);
  if (fprime.is_zero()) {
    throw DerivativeSingularity("problem " + problem.id() + " has f'(alpha) = 0");
  }
  std::vector<Real> values;
  long factorial = 1;
  const int top = std::min(5, problem.max_order());
  for (int k = 2; k <= top; ++k) {
    factorial *= k;
    values.push_back(problem.evaluate(alpha, k) / (fprime * factorial));
  }
  return CoefficientVector(std::move(values), fprime);
}

double coc_estimate(std::span<const Real> errors) {
  // Walk back past exact zeros to the last run of three nonzero magnitudes.
  std::size_t end = errors.size();
  while (end > 0 && errors[end - 1].is_zero()) --end;
  if (end < 3) throw InsufficientData("COC needs three consecutive nonzero errors");
  for (std::size_t i = end - 3; i < end; ++i) {
    if (errors[i].is_zero()) throw InsufficientData("COC needs three consecutive nonzero errors");
  }
  const double l0 = log10_magnitude(errors[end - 3]);
  const double l1 = log10_magnitude(errors[end - 2]);
  const double l2 = log10_magnitude(errors[end - 1]);
  const double den = l1 - l0;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (l2 - l1) / den;
}

Real empirical_error_constant(const Real& e_next, const Real& e_prev, int order) {
  WorkingPrecision guard = WorkingPrecision::from_digits(40);
  return abs(e_next) / pow(abs(e_prev), order);
}

double efficiency_index(int order, int evals) {
  if (order < 2 || evals < 1) {
    throw ContractViolation("efficiency_index needs order >= 2 and evals >= 1");
  }
  return std::pow(static_cast<double>(order), 1.0 / static_cast<double>(evals));
}

}  // namespace roots
