#pragma once

#include <span>
#include <string>
#include <vector>

#include "roots/errors.hpp"
#include "roots/precision.hpp"
#include "roots/problems.hpp"

namespace roots {

/// Normalised Taylor coefficients at a simple root,
/// A_k = f^(k)(alpha) / (k! f'(alpha)), stored for k = 2..highest().
template <class T>
struct BasicCoefficients {
  std::vector<T> values;  // values[i] holds A_{i+2}
  T fprime_alpha{};

  BasicCoefficients() = default;
  BasicCoefficients(std::vector<T> a2_upwards, T fprime = T(1))
      : values(std::move(a2_upwards)), fprime_alpha(std::move(fprime)) {}

  int highest() const noexcept { return static_cast<int>(values.size()) + 1; }

  const T& A(int k) const {
    if (k < 2 || k > highest()) {
      throw UnsupportedOrder("coefficient A_" + std::to_string(k) +
                                 " needs derivative f^(" + std::to_string(k) + ")",
                             k);
    }
    return values[static_cast<std::size_t>(k - 2)];
  }
};

using CoefficientVector = BasicCoefficients<Real>;

/// A_2..A_5 of `problem` at its reference root, evaluated with `digits`
/// working digits. Orders beyond the problem's max_order() are omitted.
CoefficientVector a_coeffs(const Problem& problem, long digits);

namespace detail {

template <class T>
void jabotinsky_terms(int q, int ell, int remaining, int r, const T& product,
                      const BasicCoefficients<T>& coeffs, T& sum) {
  if (remaining == 0) {
    T factorial(1);
    for (int i = 2; i <= q + r; ++i) factorial *= T(i);
    T term = factorial * product;
    if (r % 2 != 0) term = -term;
    sum += term;
    return;
  }
  if (ell > q + 1) return;
  // beta_ell copies of A_ell, each contributing weight ell - 1.
  const int weight = ell - 1;
  T power(1);
  T beta_factorial(1);
  for (int beta = 0; beta * weight <= remaining; ++beta) {
    if (beta > 0) {
      power *= coeffs.A(ell);
      beta_factorial *= T(beta);
    }
    T next = product * power / beta_factorial;
    jabotinsky_terms(q, ell + 1, remaining - beta * weight, r + beta, next, coeffs, sum);
  }
}

}  // namespace detail

/// f'(alpha)^q B_{q+1} by Jabotinsky's partition sum
///
///   1/(q+1)! sum (-1)^r (q+r)! prod_{l=2}^{q+1} A_l^{b_l} / b_l!
///
/// over all b_l >= 0 with sum (l-1) b_l = q, r = sum b_l.
template <class T>
T jabotinsky_b(int q, const BasicCoefficients<T>& coeffs) {
  if (q < 1 || q > 4) throw UnsupportedOrder("jabotinsky_b supports q = 1..4", q);
  T sum(0);
  detail::jabotinsky_terms<T>(q, 2, q, 0, T(1), coeffs, sum);
  T factorial(1);
  for (int i = 2; i <= q + 1; ++i) factorial *= T(i);
  T result = sum / factorial;
  return result;
}

/// Asymptotic constant K of the base method, E = K e^p + O(e^{p+1}):
/// Newton A2, Chebyshev 2A2^2 - A3, Schroder 5A2^3 - 5A2A3 + A4.
template <class T>
T base_error_constant(int p, const BasicCoefficients<T>& c) {
  switch (p) {
    case 2: {
      T k = c.A(2);
      return k;
    }
    case 3: {
      T k = T(2) * c.A(2) * c.A(2) - c.A(3);
      return k;
    }
    case 4: {
      T k = T(5) * c.A(2) * c.A(2) * c.A(2) - T(5) * c.A(2) * c.A(3) + c.A(4);
      return k;
    }
    default:
      throw ContractViolation("base methods have order 2, 3 or 4");
  }
}

/// Predicted asymptotic error of psi_p^{p+q}: e_{n+1} ~ C e_n^{p+q}.
template <class T>
struct BasicErrorModel {
  int p = 0;
  int q = 0;
  T K{};
  /// |(-1)^q B_{q+1} f'^q K| for p > q (a magnitude);
  /// ((-1)^q B_{q+1} f'^q + A2 K) K for p == q (signed).
  T C{};
  int order = 0;
};

using ErrorModel = BasicErrorModel<Real>;

template <class T>
BasicErrorModel<T> predicted_error_constant(int p, int q, const T& K,
                                            const BasicCoefficients<T>& coeffs) {
  if (q < 2 || p < q) {
    throw ContractViolation("predicted_error_constant needs p >= q >= 2, got p = " +
                            std::to_string(p) + ", q = " + std::to_string(q));
  }
  BasicErrorModel<T> model;
  model.p = p;
  model.q = q;
  model.K = K;
  model.order = p + q;
  T lead = jabotinsky_b<T>(q, coeffs);
  if (q % 2 != 0) lead = -lead;
  if (p > q) {
    T c = lead * K;
    if (c < T(0)) c = -c;
    model.C = c;
  } else {
    T c = (lead + coeffs.A(2) * K) * K;
    model.C = c;
  }
  return model;
}

/// Computational order of convergence ln(e_{k+1}/e_k) / ln(e_k/e_{k-1}) for
/// the last three consecutive nonzero error magnitudes. NaN or infinity when
/// a ratio degenerates. Throws InsufficientData for fewer than three.
double coc_estimate(std::span<const Real> errors);

/// |e_next| / |e_prev|^order, evaluated at 40 digits.
Real empirical_error_constant(const Real& e_next, const Real& e_prev, int order);

/// Traub's efficiency index m^{1/r}.
double efficiency_index(int order, int evals);

}  // namespace roots
