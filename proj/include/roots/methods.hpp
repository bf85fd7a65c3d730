#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roots/inverse_derivatives.hpp"
#include "roots/precision.hpp"
#include "roots/problems.hpp"

namespace roots {

/// Identifies an iteration psi_p^{p+q}: a base method of order p (Newton,
/// Chebyshev, Schroder for p = 2, 3, 4), optionally followed by a modified
/// Newton step of boost order q (q = 0 means the bare base method).
struct MethodSpec {
  std::string name;  // CLI name, e.g. "psi3_6"
  int p = 2;
  int q = 0;
  int evals = 2;  // function/derivative evaluations per step
  int order = 2;  // theoretical order of convergence

  bool composed() const noexcept { return q != 0; }
  /// Display notation, e.g. "psi_3^6".
  std::string notation() const;
};

/// Builds psi_p^{p+q}. Throws ContractViolation unless p in {2,3,4} and
/// q == 0 or 2 <= q <= p.
MethodSpec make_method(int p, int q);

/// The nine methods in table order: psi2_2, psi2_4, psi3_3, psi3_5, psi3_6,
/// psi4_4, psi4_6, psi4_7, psi4_8.
const std::vector<MethodSpec>& all_methods();

/// Lookup by CLI name. Throws ContractViolation when unknown.
const MethodSpec& method_by_name(std::string_view name);

/// Quantities computed inside one iteration. Fields a method does not use
/// stay zero; `derivative_order` tells how many derivatives of f at x were taken.
struct StepIntermediates {
  Real x;
  Real y;   // f(x)
  Real f1;  // f'(x)
  Real f2;  // f''(x)
  Real f3;  // f'''(x)
  Real u;   // f/f'
  Real L;   // f'' u / f'
  Real M;   // f'''/f' - 3 (f''/f')^2
  Real z;   // base-method output
  Real w;   // f(z)
  Real dd;  // [y, w]_g = (z - x)/(w - y)
  Real gq;  // approximation of g'(w)
  int derivative_order = 0;
  bool has_w = false;
  bool has_gq = false;
  /// The second step was skipped because f(z) = 0 or f(z) = f(x) at a converged iterate.
  bool short_circuit = false;
};

struct StepResult {
  Real next;
  StepIntermediates im;
};

/// One step of the base method of order spec.p (Newton, Chebyshev or
/// Schroder). Evaluates f, f', ... f^(p-1) at x exactly once each.
/// Throws DerivativeSingularity when f'(x) = 0.
StepResult base_step(const MethodSpec& spec, Evaluator& f, const Real& x);

/// Order-q approximation of the inverse derivative g'(w):
///
///   q (z - x)/(w - y) + sum_{k=1}^{q-1} (k - q)/k! g^(k)(y) (w - y)^(k-1)
///
/// using (z - x)/(w - y) = (g(w) - g(y))/(w - y). Throws DegenerateStep when w == y.
Real gq_prime(int q, const InverseJet& jet, const Real& x, const Real& z, const Real& y,
              const Real& w);

/// Base step followed by x_next = z - f(z) g'_q. Adds exactly one evaluation
/// (f at z) to the base step. If f(z) == 0 the iterate z is returned.
StepResult composed_step(const MethodSpec& spec, Evaluator& f, const Real& x);

/// Dispatches to base_step or composed_step according to spec.q.
StepResult step(const MethodSpec& spec, Evaluator& f, const Real& x);

/// Hand-expanded formulas for psi_2^4, psi_3^6 and psi_4^8 written directly
/// in terms of f and its derivatives. Used to cross-check the generic path.
/// Throws ContractViolation for any other method.
Real closed_form_step(const MethodSpec& spec, Evaluator& f, const Real& x);

}  // namespace roots
