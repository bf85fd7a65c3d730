#include "roots/methods.hpp"

#include <cmath>

namespace roots {

std::string MethodSpec::notation() const {
  return "psi_" + std::to_string(p) + "^" + std::to_string(order);
}

MethodSpec make_method(int p, int q) {
  if (p < 2 || p > 4) throw ContractViolation("base order p must be 2, 3 or 4");
  if (q != 0 && (q < 2 || q > p)) {
    throw ContractViolation("boost order q must be 0 or satisfy 2 <= q <= p");
  }
  MethodSpec spec;
  spec.p = p;
  spec.q = q;
  spec.order = p + q;
  spec.evals = q == 0 ? p : p + 1;
  spec.name = "psi" + std::to_string(p) + "_" + std::to_string(spec.order);
  return spec;
}

const std::vector<MethodSpec>& all_methods() {
  static const std::vector<MethodSpec> methods = {
      make_method(2, 0), make_method(2, 2), make_method(3, 0),
      make_method(3, 2), make_method(3, 3), make_method(4, 0),
      make_method(4, 2), make_method(4, 3), make_method(4, 4),
  };
  return methods;
}

const MethodSpec& method_by_name(std::string_view name) {
  for (const MethodSpec& m : all_methods()) {
    if (m.name == name) return m;
  }
  throw ContractViolation("unknown method '" + std::string(name) +
                          "' (expected psi2_2, psi2_4, psi3_3, psi3_5, psi3_6, psi4_4, "
                          "psi4_6, psi4_7 or psi4_8)");
}

StepResult base_step(const MethodSpec& spec, Evaluator& f, const Real& x) {
  StepIntermediates im;
  im.x = x;
  im.y = f(x, 0);
  im.f1 = f(x, 1);
  im.derivative_order = 1;
  if (spec.p >= 3) {
    im.f2 = f(x, 2);
    im.derivative_order = 2;
  }
  if (spec.p >= 4) {
    im.f3 = f(x, 3);
    im.derivative_order = 3;
  }
  if (im.f1.is_zero()) {
    throw DerivativeSingularity("f'(x) = 0 at x = " + x.to_string(20));
  }

  im.u = im.y / im.f1;
  Real correction(1L);
  if (spec.p >= 3) {
    im.L = im.f2 * im.u / im.f1;
    correction += im.L / 2;
  }
  if (spec.p >= 4) {
    const Real ratio = im.f2 / im.f1;
    im.M = im.f3 / im.f1 - 3 * (ratio * ratio);
    correction -= im.M * (im.u * im.u) / 6;
  }
  im.z = x - correction * im.u;

  Real next = im.z;
  return {std::move(next), std::move(im)};
}

Real gq_prime(int q, const InverseJet& jet, const Real& x, const Real& z, const Real& y,
              const Real& w) {
  if (q < 2 || q > 4) throw UnsupportedOrder("g'_q needs 2 <= q <= 4", q);
  if (jet.order < q - 1) {
    throw UnsupportedOrder("inverse jet too short for q = " + std::to_string(q), q - 1);
  }
  if (w == y) throw DegenerateStep("f(z) == f(x): divided difference undefined");

  const Real h = w - y;
  Real result = q * ((z - x) / h);
  Real power(1L);  // h^(k-1)
  long factorial = 1;
  for (int k = 1; k <= q - 1; ++k) {
    factorial *= k;
    result += Real(static_cast<long>(k - q)) / factorial * jet[k] * power;
    power *= h;
  }
  return result;
}

StepResult composed_step(const MethodSpec& spec, Evaluator& f, const Real& x) {
  if (spec.q < 2 || spec.q > spec.p) {
    throw ContractViolation("composed_step needs p >= q >= 2, got " + spec.name);
  }
  StepResult base = base_step(spec, f, x);
  StepIntermediates& im = base.im;
  im.w = f(im.z, 0);
  im.has_w = true;

  if (im.w.is_zero()) {
    im.short_circuit = true;
    return base;
  }
  if (im.w == im.y) {
    // Only reachable once x already sits at the working-precision floor.
    if (log10_magnitude(im.y) < -static_cast<double>(WorkingPrecision::digits())) {
      im.short_circuit = true;
      return base;
    }
    throw DegenerateStep("f(z) == f(x) = " + im.y.to_string(10) + " at x = " + x.to_string(20));
  }

  const InverseJet jet = inverse_jet(im.f1, im.f2, im.f3, spec.q - 1);
  im.dd = (im.z - im.x) / (im.w - im.y);
  im.gq = gq_prime(spec.q, jet, im.x, im.z, im.y, im.w);
  im.has_gq = true;
  base.next = im.z - im.w * im.gq;
  return base;
}

StepResult step(const MethodSpec& spec, Evaluator& f, const Real& x) {
  return spec.composed() ? composed_step(spec, f, x) : base_step(spec, f, x);
}

Real closed_form_step(const MethodSpec& spec, Evaluator& f, const Real& x) {
  if (!spec.composed() || spec.p != spec.q) {
    throw ContractViolation("closed forms exist for psi2_4, psi3_6 and psi4_8 only");
  }
  const Real fx = f(x, 0);
  const Real d1 = f(x, 1);
  if (d1.is_zero()) throw DerivativeSingularity("f'(x) = 0 at x = " + x.to_string(20));
  const Real u = fx / d1;

  if (spec.p == 2) {
    const Real z = x - u;
    const Real fz = f(z, 0);
    if (fz.is_zero()) return z;
    return z - (fx + fz) / (fx - fz) * (fz / d1);
  }

  const Real d2 = f(x, 2);
  const Real L = d2 / d1 * u;
  const Real d1_cubed = d1 * d1 * d1;

  if (spec.p == 3) {
    const Real z = x - (1 + L / 2) * u;
    const Real fz = f(z, 0);
    if (fz.is_zero()) return z;
    const Real g3 = 3 * (z - x) / (fz - fx) - 2 / d1 + d2 / (2 * d1_cubed) * (fz - fx);
    return z - fz * g3;
  }

  const Real d3 = f(x, 3);
  const Real M = d3 / d1 - 3 * (d2 / d1) * (d2 / d1);
  const Real z = x - (1 + L / 2 - M * u * u / 6) * u;
  const Real fz = f(z, 0);
  if (fz.is_zero()) return z;
  const Real diff = fz - fx;
  const Real d1_fourth = d1_cubed * d1;
  const Real g4 = 4 * (z - x) / diff - 3 / d1 + d2 / d1_cubed * diff +
                  (d3 / d1_fourth - 3 * d2 * d2 / (d1_fourth * d1)) * diff * diff / 6;
  return z - fz * g4;
}

}  // namespace roots
