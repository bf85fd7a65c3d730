#pragma once

#include <string>

#include "roots/errors.hpp"
#include "roots/precision.hpp"

namespace roots {

/// Derivatives of the inverse function g = f^-1 at y = f(x), expressed
/// through the derivatives of f at x.
template <class T>
struct BasicInverseJet {
  T g1{};  // g'(y)   = 1/f'
  T g2{};  // g''(y)  = -f''/f'^3
  T g3{};  // g'''(y) = (3 f''^2 - f' f''')/f'^5
  int order = 0;

  const T& operator[](int k) const {
    if (k > order) throw UnsupportedOrder("inverse jet holds order " + std::to_string(order), k);
    switch (k) {
      case 1: return g1;
      case 2: return g2;
      case 3: return g3;
      default: throw UnsupportedOrder("inverse jet order " + std::to_string(k), k);
    }
  }
};

/// Faa di Bruno inversion for orders 1..3. Lower orders ignore unused inputs.
template <class T>
BasicInverseJet<T> basic_inverse_jet(const T& f1, const T& f2, const T& f3, int order) {
  if (order < 1 || order > 3) {
    throw UnsupportedOrder("inverse jet supports orders 1..3, got " + std::to_string(order), order);
  }
  if (f1 == T(0)) throw DerivativeSingularity("f'(x) = 0: inverse function derivative undefined");

  BasicInverseJet<T> jet;
  jet.order = order;
  jet.g1 = T(1) / f1;
  if (order >= 2) {
    const T f1_cubed = f1 * f1 * f1;
    jet.g2 = -f2 / f1_cubed;
    if (order >= 3) {
      const T f1_fourth = f1_cubed * f1;
      jet.g3 = T(3) * f2 * f2 / (f1_fourth * f1) - f3 / f1_fourth;
    }
  }
  return jet;
}

using InverseJet = BasicInverseJet<Real>;

inline InverseJet inverse_jet(const Real& f1, const Real& f2, const Real& f3, int order) {
  return basic_inverse_jet<Real>(f1, f2, f3, order);
}

}  // namespace roots
