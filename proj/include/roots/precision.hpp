#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "roots/errors.hpp"

namespace roots {

/// Arbitrary-precision binary floating-point value backed by MPFR.
///
/// Results of arithmetic are rounded to the calling thread's working
/// precision (see WorkingPrecision). Copies are exact: a copy keeps the
/// precision of its source.
class Real {
 public:
  Real();
  Real(int v);
  Real(long v);
  Real(double v);
  /// Parses a decimal literal ("2.94", "1e-10", "-3/7" is not accepted).
  explicit Real(std::string_view decimal);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  mpfr_prec_t precision_bits() const noexcept { return mpfr_get_prec(value_); }
  /// Copy rounded to `bits` of mantissa.
  Real rounded(mpfr_prec_t bits) const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific notation with `significant` digits, e.g. "2.893289e+00".
  std::string to_string(int significant = 30) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) noexcept {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long n);
/// Decimal exponent log10|x| as a double; -inf for zero.
double log10_magnitude(const Real& x);

constexpr mpfr_prec_t kDoubleBits = 53;

/// Mantissa bits for a decimal digit count: ceil(digits * log2(10)) + 8 guard bits.
mpfr_prec_t digits_to_bits(long digits);
/// Decimal digits carried by `bits` of mantissa (floor(bits * log10 2)).
long bits_to_digits(mpfr_prec_t bits);

/// Scoped override of the calling thread's working precision.
///
/// Every Real produced by arithmetic on this thread is rounded to the
/// innermost active WorkingPrecision. Guards nest and restore on exit.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(mpfr_prec_t bits);
  static WorkingPrecision from_digits(long digits) {
    return WorkingPrecision(digits_to_bits(digits));
  }
  ~WorkingPrecision();

  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

  static mpfr_prec_t bits() noexcept;
  static long digits() noexcept { return bits_to_digits(bits()); }

 private:
  mpfr_prec_t saved_;
};

/// True when the MPFR build keeps its caches and flags thread-local, so
/// independent solver runs may execute concurrently.
bool arithmetic_is_thread_safe() noexcept;

/// Adaptive mantissa-length schedule Digits = rho * floor(-log10|e_k| + 2).
struct PrecisionPolicy {
  long rho = 2;
  long eta = 3000;
  long floor_digits = 32;
  long cap_digits = 16000;

  /// Throws ContractViolation unless floor_digits >= 16, cap_digits > eta
  /// and rho, eta are positive.
  void validate() const;
};

/// Default policy for a method of order `rho`. cap_digits is raised to
/// rho * (eta + 2) when that is larger, so the cap never clamps a step taken
/// from an iterate that has not yet reached 10^-eta. ROOTS_DIGITS_CAP in the
/// environment overrides cap_digits.
PrecisionPolicy default_policy(long rho, long eta = 3000);

/// Working digits for the step that follows an iterate with error `err_mag`.
long required_digits(const PrecisionPolicy& policy, const Real& err_mag);
/// Same, given log10|e_k| directly.
long required_digits_from_log10(const PrecisionPolicy& policy, double log10_err);

}  // namespace roots
