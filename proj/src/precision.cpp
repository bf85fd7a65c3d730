#include "roots/precision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <string>

namespace roots {
namespace {

thread_local mpfr_prec_t g_working_bits = 0;

mpfr_prec_t working_bits() noexcept {
  if (g_working_bits == 0) g_working_bits = digits_to_bits(32);
  return g_working_bits;
}

}  // namespace

mpfr_prec_t digits_to_bits(long digits) {
  if (digits < 1) digits = 1;
  const double bits = std::ceil(static_cast<double>(digits) * std::log2(10.0));
  return static_cast<mpfr_prec_t>(bits) + 8;
}

long bits_to_digits(mpfr_prec_t bits) {
  return static_cast<long>(std::floor(static_cast<double>(bits) * std::log10(2.0)));
}

WorkingPrecision::WorkingPrecision(mpfr_prec_t bits) : saved_(working_bits()) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) {
    throw ContractViolation("working precision out of range: " + std::to_string(bits));
  }
  g_working_bits = bits;
}

WorkingPrecision::~WorkingPrecision() { g_working_bits = saved_; }

mpfr_prec_t WorkingPrecision::bits() noexcept { return working_bits(); }

bool arithmetic_is_thread_safe() noexcept { return mpfr_buildopt_tls_p() != 0; }

// --- Real -------------------------------------------------------------------

Real::Real() {
  mpfr_init2(value_, working_bits());
  mpfr_set_zero(value_, 1);
}

Real::Real(int v) : Real(static_cast<long>(v)) {}

Real::Real(long v) {
  mpfr_init2(value_, working_bits());
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(double v) {
  mpfr_init2(value_, working_bits());
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(std::string_view decimal) {
  mpfr_init2(value_, working_bits());
  const std::string text(decimal);
  char* end = nullptr;
  mpfr_strtofr(value_, text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end != text.c_str() + text.size()) {
    mpfr_clear(value_);
    throw ContractViolation("not a decimal number: '" + text + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision_bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision_bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::rounded(mpfr_prec_t bits) const {
  WorkingPrecision guard(bits);
  Real r;
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int significant) const {
  if (significant < 1) significant = 1;
  char* raw = nullptr;
  const std::string fmt = "%." + std::to_string(significant - 1) + "Re";
  if (mpfr_asprintf(&raw, fmt.c_str(), value_) < 0) return "nan";
  std::unique_ptr<char, void (*)(char*)> owned(raw, mpfr_free_str);
  return std::string(owned.get());
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator-(const Real& a) {
  Real r;
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r;
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r;
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b) {
  Real r;
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long b) {
  Real r;
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r;
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r;
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

Real operator-(long a, const Real& b) {
  Real r;
  mpfr_si_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

Real operator/(long a, const Real& b) {
  Real r;
  mpfr_si_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

Real abs(const Real& x) {
  Real r;
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r;
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r;
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r;
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r;
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real cos(const Real& x) {
  Real r;
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

double log10_magnitude(const Real& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  if (!x.is_finite()) return std::numeric_limits<double>::quiet_NaN();
  // Correctly rounded to 53 bits, so exact decimal powers come out integral.
  Real magnitude(x);
  mpfr_abs(magnitude.get(), magnitude.get(), MPFR_RNDN);
  WorkingPrecision guard(kDoubleBits);
  Real out;
  mpfr_log10(out.get(), magnitude.get(), MPFR_RNDN);
  return out.to_double();
}

// --- PrecisionPolicy ----------------------------------------------------------

void PrecisionPolicy::validate() const {
  if (rho < 1) throw ContractViolation("rho must be positive");
  if (eta < 1) throw ContractViolation("eta must be positive");
  if (floor_digits < 16) throw ContractViolation("floor_digits must be at least 16");
  if (cap_digits <= eta) throw ContractViolation("cap_digits must exceed eta");
  if (cap_digits < floor_digits) throw ContractViolation("cap_digits below floor_digits");
}

PrecisionPolicy default_policy(long rho, long eta) {
  PrecisionPolicy policy;
  policy.rho = rho;
  policy.eta = eta;
  if (const char* cap = std::getenv("ROOTS_DIGITS_CAP"); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || v <= 0) {
      throw ContractViolation(std::string("ROOTS_DIGITS_CAP is not a positive integer: ") + cap);
    }
    policy.cap_digits = v;
  } else {
    policy.cap_digits = std::max(policy.cap_digits, rho * (eta + 2));
  }
  policy.validate();
  return policy;
}

long required_digits_from_log10(const PrecisionPolicy& policy, double log10_err) {
  if (!std::isfinite(log10_err)) {
    throw DegenerateInput("error magnitude must be positive and finite");
  }
  const double raw = static_cast<double>(policy.rho) * std::floor(-log10_err + 2.0);
  long digits = raw > static_cast<double>(policy.cap_digits) ? policy.cap_digits
                                                              : static_cast<long>(raw);
  if (digits < policy.floor_digits) digits = policy.floor_digits;
  if (digits > policy.cap_digits) digits = policy.cap_digits;
  return digits;
}

long required_digits(const PrecisionPolicy& policy, const Real& err_mag) {
  if (err_mag.is_zero() || !err_mag.is_finite()) {
    throw DegenerateInput("error magnitude must be positive and finite");
  }
  return required_digits_from_log10(policy, log10_magnitude(err_mag));
}

}  // namespace roots
