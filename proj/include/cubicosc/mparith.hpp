#pragma once

// Configurable-precision real and complex arithmetic over MPFR.
//
// Every Real is created at the calling thread's working precision, which is
// set by PrecisionScope / with_precision. Copies are rounded to the working
// precision of the thread that makes them, so a computation run inside a
// scope is deterministic for fixed inputs and digits.

#include <mpfr.h>

#include <complex>
#include <string>
#include <string_view>
#include <utility>

#include "cubicosc/errors.hpp"

namespace cubicosc::mp {

/// Working precision in decimal significant digits.
struct Precision {
  int digits = 64;
  int guard = 4;

  void validate() const;
  /// 10^(-digits + guard): the floor below which results are noise.
  [[nodiscard]] double tolerance_exponent() const { return -(digits - guard); }
};

mpfr_prec_t bits_for_digits(int digits);
int working_digits();
mpfr_prec_t working_bits();

/// Sets the thread's working precision for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_bits_;
  int saved_digits_;
};

template <class F>
auto with_precision(int digits, F&& computation) {
  if (digits < 16) throw DomainError("precision must be at least 16 digits");
  PrecisionScope scope(digits);
  return std::forward<F>(computation)();
}

class Real {
 public:
  Real() {
    mpfr_init2(v_, working_bits());
    mpfr_set_zero(v_, 1);
  }
  Real(int v) : Real(static_cast<long>(v)) {}
  Real(long v) {
    mpfr_init2(v_, working_bits());
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  explicit Real(double v) {
    mpfr_init2(v_, working_bits());
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  /// Parses a decimal literal exactly (up to rounding at working precision).
  explicit Real(std::string_view decimal);

  Real(const Real& o) {
    mpfr_init2(v_, working_bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      prepare();
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  Real operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  [[nodiscard]] long exponent2() const;
  /// Significant-digit rendering in %g style.
  [[nodiscard]] std::string str(int digits) const;

 private:
  void prepare() {
    if (v_[0]._mpfr_d == nullptr) {
      mpfr_init2(v_, working_bits());
    } else if (mpfr_get_prec(v_) != working_bits()) {
      mpfr_set_prec(v_, working_bits());
    }
  }

  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);
inline Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
inline Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator+(int a, const Real& b) { return static_cast<long>(a) + b; }
inline Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
inline Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
inline Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& p);
Real pow(const Real& x, long p);
Real floor(const Real& x);
Real hypot(const Real& x, const Real& y);
Real pi();
/// 10^e at working precision.
Real pow10(long e);
inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(int r) : re(r) {}
  Complex(long r) : re(r) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
  Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }
  Complex& operator*=(long o) { re *= o; im *= o; return *this; }

  /// this += a * b without temporaries.
  void add_product(const Complex& a, const Complex& b);
  void sub_product(const Complex& a, const Complex& b);

  Complex operator-() const { return {-re, -im}; }
  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long b);
Complex operator*(long a, const Complex& b);
Complex operator/(const Complex& a, long b);
inline Complex operator*(const Complex& a, int b) { return a * static_cast<long>(b); }
inline Complex operator*(int a, const Complex& b) { return static_cast<long>(a) * b; }
inline Complex operator/(const Complex& a, int b) { return a / static_cast<long>(b); }
bool operator==(const Complex& a, const Complex& b);

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);   // principal, (-pi, pi]
Complex polar(const Real& modulus, const Real& argument);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Real& p);  // principal branch
Complex pow(const Complex& z, long p);
Complex from_std(std::complex<double> z);
/// Unit imaginary.
Complex imag_unit();

/// A complex number in polar form whose argument is kept as given, not
/// reduced mod 2 pi. Used wherever the branch of a power is part of the data.
struct BranchedComplex {
  Real modulus;
  Real argument;

  [[nodiscard]] Complex to_complex() const { return polar(modulus, argument); }
};

/// base^exponent = modulus^exponent * e^{i exponent argument}. Requires
/// |argument| < pi; throws BranchError otherwise.
Complex pow_branched(const BranchedComplex& base, const Real& exponent);

/// Gamma function for positive real arguments. Argument-shift recursion onto
/// a Stirling series whose Bernoulli coefficients are generated exactly.
Real gamma_real(const Real& x);

}  // namespace cubicosc::mp
