#include "cubicosc/mparith.hpp"

#include <cmath>
#include <string>

namespace cubicosc::mp {

namespace {

thread_local int tl_digits = 16;
thread_local mpfr_prec_t tl_bits = bits_for_digits(16);

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

}  // namespace

void Precision::validate() const {
  if (digits < 16) throw DomainError("precision must be at least 16 digits, got " + std::to_string(digits));
  if (guard < 4) throw DomainError("guard must be at least 4 digits");
  if (guard >= digits) throw DomainError("guard must be smaller than the working digits");
}

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 4;
}

int working_digits() { return tl_digits; }
mpfr_prec_t working_bits() { return tl_bits; }

PrecisionScope::PrecisionScope(int digits) : saved_bits_(tl_bits), saved_digits_(tl_digits) {
  if (digits < 16) throw DomainError("precision must be at least 16 digits");
  tl_digits = digits;
  tl_bits = bits_for_digits(digits);
}

PrecisionScope::~PrecisionScope() {
  tl_bits = saved_bits_;
  tl_digits = saved_digits_;
}

Real::Real(std::string_view decimal) {
  mpfr_init2(v_, working_bits());
  std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, kRnd) != 0) {
    mpfr_clear(v_);
    v_[0]._mpfr_d = nullptr;
    throw DomainError("not a decimal number: '" + s + "'");
  }
}

long Real::exponent2() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

std::string Real::str(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.raw(), a.raw(), b.raw(), kRnd); return r; }
Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.raw(), a.raw(), b.raw(), kRnd); return r; }
Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.raw(), a.raw(), b.raw(), kRnd); return r; }
Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.raw(), a.raw(), b.raw(), kRnd); return r; }
Real operator+(const Real& a, long b) { Real r; mpfr_add_si(r.raw(), a.raw(), b, kRnd); return r; }
Real operator-(const Real& a, long b) { Real r; mpfr_sub_si(r.raw(), a.raw(), b, kRnd); return r; }
Real operator*(const Real& a, long b) { Real r; mpfr_mul_si(r.raw(), a.raw(), b, kRnd); return r; }
Real operator/(const Real& a, long b) { Real r; mpfr_div_si(r.raw(), a.raw(), b, kRnd); return r; }
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) { Real r; mpfr_si_sub(r.raw(), a, b.raw(), kRnd); return r; }
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) { Real r; mpfr_si_div(r.raw(), a, b.raw(), kRnd); return r; }

Real abs(const Real& x) { Real r; mpfr_abs(r.raw(), x.raw(), kRnd); return r; }
Real sqrt(const Real& x) { Real r; mpfr_sqrt(r.raw(), x.raw(), kRnd); return r; }
Real exp(const Real& x) { Real r; mpfr_exp(r.raw(), x.raw(), kRnd); return r; }
Real log(const Real& x) { Real r; mpfr_log(r.raw(), x.raw(), kRnd); return r; }
Real sin(const Real& x) { Real r; mpfr_sin(r.raw(), x.raw(), kRnd); return r; }
Real cos(const Real& x) { Real r; mpfr_cos(r.raw(), x.raw(), kRnd); return r; }
Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd); return r; }
Real pow(const Real& x, const Real& p) { Real r; mpfr_pow(r.raw(), x.raw(), p.raw(), kRnd); return r; }
Real pow(const Real& x, long p) { Real r; mpfr_pow_si(r.raw(), x.raw(), p, kRnd); return r; }
Real floor(const Real& x) { Real r; mpfr_floor(r.raw(), x.raw()); return r; }
Real hypot(const Real& x, const Real& y) { Real r; mpfr_hypot(r.raw(), x.raw(), y.raw(), kRnd); return r; }
Real pi() { Real r; mpfr_const_pi(r.raw(), kRnd); return r; }
Real pow10(long e) {
  Real r;
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), kRnd);
  if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), kRnd);
  return r;
}

// ---------------------------------------------------------------------------

Complex& Complex::operator*=(const Complex& o) {
  Real r = im * o.im;
  mpfr_fms(r.raw(), re.raw(), o.re.raw(), r.raw(), kRnd);
  Real i = re * o.im;
  mpfr_fma(i.raw(), im.raw(), o.re.raw(), i.raw(), kRnd);
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

void Complex::add_product(const Complex& a, const Complex& b) {
  thread_local Real t;
  if (mpfr_get_prec(t.raw()) != working_bits()) mpfr_set_prec(t.raw(), working_bits());
  // re += a.re b.re - a.im b.im
  mpfr_mul(t.raw(), a.im.raw(), b.im.raw(), kRnd);
  mpfr_sub(re.raw(), re.raw(), t.raw(), kRnd);
  mpfr_fma(re.raw(), a.re.raw(), b.re.raw(), re.raw(), kRnd);
  // im += a.re b.im + a.im b.re
  mpfr_fma(im.raw(), a.re.raw(), b.im.raw(), im.raw(), kRnd);
  mpfr_fma(im.raw(), a.im.raw(), b.re.raw(), im.raw(), kRnd);
}

void Complex::sub_product(const Complex& a, const Complex& b) {
  thread_local Real t;
  if (mpfr_get_prec(t.raw()) != working_bits()) mpfr_set_prec(t.raw(), working_bits());
  mpfr_mul(t.raw(), a.im.raw(), b.im.raw(), kRnd);
  mpfr_add(re.raw(), re.raw(), t.raw(), kRnd);
  mpfr_neg(t.raw(), a.re.raw(), kRnd);
  mpfr_fma(re.raw(), t.raw(), b.re.raw(), re.raw(), kRnd);
  mpfr_fma(im.raw(), t.raw(), b.im.raw(), im.raw(), kRnd);
  mpfr_neg(t.raw(), a.im.raw(), kRnd);
  mpfr_fma(im.raw(), t.raw(), b.re.raw(), im.raw(), kRnd);
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  Complex r = a;
  r *= b;
  return r;
}
Complex operator/(const Complex& a, const Complex& b) {
  // Smith's algorithm keeps the intermediate magnitudes bounded.
  if (abs(b.re) >= abs(b.im)) {
    Real ratio = b.im / b.re;
    Real den = b.re + b.im * ratio;
    return {(a.re + a.im * ratio) / den, (a.im - a.re * ratio) / den};
  }
  Real ratio = b.re / b.im;
  Real den = b.re * ratio + b.im;
  return {(a.re * ratio + a.im) / den, (a.im * ratio - a.re) / den};
}
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return {b.re * a, b.im * a}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
Complex operator*(long a, const Complex& b) { return {b.re * a, b.im * a}; }
Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }
bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real norm(const Complex& z) {
  Real r = z.re * z.re;
  mpfr_fma(r.raw(), z.im.raw(), z.im.raw(), r.raw(), kRnd);
  return r;
}
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex polar(const Real& modulus, const Real& argument) {
  Real s, c;
  mpfr_sin_cos(s.raw(), c.raw(), argument.raw(), kRnd);
  return {modulus * c, modulus * s};
}
Complex exp(const Complex& z) { return polar(exp(z.re), z.im); }
Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }
Complex sqrt(const Complex& z) {
  if (z.is_zero()) return {};
  Real m = sqrt(abs(z));
  return polar(m, arg(z) / 2);
}
Complex pow(const Complex& z, const Real& p) {
  if (z.is_zero()) {
    if (p.sign() > 0) return {};
    throw DomainError("zero raised to a non-positive power");
  }
  return polar(pow(abs(z), p), arg(z) * p);
}
Complex pow(const Complex& z, long p) {
  Complex result(1);
  Complex base = z;
  unsigned long e = static_cast<unsigned long>(p < 0 ? -p : p);
  while (e) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return p < 0 ? Complex(1) / result : result;
}
Complex from_std(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }
Complex imag_unit() { return {Real(0), Real(1)}; }

Complex pow_branched(const BranchedComplex& base, const Real& exponent) {
  if (!(abs(base.argument) < pi())) {
    throw BranchError("power base argument " + base.argument.str(8) + " is outside (-pi, pi)");
  }
  if (base.modulus.is_zero()) {
    if (exponent.sign() > 0) return {};
    throw DomainError("zero raised to a non-positive power");
  }
  return polar(pow(base.modulus, exponent), base.argument * exponent);
}

}  // namespace cubicosc::mp
