#include "cubicosc/problem.hpp"

#include <charconv>
#include <cmath>

namespace cubicosc {

TruncationPolicy TruncationPolicy::defaults(const mp::Precision& precision) {
  TruncationPolicy p;
  p.term_tolerance_exponent = -precision.digits;
  return p;
}

void TruncationPolicy::validate(const mp::Precision& precision) const {
  if (frobenius_max_terms <= 0 || thome_max_terms <= 0 || eta_inner_max <= 0) {
    throw DomainError("truncation limits must be positive");
  }
  if (extraction_n_min < 10 || extraction_n_max < extraction_n_min) {
    throw DomainError("extraction window must satisfy 10 <= n_min <= n_max");
  }
  if (term_tolerance_exponent > -precision.digits / 2) {
    throw DomainError("term tolerance must not exceed 10^(-digits/2)");
  }
}

std::string decimal_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ProblemSpec ProblemSpec::from_polar(std::string_view kappa, std::string_view lambda_modulus,
                                    std::string_view lambda_arg_over_pi, mp::Precision precision) {
  ProblemSpec s;
  s.kappa_ = std::string(kappa);
  s.modulus_ = std::string(lambda_modulus);
  s.arg_over_pi_ = std::string(lambda_arg_over_pi);
  s.precision = precision;
  s.truncation = TruncationPolicy::defaults(precision);
  s.validate();
  return s;
}

ProblemSpec ProblemSpec::from_polar(double kappa, double lambda_modulus, double lambda_arg_over_pi,
                                    mp::Precision precision) {
  return from_polar(decimal_text(kappa), decimal_text(lambda_modulus), decimal_text(lambda_arg_over_pi),
                    precision);
}

void ProblemSpec::validate() const {
  precision.validate();
  truncation.validate(precision);
  mp::PrecisionScope scope(precision.digits);
  const Real k(kappa_);
  const Real m(modulus_);
  const Real a(arg_over_pi_);
  if (!k.is_finite()) throw DomainError("kappa must be finite");
  if (!(m.sign() > 0) || !m.is_finite()) throw DomainError("lambda must be nonzero");
  if (a.sign() < 0 || a > Real("0.5")) {
    throw DomainError("arg lambda must lie in [0, pi/2]; use reflect_sector for other quadrants");
  }
}

Real ProblemSpec::kappa() const { return Real(kappa_); }
Real ProblemSpec::lambda_modulus() const { return Real(modulus_); }
Real ProblemSpec::lambda_arg() const { return Real(arg_over_pi_) * mp::pi(); }

Complex ProblemSpec::lambda() const {
  const Real m(modulus_);
  const Real a(arg_over_pi_);
  // Keep the axis cases exact.
  if (a.is_zero()) return Complex(m);
  if (a == Real("0.5")) return Complex(Real(0), m);
  return mp::polar(m, a * mp::pi());
}

double ProblemSpec::kappa_value() const { return std::stod(kappa_); }
double ProblemSpec::lambda_modulus_value() const { return std::stod(modulus_); }
double ProblemSpec::lambda_arg_over_pi_value() const { return std::stod(arg_over_pi_); }

bool ProblemSpec::on_stokes_ray() const {
  mp::PrecisionScope scope(precision.digits);
  return mp::abs(lambda_arg()) < Tolerances::identity(precision);
}

ProblemSpec ProblemSpec::with_lambda_arg(std::string_view arg_over_pi) const {
  ProblemSpec s = *this;
  s.arg_over_pi_ = std::string(arg_over_pi);
  s.validate();
  return s;
}

ProblemSpec ProblemSpec::with_precision(mp::Precision p) const {
  ProblemSpec s = *this;
  s.precision = p;
  s.truncation = TruncationPolicy::defaults(p);
  s.validate();
  return s;
}

Real Tolerances::identity(const mp::Precision& p) { return mp::pow10(-(p.digits / 2)); }
Real Tolerances::plateau(const mp::Precision& p) { return mp::pow10(-(p.digits / 3)); }
Real Tolerances::noise(const mp::Precision& p) { return mp::pow10(-(p.digits - p.guard)); }

}  // namespace cubicosc
