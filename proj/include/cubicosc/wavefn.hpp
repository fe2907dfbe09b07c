#pragma once

// Normalized eigenfunctions. Near the origin psi is the entire series
// sum d_n x^n; for large |x| it is the recessive Thome solution,
//
//   psi(x) ~ e^{+-3i pi/8} exp(B(x)) |x|^{-3/4} sum a_{m,3} |x|^{-m/2}.

#include <vector>

#include "cubicosc/connection.hpp"

namespace cubicosc::wavefn {

struct Mixing {
  Complex A1;
  Complex A2;
  /// |A1 T13^- - A2 T23^- - e^{-3i pi/8}|
  Real left_residual;
  /// |A1 T13^+ + A2 T23^+ - e^{3i pi/8}|
  Real right_residual;
};

/// A1 = e^{3i pi/8} alpha4^+ T24^+, A2 = -e^{3i pi/8} alpha4^+ T14^+. Throws
/// ConsistencyError if the left-side condition misses by more than
/// `tolerance` (E is then not an eigenvalue); tolerance <= 0 selects
/// 10^(-digits/3).
Mixing mixing_coefficients(const connection::ConnectionMatrix& T, const ProblemSpec& spec,
                           const Real& tolerance = Real(0));
Mixing mixing_coefficients(const ProblemSpec& spec, const Complex& E, const Real& tolerance = Real(0));

/// d_0 .. d_{n_max}: d_0 = A1, d_1 = A2,
/// 4n(n-1) d_n = -4E d_{n-2} + kappa d_{n-4} - 4 lambda d_{n-5}.
std::vector<Complex> psi_series(const ProblemSpec& spec, const Complex& E, const Complex& A1, const Complex& A2,
                                int n_max);

/// The exponent B^{(+)} (side > 0, x > 0) or B^{(-)} (side < 0, x < 0) in the
/// closed form with principal lambda^{1/2}.
Complex asymptotic_exponent(const ProblemSpec& spec, int side, const Real& x);

struct SideData {
  series::ThomeSolution thome;  // sigma = side, j = 3
  Real x_switch;                // |x| handover radius
  Real handover_mismatch;       // relative, at x_switch
};

class Eigenstate {
 public:
  /// Polishes E to full working precision, then builds the state. E must
  /// already lie in the basin of an eigenvalue.
  static Eigenstate build(const ProblemSpec& spec, const Complex& E);

  ProblemSpec spec;
  Complex E;
  Complex A1;
  Complex A2;
  Mixing mixing;
  std::vector<Complex> d;
  Real N;
  SideData right;
  SideData left;

  [[nodiscard]] Real x_switch_pos() const { return right.x_switch; }
  [[nodiscard]] Real x_switch_neg() const { return left.x_switch; }

  /// Normalized psi(x), series inside the handover radius and asymptotic
  /// beyond.
  [[nodiscard]] Complex psi(const Real& x) const;
  [[nodiscard]] std::complex<double> psi(double x) const;

  /// Unnormalized representations, for cross-checks.
  [[nodiscard]] Complex series_value(const Real& x) const;
  [[nodiscard]] Complex asymptotic_value(const Real& x) const;

 private:
  Eigenstate(const ProblemSpec& s) : spec(s) {}
  friend Real normalize(Eigenstate& state);
};

/// Sets and returns N such that the integral of |N psi|^2 over the line is 1.
Real normalize(Eigenstate& state);

/// Integral of |psi|^2 with the current N (1 after normalize).
double norm_integral(const Eigenstate& state);

}  // namespace cubicosc::wavefn
