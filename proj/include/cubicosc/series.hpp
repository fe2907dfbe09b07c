#pragma once

// Series data for the half-line equation in t = x^(1/2):
//
//   t^2 w'' + (4 sigma lambda t^10 - kappa t^8 + 4 E t^4 - 3/4) w = 0.
//
// Frobenius solutions w_i (i = 1, 2; indices nu = -1/2, 3/2) converge
// everywhere; Thome solutions w_j (j = 3, 4) are the formal expansions at
// t -> infinity. The v-coefficients and eta values feed the Wronskian
// extraction in connection.hpp.
//
// Every function here runs at the spec's precision and may be called from
// any precision scope.

#include <vector>

#include "cubicosc/problem.hpp"

namespace cubicosc::series {

struct FrobeniusSolution {
  int sigma = 1;
  int index = 1;  // i in {1, 2}
  std::vector<Complex> c;

  /// Twice the indicial exponent: -1 for i = 1, 3 for i = 2.
  [[nodiscard]] int nu_twice() const { return index == 1 ? -1 : 3; }
  [[nodiscard]] Real nu() const { return Real(nu_twice()) / 2; }
};

FrobeniusSolution frobenius(const ProblemSpec& spec, int sigma, int i, const Complex& E, int n_max);

struct ThomeExponents {
  int sigma = 1;
  int j = 3;
  BranchedComplex alpha;  // argument inside the sector assigned to (sigma, j)
  Complex beta;
  Complex gamma;

  [[nodiscard]] Complex alpha_value() const { return alpha.to_complex(); }
};

/// alpha = 2 (-sigma lambda)^(1/2) on the branch assigned to (sigma, j),
/// beta = kappa / (2 alpha), gamma = -beta^2 / (2 alpha).
ThomeExponents thome_exponents(const ProblemSpec& spec, int sigma, int j);

/// a_0 .. a_{m_max} of the asymptotic factor sum a_m t^-m.
std::vector<Complex> thome_coefficients(const ThomeExponents& exps, const Complex& E, int m_max);

struct ThomeSolution {
  ThomeExponents exps;
  std::vector<Complex> a;
};

ThomeSolution thome(const ProblemSpec& spec, int sigma, int j, const Complex& E, int m_max);

/// Coefficients of v_{i,j} = exp(beta t^3/3 + gamma t) w_i = sum c_hat_n t^(n + nu_i).
struct VCoefficients {
  int sigma = 1;
  int i = 1;
  int j = 3;
  std::vector<Complex> c_hat;
};

VCoefficients v_coefficients(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E, int n_max);

struct EtaValue {
  int sigma = 1;
  int i = 1;
  int j = 3;
  long n = 0;
  Complex value;
  int inner_terms_used = 0;
  /// Magnitude of the last retained term, a bound on the first omitted one.
  Real truncation_estimate;
  bool converged = true;
};

/// Lazily extended tables for one (spec, sigma, i, j, E), from which any
/// eta_n can be summed. Tables grow on demand up to the policy limits.
class EtaSeries {
 public:
  EtaSeries(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E);

  EtaValue eta(long n);

  [[nodiscard]] const ThomeExponents& exponents() const { return exps_; }
  [[nodiscard]] int nu_twice() const { return i_ == 1 ? -1 : 3; }
  [[nodiscard]] int sigma() const { return sigma_; }
  [[nodiscard]] int i() const { return i_; }
  [[nodiscard]] int j() const { return j_; }

 private:
  void extend_c_hat(std::size_t size);
  void extend_a(std::size_t size);
  void extend_p(std::size_t size);
  [[nodiscard]] const Complex& c_hat(long k) const;

  int digits_;
  TruncationPolicy policy_;
  int sigma_;
  int i_;
  int j_;
  Complex E_;
  Real kappa_;
  Complex four_sigma_lambda_;
  ThomeExponents exps_;
  Complex alpha_;
  Complex two_beta_;
  Complex two_gamma_;
  std::vector<Complex> c_hat_;
  std::vector<Complex> a_;
  std::vector<Complex> m_a_;  // m * a_m
  // P_k = alpha c_{k-4} + 2 beta c_{k-2} + 2 gamma c_k - (k + 3 + nu) c_{k+1}
  std::vector<Complex> p_;
  Real tolerance_;
  Complex zero_;
};

EtaValue eta(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E, long n);

/// A truncated series value with its derivative in t.
struct SeriesValue {
  Complex value;
  Complex derivative;
  Real tail_estimate;
  int terms_used = 0;
  bool converged = true;
};

/// t^nu sum c_n t^n. Stops after 10 consecutive terms below
/// term_tolerance * |partial sum|; flags slow convergence when the stored
/// coefficients run out first. t = 0 is a domain error for i = 1.
SeriesValue frobenius_eval(const FrobeniusSolution& sol, const Real& t, const Real& term_tolerance);

/// exp(alpha t^5/5 + beta t^3/3 + gamma t) t^-2 sum a_m t^-m, truncated at
/// the smallest term. Throws AsymptoticRegimeError if that term is not
/// below `tolerance` relative to the sum.
SeriesValue thome_eval(const ThomeSolution& sol, const Real& t, const Real& tolerance);

/// alpha t^5/5 + beta t^3/3 + gamma t.
Complex thome_phase(const ThomeExponents& exps, const Real& t);

}  // namespace cubicosc::series
