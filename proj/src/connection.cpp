#include "cubicosc/connection.hpp"

#include <optional>
#include <string>

namespace cubicosc::connection {

namespace {

Real mag(const Complex& z) { return mp::max(mp::abs(z.re), mp::abs(z.im)); }

// Walks the extraction index n upward, keeping the five weights
//   generic: Gamma(n+1+delta_L) / base^(n+delta_L)
//   Stokes:  (-1)^n cos(pi delta_L) Gamma(n+1+delta_L) / (alpha/5)^(n+delta_L)
// up to date by one multiplication per step.
class Extractor {
 public:
  Extractor(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E, long n0)
      : eta_(spec, sigma, i, j, E), sigma_(sigma), i_(i), j_(j), n_(n0) {
    const auto& exps = eta_.exponents();
    stokes_ = is_stokes_case(spec, sigma, j);
    BranchedComplex base;
    if (stokes_) {
      base = BranchedComplex{exps.alpha.modulus / 5, exps.alpha.argument};
    } else {
      base = heaviside_base(exps);
    }
    base_ = base.to_complex();
    const int nu2 = eta_.nu_twice();
    for (int L = 0; L < 5; ++L) {
      // delta = (nu - 2 + L)/5 = (nu2 - 4 + 2L)/10
      delta_[L] = Real(nu2 - 4 + 2 * L) / 10;
      const Real x = n0 + delta_[L];
      Complex w = Complex(mp::gamma_real(x + 1)) / mp::pow_branched(base, x);
      if (stokes_) {
        w *= mp::cos(mp::pi() * delta_[L]);
        if (n0 % 2 != 0) w = -w;
      }
      weight_[L] = std::move(w);
    }
  }

  struct Point {
    long n;
    std::array<Complex, 5> g;
    Complex sum;
    Real eta_error;  // absolute
    bool eta_converged;
  };

  Point current() {
    Point p;
    p.n = n_;
    p.eta_error = Real(0);
    p.eta_converged = true;
    for (int L = 0; L < 5; ++L) {
      const auto e = eta_.eta(5 * n_ + L);
      p.g[L] = weight_[L] * e.value;
      p.sum += p.g[L];
      p.eta_error += mp::abs(weight_[L]) * e.truncation_estimate;
      p.eta_converged = p.eta_converged && e.converged;
    }
    return p;
  }

  void advance() {
    for (int L = 0; L < 5; ++L) {
      weight_[L] *= Complex(n_ + 1 + delta_[L]) / base_;
      if (stokes_) weight_[L] = -weight_[L];
    }
    ++n_;
  }

  [[nodiscard]] WronskianExtraction describe(const Point& p, const Real& spread) const {
    WronskianExtraction x;
    x.sigma = sigma_;
    x.i = i_;
    x.j = j_;
    x.n_used = p.n;
    x.g = p.g;
    x.delta = delta_;
    x.plateau_spread = spread;
    x.eta_error = p.sum.is_zero() ? Real(0) : p.eta_error / mp::abs(p.sum);
    x.stokes_averaged = stokes_;
    return x;
  }

 private:
  series::EtaSeries eta_;
  int sigma_, i_, j_;
  long n_;
  bool stokes_ = false;
  Complex base_;
  std::array<Real, 5> delta_;
  std::array<Complex, 5> weight_;
};

Real spread(const Extractor::Point& a, const Extractor::Point& b, const Real& noise) {
  Real gmax(0);
  for (const auto& g : a.g) gmax = mp::max(gmax, mag(g));
  Real worst(0);
  for (int L = 0; L < 5; ++L) {
    if (mag(a.g[L]) <= noise * gmax) continue;
    worst = mp::max(worst, mp::abs(a.g[L] - b.g[L]) / mp::abs(a.g[L]));
  }
  return worst;
}

}  // namespace

bool is_stokes_case(const ProblemSpec& spec, int sigma, int j) {
  return sigma == -1 && j == 4 && spec.on_stokes_ray();
}

std::array<Real, 2> minus_alpha_arguments(const series::ThomeExponents& exps) {
  const Real pi = mp::pi();
  return {exps.alpha.argument + pi, exps.alpha.argument - pi};
}

BranchedComplex heaviside_base(const series::ThomeExponents& exps) {
  const Real pi = mp::pi();
  for (const Real& a : minus_alpha_arguments(exps)) {
    if (mp::abs(a) < pi) return {exps.alpha.modulus / 5, a};
  }
  throw BranchError("-alpha lies on the negative real axis (Stokes ray)");
}

Wronskian wronskian_at(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E_in, long n) {
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  Extractor ex(spec, sigma, i, j, E, n);
  const auto a = ex.current();
  ex.advance();
  const auto b = ex.current();
  Wronskian w;
  w.value = a.sum;
  w.extraction = ex.describe(a, spread(a, b, Tolerances::noise(spec.precision)));
  return w;
}

Wronskian wronskian_frob_thome(const ProblemSpec& spec, int sigma, int i, int j, const Complex& E_in) {
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  const auto& policy = spec.truncation;
  const Real tol = Tolerances::plateau(spec.precision);
  const Real noise = Tolerances::noise(spec.precision);

  Extractor ex(spec, sigma, i, j, E, policy.extraction_n_min);
  auto prev = ex.current();
  std::optional<Wronskian> best;
  for (long n = policy.extraction_n_min; n < policy.extraction_n_max; ++n) {
    ex.advance();
    auto next = ex.current();
    const Real s = spread(prev, next, noise);
    if (!best || s < best->extraction.plateau_spread) {
      best = Wronskian{prev.sum, ex.describe(prev, s)};
    }
    if (s < tol) break;
    prev = std::move(next);
  }
  if (!(best->extraction.plateau_spread < tol)) {
    throw PlateauError("no extraction plateau for W[w" + std::to_string(i) + ", w" + std::to_string(j) +
                       "] (sigma=" + std::to_string(sigma) + "): best spread " +
                       best->extraction.plateau_spread.str(3) + " at n=" +
                       std::to_string(best->extraction.n_used));
  }
  return *best;
}

std::size_t ConnectionMatrix::slot(int i, int j, int sigma) {
  if ((i != 1 && i != 2) || (j != 3 && j != 4) || (sigma != 1 && sigma != -1)) {
    throw DomainError("connection factor index out of range");
  }
  return static_cast<std::size_t>((i - 1) * 4 + (j - 3) * 2 + (sigma > 0 ? 1 : 0));
}

ConnectionMatrix connection_matrix(const ProblemSpec& spec, const Complex& E_in) {
  mp::PrecisionScope scope(spec.precision.digits);
  ConnectionMatrix m;
  m.E = E_in;
  m.det_residual = Real(0);
  m.error_estimate = Real(0);
  for (int sigma : {-1, 1}) {
    const Complex a4 = series::thome_exponents(spec, sigma, 4).alpha_value();
    m.alpha4(sigma) = a4;
    const Complex two_a4 = a4 * 2;
    for (int i : {1, 2}) {
      const auto w4 = wronskian_frob_thome(spec, sigma, i, 4, m.E);
      const auto w3 = wronskian_frob_thome(spec, sigma, i, 3, m.E);
      m.T(i, 3, sigma) = w4.value / two_a4;
      m.T(i, 4, sigma) = -(w3.value / two_a4);
      for (const auto* w : {&w3, &w4}) {
        m.error_estimate =
            mp::max(m.error_estimate, w->extraction.plateau_spread + w->extraction.eta_error);
      }
    }
    const Complex det = m.T(1, 3, sigma) * m.T(2, 4, sigma) - m.T(2, 3, sigma) * m.T(1, 4, sigma);
    const Complex inv = Complex(1) / a4;
    m.det_residual = mp::max(m.det_residual, mp::abs(det - inv) / mp::abs(inv));
  }
  if (m.det_residual > Tolerances::identity(spec.precision)) {
    throw ConsistencyError("determinant identity violated: relative residual " + m.det_residual.str(3));
  }
  return m;
}

RecessiveFactors recessive_factors(const ProblemSpec& spec, const Complex& E_in) {
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  RecessiveFactors r;
  r.error_estimate = Real(0);
  for (int sigma : {-1, 1}) {
    const Complex minus_two_a4 = -(series::thome_exponents(spec, sigma, 4).alpha_value() * 2);
    for (int i : {1, 2}) {
      const auto w = wronskian_frob_thome(spec, sigma, i, 3, E);
      Complex t = w.value / minus_two_a4;
      r.error_estimate = mp::max(r.error_estimate, w.extraction.plateau_spread + w.extraction.eta_error);
      Complex& slot = sigma > 0 ? (i == 1 ? r.T14_plus : r.T24_plus) : (i == 1 ? r.T14_minus : r.T24_minus);
      slot = std::move(t);
    }
  }
  return r;
}

}  // namespace cubicosc::connection
