#include "cubicosc/wavefn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "cubicosc/spectrum.hpp"

namespace cubicosc::wavefn {

namespace {

Real mag(const Complex& z) { return mp::max(mp::abs(z.re), mp::abs(z.im)); }

Complex phase_factor(int side) {
  // e^{+-3i pi/8}
  return mp::polar(Real(1), mp::pi() * 3 / 8 * static_cast<long>(side));
}

struct SeriesSum {
  Complex value;
  bool converged;
};

SeriesSum sum_series(const std::vector<Complex>& d, const Real& x, const Real& tol) {
  SeriesSum s{Complex(), false};
  Real xn(1);
  int negligible = 0;
  for (const auto& dn : d) {
    const Complex term = dn * xn;
    s.value += term;
    if (mag(term) <= tol * mag(s.value)) {
      if (++negligible >= 10) {
        s.converged = true;
        break;
      }
    } else {
      negligible = 0;
    }
    xn *= x;
  }
  if (x.is_zero()) s.converged = true;
  return s;
}

constexpr int kThomeTerms = 1500;

}  // namespace

Mixing mixing_coefficients(const connection::ConnectionMatrix& T, const ProblemSpec& spec, const Real& tol_in) {
  mp::PrecisionScope scope(spec.precision.digits);
  const Real tol = tol_in.sign() > 0 ? Real(tol_in) : Tolerances::plateau(spec.precision);
  const Complex plus = phase_factor(1);
  const Complex a4 = T.alpha4(1);
  Mixing m;
  m.A1 = plus * a4 * T.T(2, 4, 1);
  m.A2 = -(plus * a4 * T.T(1, 4, 1));
  m.right_residual = mp::abs(m.A1 * T.T(1, 3, 1) + m.A2 * T.T(2, 3, 1) - plus);
  m.left_residual = mp::abs(m.A1 * T.T(1, 3, -1) - m.A2 * T.T(2, 3, -1) - phase_factor(-1));
  if (m.left_residual > tol) {
    throw ConsistencyError("left-side phase condition fails by " + m.left_residual.str(3) +
                           "; E is not an eigenvalue to working accuracy");
  }
  return m;
}

Mixing mixing_coefficients(const ProblemSpec& spec, const Complex& E, const Real& tol) {
  return mixing_coefficients(connection::connection_matrix(spec, E), spec, tol);
}

std::vector<Complex> psi_series(const ProblemSpec& spec, const Complex& E_in, const Complex& A1, const Complex& A2,
                                int n_max) {
  if (n_max < 1) throw DomainError("psi series needs at least two coefficients");
  mp::PrecisionScope scope(spec.precision.digits);
  const Complex E = E_in;
  const Complex four_e = E * 4;
  const Real kappa = spec.kappa();
  const Complex four_lambda = spec.lambda() * 4;
  std::vector<Complex> d;
  d.reserve(static_cast<std::size_t>(n_max) + 1);
  d.push_back(A1);
  d.push_back(A2);
  for (long n = 2; n <= n_max; ++n) {
    Complex rhs;
    rhs.sub_product(four_e, d[n - 2]);
    if (n >= 4) rhs += kappa * d[n - 4];
    if (n >= 5) rhs.sub_product(four_lambda, d[n - 5]);
    d.push_back(rhs / (4 * n * (n - 1)));
  }
  return d;
}

Complex asymptotic_exponent(const ProblemSpec& spec, int side, const Real& x) {
  mp::PrecisionScope scope(spec.precision.digits);
  const Real u = mp::abs(x);
  const Real r = mp::sqrt(u);  // u^{1/2}
  const Real r3 = r * u;
  const Real r5 = r3 * u;
  const Real kappa = spec.kappa();
  // principal lambda^{1/2}, arg in [0, pi/4]
  const Complex s = mp::polar(mp::sqrt(spec.lambda_modulus()), spec.lambda_arg() / 2);
  const Complex s_inv = Complex(1) / s;
  const Complex s_inv3 = s_inv * s_inv * s_inv;
  const Complex t1 = s * (Real(2) * r5 / 5);
  const Complex t2 = s_inv * (kappa * r3 / 12);
  const Complex t3 = s_inv3 * (kappa * kappa * r / 64);
  if (side > 0) {
    const Complex inner = t1 - t2 - t3;
    return {-inner.im, inner.re};
  }
  return -(t1 + t2 - t3);
}

Complex Eigenstate::series_value(const Real& x) const {
  mp::PrecisionScope scope(spec.precision.digits);
  return sum_series(d, x, Tolerances::noise(spec.precision)).value;
}

Complex Eigenstate::asymptotic_value(const Real& x_in) const {
  mp::PrecisionScope scope(spec.precision.digits);
  const Real x = x_in;
  const int side = x.sign() >= 0 ? 1 : -1;
  const SideData& sd = side > 0 ? right : left;
  const Real t = mp::sqrt(mp::abs(x));
  // psi = x^{1/4} w = t^{1/2} w
  const auto w = series::thome_eval(sd.thome, t, Tolerances::plateau(spec.precision));
  return phase_factor(side) * w.value * mp::sqrt(t);
}

Complex Eigenstate::psi(const Real& x_in) const {
  mp::PrecisionScope scope(spec.precision.digits);
  const Real x = x_in;
  const bool outside = x.sign() >= 0 ? x > right.x_switch : -x > left.x_switch;
  const Complex raw = outside ? asymptotic_value(x) : series_value(x);
  return raw * N;
}

std::complex<double> Eigenstate::psi(double x) const {
  mp::PrecisionScope scope(spec.precision.digits);
  return psi(Real(x)).to_std();
}

Eigenstate Eigenstate::build(const ProblemSpec& spec, const Complex& E_in) {
  mp::PrecisionScope scope(spec.precision.digits);
  Eigenstate st(spec);
  const Real polish = mp::pow10(-(spec.precision.digits - spec.precision.guard - 6));
  st.E = spectrum::find_eigenvalue(spec, E_in, polish).E;
  const auto T = connection::connection_matrix(spec, st.E);
  st.mixing = mixing_coefficients(T, spec);
  st.A1 = st.mixing.A1;
  st.A2 = st.mixing.A2;
  st.N = Real(1);
  st.right.thome = series::thome(spec, 1, 3, st.E, kThomeTerms);
  st.left.thome = series::thome(spec, -1, 3, st.E, kThomeTerms);

  const Real tol = Tolerances::plateau(spec.precision);
  const Real noise = Tolerances::noise(spec.precision);
  int n_terms = 400;
  st.d = psi_series(spec, st.E, st.A1, st.A2, n_terms);

  for (int side : {1, -1}) {
    SideData& sd = side > 0 ? st.right : st.left;
    int agree = 0;
    Real first;
    Real first_mismatch;
    bool found = false;
    const Real ratio("1.03");
    for (Real u(1); u < Real(60); u *= ratio) {
      const Real x = u * static_cast<long>(side);
      SeriesSum s = sum_series(st.d, x, noise);
      while (!s.converged && n_terms < spec.truncation.frobenius_max_terms) {
        n_terms = std::min(2 * n_terms, spec.truncation.frobenius_max_terms);
        st.d = psi_series(spec, st.E, st.A1, st.A2, n_terms);
        s = sum_series(st.d, x, noise);
      }
      Real mismatch;
      bool ok = false;
      try {
        sd.x_switch = u;  // lets asymptotic_value pick this side's data
        const Complex a = st.asymptotic_value(x);
        mismatch = mp::abs(s.value - a) / mp::abs(a);
        ok = s.converged && mismatch <= tol;
      } catch (const AsymptoticRegimeError&) {
        ok = false;
      }
      if (ok) {
        if (agree++ == 0) {
          first = u;
          first_mismatch = mismatch;
        }
        if (agree == 3) {
          found = true;
          break;
        }
      } else {
        agree = 0;
      }
    }
    if (!found) {
      throw ConvergenceError(std::string("no handover radius on the ") + (side > 0 ? "right" : "left") +
                             " where series and asymptotic forms agree; raise the precision");
    }
    sd.x_switch = first;
    sd.handover_mismatch = first_mismatch;
  }
  normalize(st);
  return st;
}

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-12;

double integrate(const std::function<double(double)>& f, double a, double b) {
  double err = 0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, kQuadTol, &err);
}

// Integral of |psi|^2 for the unnormalized state.
double raw_norm(const Eigenstate& st) {
  mp::PrecisionScope scope(st.spec.precision.digits);
  auto series_density = [&](double x) { return std::norm(st.series_value(Real(x)).to_std()); };
  auto asym_density = [&](double x) { return std::norm(st.asymptotic_value(Real(x)).to_std()); };

  const double xr = st.right.x_switch.to_double();
  const double xl = st.left.x_switch.to_double();
  // Split the interior where |psi|^2 has structure.
  double total = 0;
  const int pieces = 8;
  for (int k = 0; k < pieces; ++k) {
    total += integrate(series_density, xr * k / pieces, xr * (k + 1) / pieces);
    total += integrate(series_density, -xl * (k + 1) / pieces, -xl * k / pieces);
  }

  // Left tail: super-exponential decay.
  double a = xl;
  for (int k = 0; k < 60; ++k) {
    const double b = a * 1.5;
    const double piece = integrate(asym_density, -b, -a);
    total += piece;
    if (piece < 1e-18 * total) break;
    a = b;
  }

  if (st.spec.on_stokes_ray() || st.spec.lambda_arg().is_zero()) {
    // |exp(B)| = 1: |psi|^2 = x^{-3/2} |S|^2 with S = sum a_m t^{-m}.
    // Integrate the truncated double series term by term from xr to infinity.
    const Real X = st.right.x_switch;
    const Real t = mp::sqrt(X);
    const auto& a_m = st.right.thome.a;
    // Truncate S where it is truncated at the handover point.
    std::size_t M = a_m.size();
    {
      Real best;
      bool have = false;
      Real tm(1);
      for (std::size_t m = 0; m < a_m.size(); ++m) {
        const Real term = mag(a_m[m]) * tm;
        if (!have || term < best) {
          best = term;
          M = m + 1;
          have = true;
        }
        if (term < Tolerances::noise(st.spec.precision) * Real("1e-4")) break;
        tm /= t;
      }
    }
    Real tail(0);
    for (std::size_t k = 0; k + 1 < 2 * M; ++k) {
      Complex b;
      for (std::size_t m = (k + 1 > M ? k + 1 - M : 0); m <= k && m < M; ++m) b += a_m[m] * mp::conj(a_m[k - m]);
      // int_X^inf x^{-3/2 - k/2} dx = 2 X^{-(k+1)/2} / (k+1)
      tail += b.re * 2 / static_cast<long>(k + 1) / mp::pow(t, static_cast<long>(k + 1));
    }
    total += tail.to_double();
  } else {
    double r = xr;
    for (int k = 0; k < 200; ++k) {
      const double b = r * 1.25;
      const double piece = integrate(asym_density, r, b);
      total += piece;
      if (piece < 1e-18 * total) break;
      r = b;
    }
  }
  return total;
}

}  // namespace

Real normalize(Eigenstate& st) {
  mp::PrecisionScope scope(st.spec.precision.digits);
  const double I = raw_norm(st);
  if (!(I > 0) || !std::isfinite(I)) throw ConvergenceError("norm integral is not finite and positive");
  st.N = Real(1.0 / std::sqrt(I));
  return st.N;
}

double norm_integral(const Eigenstate& st) {
  mp::PrecisionScope scope(st.spec.precision.digits);
  const double n = st.N.to_double();
  return raw_norm(st) * n * n;
}

}  // namespace cubicosc::wavefn
