#include <doctest.h>

#include <random>

#include "cubicosc/series.hpp"

using namespace cubicosc;
using namespace cubicosc::series;
using mp::pow10;

namespace {

ProblemSpec spec_of(const char* kappa, const char* mod, const char* arg, int digits = 64) {
  return ProblemSpec::from_polar(kappa, mod, arg, mp::Precision{digits, 4});
}

Complex cx(const char* re, const char* im) { return {Real(re), Real(im)}; }

Real rel(const Complex& a, const Complex& b) { return mp::abs(a - b) / mp::abs(b); }

}  // namespace

TEST_CASE("frobenius leading coefficients") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0");
  const auto s1 = frobenius(spec, 1, 1, Complex(1), 20);
  CHECK(s1.c[0] == Complex(1));
  CHECK(s1.c[1].is_zero());
  CHECK(s1.c[2].is_zero());
  CHECK(s1.c[3].is_zero());
  CHECK(mp::abs(s1.c[4] - Complex(Real("-0.5"))) < pow10(-62));
  const auto s2 = frobenius(spec, 1, 2, Complex(1), 20);
  CHECK(mp::abs(s2.c[4] + Complex(Real(1) / 6)) < pow10(-62));
  CHECK_THROWS_AS(frobenius(spec, 1, 1, Complex(1), spec.truncation.frobenius_max_terms + 1), DomainError);
  CHECK_THROWS_AS(frobenius(spec, 0, 1, Complex(1), 10), DomainError);
}

TEST_CASE("frobenius recurrence residual") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "0.7", "0.3");
  const Complex E = cx("1.3", "-0.4");
  for (int sigma : {-1, 1}) {
    for (int i : {1, 2}) {
      const auto s = frobenius(spec, sigma, i, E, 300);
      const Real nu2(s.nu_twice());
      const Complex lam = spec.lambda();
      for (long n = 10; n <= 300; ++n) {
        const Complex lhs = s.c[n] * (Real(n) * (Real(n - 1) + nu2));
        const Complex rhs = -(E * 4) * s.c[n - 4] + spec.kappa() * s.c[n - 8] -
                            lam * static_cast<long>(4 * sigma) * s.c[n - 10];
        const Real scale = mp::max(mp::abs(rhs), mp::abs(E * 4 * s.c[n - 4]));
        if (scale.is_zero()) continue;
        CHECK(mp::abs(lhs - rhs) / scale < pow10(-60));
      }
    }
  }
}

TEST_CASE("kappa = 0 Frobenius sparsity") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("0", "1", "0.25");
  const auto s = frobenius(spec, -1, 1, cx("0.8", "0.1"), 200);
  // Nonzero only at indices 4a + 10b.
  for (std::size_t n = 0; n < s.c.size(); ++n) {
    bool reachable = false;
    for (std::size_t b = 0; 10 * b <= n; ++b) reachable = reachable || (n - 10 * b) % 4 == 0;
    if (!reachable) CHECK(s.c[n].is_zero());
    if (reachable && n != 2) CHECK(!s.c[n].is_zero());
  }
}

TEST_CASE("thome exponents and sectors") {
  mp::PrecisionScope scope(64);
  const Real pi = mp::pi();
  {
    const auto e = thome_exponents(spec_of("0", "1", "0.5"), 1, 4);
    CHECK(mp::abs(e.alpha.modulus - Real(2)) < pow10(-62));
    CHECK(mp::abs(e.alpha.argument + pi / 4) < pow10(-62));
    CHECK(e.beta.is_zero());
    CHECK(e.gamma.is_zero());
  }
  {
    const auto e = thome_exponents(spec_of("1", "1", "0"), -1, 4);
    CHECK(mp::abs(e.alpha_value() - Complex(2)) < pow10(-62));
    CHECK(mp::abs(e.beta - Complex(Real(1) / 4)) < pow10(-62));
    CHECK(mp::abs(e.gamma + Complex(Real(1) / 64)) < pow10(-62));
  }
  for (const char* arg : {"0", "0.1", "0.25", "0.5"}) {
    const auto spec = spec_of("1", "3", arg);
    const auto a3m = thome_exponents(spec, -1, 3).alpha.argument;
    const auto a4m = thome_exponents(spec, -1, 4).alpha.argument;
    const auto a3p = thome_exponents(spec, 1, 3).alpha.argument;
    const auto a4p = thome_exponents(spec, 1, 4).alpha.argument;
    CHECK(a3m >= -pi);
    CHECK(a3m <= -3 * pi / 4);
    CHECK(a4m >= Real(0));
    CHECK(a4m <= pi / 4);
    CHECK(a3p >= pi / 2);
    CHECK(a3p <= 3 * pi / 4);
    CHECK(a4p >= -pi / 2);
    CHECK(a4p <= -pi / 4);
    // alpha^2 = -4 sigma lambda for each branch
    for (int sigma : {-1, 1}) {
      for (int j : {3, 4}) {
        const Complex al = thome_exponents(spec, sigma, j).alpha_value();
        CHECK(rel(al * al, spec.lambda() * static_cast<long>(-4 * sigma)) < pow10(-60));
      }
    }
  }
}

TEST_CASE("thome coefficients") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("0", "1", "0.5");
  const auto sol = thome(spec, 1, 4, Complex(1), 10);
  CHECK(sol.a[0] == Complex(1));
  const Complex alpha = sol.exps.alpha_value();
  CHECK(rel(sol.a[1], Complex(2) / alpha) < pow10(-62));
  // Independent evaluation: a_2 = 0.5 i.
  CHECK(mp::abs(sol.a[2] - cx("0", "0.5")) < pow10(-62));
}

TEST_CASE("thome recurrence residual") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1.5", "2", "0.35");
  const Complex E = cx("0.7", "0.9");
  for (int sigma : {-1, 1}) {
    for (int j : {3, 4}) {
      const auto s = thome(spec, sigma, j, E, 200);
      const auto& x = s.exps;
      const auto& a = s.a;
      for (long m = 5; m <= 200; ++m) {
        const Complex lhs = x.alpha_value() * a[m] * (2 * m);
        Complex rhs = (E * 4 + x.beta * x.gamma * 2) * a[m - 1] - x.beta * a[m - 2] * (2 * (m - 1)) +
                      x.gamma * x.gamma * a[m - 3] - x.gamma * a[m - 4] * (2 * (m - 2)) +
                      a[m - 5] * (Real((m - 2) * (m - 3)) - Real(3) / 4);
        CHECK(mp::abs(lhs - rhs) / mp::abs(lhs) < pow10(-58));
      }
    }
  }
}

TEST_CASE("v coefficients") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0");
  const auto v = v_coefficients(spec, 1, 1, 3, Complex(1), 40);
  const auto x = thome_exponents(spec, 1, 3);
  CHECK(v.c_hat[0] == Complex(1));
  CHECK(rel(v.c_hat[1], x.gamma) < pow10(-62));
  CHECK(rel(v.c_hat[2], x.gamma * x.gamma / 2) < pow10(-62));

  const auto k0 = v_coefficients(spec_of("0", "2", "0.2"), -1, 2, 4, cx("1", "1"), 12);
  CHECK(k0.c_hat[1].is_zero());
  CHECK(k0.c_hat[2].is_zero());
  for (int n = 1; n < 10; ++n) {
    if (n % 4 != 0) CHECK(k0.c_hat[n].is_zero());
  }
}

TEST_CASE("v coefficients equal the Cauchy product") {
  mp::PrecisionScope scope(64);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> arg(0.0, 0.5);
  for (int trial = 0; trial < 6; ++trial) {
    const auto spec = ProblemSpec::from_polar(u(rng) + 1.5, 0.5 + std::abs(u(rng)), arg(rng));
    const Complex E(Real(u(rng)), Real(u(rng)));
    const int sigma = trial % 2 ? 1 : -1;
    const int i = 1 + trial % 2;
    const int j = 3 + (trial / 2) % 2;
    const auto x = thome_exponents(spec, sigma, j);
    const auto v = v_coefficients(spec, sigma, i, j, E, 30);
    const auto c = frobenius(spec, sigma, i, E, 30);
    // Taylor coefficients of exp(beta t^3/3 + gamma t) by the ODE f' = (beta t^2 + gamma) f.
    std::vector<Complex> f{Complex(1)};
    for (long n = 1; n <= 30; ++n) {
      Complex s = x.gamma * f[n - 1];
      if (n >= 3) s += x.beta * f[n - 3];
      f.push_back(s / n);
    }
    for (int n = 0; n <= 30; ++n) {
      Complex s;
      for (int k = 0; k <= n; ++k) s += f[k] * c.c[n - k];
      const Real scale = mp::max(mp::abs(s), Real(1) * pow10(-40));
      CHECK(mp::abs(v.c_hat[n] - s) / scale < pow10(-56));
    }
  }
}

TEST_CASE("eta against term-by-term summation") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0");
  EtaSeries s(spec, 1, 1, 3, Complex(1));
  CHECK(s.eta(-spec.truncation.eta_inner_max - 2).value.is_zero());
  const auto e3 = s.eta(3);
  const auto e7 = s.eta(7);
  CHECK(e3.converged);
  CHECK(rel(e3.value, Complex(Real("4.158810974516408784849449376159366741656"))) < pow10(-38));
  CHECK(rel(e7.value, Complex(Real("-1.546179285260689349120622884553862724653"))) < pow10(-38));
  CHECK(e7.truncation_estimate < pow10(-50));
  const auto direct = eta(spec, 1, 1, 3, Complex(1), 7);
  CHECK(direct.value == e7.value);
}

TEST_CASE("frobenius evaluation") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0");
  const auto s1 = frobenius(spec, 1, 1, Complex(1), 200);
  const auto s2 = frobenius(spec, 1, 2, Complex(1), 200);
  const Real tol = pow10(-64);
  CHECK_THROWS_AS(frobenius_eval(s1, Real(0), tol), DomainError);
  CHECK(frobenius_eval(s2, Real(0), tol).value.is_zero());
  const auto v = frobenius_eval(s1, Real("0.5"), tol);
  CHECK(v.converged);
  CHECK(rel(v.value, Complex(Real("1.370294577127866054136997413404282533557"))) < pow10(-38));
  CHECK(rel(v.derivative, Complex(Real("-1.719724842555588621186578085268277511829"))) < pow10(-38));
  const auto short_series = frobenius(spec, 1, 1, Complex(1), 12);
  CHECK_FALSE(frobenius_eval(short_series, Real(3), tol).converged);
}

TEST_CASE("thome evaluation") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("0", "1", "0.5");
  const auto sol = thome(spec, 1, 4, Complex(1), 500);
  const auto v = thome_eval(sol, Real(3), pow10(-40));
  const Complex expect = cx("80922206792370449801821222430.13740613418", "57904009709305667742575972697.11358545905");
  CHECK(rel(v.value, expect) < pow10(-38));

  // Leading order only.
  ThomeSolution lead = sol;
  lead.a.resize(1);
  const Real t("2.5");
  const auto l = thome_eval(lead, t, Real(1));
  CHECK(rel(l.value, mp::exp(thome_phase(sol.exps, t)) / (t * t)) < pow10(-60));

  // The recessive solution decreases along the real axis.
  const auto spec1 = spec_of("1", "1", "0");
  const auto rec = thome(spec1, -1, 3, cx("0.93", "-0.67"), 600);
  Real prev = mp::abs(thome_eval(rec, Real(3), pow10(-30)).value);
  for (const char* t_s : {"3.5", "4", "5", "6"}) {
    const Real now = mp::abs(thome_eval(rec, Real(t_s), pow10(-30)).value);
    CHECK(now < prev);
    prev = now;
  }
  CHECK_THROWS_AS(thome_eval(rec, Real("0.3"), pow10(-30)), AsymptoticRegimeError);
}

TEST_CASE("Wronskian of the Thome pair") {
  mp::PrecisionScope scope(64);
  for (const char* arg : {"0", "0.2", "0.5"}) {
    const auto spec = spec_of("1", "1", arg);
    for (int sigma : {-1, 1}) {
      const Complex E = cx("1.1", "-0.3");
      const auto w3 = thome(spec, sigma, 3, E, 1500);
      const auto w4 = thome(spec, sigma, 4, E, 1500);
      const Real t(6);
      const auto a = thome_eval(w3, t, pow10(-25));
      const auto b = thome_eval(w4, t, pow10(-25));
      const Complex W = a.value * b.derivative - a.derivative * b.value;
      const Complex expect = w4.exps.alpha_value() * 2;
      CHECK(rel(W, expect) < pow10(-24));
    }
  }
}
