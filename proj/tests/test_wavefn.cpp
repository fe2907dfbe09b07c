#include <doctest.h>

#include "cubicosc/wavefn.hpp"

using namespace cubicosc;
using mp::pow10;

namespace {

ProblemSpec spec_of(const char* kappa, const char* mod, const char* arg) {
  return ProblemSpec::from_polar(kappa, mod, arg, mp::Precision{64, 4});
}

Complex cx(const char* re, const char* im) { return {Real(re), Real(im)}; }

Real dist(const Complex& a, const Complex& b) { return mp::abs(a - b); }

}  // namespace

TEST_CASE("psi series low coefficients") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0.3");
  const Complex E = cx("1.1", "-0.2");
  const Complex A1 = cx("0.4", "0.1");
  const Complex A2 = cx("-0.2", "0.3");
  const auto d = wavefn::psi_series(spec, E, A1, A2, 12);
  REQUIRE(d.size() == 13);
  CHECK(d[0].re == A1.re);
  CHECK(d[1].im == A2.im);
  CHECK(dist(d[2], -(E * A1) / 2) < pow10(-62));
  CHECK(dist(d[3], -(E * A2) / 6) < pow10(-62));
  // 4n(n-1) d_n = -4E d_{n-2} + kappa d_{n-4} - 4 lambda d_{n-5}
  for (long n = 5; n <= 12; ++n) {
    const Complex rhs = -(E * 4 * d[n - 2]) + spec.kappa() * d[n - 4] - spec.lambda() * 4 * d[n - 5];
    CHECK(dist(d[n] * (4 * n * (n - 1)), rhs) < pow10(-60));
  }
  CHECK_THROWS_AS(wavefn::psi_series(spec, E, A1, A2, 0), DomainError);
}

TEST_CASE("asymptotic exponent matches the Thome phase") {
  mp::PrecisionScope scope(64);
  for (const char* arg : {"0", "0.2", "0.5"}) {
    const auto spec = spec_of("1", "1.7", arg);
    const Real x("9.3");
    const Real t = mp::sqrt(x);
    const Complex right = series::thome_phase(series::thome_exponents(spec, 1, 3), t);
    const Complex left = series::thome_phase(series::thome_exponents(spec, -1, 3), t);
    CHECK(dist(wavefn::asymptotic_exponent(spec, 1, x), right) < pow10(-55));
    CHECK(dist(wavefn::asymptotic_exponent(spec, -1, -x), left) < pow10(-55));
    // The left tail always decays.
    CHECK(wavefn::asymptotic_exponent(spec, -1, -x).re.sign() < 0);
  }
}

TEST_CASE("mixing coefficients reject a non-eigenvalue") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0.5");
  CHECK_THROWS_AS(wavefn::mixing_coefficients(spec, Complex(Real("1.3"))), ConsistencyError);
}

TEST_CASE("PT-symmetric ground state of H(1, i)") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0.5");
  const auto st = wavefn::Eigenstate::build(spec, Complex(Real("1.167454568")));
  CHECK(dist(st.A1, Complex(Real("0.4506119146"))) < pow10(-9));
  CHECK(dist(st.A2, cx("0", "0.2126331531")) < pow10(-9));
  CHECK(mp::abs(st.N - Real("1.66344664")) / st.N < pow10(-7));
  CHECK(st.mixing.right_residual < pow10(-40));
  CHECK(st.mixing.left_residual < pow10(-40));
  CHECK(dist(st.psi(Real(0)), st.A1 * st.N) < pow10(-60));

  double worst = 0;
  double peak = 0;
  for (int k = 0; k <= 80; ++k) {
    const double x = 0.1 * k;
    const auto p = st.psi(x);
    const auto m = st.psi(-x);
    peak = std::max(peak, std::abs(p));
    worst = std::max(worst, std::abs(m - std::conj(p)));
  }
  CHECK(worst <= 1e-15 * peak);
  CHECK(wavefn::norm_integral(st) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("series and asymptotic forms join") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("0", "1", "0.25");
  const auto st = wavefn::Eigenstate::build(spec, cx("1.099675333", "-0.3573061753"));
  for (int side : {1, -1}) {
    const auto& sd = side > 0 ? st.right : st.left;
    CHECK(sd.handover_mismatch <= Tolerances::plateau(spec.precision));
    const Real x = sd.x_switch * static_cast<long>(side);
    const Complex a = st.series_value(x);
    const Complex b = st.asymptotic_value(x);
    CHECK(dist(a, b) / mp::abs(b) < pow10(-20));
  }
  // psi = x^{1/4} (A1 w1 + A2 w2)(sqrt x) on the right.
  const Real x("0.7");
  const Real t = mp::sqrt(x);
  const auto w1 = series::frobenius_eval(series::frobenius(spec, 1, 1, st.E, 400), t, pow10(-62));
  const auto w2 = series::frobenius_eval(series::frobenius(spec, 1, 2, st.E, 400), t, pow10(-62));
  const Complex via_w = (st.A1 * w1.value + st.A2 * w2.value) * mp::sqrt(t);
  CHECK(dist(via_w, st.series_value(x)) < pow10(-55));
  CHECK(mp::abs(st.N - Real("1.47311606")) / st.N < pow10(-7));
}

TEST_CASE("Gamow state tail falls like x^-3/2") {
  mp::PrecisionScope scope(64);
  const auto spec = spec_of("1", "1", "0");
  const auto st = wavefn::Eigenstate::build(spec, cx("0.9327822178", "-0.6679945787"));
  CHECK(dist(st.A1, cx("0.4628577159", "-0.1381312181")) < pow10(-9));
  CHECK(dist(st.A2, cx("0.1664674468", "0.1856562056")) < pow10(-9));
  CHECK(mp::abs(st.N - Real("0.81730935")) / st.N < pow10(-7));
  auto scaled = [&](double x) { return std::norm(st.psi(x)) * std::pow(x, 1.5); };
  const double a = scaled(1e4);
  const double b = scaled(4e4);
  CHECK(a > 0);
  CHECK(b / a == doctest::Approx(1.0).epsilon(0.01));
  // Left side decays super-exponentially.
  CHECK(std::abs(st.psi(-6.0)) < 1e-6 * std::abs(st.psi(0.0)));
  CHECK(wavefn::norm_integral(st) == doctest::Approx(1.0).epsilon(1e-10));
}
