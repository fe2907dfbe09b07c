#include <doctest.h>

#include <random>

#include "cubicosc/scatter.hpp"

using namespace cubicosc;
using mp::pow10;

namespace {

ProblemSpec gamow_spec() { return ProblemSpec::from_polar("0", "2", "0", mp::Precision{64, 4}); }

Complex cx(const char* re, const char* im) { return {Real(re), Real(im)}; }

}  // namespace

TEST_CASE("S is unitary at real energies") {
  mp::PrecisionScope scope(64);
  const auto spec = gamow_spec();
  for (const char* e : {"0.01", "1.26", "5.5", "11.9"}) {
    const Complex S = scatter::s_matrix(spec, Real(e));
    CHECK(mp::abs(mp::abs(S) - 1) < Tolerances::plateau(spec.precision));
  }
  const auto complex_lambda = ProblemSpec::from_polar("0", "2", "0.1");
  CHECK_THROWS_AS(scatter::s_matrix(complex_lambda, Real(1)), DomainError);
}

TEST_CASE("numerator and denominator are conjugate-related") {
  mp::PrecisionScope scope(64);
  const auto spec = gamow_spec();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(0.2, 5.0);
  std::uniform_real_distribution<double> im(-1.5, 1.5);
  for (int k = 0; k < 3; ++k) {
    const Complex E(Real(re(rng)), Real(im(rng)));
    const auto v = scatter::scattering_function(spec, E);
    const auto w = scatter::scattering_function(spec, mp::conj(E));
    CHECK(mp::abs(w.numerator - mp::conj(v.denominator)) / mp::abs(v.denominator) < pow10(-30));
  }
}

TEST_CASE("pole at the Gamow energy, zero at its conjugate") {
  mp::PrecisionScope scope(64);
  const auto spec = gamow_spec();
  const auto r = spectrum::find_eigenvalue(spec, cx("1.2343200991", "-0.8967860451"), Real(0));
  const auto at_pole = scatter::scattering_function(spec, r.E);
  CHECK(at_pole.near_pole);
  const auto at_zero = scatter::scattering_function(spec, mp::conj(r.E));
  CHECK(mp::abs(at_zero.numerator) < pow10(-25) * mp::abs(at_zero.denominator));
  const auto regular = scatter::scattering_function(spec, Complex(Real("1.2")));
  CHECK_FALSE(regular.near_pole);
}

TEST_CASE("phase shift anchor, continuity and time delay") {
  mp::PrecisionScope scope(64);
  auto c = scatter::phase_shift_curve(gamow_spec(), scatter::linear_grid(0.01, 2.5, 26));
  scatter::time_delay_curve(c);
  REQUIRE(c.delta.size() == 26);
  CHECK(c.delta[0] >= 0);
  CHECK(c.delta[0] < M_PI);
  for (std::size_t k = 1; k < c.delta.size(); ++k) {
    CHECK(std::abs(c.delta[k] - c.delta[k - 1]) < M_PI / 2);
    // a positive time delay: delta rises through the resonance
    CHECK(c.delta[k] > c.delta[k - 1]);
  }
  for (std::size_t k = 0; k < c.S.size(); ++k) {
    // S = exp(2 i delta)
    const auto s = c.S[k].to_std();
    CHECK(std::abs(s - std::polar(1.0, 2 * c.delta[k])) < 1e-12);
  }
  CHECK(c.stencil_step == doctest::Approx(0.0996));
  const auto peaks = scatter::time_delay_peaks(c, 0.0);
  REQUIRE(peaks.size() == 1);
  CHECK(c.E[peaks[0]] == doctest::Approx(1.26).epsilon(0.05));
}

TEST_CASE("time delay of a flat phase") {
  scatter::ScatterCurve c(gamow_spec());
  c.E = {0.0, 0.5, 1.5, 2.0};
  c.delta = {1.0, 1.0, 1.0, 1.0};
  scatter::time_delay_curve(c);
  for (double t : c.time_delay) CHECK(t == 0.0);
  CHECK(scatter::time_delay_peaks(c, 0.0).empty());
  CHECK(scatter::resonances_from_curve(c, 0.0).empty());
  // Uneven stencil is exact on a straight line.
  c.delta = {0.0, 1.0, 3.0, 4.0};
  scatter::time_delay_curve(c);
  for (double t : c.time_delay) CHECK(t == doctest::Approx(4.0));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(scatter::linear_grid(1, 1, 5), DomainError);
  CHECK_THROWS_AS(scatter::linear_grid(0, 1, 1), DomainError);
  CHECK_THROWS_AS(scatter::phase_shift_curve(gamow_spec(), {1.0, 0.5}), DomainError);
}

TEST_CASE("the single resonance and the missing second hump") {
  mp::PrecisionScope scope(64);
  const auto spec = gamow_spec();
  const auto first = scatter::resonance_scan(spec, 0.5, 3.0, 51, 0.0);
  REQUIRE(first.size() == 1);
  CHECK(std::abs(first[0].E_peak - 1.26) <= 0.05);
  CHECK(mp::abs(first[0].gamow.E - cx("1.2343200991", "-0.8967860451")) < pow10(-9));
  CHECK(scatter::resonance_scan(spec, 3.5, 6.0, 21, 0.0).empty());
}
