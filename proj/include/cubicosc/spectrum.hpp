#pragma once

#include <string>
#include <vector>

#include "cubicosc/connection.hpp"

namespace cubicosc::spectrum {

/// F(E) = T_14^(+) T_24^(-) + T_24^(+) T_14^(-). Zero exactly at eigenvalues
/// (Gamow energies when lambda is real).
Complex eigencondition(const ProblemSpec& spec, const Complex& E);

struct EigenResult {
  Complex E;
  /// |F(E)|
  Real residual;
  /// |F(E)| / (|T_14^+ T_24^-| + |T_24^+ T_14^-|): the cancellation achieved.
  Real relative_residual;
  int iterations = 0;
  Complex seed_used;
  Real error_estimate;
};

struct SolverOptions {
  int max_iterations = 60;
  /// Iterations without residual decrease before switching to Muller steps.
  int stagnation_limit = 3;
};

/// Complex secant iteration on F with a Muller fallback. Stops when the step
/// and the relative residual are below tol, or the residual reaches the
/// connection-factor noise floor. tol <= 0 selects 10^(-digits/2).
EigenResult find_eigenvalue(const ProblemSpec& spec, const Complex& seed, const Real& tol,
                            const SolverOptions& options = {});

/// (lambda e^{-i pi/2})^{2/5} E_ref, the kappa = 0 scaling from lambda = i.
Complex symanzik_scale(const Complex& E_ref, const Complex& lambda);

/// Semiclassical estimate of the k-th (k >= 1) eigenvalue of H(0, i).
double pure_cubic_estimate(int level);

struct SpectrumRow {
  std::string arg_over_pi;
  int level = 1;
  EigenResult result;
};

struct SpectrumTable {
  std::string kappa;
  std::string lambda_modulus;
  std::vector<SpectrumRow> rows;
};

struct TraceOptions {
  mp::Precision precision;
  Real tol;  // <= 0: default
  /// Seeds at arg lambda = pi/2, one per level; empty selects the scaled
  /// kappa = 0 values.
  std::vector<Complex> seeds;
};

/// Solves levels 1..K at arg lambda / pi = grid[0] (normally 1/2) and follows
/// each one through the remaining grid points in order, seeding every step
/// by extrapolation from the previous ones. Rows are ordered by grid point,
/// then level.
SpectrumTable trace_levels(std::string_view kappa, std::string_view lambda_modulus, int levels,
                           const std::vector<std::string>& grid, const TraceOptions& options);

/// Eigenvalues of H(0, i) for levels 1..K, solved from semiclassical seeds.
std::vector<Complex> pure_cubic_reference(int levels, const mp::Precision& precision);

struct SectorImage {
  Complex lambda;
  Complex E;
  bool conjugated = false;
  /// psi(x) -> psi(-x)
  bool reflected = false;
};

/// Images of a first-quadrant (lambda, E) pair in the other three quadrants:
/// conjugation, reflection x -> -x, and both.
std::vector<SectorImage> reflect_sector(const Complex& lambda, const Complex& E);

}  // namespace cubicosc::spectrum
