#pragma once

#include <Eigen/Dense>
#include <vector>

#include "temax/ball_oracle.hpp"
#include "temax/chebyshev.hpp"
#include "temax/media.hpp"

namespace temax {

/// One spherical-harmonic sector of the (optionally δ-regularised) transmission system on the unit ball.
///
/// A sector element of the constrained space is stored as nodal profiles (s, w, ŝ, ŵ):
///   TE: u = s Φ,  μ v = curl(w Φ)   (and hats);   TM: ε u = curl(w Φ),  v = s Φ.
/// Regularity pins every profile to 0 at r = 0, and w(1) = ŵ(1) encodes the normal-flux matching.
/// hat_sign = +1 is the transmission system itself; -1 flips k in the hatted equations.
struct SectorSystem {
  int n = 1;
  Polarization pol = Polarization::TE;
  RadialMedia media;
  Wavenumber k;
  double delta = 0.0;
  int hat_sign = 1;
  int grid = 64;  // Chebyshev N

  void validate() const;
};

struct SectorField {
  Eigen::VectorXcd s, w, s_hat, w_hat;

  static SectorField zero(int nodes);
  Eigen::VectorXcd stacked() const;
  static SectorField unstack(const Eigen::VectorXcd& x);
};

struct LinearSystem {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd b;
};

/// Collocation system for (q, q̂), q = r(e - w) in each medium; rows at r = 0 and r = 1 carry the
/// regularity and tangential matching conditions.
LinearSystem assemble_sector(const SectorSystem& sys, const SectorField& source);

struct SectorSolution {
  Eigen::VectorXcd q, q_hat;
  SectorField fields;  // output (E, H, Ê, Ĥ) in the same sector representation
};

SectorSolution solve_sector(const SectorSystem& sys, const SectorField& source);

/// Squared H-norm (L² of all four fields) of a sector element.
double sector_norm(const SectorSystem& sys, const SectorField& f);

/// |w(1) - ŵ(1)| and the largest value at r = 0, relative to the largest nodal value.
double h_constraint_residual(const SectorField& f);

/// Smooth regular test source used by the sweeps.
SectorField default_source(const ChebGrid& g, int n);

struct SweepReport {
  std::vector<double> deltas;
  std::vector<double> differences;  // H-norm of consecutive solution differences
  std::vector<double> ratios;       // consecutive difference ratios
  std::vector<double> expected;     // ratios implied by first-order dependence on δ
  bool first_order = false;
  SectorField extrapolated;         // Richardson limit from the last two solves
  double limit_mismatch = NAN;      // relative H-distance to the δ = 0 solve
};

SweepReport limiting_absorption_sweep(const SectorSystem& sys, const SectorField& source,
                                      const std::vector<double>& deltas);

struct OperatorT {
  SectorSystem sys;
  Eigen::MatrixXcd T;     // coordinates → coordinates
  Eigen::MatrixXcd gram;  // H inner product in coordinates
  Eigen::MatrixXcd basis; // coordinates → stacked nodal profiles
  Eigen::VectorXd flip;   // ±1: -1 on E-type coordinates
};

/// Limiting-absorption solution operator restricted to one sector (δ = 0, hat_sign = +1).
OperatorT operator_T_matrix(const RadialMedia& media, const Wavenumber& k, int n, Polarization pol, int grid);

/// Singular values of T in the H-norm, descending.
Eigen::VectorXd operator_singular_values(const OperatorT& op);

struct SpectrumEntry {
  cplx tau;
  cplx omega;
  bool physical = false;
  double movement = NAN;  // relative distance to the nearest eigenvalue on the refined grid
};

/// Eigenvalues τ of T·S; k' = k + 1/τ, ω' = -i k'. Entries with |τ| below roundoff are dropped.
std::vector<SpectrumEntry> spectrum_T(const OperatorT& op);

/// Spectrum at `grid` flagged physical when it moves by < tol relative on a grid of 2·grid.
std::vector<SpectrumEntry> physical_spectrum(const RadialMedia& media, const Wavenumber& k, int n, Polarization pol,
                                             int grid, double tol = 1e-3, double omega_max = INFINITY);

struct ThresholdReport {
  std::vector<double> k_abs;
  std::vector<SweepReport> sweeps;
  double threshold = NAN;  // smallest |k| from which every later sweep is first order
};

/// Scans |k| along arg k = `arg` and locates where the δ-sweep becomes first order.
ThresholdReport sweep_threshold(const RadialMedia& media, int n, Polarization pol, double arg,
                                const std::vector<double>& k_abs, int grid, int hat_sign = -1);

}  // namespace temax
