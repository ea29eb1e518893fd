#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qcmod/curves.hpp"
#include "qcmod/geometry.hpp"
#include "qcmod/grid.hpp"

namespace qcmod {

/// Surface area of the unit (n-1)-sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_surface_area(int n);

/// Modulus of the radial curve family of the ring r1 < |x| < r2:
/// omega_{n-1} (log(r2/r1))^{1-n}.
double analytic_ring_modulus(int n, double r1, double r2);

/// Radial test density on (r1, r2): the unit-mass step, the extremal density
/// 1/(t log(r2/r1)), or a tabulated piecewise-linear profile.
class RadialTestDensity {
 public:
  enum class Kind { Step, Extremal, Tabulated };

  static RadialTestDensity step(double r1, double r2);
  static RadialTestDensity extremal(double r1, double r2);
  static RadialTestDensity tabulated(std::vector<double> knots,
                                     std::vector<double> values);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  double r1() const { return r1_; }
  double r2() const { return r2_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double r) const;  // zero outside [r1, r2]

 private:
  RadialTestDensity(Kind k, double r1, double r2);
  Kind kind_;
  double r1_, r2_;
  std::vector<double> knots_, values_;
};

struct EtaCheck {
  double integral = 0.0;
  bool admissible = false;
};

/// Total mass of eta over (r1, r2); admissible when >= 1 - 1e-12. Closed form
/// for the step and extremal kinds, quadrature for tabulated profiles.
EtaCheck admissible_eta(const RadialTestDensity& eta);

struct ModulusEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // max constraint violation of the reported density
};

struct SolverOptions {
  double tol = 1e-4;
  int max_iter = 20000;
};

/// Discrete modulus of a sampled family: minimize sum_c rho_c^n vol over
/// densities with unit line integral along every curve. Projected subgradient
/// with Polyak-style steps from the uniform admissible density, nonnegativity
/// projection each step, and a rescaled-to-admissible certificate at exit, so
/// the returned value is an upper bound for the sampled family.
ModulusEstimate discrete_modulus(const CurveFamily& fam, const Grid& grid,
                                 int exponent, const SolverOptions& opts = {},
                                 GridDensity* density_out = nullptr);
ModulusEstimate discrete_modulus(const CurveFamily& fam, const Grid& grid,
                                 int exponent, double tol, int max_iter);

struct RhsResult {
  double value = 0.0;
  bool divergent = false;
};

/// omega_{n-1} * integral over (a.r1, a.r2) of Q(r) eta(r)^n r^{n-1} dr by
/// refining quadrature (abs tol 1e-9), with divergence detection.
RhsResult rhs_integral(const std::function<double(double)>& Qr,
                       const RadialTestDensity& eta, const Annulus& a, int n);

/// ||Q||_1 / (eps1_star - eps1)^n.
double eq4_bound(double Q_l1, double eps1, double eps1_star, int n);

/// c_n log(eps0/eps).
double weak_flat_lower_bound(double c_n, double eps0, double eps);

}  // namespace qcmod
