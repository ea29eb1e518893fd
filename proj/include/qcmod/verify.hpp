#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcmod/curves.hpp"
#include "qcmod/geometry.hpp"
#include "qcmod/grid.hpp"
#include "qcmod/mappings.hpp"
#include "qcmod/modulus.hpp"

namespace qcmod {

enum class Verdict { Satisfied, Violated, Undetermined };
std::string verdict_name(Verdict v);

struct VerifyParams {
  int fam_size = 720;
  int subdiv = 64;
  int refine = 0;
  int grid_res = 256;
  double tol = 1e-4;
  int max_iter = 20000;
};

/// Outcome of one inequality check: modulus estimate of the image family on
/// the left, an integral on the right, and a one-sided verdict. "Satisfied"
/// allows slack 2*tol*rhs because the solver certifies an upper bound.
struct VerificationReport {
  ModulusEstimate lhs;
  double rhs = 0.0;
  bool rhs_divergent = false;
  double margin = 0.0;  // rhs - lhs.value
  double slack = 0.0;
  Verdict verdict = Verdict::Undetermined;

  std::string mapping;
  std::string eta_kind;
  int n = 0;
  Vec center;
  double r1 = 0.0, r2 = 0.0;
  int grid_res = 0;
  double tol = 0.0;
  int fam_size = 0;
};

/// Ring inequality on A(center, r1, r2): modulus of the mapped radial family
/// against omega int Q eta^n r^{n-1} dr. The test density must be admissible.
VerificationReport verify_ring_inequality(const MappingHandle& map,
                                          const std::function<double(double)>& Qr,
                                          const Annulus& a,
                                          const RadialTestDensity& eta,
                                          const VerifyParams& params = {});

/// General inequality: modulus of the mapped family against
/// sum Q rho^n vol over the source grid; rho must be admissible for fam.
VerificationReport verify_general_inequality(const MappingHandle& map,
                                             const GridDensity& Q,
                                             const CurveFamily& fam,
                                             const GridDensity& rho,
                                             const VerifyParams& params = {});

struct WeakFlatParams {
  int fam_size = 192;
  int subdiv = 16;
  int grid_res = 128;
  double tol = 1e-4;
  int max_iter = 8000;
  std::uint64_t seed = 0;
};

struct WeakFlatnessResult {
  double eps0 = 0.0;
  double eps = 0.0;
  double c_n = 0.0;
  double P = 0.0;
  double bound = 0.0;  // c_n log(eps0/eps)
  ModulusEstimate discrete;
};

/// Picks eps so that c_n log(eps0/eps) exceeds P, builds radial continua
/// crossing both S(x0,eps0) and S(x0,eps) on two perpendicular rays, connects
/// them around the puncture, and measures the discrete modulus.
WeakFlatnessResult weak_flatness_probe(const Vec& x0, double eps0, double P,
                                       double c_n,
                                       const WeakFlatParams& params = {});

/// Same probe at an explicitly chosen eps.
WeakFlatnessResult weak_flatness_probe_at(const Vec& x0, double eps0,
                                          double eps, double c_n,
                                          const WeakFlatParams& params = {});

struct RecenterResult {
  int k0 = 0;
  double eps_t1 = 0.0;
  double eps_t2 = 0.0;
  bool centers_checked = false;
  Vec shifted_center;  // the recentering point a_{k0+1}
};

/// Nested-ball recentering: k0 = max(1, ceil(3/(eps1_star-eps1))),
/// eps_t1 = eps1 + 1/(k0+1), eps_t2 = eps1 + 2/(k0+1), with the four-ball
/// inclusion chain checked on sampled sphere points.
RecenterResult recenter_annulus(const Vec& x1, double eps1, double eps1_star,
                                int sphere_samples = 1000);

struct MinorizationCheck {
  ModulusEstimate original;    // ring about x1, radii (eps1, eps1_star)
  ModulusEstimate recentered;  // ring about a, radii (eps_t1, eps_t2)
  double slack = 0.0;
  bool holds = false;  // original <= recentered + slack
};

/// Modulus comparison behind the recentering: the wide ring family about x1
/// is minorized by the recentered narrow ring family.
MinorizationCheck recenter_minorization(const Vec& x1, double eps1,
                                        double eps1_star,
                                        const VerifyParams& params = {});

struct ClusterOptions {
  double osc_threshold = 1e-3;  // chordal oscillation cutoff at the last radius
  int trend_radii = 3;          // minimum series length for a verdict
  double trend_slack = 0.10;    // tolerated non-monotonicity from sampling
};

/// Image oscillation of a map on shrinking spheres about a boundary point.
struct ClusterProbe {
  Vec target;
  std::vector<double> radii;
  std::vector<double> oscillation;          // Euclidean diameter per radius
  std::vector<double> oscillation_chordal;  // chordal diameter per radius
  std::vector<std::vector<Vec>> images;     // sampled image points per radius
  bool extends = false;
  Vec limit;  // centroid of the smallest-radius image batch
};

ClusterProbe cluster_probe(const MappingHandle& map, const Vec& target,
                           std::vector<double> radii, int dirs,
                           const ClusterOptions& opts = {});

}  // namespace qcmod
