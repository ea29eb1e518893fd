#include "qcmod/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcmod {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

Verdict decide(const ModulusEstimate& lhs, double rhs, bool rhs_divergent,
               double slack) {
  if (rhs_divergent) return Verdict::Satisfied;  // vacuous bound
  if (!lhs.converged) return Verdict::Undetermined;
  return lhs.value <= rhs + slack ? Verdict::Satisfied : Verdict::Violated;
}

void check_annulus_in_domain(const MappingHandle& map, const Annulus& a) {
  const int n = a.dim();
  for (double r : {a.r1, std::sqrt(a.r1 * a.r2), a.r2}) {
    for (const Vec& d : sphere_directions(n, 64)) {
      const Vec p = add(a.center, scaled(d, r));
      if (!map.in_domain(p)) {
        throw std::invalid_argument("annulus is not inside the mapping domain");
      }
    }
  }
}

}  // namespace

VerificationReport verify_ring_inequality(const MappingHandle& map,
                                          const std::function<double(double)>& Qr,
                                          const Annulus& a,
                                          const RadialTestDensity& eta,
                                          const VerifyParams& params) {
  const EtaCheck check = admissible_eta(eta);
  if (!check.admissible) {
    throw std::invalid_argument(
        "test density is not admissible (mass " + std::to_string(check.integral) +
        " < 1); the ring inequality is only claimed for admissible densities");
  }
  check_annulus_in_domain(map, a);

  const int n = a.dim();
  CurveFamily fam = ring_family(a, params.fam_size, params.subdiv);
  CurveFamily image = map_family(map, fam, params.refine);
  Grid grid = fit_grid(image, params.grid_res);

  VerificationReport rep;
  rep.lhs = discrete_modulus(image, grid, n,
                             SolverOptions{params.tol, params.max_iter});
  RhsResult rhs = rhs_integral(Qr, eta, a, n);
  rep.rhs = rhs.value;
  rep.rhs_divergent = rhs.divergent;
  rep.slack = 2.0 * params.tol * rhs.value;
  rep.margin = rhs.value - rep.lhs.value;
  rep.verdict = decide(rep.lhs, rhs.value, rhs.divergent, rep.slack);

  rep.mapping = map.description;
  rep.eta_kind = eta.kind_name();
  rep.n = n;
  rep.center = a.center;
  rep.r1 = a.r1;
  rep.r2 = a.r2;
  rep.grid_res = params.grid_res;
  rep.tol = params.tol;
  rep.fam_size = params.fam_size;
  return rep;
}

VerificationReport verify_general_inequality(const MappingHandle& map,
                                             const GridDensity& Q,
                                             const CurveFamily& fam,
                                             const GridDensity& rho,
                                             const VerifyParams& params) {
  if (!(Q.grid == rho.grid)) {
    throw std::invalid_argument("Q and rho must share one grid");
  }
  const int n = fam.empty() ? rho.grid.dim() : fam.dim();

  // admissibility of rho for the family on the source grid
  for (const auto& curve : fam.curves) {
    double line = 0.0;
    for (const auto& [cell, len] : curve_cell_lengths(rho.grid, curve)) {
      line += rho.values[cell] * len;
    }
    if (line < 1.0 - 1e-9) {
      throw std::invalid_argument("rho is not admissible for the family (curve integral " +
                                  std::to_string(line) + " < 1)");
    }
  }

  double rhs = 0.0;
  const double vol = rho.grid.cell_volume();
  for (std::size_t c = 0; c < rho.values.size(); ++c) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= rho.values[c];
    rhs += Q.values[c] * p;
  }
  rhs *= vol;

  VerificationReport rep;
  if (fam.empty()) {
    rep.lhs.converged = true;  // empty family has modulus 0
  } else {
    CurveFamily image = map_family(map, fam, params.refine);
    Grid grid = fit_grid(image, params.grid_res);
    rep.lhs = discrete_modulus(image, grid, n,
                               SolverOptions{params.tol, params.max_iter});
  }
  rep.rhs = rhs;
  rep.slack = 2.0 * params.tol * rhs;
  rep.margin = rhs - rep.lhs.value;
  rep.verdict = decide(rep.lhs, rhs, false, rep.slack);

  rep.mapping = map.description;
  rep.eta_kind = "grid-density";
  rep.n = n;
  rep.grid_res = params.grid_res;
  rep.tol = params.tol;
  rep.fam_size = static_cast<int>(fam.curves.size());
  return rep;
}

namespace {

// Radial sample cloud spanning [r_lo, r_hi] along one direction; crosses
// every sphere S(x0, r) with r_lo < r < r_hi.
PointSet radial_continuum(const Vec& x0, const Vec& dir, double r_lo,
                          double r_hi, int count) {
  PointSet s;
  s.points.reserve(static_cast<std::size_t>(count));
  const double ratio = r_hi / r_lo;
  for (int j = 0; j < count; ++j) {
    const double r =
        count == 1 ? r_lo
                   : r_lo * std::pow(ratio, static_cast<double>(j) / (count - 1));
    s.points.push_back(add(x0, scaled(dir, r)));
  }
  return s;
}

}  // namespace

WeakFlatnessResult weak_flatness_probe_at(const Vec& x0, double eps0,
                                          double eps, double c_n,
                                          const WeakFlatParams& params) {
  if (!(eps0 > 0.0) || !(eps > 0.0) || !(eps < eps0)) {
    throw std::invalid_argument("weak flatness probe needs 0 < eps < eps0");
  }
  if (!(c_n > 0.0)) throw std::invalid_argument("weak flatness probe needs c_n > 0");
  const int n = static_cast<int>(x0.size());
  if (n < 2) throw std::invalid_argument("weak flatness probe needs n >= 2");

  Vec d1(x0.size(), 0.0), d2(x0.size(), 0.0);
  d1[0] = 1.0;
  d2[1] = 1.0;

  // Both continua span the whole radius range, so each crosses both spheres.
  PointSet E = radial_continuum(x0, d1, 0.9 * eps, 1.1 * eps0, params.fam_size);
  PointSet F = radial_continuum(x0, d2, 0.9 * eps, 1.1 * eps0, params.fam_size);
  std::vector<Ball> exclusions{Ball{x0, 0.5 * eps}};

  ConnectOptions copts;
  copts.subdiv = params.subdiv;
  copts.seed = params.seed;
  CurveFamily fam = connecting_family(E, F, exclusions, params.fam_size, copts);
  Grid grid = fit_grid(fam, params.grid_res);

  WeakFlatnessResult out;
  out.eps0 = eps0;
  out.eps = eps;
  out.c_n = c_n;
  out.bound = weak_flat_lower_bound(c_n, eps0, eps);
  out.discrete = discrete_modulus(fam, grid, n,
                                  SolverOptions{params.tol, params.max_iter});
  return out;
}

WeakFlatnessResult weak_flatness_probe(const Vec& x0, double eps0, double P,
                                       double c_n,
                                       const WeakFlatParams& params) {
  if (!(P > 0.0)) throw std::invalid_argument("weak flatness probe needs P > 0");
  if (!(eps0 > 0.0)) throw std::invalid_argument("weak flatness probe needs eps0 > 0");
  if (!(c_n > 0.0)) throw std::invalid_argument("weak flatness probe needs c_n > 0");
  // smallest-effort eps with c_n log(eps0/eps) > P
  const double eps = eps0 * std::exp(-(P / c_n) * (1.0 + 1e-6));
  WeakFlatnessResult out = weak_flatness_probe_at(x0, eps0, eps, c_n, params);
  out.P = P;
  return out;
}

RecenterResult recenter_annulus(const Vec& x1, double eps1, double eps1_star,
                                int sphere_samples) {
  if (!(eps1 > 0.0) || !(eps1 < eps1_star)) {
    throw std::invalid_argument("recenter_annulus needs 0 < eps1 < eps1_star");
  }
  if (x1.size() < 2) throw std::invalid_argument("recenter_annulus needs n >= 2");
  if (sphere_samples < 8) sphere_samples = 8;

  RecenterResult out;
  const double gap = eps1_star - eps1;
  out.k0 = std::max(1, static_cast<int>(std::ceil(3.0 / gap)));
  const double shift = 1.0 / (out.k0 + 1);
  out.eps_t1 = eps1 + shift;
  out.eps_t2 = eps1 + 2.0 * shift;

  Vec a = x1;
  a[0] += shift;
  out.shifted_center = a;

  // Four-ball chain on sampled sphere points, closed containment with a
  // relative tolerance; the outermost contacts are touching by construction.
  const int n = static_cast<int>(x1.size());
  const auto contained = [&](const Vec& center_s, double r_s, const Vec& center_b,
                             double r_b) {
    for (const Vec& d : sphere_directions(n, sphere_samples)) {
      const Vec p = add(center_s, scaled(d, r_s));
      if (dist(p, center_b) > r_b * (1.0 + 1e-12)) return false;
    }
    return true;
  };
  out.centers_checked = contained(x1, eps1, a, out.eps_t1) &&
                        out.eps_t1 < out.eps_t2 &&
                        contained(a, out.eps_t1, a, out.eps_t2) &&
                        contained(a, out.eps_t2, x1, eps1_star);
  return out;
}

MinorizationCheck recenter_minorization(const Vec& x1, double eps1,
                                        double eps1_star,
                                        const VerifyParams& params) {
  RecenterResult rc = recenter_annulus(x1, eps1, eps1_star);
  const int n = static_cast<int>(x1.size());

  CurveFamily wide = ring_family(Annulus(x1, eps1, eps1_star), params.fam_size,
                                 params.subdiv);
  CurveFamily narrow = ring_family(Annulus(rc.shifted_center, rc.eps_t1, rc.eps_t2),
                                   params.fam_size, params.subdiv);

  MinorizationCheck out;
  out.original = discrete_modulus(wide, fit_grid(wide, params.grid_res), n,
                                  SolverOptions{params.tol, params.max_iter});
  out.recentered = discrete_modulus(narrow, fit_grid(narrow, params.grid_res), n,
                                    SolverOptions{params.tol, params.max_iter});
  out.slack = 2.0 * params.tol * out.recentered.value;
  out.holds = out.original.value <= out.recentered.value + out.slack;
  return out;
}

ClusterProbe cluster_probe(const MappingHandle& map, const Vec& target,
                           std::vector<double> radii, int dirs,
                           const ClusterOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("cluster_probe needs radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw std::invalid_argument("cluster_probe radii must be positive and decreasing");
    }
  }
  if (dirs < 2) throw std::invalid_argument("cluster_probe needs dirs >= 2");
  const int n = static_cast<int>(target.size());
  if (n < 2) throw std::invalid_argument("cluster_probe needs n >= 2");

  ClusterProbe out;
  out.target = target;
  out.radii = radii;
  const auto directions = sphere_directions(n, dirs);

  for (double r : radii) {
    std::vector<Vec> batch;
    batch.reserve(directions.size());
    for (const Vec& d : directions) {
      const Vec p = add(target, scaled(d, r));
      if (map.in_domain(p)) batch.push_back(map.evaluate(p));
    }
    if (batch.empty()) {
      throw std::invalid_argument("all probe points outside the mapping domain at radius " +
                                  std::to_string(r));
    }
    PointSet ps{batch};
    out.oscillation.push_back(batch.size() > 1 ? diam(ps) : 0.0);
    out.oscillation_chordal.push_back(batch.size() > 1 ? diam_h(ps) : 0.0);
    out.images.push_back(std::move(batch));
  }

  const auto& last = out.images.back();
  Vec centroid(target.size(), 0.0);
  for (const Vec& y : last) centroid = add(centroid, y);
  out.limit = scaled(centroid, 1.0 / static_cast<double>(last.size()));

  // Verdict: enough radii, a non-increasing chordal oscillation trend, and a
  // small final oscillation.
  bool trend = static_cast<int>(radii.size()) >= opts.trend_radii;
  for (std::size_t i = 0; i + 1 < out.oscillation_chordal.size() && trend; ++i) {
    if (out.oscillation_chordal[i + 1] >
        out.oscillation_chordal[i] * (1.0 + opts.trend_slack) + 1e-15) {
      trend = false;
    }
  }
  out.extends = trend && out.oscillation_chordal.back() < opts.osc_threshold;
  return out;
}

}  // namespace qcmod
