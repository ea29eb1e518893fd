// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qcmod/report_json.hpp"
#include "qcmod/rng.hpp"
#include "qcmod/run.hpp"
#include "qcmod/verify.hpp"

using namespace qcmod;

namespace {

const double kE = std::exp(1.0);
const double kTwoPi = 2.0 * M_PI;

struct Criterion {
  std::string name;
  std::function<bool(std::ostringstream&)> check;
};

bool close_rel(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

// 1. discrete ring modulus against the analytic oracle, within 5% in 60 s
bool ring_modulus_oracle(std::ostringstream& note) {
  const auto t0 = std::chrono::steady_clock::now();
  const Annulus a(Vec{0.0, 0.0}, 1.0, kE);
  const CurveFamily fam = ring_family(a, 720, 64);
  const Grid grid = fit_grid(fam, 256);
  const ModulusEstimate est = discrete_modulus(fam, grid, 2, SolverOptions{1e-4, 20000});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  note << "discrete " << est.value << " vs 2pi " << kTwoPi << ", "
       << seconds << " s";
  return est.converged && close_rel(est.value, kTwoPi, 0.05) && seconds <= 60.0;
}

// 2. equality case: identity, Q = 1, extremal density
bool equality_case(std::ostringstream& note) {
  const Annulus a(Vec{0.0, 0.0}, 1.0, kE);
  VerifyParams p;  // 720 curves, subdiv 64, grid 256, tol 1e-4
  const VerificationReport rep = verify_ring_inequality(
      identity_mapping(2), [](double) { return 1.0; }, a,
      RadialTestDensity::extremal(1.0, kE), p);
  note << "lhs " << rep.lhs.value << ", rhs " << rep.rhs << ", margin "
       << rep.margin;
  return rep.lhs.converged && std::abs(rep.margin) <= 0.05 * rep.rhs;
}

// 3. the stretch example: alpha = 1, step density on A(0, 1/4, 1/2)
bool example_inequality(std::ostringstream& note) {
  const Annulus a(Vec{0.0, 0.0}, 0.25, 0.5);
  const RadialStretch m(1.0, 2);
  VerifyParams p;
  p.fam_size = 1440;  // azimuthal spacing matched to the 512 grid
  p.subdiv = 48;
  p.grid_res = 512;
  const VerificationReport rep = verify_ring_inequality(
      make_mapping("radial", 1.0, 2), [&](double r) { return Q_radial(r, m); },
      a, RadialTestDensity::step(0.25, 0.5), p);
  const double image_modulus = analytic_ring_modulus(2, 1.25, 1.5);
  const double closed_form = 11.0 * M_PI;  // 32 pi int (1+r) dr over [1/4,1/2]
  note << "lhs " << rep.lhs.value << " vs image ring " << image_modulus
       << ", rhs " << rep.rhs << " vs closed form " << closed_form;
  return rep.verdict == Verdict::Satisfied &&
         close_rel(rep.lhs.value, image_modulus, 0.05) &&
         std::abs(rep.rhs - closed_form) <= 1e-6;
}

// 4. rhs with the step density sits strictly below the L1 bound
bool eq4_chain(std::ostringstream& note) {
  const Annulus a(Vec{0.0, 0.0}, 0.25, 0.5);
  const RadialStretch m(1.0, 2);
  const RhsResult rhs = rhs_integral([&](double r) { return Q_radial(r, m); },
                                     RadialTestDensity::step(0.25, 0.5), a, 2);
  const LpNormResult q1 = lp_norm_Q(m, 1.0);
  const double bound = eq4_bound(q1.value, 0.25, 0.5, 2);
  note << "rhs " << rhs.value << " < bound " << bound << " (||Q||_1 "
       << q1.value << ")";
  return !rhs.divergent && q1.finite && rhs.value < bound;
}

// 5. integrability threshold at n = 2, p = 2
bool integrability_threshold(std::ostringstream& note) {
  const LpNormResult fine = lp_norm_Q(RadialStretch(0.9, 2), 2.0);
  const LpNormResult coarse = lp_norm_Q(RadialStretch(1.1, 2), 2.0);
  note << "alpha 0.9: value " << fine.value << ", delta "
       << fine.refinement_delta << "; alpha 1.1 divergent "
       << (coarse.finite ? "no" : "yes");
  return fine.finite && fine.refinement_delta < 1e-6 && !coarse.finite;
}

// 6. inverse round trip at 1e-12 over seeded domain points
bool round_trip(std::ostringstream& note) {
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (double alpha : {0.5, 1.0, 1.9}) {
      const RadialStretch m(alpha, n);
      Rng rng(1234);
      for (int i = 0; i < 10000; ++i) {
        const Vec x = scaled(rng.unit_vector(n), rng.uniform(1e-3, 1.0 - 1e-3));
        worst = std::max(worst, dist(radial_inverse(radial_forward(x, m), m), x));
      }
    }
  }
  note << "max |g(f(x)) - x| = " << worst;
  return worst <= 1e-12;
}

// 7. extension dichotomy at e2 and at the origin
bool extension_dichotomy(std::ostringstream& note) {
  const std::vector<double> radii{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const ClusterProbe at_e2 =
      cluster_probe(make_mapping("radial-inverse", 1.0, 2),
                    e2_point(RadialStretch(1.0, 2)), radii, 64);
  const ClusterProbe at_zero =
      cluster_probe(make_mapping("radial", 1.0, 2), Vec{0.0, 0.0}, radii, 64);
  note << "e2: osc " << at_e2.oscillation.back() << ", |limit - e1| "
       << dist(at_e2.limit, e1_point(2)) << "; 0: osc "
       << at_zero.oscillation.back();
  return at_e2.extends && at_e2.oscillation.back() < 1e-3 &&
         dist(at_e2.limit, e1_point(2)) <= 1e-3 &&
         std::abs(at_zero.oscillation.back() - 2.0) <= 0.05 * 2.0 &&
         !at_zero.extends;
}

// 8. weak flatness: moduli grow strictly as eps shrinks
bool weak_flatness_growth(std::ostringstream& note) {
  WeakFlatParams p;  // 192 curves, grid 128
  const double eps0 = 0.5;
  double prev = -1.0;
  bool increasing = true;
  for (double eps : {eps0 / 2.0, eps0 / 8.0, eps0 / 32.0}) {
    const WeakFlatnessResult r =
        weak_flatness_probe_at(Vec{0.0, 0.0}, eps0, eps, 1.0, p);
    note << "M(eps=" << eps << ") = " << r.discrete.value << "  ";
    increasing = increasing && r.discrete.converged && r.discrete.value > prev;
    prev = r.discrete.value;
  }
  return increasing;
}

// 9. recentering arithmetic, ball chain, and the modulus comparison
bool recenter_arithmetic(std::ostringstream& note) {
  const RecenterResult r = recenter_annulus(Vec{0.0, 0.0}, 1.0, 2.0, 1000);
  VerifyParams p;
  p.fam_size = 576;
  p.subdiv = 32;
  p.grid_res = 192;
  const MinorizationCheck m = recenter_minorization(Vec{0.0, 0.0}, 1.0, 2.0, p);
  note << "k0 " << r.k0 << ", radii (" << r.eps_t1 << ", " << r.eps_t2
       << "), chain " << (r.centers_checked ? "ok" : "broken") << ", moduli "
       << m.original.value << " <= " << m.recentered.value;
  return r.k0 == 3 && r.eps_t1 == 1.25 && r.eps_t2 == 1.5 &&
         r.centers_checked && m.holds;
}

// 10. property suite on small instances
bool property_suite(std::ostringstream& note) {
  const Annulus a(Vec{0.0, 0.0}, 1.0, 2.0);
  const CurveFamily fam = ring_family(a, 96, 12);
  const Grid grid = fit_grid(fam, 64);
  SolverOptions opts;

  CurveFamily doubled = fam;
  for (const auto& c : fam.curves) doubled.curves.push_back(c);
  const double v_full = discrete_modulus(fam, grid, 2, opts).value;
  const double v_doubled = discrete_modulus(doubled, grid, 2, opts).value;
  const bool duplication = std::abs(v_full - v_doubled) <= 1e-9;

  CurveFamily half;
  for (std::size_t i = 0; i < fam.curves.size(); i += 2) half.curves.push_back(fam.curves[i]);
  const double v_half = discrete_modulus(half, grid, 2, opts).value;
  const bool monotone = v_half <= v_full + 2.0 * opts.tol * v_full;

  GridDensity density = GridDensity::zeros(grid);
  const ModulusEstimate est = discrete_modulus(fam, grid, 2, opts, &density);
  double min_line = 1e300;
  for (const auto& c : fam.curves) {
    double line = 0.0;
    for (const auto& [cell, len] : curve_cell_lengths(grid, c)) {
      line += density.values[cell] * len;
    }
    min_line = std::min(min_line, line);
  }
  const bool admissible = est.residual <= 1e-9 && min_line >= 1.0 - 1e-9;

  RunConfig cfg;
  cfg.command = "weakflat";
  cfg.eps0 = 0.5;
  cfg.P = 1.0;
  cfg.cn = 1.0;
  cfg.curves = 64;
  cfg.grid = 64;
  cfg.max_iter = 4000;
  cfg.seed = 99;
  const bool deterministic = run(cfg).text == run(cfg).text;

  note << "duplication " << (duplication ? "ok" : "broken") << ", monotonicity "
       << (monotone ? "ok" : "broken") << ", exit admissibility "
       << (admissible ? "ok" : "broken") << ", determinism "
       << (deterministic ? "ok" : "broken");
  return duplication && monotone && admissible && deterministic;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"ring modulus oracle", ring_modulus_oracle},
      {"equality case", equality_case},
      {"example inequality", example_inequality},
      {"L1 bound chain", eq4_chain},
      {"integrability threshold", integrability_threshold},
      {"round trip", round_trip},
      {"extension dichotomy", extension_dichotomy},
      {"weak flatness growth", weak_flatness_growth},
      {"recentering", recenter_arithmetic},
      {"property suite", property_suite},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::ostringstream note;
    bool ok = false;
    try {
      ok = criteria[i].check(note);
    } catch (const std::exception& e) {
      note << "exception: " << e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %zu: %s (%s)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), note.str().c_str());
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
