#include "qcmod/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "qcmod/quadrature.hpp"

namespace qcmod {

double sphere_surface_area(int n) {
  if (n < 2) throw std::invalid_argument("sphere_surface_area needs n >= 2");
  return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

double analytic_ring_modulus(int n, double r1, double r2) {
  if (n < 2) throw std::invalid_argument("analytic_ring_modulus needs n >= 2");
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2)) {
    throw std::invalid_argument("analytic_ring_modulus needs 0 < r1 < r2");
  }
  return sphere_surface_area(n) * std::pow(std::log(r2 / r1), 1 - n);
}

RadialTestDensity::RadialTestDensity(Kind k, double r1, double r2)
    : kind_(k), r1_(r1), r2_(r2) {
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2)) {
    throw std::invalid_argument("test density needs 0 < r1 < r2");
  }
}

RadialTestDensity RadialTestDensity::step(double r1, double r2) {
  return RadialTestDensity(Kind::Step, r1, r2);
}

RadialTestDensity RadialTestDensity::extremal(double r1, double r2) {
  return RadialTestDensity(Kind::Extremal, r1, r2);
}

RadialTestDensity RadialTestDensity::tabulated(std::vector<double> knots,
                                               std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw std::invalid_argument("tabulated density needs matching knots/values, >= 2");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw std::invalid_argument("tabulated knots must be strictly increasing");
    }
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("tabulated values must be finite and >= 0");
    }
  }
  RadialTestDensity d(Kind::Tabulated, knots.front(), knots.back());
  d.knots_ = std::move(knots);
  d.values_ = std::move(values);
  return d;
}

std::string RadialTestDensity::kind_name() const {
  switch (kind_) {
    case Kind::Step: return "step";
    case Kind::Extremal: return "extremal";
    case Kind::Tabulated: return "tabulated";
  }
  return "?";
}

double RadialTestDensity::operator()(double r) const {
  if (r < r1_ || r > r2_) return 0.0;
  switch (kind_) {
    case Kind::Step:
      return 1.0 / (r2_ - r1_);
    case Kind::Extremal:
      return 1.0 / (r * std::log(r2_ / r1_));
    case Kind::Tabulated: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
      if (it == knots_.begin()) return values_.front();
      if (it == knots_.end()) return values_.back();
      const std::size_t j = static_cast<std::size_t>(it - knots_.begin());
      const double t = (r - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
      return values_[j - 1] + t * (values_[j] - values_[j - 1]);
    }
  }
  return 0.0;
}

EtaCheck admissible_eta(const RadialTestDensity& eta) {
  EtaCheck out;
  switch (eta.kind()) {
    case RadialTestDensity::Kind::Step:
    case RadialTestDensity::Kind::Extremal:
      out.integral = 1.0;  // (r2-r1)/(r2-r1) and int dt/(t log(r2/r1))
      break;
    case RadialTestDensity::Kind::Tabulated: {
      std::vector<double> bp(eta.knots().begin(), eta.knots().end());
      RefinedIntegral q = integrate_pieces([&](double r) { return eta(r); },
                                           eta.r1(), eta.r2(), bp, 1e-10);
      out.integral = q.value;
      break;
    }
  }
  out.admissible = out.integral >= 1.0 - 1e-12;
  return out;
}

namespace {

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

unsigned solver_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("QCMOD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return hw;
}

struct Incidence {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::uint32_t> col;  // local active-cell index
  std::vector<double> val;
  std::vector<double> row_norm2;
  std::vector<double> row_len;
  std::vector<std::size_t> active;  // local -> global flat cell
};

Incidence build_incidence(const CurveFamily& fam, const Grid& grid) {
  // Collect per-curve cell lengths; identical constraint rows are collapsed,
  // which makes duplicated curves exact no-ops.
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::unordered_set<std::string> seen;
  rows.reserve(fam.curves.size());
  for (const auto& curve : fam.curves) {
    auto cl = curve_cell_lengths(grid, curve);
    std::string key;
    key.resize(cl.size() * (sizeof(std::size_t) + sizeof(double)));
    char* p = key.data();
    for (const auto& [c, l] : cl) {
      std::memcpy(p, &c, sizeof(c));
      p += sizeof(c);
      std::memcpy(p, &l, sizeof(l));
      p += sizeof(l);
    }
    if (seen.insert(std::move(key)).second) rows.push_back(std::move(cl));
  }

  Incidence inc;
  inc.rows = rows.size();

  std::unordered_map<std::size_t, std::uint32_t> local;
  for (const auto& row : rows) {
    for (const auto& [c, l] : row) {
      if (!local.count(c)) {
        const auto id = static_cast<std::uint32_t>(inc.active.size());
        local.emplace(c, id);
        inc.active.push_back(c);
      }
    }
  }

  inc.row_ptr.push_back(0);
  for (const auto& row : rows) {
    double n2 = 0.0, len = 0.0;
    for (const auto& [c, l] : row) {
      inc.col.push_back(local.at(c));
      inc.val.push_back(l);
      n2 += l * l;
      len += l;
    }
    inc.row_ptr.push_back(inc.col.size());
    inc.row_norm2.push_back(n2);
    inc.row_len.push_back(len);
  }

  return inc;
}

void compute_constraints(const Incidence& inc, const std::vector<double>& rho,
                         std::vector<double>& L) {
  const auto eval_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double s = 0.0;
      for (std::size_t k = inc.row_ptr[i]; k < inc.row_ptr[i + 1]; ++k) {
        s += inc.val[k] * rho[inc.col[k]];
      }
      L[i] = s;
    }
  };
  const unsigned threads = solver_threads();
  if (threads <= 1 || inc.rows < 1024) {
    eval_range(0, inc.rows);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (inc.rows + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(inc.rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(eval_range, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ModulusEstimate discrete_modulus(const CurveFamily& fam, const Grid& grid,
                                 int exponent, const SolverOptions& opts,
                                 GridDensity* density_out) {
  if (exponent < 2) throw std::invalid_argument("discrete_modulus needs exponent >= 2");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("discrete_modulus needs tol > 0");
  if (opts.max_iter < 1) throw std::invalid_argument("discrete_modulus needs max_iter >= 1");

  ModulusEstimate est;
  if (fam.empty()) {
    est.converged = true;  // rho = 0 is admissible for the empty family
    if (density_out) *density_out = GridDensity::zeros(grid);
    return est;
  }
  if (fam.dim() != grid.dim()) {
    throw std::invalid_argument("family and grid dimension mismatch");
  }

  const Incidence inc = build_incidence(fam, grid);
  const std::size_t cells = inc.active.size();
  const double vol = grid.cell_volume();
  const int n = exponent;

  // Off-support cells carry no constraint, so zero is optimal there; the
  // iterate is uniform admissible on the support.
  double min_len = std::numeric_limits<double>::infinity();
  for (double l : inc.row_len) min_len = std::min(min_len, l);
  std::vector<double> rho(cells, 1.0 / min_len);
  std::vector<double> L(inc.rows);
  compute_constraints(inc, rho, L);

  const auto objective = [&](const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s += pow_int(x, n);
    return vol * s;
  };

  double f_best = std::numeric_limits<double>::infinity();
  double best_scale = 1.0;
  std::vector<double> rho_best;
  const auto try_certificate = [&](const std::vector<double>& cand,
                                   const std::vector<double>& cand_L) {
    const double m = *std::min_element(cand_L.begin(), cand_L.end());
    if (!(m > 0.0)) return;
    const double val = objective(cand) / pow_int(m, n);
    if (val < f_best) {
      f_best = val;
      best_scale = m;
      rho_best = cand;
    }
  };
  try_certificate(rho, L);

  // Polyak-style objective steps aim at a level delta below the best
  // certified value; the gap halves whenever progress stalls.
  const int window = 50;
  const int stall_limit = 20;
  const double feas_eps = 1e-7;
  double delta = 0.25 * f_best;
  double mark = f_best;
  int since_improve = 0;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opts.max_iter) + 1);
  history.push_back(f_best);

  // Ergodic tail average: when the alternation orbits the optimum, the orbit
  // barycenter certifies a tighter value than any single iterate. The average
  // restarts whenever the level gap halves.
  std::vector<double> avg_sum(cells, 0.0);
  std::vector<double> avg(cells, 0.0);
  std::vector<double> avg_L(inc.rows);
  double avg_count = 0.0;

  // Simultaneous Polyak projections onto the violated half-spaces; unlike a
  // sequential sweep this restoration has no row-order bias, so the
  // shrink/restore fixed point tracks the true optimum. The relaxation factor
  // comes from a Gershgorin bound on the row interference.
  double omega = 1.0;
  {
    double interference = 1.0;
    std::vector<double> deg(cells, 0.0);
    for (const auto c : inc.col) deg[c] += 1.0;
    for (std::size_t i = 0; i < inc.rows; ++i) {
      double s = 0.0;
      for (std::size_t kk = inc.row_ptr[i]; kk < inc.row_ptr[i + 1]; ++kk) {
        s += inc.val[kk] * inc.val[kk] * deg[inc.col[kk]];
      }
      interference = std::max(interference, s / inc.row_norm2[i]);
    }
    omega = std::min(1.0, 0.95 / interference);
  }
  std::vector<double> correction(cells);

  bool converged = false;
  int k = 0;
  while (k < opts.max_iter) {
    ++k;

    double prev_worst = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < 60; ++sweep) {
      double worst = 0.0;
      for (std::size_t i = 0; i < inc.rows; ++i) worst = std::max(worst, 1.0 - L[i]);
      if (worst <= feas_eps) break;
      if (worst > prev_worst) omega *= 0.5;  // runtime safeguard
      prev_worst = worst;
      std::fill(correction.begin(), correction.end(), 0.0);
      for (std::size_t i = 0; i < inc.rows; ++i) {
        const double viol = 1.0 - L[i];
        if (viol <= 0.0) continue;
        const double step = omega * viol / inc.row_norm2[i];
        for (std::size_t kk = inc.row_ptr[i]; kk < inc.row_ptr[i + 1]; ++kk) {
          correction[inc.col[kk]] += step * inc.val[kk];
        }
      }
      for (std::size_t c = 0; c < cells; ++c) rho[c] += correction[c];
      compute_constraints(inc, rho, L);
    }
    try_certificate(rho, L);

    for (std::size_t c = 0; c < cells; ++c) avg_sum[c] += rho[c];
    avg_count += 1.0;
    if (avg_count > 1.5) {
      for (std::size_t c = 0; c < cells; ++c) avg[c] = avg_sum[c] / avg_count;
      compute_constraints(inc, avg, avg_L);
      try_certificate(avg, avg_L);
    }
    history.push_back(f_best);

    const double floor = 0.125 * opts.tol * f_best;
    if (f_best <= mark - 0.2 * delta) {
      mark = f_best;
      since_improve = 0;
    } else if (++since_improve >= stall_limit) {
      delta = std::max(0.5 * delta, floor);
      mark = f_best;
      since_improve = 0;
      std::fill(avg_sum.begin(), avg_sum.end(), 0.0);
      avg_count = 0.0;
    }

    if (k >= window) {
      const double before = history[static_cast<std::size_t>(k - window)];
      if (before - f_best <= 0.5 * opts.tol * f_best && delta <= 1.01 * floor) {
        converged = true;
        break;
      }
    }

    // Objective phase: Polyak-style step toward the level f_best - delta,
    // then projection onto {rho >= 0}.
    const double F = objective(rho);
    const double target = f_best - delta;
    double grad_norm2 = 0.0;
    for (double x : rho) {
      const double g = n * vol * pow_int(x, n - 1);
      grad_norm2 += g * g;
    }
    if (grad_norm2 <= 0.0) break;
    double t = (F - target) / grad_norm2;
    if (t <= 0.0) t = delta / grad_norm2;
    for (double& x : rho) {
      x = std::max(0.0, x - t * n * vol * pow_int(x, n - 1));
    }
    compute_constraints(inc, rho, L);
  }

  // Certified output: the best iterate rescaled to exact admissibility.
  for (double& x : rho_best) x /= best_scale;
  compute_constraints(inc, rho_best, L);
  double min_L = *std::min_element(L.begin(), L.end());
  est.value = objective(rho_best);
  est.iterations = k;
  est.converged = converged;
  est.residual = std::max(0.0, 1.0 - min_L);

  if (density_out) {
    GridDensity d = GridDensity::zeros(grid);
    for (std::size_t c = 0; c < cells; ++c) d.values[inc.active[c]] = rho_best[c];
    *density_out = std::move(d);
  }
  return est;
}

ModulusEstimate discrete_modulus(const CurveFamily& fam, const Grid& grid,
                                 int exponent, double tol, int max_iter) {
  SolverOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return discrete_modulus(fam, grid, exponent, opts);
}

RhsResult rhs_integral(const std::function<double(double)>& Qr,
                       const RadialTestDensity& eta, const Annulus& a, int n) {
  if (n < 2) throw std::invalid_argument("rhs_integral needs n >= 2");
  RhsResult out;

  // eta vanishes outside its support, so integrate only the overlap.
  const double lo = std::max(a.r1, eta.r1());
  const double hi = std::min(a.r2, eta.r2());
  if (!(hi > lo)) return out;  // disjoint: rhs is 0

  const auto integrand = [&](double r) {
    return Qr(r) * pow_int(eta(r), n) * std::pow(r, n - 1);
  };
  std::vector<double> bp(eta.knots().begin(), eta.knots().end());
  RefinedIntegral q = integrate_pieces(integrand, lo, hi, bp, 1e-9);
  if (q.divergent) {
    out.divergent = true;
    return out;
  }
  out.value = sphere_surface_area(n) * q.value;
  return out;
}

double eq4_bound(double Q_l1, double eps1, double eps1_star, int n) {
  if (!(Q_l1 >= 0.0)) throw std::invalid_argument("eq4_bound needs ||Q|| >= 0");
  if (!(eps1 > 0.0) || !(eps1 < eps1_star)) {
    throw std::invalid_argument("eq4_bound needs 0 < eps1 < eps1_star");
  }
  return Q_l1 / pow_int(eps1_star - eps1, n);
}

double weak_flat_lower_bound(double c_n, double eps0, double eps) {
  if (!(c_n > 0.0)) throw std::invalid_argument("weak_flat_lower_bound needs c_n > 0");
  if (!(eps > 0.0) || !(eps < eps0)) {
    throw std::invalid_argument("weak_flat_lower_bound needs 0 < eps < eps0");
  }
  return c_n * std::log(eps0 / eps);
}

}  // namespace qcmod
