#include "qcmod/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcmod {

namespace {

// Evaluate f, nudging the argument off the interval endpoints when the value
// is non-finite (integrable endpoint singularities).
double safe_eval(const std::function<double(double)>& f, double x, double a,
                 double b) {
  double v = f(x);
  if (std::isfinite(v)) return v;
  const double h = (b - a) * 1e-14;
  if (x <= a + h) v = f(a + h);
  else if (x >= b - h) v = f(b - h);
  return v;
}

}  // namespace

RefinedIntegral integrate_refining(const std::function<double(double)>& f,
                                   double a, double b, double abs_tol,
                                   int max_doublings) {
  RefinedIntegral out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }

  int panels = 8;
  std::vector<double> vals(static_cast<std::size_t>(panels) + 1);
  const double h0 = (b - a) / panels;
  for (int i = 0; i <= panels; ++i) {
    vals[static_cast<std::size_t>(i)] = safe_eval(f, a + i * h0, a, b);
  }

  auto simpson = [&](const std::vector<double>& v, double h) {
    double s = v.front() + v.back();
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      s += v[i] * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return s * h / 3.0;
  };

  double prev = simpson(vals, h0);
  int doubling_streak = 0;

  for (int m = 0; m < max_doublings; ++m) {
    panels *= 2;
    const double h = (b - a) / panels;
    std::vector<double> next(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) {
      if (i % 2 == 0) {
        next[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i / 2)];
      } else {
        next[static_cast<std::size_t>(i)] = safe_eval(f, a + i * h, a, b);
      }
    }
    vals.swap(next);
    const double cur = simpson(vals, h);

    if (!std::isfinite(cur)) {
      out.value = cur;
      out.divergent = true;
      out.panels = panels;
      return out;
    }
    if (std::abs(cur) >= 2.0 * std::abs(prev) && std::abs(cur) > 1e3 * abs_tol) {
      if (++doubling_streak >= 2) {
        out.value = cur;
        out.divergent = true;
        out.panels = panels;
        return out;
      }
    } else {
      doubling_streak = 0;
    }

    out.last_delta = std::abs(cur - prev);
    out.value = cur;
    out.panels = panels;
    if (out.last_delta <= abs_tol) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;  // neither converged nor provably divergent
}

RefinedIntegral integrate_pieces(const std::function<double(double)>& f,
                                 double a, double b,
                                 std::vector<double> breakpoints,
                                 double abs_tol) {
  std::vector<double> cuts;
  cuts.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double c : breakpoints) {
    if (c > a && c < b && c > cuts.back()) cuts.push_back(c);
  }
  cuts.push_back(b);

  RefinedIntegral total;
  total.converged = true;
  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    RefinedIntegral part = integrate_refining(f, cuts[i], cuts[i + 1], piece_tol);
    if (part.divergent) {
      total.divergent = true;
      total.converged = false;
      total.value = part.value;
      return total;
    }
    total.value += part.value;
    total.converged = total.converged && part.converged;
    total.last_delta = std::max(total.last_delta, part.last_delta);
    total.panels += part.panels;
  }
  return total;
}

}  // namespace qcmod
