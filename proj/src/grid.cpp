#include "qcmod/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace qcmod {

Grid::Grid(Vec lo_, Vec hi_, std::vector<int> res_)
    : lo(std::move(lo_)), hi(std::move(hi_)), res(std::move(res_)) {
  if (lo.size() < 2 || lo.size() != hi.size() || res.size() != lo.size()) {
    throw std::invalid_argument("grid needs matching lo/hi/res, n >= 2");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw std::invalid_argument("grid box must be finite with lo < hi");
    }
    if (res[i] < 8) throw std::invalid_argument("grid needs >= 8 cells per axis");
  }
}

Grid::Grid(Vec lo_, Vec hi_, int res_per_axis)
    : Grid(lo_, hi_, std::vector<int>(lo_.size(), res_per_axis)) {}

std::size_t Grid::cell_count() const {
  std::size_t c = 1;
  for (int r : res) c *= static_cast<std::size_t>(r);
  return c;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= edge(i);
  return v;
}

bool Grid::contains(const Vec& p) const {
  if (p.size() != lo.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

std::size_t Grid::cell_of(const Vec& p) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double h = edge(static_cast<int>(i));
    int k = static_cast<int>(std::floor((p[i] - lo[i]) / h));
    k = std::clamp(k, 0, res[i] - 1);
    flat = flat * static_cast<std::size_t>(res[i]) + static_cast<std::size_t>(k);
  }
  return flat;
}

Vec Grid::cell_center(std::size_t flat) const {
  Vec c(lo.size());
  for (int i = dim() - 1; i >= 0; --i) {
    const auto r = static_cast<std::size_t>(res[static_cast<std::size_t>(i)]);
    const std::size_t k = flat % r;
    flat /= r;
    c[static_cast<std::size_t>(i)] =
        lo[static_cast<std::size_t>(i)] + (static_cast<double>(k) + 0.5) * edge(i);
  }
  return c;
}

GridDensity::GridDensity(Grid grid_, std::vector<double> values_)
    : grid(std::move(grid_)), values(std::move(values_)) {
  if (values.size() != grid.cell_count()) {
    throw std::invalid_argument("density size does not match grid");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("density values must be finite and >= 0");
    }
  }
}

GridDensity GridDensity::zeros(const Grid& g) {
  return GridDensity(g, std::vector<double>(g.cell_count(), 0.0));
}

GridDensity GridDensity::constant(const Grid& g, double v) {
  return GridDensity(g, std::vector<double>(g.cell_count(), v));
}

Grid fit_grid(const std::vector<const CurveFamily*>& fams, int res_per_axis,
              double padding) {
  std::size_t n = 0;
  for (const auto* f : fams) {
    if (f && !f->empty()) {
      n = f->curves.front().vertices.front().size();
      break;
    }
  }
  if (n == 0) throw std::invalid_argument("fit_grid over empty families");

  Vec lo(n, std::numeric_limits<double>::infinity());
  Vec hi(n, -std::numeric_limits<double>::infinity());
  for (const auto* f : fams) {
    if (!f) continue;
    for (const auto& c : f->curves) {
      for (const auto& v : c.vertices) {
        for (std::size_t i = 0; i < n; ++i) {
          lo[i] = std::min(lo[i], v[i]);
          hi[i] = std::max(hi[i], v[i]);
        }
      }
    }
  }
  double max_extent = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_extent = std::max(max_extent, hi[i] - lo[i]);
  if (max_extent <= 0.0) max_extent = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pad = padding * std::max(hi[i] - lo[i], 0.01 * max_extent);
    lo[i] -= pad;
    hi[i] += pad;
  }
  return Grid(std::move(lo), std::move(hi),
              std::vector<int>(n, res_per_axis));
}

Grid fit_grid(const CurveFamily& fam, int res_per_axis, double padding) {
  return fit_grid(std::vector<const CurveFamily*>{&fam}, res_per_axis, padding);
}

std::vector<std::pair<std::size_t, double>> curve_cell_lengths(const Grid& g,
                                                               const Polyline& c) {
  if (c.dim() != g.dim()) {
    throw std::invalid_argument("curve and grid dimension mismatch");
  }
  std::unordered_map<std::size_t, double> acc;
  std::vector<double> cuts;

  for (std::size_t s = 0; s + 1 < c.vertices.size(); ++s) {
    const Vec& p = c.vertices[s];
    const Vec& q = c.vertices[s + 1];
    if (!g.contains(p) || !g.contains(q)) {
      throw std::invalid_argument("curve exits grid");
    }
    const Vec d = sub(q, p);
    const double seg_len = norm(d);
    if (seg_len == 0.0) continue;

    cuts.clear();
    cuts.push_back(0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (d[i] == 0.0) continue;
      const double h = g.edge(static_cast<int>(i));
      const double a = (std::min(p[i], q[i]) - g.lo[i]) / h;
      const double b = (std::max(p[i], q[i]) - g.lo[i]) / h;
      for (int k = static_cast<int>(std::ceil(a)); k <= static_cast<int>(std::floor(b)); ++k) {
        const double t = (g.lo[i] + k * h - p[i]) / d[i];
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());

    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const double dt = cuts[j + 1] - cuts[j];
      if (dt <= 0.0) continue;
      const double tm = 0.5 * (cuts[j] + cuts[j + 1]);
      Vec mid(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) mid[i] = p[i] + tm * d[i];
      acc[g.cell_of(mid)] += seg_len * dt;
    }
  }

  std::vector<std::pair<std::size_t, double>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcmod
