#include "qcmod/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcmod {

namespace {

void require_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch between points");
  }
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double dist(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec add(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

bool finite(const Vec& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

ExtendedPoint::ExtendedPoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("point dimension must be >= 2");
  }
  if (!finite(coords_)) {
    throw std::invalid_argument("finite point has non-finite coordinate");
  }
}

ExtendedPoint ExtendedPoint::infinity() { return ExtendedPoint(); }

const Vec& ExtendedPoint::coords() const {
  if (infinite_) throw std::logic_error("coords() on the point at infinity");
  return coords_;
}

int ExtendedPoint::dim() const {
  return infinite_ ? 0 : static_cast<int>(coords_.size());
}

Annulus::Annulus(Vec center_, double r1_, double r2_)
    : center(std::move(center_)), r1(r1_), r2(r2_) {
  if (center.size() < 2 || !finite(center)) {
    throw std::invalid_argument("annulus center must be a finite point, n >= 2");
  }
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2)) {
    throw std::invalid_argument("annulus radii must satisfy 0 < r1 < r2 < inf");
  }
}

double chordal_dist(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.is_infinite() && y.is_infinite()) return 0.0;
  if (x.is_infinite()) return 1.0 / std::sqrt(1.0 + dot(y.coords(), y.coords()));
  if (y.is_infinite()) return 1.0 / std::sqrt(1.0 + dot(x.coords(), x.coords()));
  return chordal_dist(x.coords(), y.coords());
}

double chordal_dist(const Vec& x, const Vec& y) {
  require_same_dim(x, y);
  const double dx = std::sqrt(1.0 + dot(x, x));
  const double dy = std::sqrt(1.0 + dot(y, y));
  return dist(x, y) / (dx * dy);
}

double diam(const PointSet& a) {
  if (a.points.empty()) throw std::invalid_argument("diam of empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (std::size_t j = i + 1; j < a.points.size(); ++j) {
      best = std::max(best, dist(a.points[i], a.points[j]));
    }
  }
  return best;
}

double dist(const PointSet& a, const PointSet& b) {
  if (a.points.empty() || b.points.empty()) {
    throw std::invalid_argument("dist of empty set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& p : a.points) {
    for (const Vec& q : b.points) {
      best = std::min(best, dist(p, q));
    }
  }
  return best;
}

double diam_h(const PointSet& a) {
  if (a.points.empty()) throw std::invalid_argument("diam_h of empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    for (std::size_t j = i + 1; j < a.points.size(); ++j) {
      best = std::max(best, chordal_dist(a.points[i], a.points[j]));
    }
  }
  return best;
}

double dist_h(const PointSet& a, const PointSet& b) {
  if (a.points.empty() || b.points.empty()) {
    throw std::invalid_argument("dist_h of empty set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& p : a.points) {
    for (const Vec& q : b.points) {
      best = std::min(best, chordal_dist(p, q));
    }
  }
  return best;
}

bool crosses_sphere(std::span<const Vec> vertices, const Vec& center, double r) {
  if (vertices.empty()) return false;
  const double tol = 1e-12 * r;
  int prev_side = 0;  // -1 inside, 0 on sphere, +1 outside
  bool have_prev = false;
  for (const Vec& v : vertices) {
    const double d = dist(v, center) - r;
    if (std::abs(d) <= tol) return true;  // vertex on the sphere
    const int side = d < 0.0 ? -1 : 1;
    if (have_prev && side != prev_side) return true;
    prev_side = side;
    have_prev = true;
  }
  return false;
}

}  // namespace qcmod
