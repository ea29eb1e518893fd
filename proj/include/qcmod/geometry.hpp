#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qcmod {

/// A finite point of R^n. Dimension is the vector size; n >= 2 everywhere.
using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double dist(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
bool finite(const Vec& a);

/// A point of the extended space R^n ∪ {∞}. Infinity is a tagged value,
/// never a large float; finite-point accessors reject it.
class ExtendedPoint {
 public:
  explicit ExtendedPoint(Vec coords);
  static ExtendedPoint infinity();

  bool is_infinite() const { return infinite_; }
  const Vec& coords() const;  // throws std::logic_error on the infinite point
  int dim() const;            // 0 for the infinite point

 private:
  ExtendedPoint() : infinite_(true) {}
  Vec coords_;
  bool infinite_ = false;
};

/// Spherical ring r1 < |x - center| < r2 about a finite center.
struct Annulus {
  Vec center;
  double r1 = 0.0;
  double r2 = 0.0;

  Annulus(Vec center_, double r1_, double r2_);
  int dim() const { return static_cast<int>(center.size()); }
};

/// Finite sample cloud standing in for a continuum. Connectivity is assumed
/// by construction of the generators, never verified.
struct PointSet {
  std::vector<Vec> points;
};

/// Chordal (spherical) distance on R^n ∪ {∞}:
///   h(x,∞) = 1/sqrt(1+|x|^2),  h(x,y) = |x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2)).
/// Always in [0,1]; zero iff the points coincide.
double chordal_dist(const ExtendedPoint& x, const ExtendedPoint& y);
double chordal_dist(const Vec& x, const Vec& y);

double diam(const PointSet& a);
double dist(const PointSet& a, const PointSet& b);
double diam_h(const PointSet& a);
double dist_h(const PointSet& a, const PointSet& b);

/// True iff the polyline given by `vertices` meets the sphere S(center, r):
/// a vertex lies on the sphere (relative tolerance 1e-12*r) or some segment
/// has endpoints strictly on opposite sides.
bool crosses_sphere(std::span<const Vec> vertices, const Vec& center, double r);

}  // namespace qcmod
