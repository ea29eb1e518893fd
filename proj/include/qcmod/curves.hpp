#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcmod/geometry.hpp"
#include "qcmod/mappings.hpp"

namespace qcmod {

/// Sampled curve: ordered finite vertices, consecutive vertices distinct.
struct Polyline {
  std::vector<Vec> vertices;

  explicit Polyline(std::vector<Vec> vertices_);
  int dim() const { return static_cast<int>(vertices.front().size()); }
};

struct CurveFamily {
  std::vector<Polyline> curves;
  std::string label;

  bool empty() const { return curves.empty(); }
  int dim() const;  // throws on the empty family
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

double length(const Polyline& c);

bool crosses_sphere(const Polyline& c, const Vec& center, double r);

/// Quasi-uniform directions on the unit sphere of R^n: equal angles for n=2,
/// Fibonacci sphere for n=3, seeded isotropic sampling for n >= 4.
std::vector<Vec> sphere_directions(int n, int count);

/// Radial curves from S(center,r1) to S(center,r2), directions quasi-uniform
/// on the unit sphere (n=2 equal angles, n=3 Fibonacci sphere, n>=4 seeded
/// isotropic sampling), vertices geometrically spaced in radius.
CurveFamily ring_family(const Annulus& a, int count, int subdiv);

struct ConnectOptions {
  int subdiv = 16;           // vertices per curve
  double jitter_frac = 0.1;  // of dist(E, F)
  std::uint64_t seed = 0;
};

/// Jittered polylines from points of E to points of F (round-robin index
/// pairing), bent off the forbidden balls by projecting offending vertices
/// to 1.05x the ball radius.
CurveFamily connecting_family(const PointSet& E, const PointSet& F,
                              const std::vector<Ball>& exclusions, int count,
                              const ConnectOptions& opts = {});

/// Image family: refine each segment by `refine` inserted vertices, then map
/// vertex-wise. The label records the mapping.
CurveFamily map_family(const MappingHandle& f, const CurveFamily& fam,
                       int refine);

}  // namespace qcmod
