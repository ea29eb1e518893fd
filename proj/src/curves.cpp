#include "qcmod/curves.hpp"

#include <cmath>
#include <stdexcept>

#include "qcmod/rng.hpp"

namespace qcmod {

Polyline::Polyline(std::vector<Vec> vertices_) : vertices(std::move(vertices_)) {
  if (vertices.size() < 2) {
    throw std::invalid_argument("polyline needs at least 2 vertices");
  }
  const std::size_t n = vertices.front().size();
  if (n < 2) throw std::invalid_argument("polyline dimension must be >= 2");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].size() != n) {
      throw std::invalid_argument("polyline vertices of mixed dimension");
    }
    if (!finite(vertices[i])) {
      throw std::invalid_argument("polyline vertex with non-finite coordinate");
    }
    if (i > 0 && vertices[i] == vertices[i - 1]) {
      throw std::invalid_argument("polyline with repeated consecutive vertex");
    }
  }
}

int CurveFamily::dim() const {
  if (curves.empty()) throw std::logic_error("dim() of empty curve family");
  return curves.front().dim();
}

double length(const Polyline& c) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    s += dist(c.vertices[i], c.vertices[i + 1]);
  }
  return s;
}

bool crosses_sphere(const Polyline& c, const Vec& center, double r) {
  return crosses_sphere(std::span<const Vec>(c.vertices), center, r);
}

std::vector<Vec> sphere_directions(int n, int count) {
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      const double ang = 2.0 * M_PI * k / count;
      dirs.push_back({std::cos(ang), std::sin(ang)});
    }
  } else if (n == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
    }
  } else {
    Rng rng(0x5fe7u + static_cast<std::uint64_t>(n));
    for (int k = 0; k < count; ++k) dirs.push_back(rng.unit_vector(n));
  }
  return dirs;
}

CurveFamily ring_family(const Annulus& a, int count, int subdiv) {
  if (count < 1) throw std::invalid_argument("ring_family needs count >= 1");
  if (subdiv < 2) throw std::invalid_argument("ring_family needs subdiv >= 2");

  const int n = a.dim();
  const double ratio = a.r2 / a.r1;
  CurveFamily fam;
  fam.label = "ring(r1=" + std::to_string(a.r1) + ",r2=" + std::to_string(a.r2) + ")";
  fam.curves.reserve(static_cast<std::size_t>(count));
  for (const Vec& dir : sphere_directions(n, count)) {
    std::vector<Vec> verts;
    verts.reserve(static_cast<std::size_t>(subdiv));
    for (int j = 0; j < subdiv; ++j) {
      // log-uniform radii; endpoints pinned to r1 and r2 exactly
      double r;
      if (j == 0) r = a.r1;
      else if (j == subdiv - 1) r = a.r2;
      else r = a.r1 * std::pow(ratio, static_cast<double>(j) / (subdiv - 1));
      verts.push_back(add(a.center, scaled(dir, r)));
    }
    fam.curves.emplace_back(std::move(verts));
  }
  return fam;
}

CurveFamily connecting_family(const PointSet& E, const PointSet& F,
                              const std::vector<Ball>& exclusions, int count,
                              const ConnectOptions& opts) {
  if (E.points.empty() || F.points.empty()) {
    throw std::invalid_argument("connecting_family needs nonempty E and F");
  }
  if (count < 1) throw std::invalid_argument("connecting_family needs count >= 1");
  if (opts.subdiv < 2) throw std::invalid_argument("connecting_family needs subdiv >= 2");

  const double gap = dist(E, F);
  const double scale = 1.0 + diam(E) + diam(F);
  if (gap <= 1e-12 * scale) {
    throw std::invalid_argument("E and F intersect within tolerance");
  }

  const double jitter_mag = opts.jitter_frac * gap;
  Rng rng(opts.seed);

  CurveFamily fam;
  fam.label = "connecting(|E|=" + std::to_string(E.points.size()) +
              ",|F|=" + std::to_string(F.points.size()) + ")";
  fam.curves.reserve(static_cast<std::size_t>(count));
  const int m = opts.subdiv;

  for (int i = 0; i < count; ++i) {
    const Vec& start = E.points[static_cast<std::size_t>(i) % E.points.size()];
    const Vec& end = F.points[static_cast<std::size_t>(i) % F.points.size()];
    const Vec chord = sub(end, start);
    const double chord_len = norm(chord);
    const int n = static_cast<int>(start.size());

    std::vector<Vec> verts;
    verts.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      const double t = static_cast<double>(j) / (m - 1);
      Vec v = add(start, scaled(chord, t));
      if (j > 0 && j + 1 < m && jitter_mag > 0.0) {
        Vec w = rng.unit_vector(n);
        if (chord_len > 0.0) {  // keep jitter transverse to the chord
          const Vec axis = scaled(chord, 1.0 / chord_len);
          w = sub(w, scaled(axis, dot(w, axis)));
        }
        v = add(v, scaled(w, jitter_mag * std::sin(M_PI * t)));
      }
      verts.push_back(std::move(v));
    }

    // push vertices off the forbidden balls
    for (int pass = 0; pass < 16; ++pass) {
      bool dirty = false;
      for (const Ball& ball : exclusions) {
        for (Vec& v : verts) {
          const double d = dist(v, ball.center);
          if (d < ball.radius) {
            Vec dir = d > 0.0 ? scaled(sub(v, ball.center), 1.0 / d)
                              : rng.unit_vector(n);
            v = add(ball.center, scaled(dir, 1.05 * ball.radius));
            dirty = true;
          }
        }
      }
      if (!dirty) break;
    }

    // projection may merge neighbours; drop exact duplicates
    std::vector<Vec> clean;
    clean.reserve(verts.size());
    for (auto& v : verts) {
      if (clean.empty() || clean.back() != v) clean.push_back(std::move(v));
    }
    fam.curves.emplace_back(std::move(clean));
  }
  return fam;
}

CurveFamily map_family(const MappingHandle& f, const CurveFamily& fam,
                       int refine) {
  if (refine < 0) throw std::invalid_argument("map_family needs refine >= 0");
  CurveFamily out;
  out.label = "image[" + f.description + "] of " + fam.label;
  out.curves.reserve(fam.curves.size());

  for (std::size_t ci = 0; ci < fam.curves.size(); ++ci) {
    const auto& verts = fam.curves[ci].vertices;
    std::vector<Vec> refined;
    refined.reserve(verts.size() + (verts.size() - 1) * static_cast<std::size_t>(refine));
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      refined.push_back(verts[i]);
      for (int j = 1; j <= refine; ++j) {
        const double t = static_cast<double>(j) / (refine + 1);
        refined.push_back(add(scaled(verts[i], 1.0 - t), scaled(verts[i + 1], t)));
      }
    }
    refined.push_back(verts.back());

    std::vector<Vec> image;
    image.reserve(refined.size());
    for (std::size_t vi = 0; vi < refined.size(); ++vi) {
      if (!f.in_domain(refined[vi])) {
        throw std::domain_error("map_family: curve " + std::to_string(ci) +
                                ", vertex " + std::to_string(vi) +
                                " outside mapping domain");
      }
      Vec y = f.evaluate(refined[vi]);
      if (image.empty() || image.back() != y) image.push_back(std::move(y));
    }
    out.curves.emplace_back(std::move(image));
  }
  return out;
}

}  // namespace qcmod
