#pragma once

#include <functional>
#include <string>

#include "qcmod/geometry.hpp"

namespace qcmod {

/// Radial stretch x -> (1+|x|^alpha) x/|x| of the punctured unit ball onto
/// the ring 1 < |y| < 2. The distinguished interior point e1 = (0,...,0,1/2)
/// maps to the boundary point e2 of the image ring.
struct RadialStretch {
  double alpha = 1.0;
  int n = 2;

  RadialStretch(double alpha_, int n_);
};

Vec e1_point(int n);                        // (0,...,0,1/2)
Vec e2_point(const RadialStretch& m);       // image of e1, (0,...,0,1+2^-alpha)

/// Forward map. Requires 0 < |x| < 1.
Vec radial_forward(const Vec& x, const RadialStretch& m);

/// Inverse map y -> (|y|-1)^{1/alpha} y/|y|. Requires 1 < |y| < 2.
Vec radial_inverse(const Vec& y, const RadialStretch& m);

/// Radial dilatation bound Q(r) = ((1+r^alpha)/(alpha r^alpha))^{n-1}, 0 < r < 1.
double Q_radial(double r, const RadialStretch& m);

struct LpNormResult {
  bool finite = false;
  double value = 0.0;             // L^p norm over the unit ball when finite
  double threshold = 0.0;         // n / (p (n-1)); finite iff alpha < threshold
  double refinement_delta = 0.0;  // |change| of the quadrature under one panel doubling
};

/// L^p norm of Q over the unit ball, with the divergence threshold in alpha.
LpNormResult lp_norm_Q(const RadialStretch& m, double p);

/// Uniform interface for point mappings: evaluation plus a domain predicate.
struct MappingHandle {
  std::function<Vec(const Vec&)> evaluate;
  std::function<bool(const Vec&)> in_domain;
  std::string description;
};

MappingHandle identity_mapping(int n);
MappingHandle radial_mapping(const RadialStretch& m);          // domain B^n minus {0, e1}
MappingHandle radial_extended_mapping(const RadialStretch& m); // domain B^n minus {0}
MappingHandle radial_inverse_mapping(const RadialStretch& m);  // domain {1<|y|<2} minus {e2}

/// Registry addressable by name: "identity", "radial", "radial-inverse".
MappingHandle make_mapping(const std::string& name, double alpha, int n);

}  // namespace qcmod
