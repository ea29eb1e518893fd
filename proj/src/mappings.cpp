#include "qcmod/mappings.hpp"

#include <cmath>
#include <stdexcept>

#include "qcmod/quadrature.hpp"

namespace qcmod {

RadialStretch::RadialStretch(double alpha_, int n_) : alpha(alpha_), n(n_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("radial stretch needs alpha > 0");
  }
  if (n < 2) throw std::invalid_argument("radial stretch needs n >= 2");
}

Vec e1_point(int n) {
  if (n < 2) throw std::invalid_argument("e1 needs n >= 2");
  Vec p(static_cast<std::size_t>(n), 0.0);
  p.back() = 0.5;
  return p;
}

Vec e2_point(const RadialStretch& m) {
  Vec p(static_cast<std::size_t>(m.n), 0.0);
  p.back() = 1.0 + std::pow(2.0, -m.alpha);
  return p;
}

Vec radial_forward(const Vec& x, const RadialStretch& m) {
  const double r = norm(x);
  if (!(r > 0.0) || !(r < 1.0)) {
    throw std::domain_error("radial_forward needs 0 < |x| < 1");
  }
  return scaled(x, (1.0 + std::pow(r, m.alpha)) / r);
}

Vec radial_inverse(const Vec& y, const RadialStretch& m) {
  const double s = norm(y);
  if (!(s > 1.0) || !(s < 2.0)) {
    throw std::domain_error("radial_inverse needs 1 < |y| < 2");
  }
  return scaled(y, std::pow(s - 1.0, 1.0 / m.alpha) / s);
}

double Q_radial(double r, const RadialStretch& m) {
  if (!(r > 0.0) || !(r < 1.0)) {
    throw std::domain_error("Q_radial needs 0 < r < 1");
  }
  const double ra = std::pow(r, m.alpha);
  return std::pow((1.0 + ra) / (m.alpha * ra), m.n - 1);
}

LpNormResult lp_norm_Q(const RadialStretch& m, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_Q needs p >= 1");
  LpNormResult out;
  const double n = static_cast<double>(m.n);
  out.threshold = n / (p * (n - 1.0));
  out.finite = m.alpha < out.threshold;
  if (!out.finite) return out;

  // Q(r)^p r^{n-1} = alpha^{-p(n-1)} (1+r^alpha)^{p(n-1)} r^e with
  // e = n-1 - alpha p (n-1); e > -1 exactly when alpha < threshold.
  const double q = p * (n - 1.0);
  const double e = n - 1.0 - m.alpha * q;
  const double pref = std::pow(m.alpha, -q);
  const double alpha = m.alpha;

  std::function<double(double)> integrand;
  if (e < 0.0) {
    // Substitute r = u^{1/s}, s = 1 - alpha q / n: the transformed integrand
    // is pref/s * (1+u^{alpha/s})^q * u^{n-1}, smooth up to u = 0.
    const double s = 1.0 - alpha * q / n;
    integrand = [pref, s, alpha, q, n](double u) {
      if (u <= 0.0) return 0.0;
      return pref / s * std::pow(1.0 + std::pow(u, alpha / s), q) *
             std::pow(u, n - 1.0);
    };
  } else {
    integrand = [pref, alpha, q, e](double r) {
      const double re = e == 0.0 ? 1.0 : std::pow(r, e);
      if (r <= 0.0) return e > 0.0 ? 0.0 : pref;
      return pref * std::pow(1.0 + std::pow(r, alpha), q) * re;
    };
  }

  RefinedIntegral integral = integrate_refining(integrand, 0.0, 1.0, 1e-10);
  if (integral.divergent) {
    out.finite = false;
    return out;
  }
  const double omega = 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
  out.value = std::pow(omega * integral.value, 1.0 / p);
  // Change of the reported norm produced by the final panel doubling.
  const double prev_norm =
      std::pow(omega * std::max(integral.value - integral.last_delta, 0.0), 1.0 / p);
  out.refinement_delta = std::abs(out.value - prev_norm);
  return out;
}

MappingHandle identity_mapping(int n) {
  if (n < 2) throw std::invalid_argument("identity mapping needs n >= 2");
  MappingHandle h;
  h.evaluate = [](const Vec& x) { return x; };
  h.in_domain = [n](const Vec& x) {
    return static_cast<int>(x.size()) == n && finite(x);
  };
  h.description = "identity";
  return h;
}

MappingHandle radial_mapping(const RadialStretch& m) {
  MappingHandle h;
  const Vec e1 = e1_point(m.n);
  const int n = m.n;
  h.evaluate = [m](const Vec& x) { return radial_forward(x, m); };
  h.in_domain = [n, e1](const Vec& x) {
    if (static_cast<int>(x.size()) != n) return false;
    const double r = norm(x);
    return r > 0.0 && r < 1.0 && x != e1;
  };
  h.description = "radial stretch (alpha=" + std::to_string(m.alpha) + ")";
  return h;
}

MappingHandle radial_extended_mapping(const RadialStretch& m) {
  MappingHandle h = radial_mapping(m);
  const int n = m.n;
  h.in_domain = [n](const Vec& x) {
    if (static_cast<int>(x.size()) != n) return false;
    const double r = norm(x);
    return r > 0.0 && r < 1.0;
  };
  h.description = "radial stretch extended over e1 (alpha=" +
                  std::to_string(m.alpha) + ")";
  return h;
}

MappingHandle radial_inverse_mapping(const RadialStretch& m) {
  MappingHandle h;
  const Vec e2 = e2_point(m);
  const int n = m.n;
  h.evaluate = [m](const Vec& y) { return radial_inverse(y, m); };
  h.in_domain = [n, e2](const Vec& y) {
    if (static_cast<int>(y.size()) != n) return false;
    const double s = norm(y);
    return s > 1.0 && s < 2.0 && y != e2;
  };
  h.description = "radial stretch inverse (alpha=" + std::to_string(m.alpha) + ")";
  return h;
}

MappingHandle make_mapping(const std::string& name, double alpha, int n) {
  if (name == "identity") return identity_mapping(n);
  if (name == "radial") return radial_extended_mapping(RadialStretch(alpha, n));
  if (name == "radial-inverse") return radial_inverse_mapping(RadialStretch(alpha, n));
  throw std::invalid_argument("unknown mapping: " + name);
}

}  // namespace qcmod
