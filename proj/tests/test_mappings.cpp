#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qcmod/curves.hpp"
#include "qcmod/mappings.hpp"
#include "qcmod/rng.hpp"

using namespace qcmod;

namespace {

Vec random_ball_point(Rng& rng, int n, double r_min = 1e-3, double r_max = 1.0 - 1e-3) {
  const Vec dir = rng.unit_vector(n);
  return scaled(dir, rng.uniform(r_min, r_max));
}

}  // namespace

TEST_CASE("radial stretch forward") {
  SUBCASE("e1 maps to (0,...,0,3/2) at alpha = 1") {
    const RadialStretch m(1.0, 3);
    const Vec y = radial_forward(e1_point(3), m);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 0.0);
    CHECK(y[2] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(dist(y, e2_point(m)) <= 1e-15);
  }
  SUBCASE("e2 depends on alpha as 1 + 2^-alpha") {
    const RadialStretch m(0.5, 2);
    CHECK(norm(e2_point(m)) == doctest::Approx(1.0 + std::pow(2.0, -0.5)).epsilon(1e-15));
    CHECK(dist(radial_forward(e1_point(2), m), e2_point(m)) <= 1e-15);
  }
  SUBCASE("image norm and preserved direction") {
    Rng rng(3);
    for (double alpha : {0.5, 1.0, 1.9}) {
      const RadialStretch m(alpha, 2);
      for (int i = 0; i < 200; ++i) {
        const Vec x = random_ball_point(rng, 2);
        const Vec y = radial_forward(x, m);
        const double r = norm(x);
        CHECK(norm(y) == doctest::Approx(1.0 + std::pow(r, alpha)).epsilon(1e-12));
        CHECK(norm(y) > 1.0);
        CHECK(norm(y) < 2.0);
        const Vec dx = scaled(x, 1.0 / r);
        const Vec dy = scaled(y, 1.0 / norm(y));
        CHECK(dist(dx, dy) <= 1e-12);
      }
    }
  }
  SUBCASE("domain errors") {
    const RadialStretch m(1.0, 2);
    CHECK_THROWS_AS(radial_forward(Vec{0.0, 0.0}, m), std::domain_error);
    CHECK_THROWS_AS(radial_forward(Vec{1.0, 0.5}, m), std::domain_error);
    CHECK_THROWS(RadialStretch(0.0, 2));
    CHECK_THROWS(RadialStretch(1.0, 1));
  }
}

TEST_CASE("radial stretch inverse and round trips") {
  SUBCASE("inverse norm") {
    Rng rng(4);
    const RadialStretch m(0.8, 2);
    for (int i = 0; i < 200; ++i) {
      const Vec y = scaled(rng.unit_vector(2), rng.uniform(1.0 + 1e-6, 2.0 - 1e-6));
      const Vec x = radial_inverse(y, m);
      CHECK(norm(x) == doctest::Approx(std::pow(norm(y) - 1.0, 1.0 / 0.8)).epsilon(1e-12));
      CHECK(norm(x) < 1.0);
    }
  }
  SUBCASE("g(f(x)) = x and f(g(y)) = y") {
    Rng rng(5);
    for (double alpha : {0.5, 1.0, 1.9}) {
      const RadialStretch m(alpha, 3);
      double worst_fwd = 0.0, worst_bwd = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const Vec x = random_ball_point(rng, 3);
        worst_fwd = std::max(worst_fwd, dist(radial_inverse(radial_forward(x, m), m), x));
        const Vec y = scaled(rng.unit_vector(3), rng.uniform(1.0 + 1e-3, 2.0 - 1e-3));
        worst_bwd = std::max(worst_bwd, dist(radial_forward(radial_inverse(y, m), m), y));
      }
      CHECK(worst_fwd <= 1e-12);
      CHECK(worst_bwd <= 1e-12);
    }
  }
  SUBCASE("domain errors") {
    const RadialStretch m(1.0, 2);
    CHECK_THROWS_AS(radial_inverse(Vec{0.5, 0.0}, m), std::domain_error);
    CHECK_THROWS_AS(radial_inverse(Vec{2.5, 0.0}, m), std::domain_error);
  }
}

TEST_CASE("annulus-to-annulus image of boundary spheres") {
  const RadialStretch m(1.3, 2);
  for (double r : {0.25, 0.5}) {
    const double target = 1.0 + std::pow(r, 1.3);
    for (const Vec& d : sphere_directions(2, 128)) {
      const Vec y = radial_forward(scaled(d, r), m);
      CHECK(std::abs(norm(y) - target) <= 1e-12);
    }
  }
}

TEST_CASE("radial dilatation Q") {
  SUBCASE("closed-form values") {
    CHECK(Q_radial(0.5, RadialStretch(1.0, 3)) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(Q_radial(1.0 - 1e-12, RadialStretch(1.0, 2)) == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("blows up toward the origin") {
    CHECK(Q_radial(1e-8, RadialStretch(1.0, 2)) > 1e6);
  }
  SUBCASE("monotone decreasing in r") {
    for (double alpha : {0.4, 1.0, 2.5}) {
      for (int n : {2, 3, 4}) {
        const RadialStretch m(alpha, n);
        double prev = Q_radial(0.01, m);
        for (double r = 0.05; r < 1.0; r += 0.05) {
          const double cur = Q_radial(r, m);
          CHECK(cur < prev);
          prev = cur;
        }
      }
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS(Q_radial(0.0, RadialStretch(1.0, 2)));
    CHECK_THROWS(Q_radial(1.5, RadialStretch(1.0, 2)));
  }
}

TEST_CASE("Lp norm of Q and the integrability threshold") {
  SUBCASE("threshold n/(p(n-1))") {
    CHECK(lp_norm_Q(RadialStretch(1.0, 2), 1.0).threshold == doctest::Approx(2.0));
    CHECK(lp_norm_Q(RadialStretch(0.5, 3), 2.0).threshold == doctest::Approx(0.75));
  }
  SUBCASE("alpha = 1, p = 1, n = 2 is finite with mass 3 pi") {
    // Q r = (1+r)/r * r = 1 + r integrates to 3/2 over (0,1)
    const LpNormResult r = lp_norm_Q(RadialStretch(1.0, 2), 1.0);
    CHECK(r.finite);
    CHECK(r.value == doctest::Approx(3.0 * M_PI).epsilon(1e-9));
  }
  SUBCASE("above the threshold the norm diverges") {
    const LpNormResult r = lp_norm_Q(RadialStretch(2.0, 2), 2.0);  // threshold 1
    CHECK_FALSE(r.finite);
  }
  SUBCASE("near-threshold case converges stably under refinement") {
    const LpNormResult r = lp_norm_Q(RadialStretch(0.9, 2), 2.0);
    CHECK(r.finite);
    CHECK(r.refinement_delta < 1e-6);
    // 0.81 I = int (r^{-0.8} + 2 r^{0.1} + r) dr = 5 + 2/1.1 + 1/2
    const double exact = std::sqrt(2.0 * M_PI / 0.81 * (5.0 + 2.0 / 1.1 + 0.5));
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-8));
  }
  SUBCASE("p below one is rejected") {
    CHECK_THROWS(lp_norm_Q(RadialStretch(1.0, 2), 0.5));
  }
}

TEST_CASE("mapping registry") {
  const MappingHandle id = make_mapping("identity", 1.0, 2);
  CHECK(id.in_domain(Vec{5.0, -3.0}));
  CHECK(id.evaluate(Vec{5.0, -3.0}) == Vec{5.0, -3.0});

  const MappingHandle f = make_mapping("radial", 1.0, 2);
  CHECK(f.in_domain(Vec{0.5, 0.0}));
  CHECK_FALSE(f.in_domain(Vec{0.0, 0.0}));
  CHECK_FALSE(f.in_domain(Vec{1.5, 0.0}));
  CHECK(f.in_domain(e1_point(2)));  // "radial" is the extension over e1

  const MappingHandle g = make_mapping("radial-inverse", 1.0, 2);
  CHECK(g.in_domain(Vec{1.5, 0.1}));
  CHECK_FALSE(g.in_domain(Vec{0.5, 0.0}));
  CHECK_FALSE(g.in_domain(e2_point(RadialStretch(1.0, 2))));  // boundary point

  // the bare stretch is defined off e1; its handle excludes that point
  const MappingHandle f_raw = radial_mapping(RadialStretch(1.0, 2));
  CHECK_FALSE(f_raw.in_domain(e1_point(2)));

  CHECK_THROWS(make_mapping("moebius", 1.0, 2));
}
