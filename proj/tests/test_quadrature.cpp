#include <doctest.h>

#include <cmath>

#include "sdfem/errors.hpp"
#include "sdfem/quadrature.hpp"

using namespace sdfem;

namespace {

// Exact integral of x^p y^q over the reference triangle {x,y >= 0, x+y <= 1}:
// p! q! / (p+q+2)!.
double monomial_integral(int p, int q) {
  double num = 1.0;
  for (int k = 2; k <= p; ++k) num *= k;
  for (int k = 2; k <= q; ++k) num *= k;
  double den = 1.0;
  for (int k = 2; k <= p + q + 2; ++k) den *= k;
  return num / den;
}

const std::array<Point, 3> kRef = {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}};

} // namespace

TEST_SUITE("quadrature") {

TEST_CASE("rule shapes: point counts, weights, barycentric coordinates") {
  const int degrees[] = {1, 2, 4, 6, 10};
  const std::size_t counts[] = {1, 3, 6, 12, 25};
  for (int k = 0; k < 5; ++k) {
    const QuadratureRule& rule = triangle_rule(degrees[k]);
    CHECK(rule.degree == degrees[k]);
    CHECK(rule.points.size() == counts[k]);
    double wsum = 0.0;
    for (const QuadPoint& q : rule.points) {
      CHECK(q.w > 0.0);
      CHECK(q.l0 >= 0.0);
      CHECK(q.l1 >= 0.0);
      CHECK(q.l2 >= 0.0);
      CHECK(q.l0 + q.l1 + q.l2 == doctest::Approx(1.0).epsilon(1e-14));
      wsum += q.w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("degree requests round up to the next available rule") {
  CHECK(triangle_rule(0).degree == 1);
  CHECK(triangle_rule(3).degree == 4);
  CHECK(triangle_rule(5).degree == 6);
  CHECK(triangle_rule(7).degree == 10);
  CHECK(triangle_rule(9).degree == 10);
  CHECK_THROWS_AS(triangle_rule(11), UnsupportedError);
}

TEST_CASE("monomial exactness up to the stated degree") {
  for (int degree : {1, 2, 4, 6, 10}) {
    const QuadratureRule& rule = triangle_rule(degree);
    for (int p = 0; p <= degree; ++p) {
      for (int q = 0; p + q <= degree; ++q) {
        const double got = integrate_triangle(
            kRef, rule, [&](Point pt) { return std::pow(pt.x, p) * std::pow(pt.y, q); });
        const double want = monomial_integral(p, q);
        CAPTURE(degree);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("affine invariance on a skewed triangle") {
  const std::array<Point, 3> tri = {Point{1.0, 1.0}, Point{3.0, 2.0}, Point{2.0, 4.0}};
  const double area = 2.5;
  CHECK(integrate_triangle(tri, triangle_rule(1), [](Point) { return 1.0; }) ==
        doctest::Approx(area).epsilon(1e-14));
  // A polynomial of degree 6 integrates identically under the 6- and 10-rules.
  const auto f = [](Point p) {
    const double s = p.x - 2.0, t = p.y - 2.0;
    return 1.0 + s * t + s * s * t * t * (s + t) + t * t * t * t * t * t;
  };
  const double d6 = integrate_triangle(tri, triangle_rule(6), f);
  const double d10 = integrate_triangle(tri, triangle_rule(10), f);
  CHECK(d6 == doctest::Approx(d10).epsilon(1e-12));
}

TEST_CASE("rules are cached: repeated lookups return the same object") {
  CHECK(&triangle_rule(6) == &triangle_rule(6));
  CHECK(&triangle_rule(5) == &triangle_rule(6));
}

} // TEST_SUITE
