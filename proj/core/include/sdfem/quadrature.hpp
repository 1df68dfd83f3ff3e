#pragma once

#include <array>
#include <vector>

#include "sdfem/mesh.hpp"

namespace sdfem {

// Quadrature point in barycentric coordinates with weight normalized so that
// the weights of a rule sum to 1 (integrate by multiplying with the area).
struct QuadPoint {
  double l0, l1, l2;
  double w;
};

struct QuadratureRule {
  int degree = 0;
  std::vector<QuadPoint> points;
};

// Symmetric rules exact for polynomials up to the requested total degree.
// Supported degrees: 1, 2, 4, 6, 10 (requests in between round up).
const QuadratureRule& triangle_rule(int degree);

inline Point barycentric_point(const std::array<Point, 3>& v, const QuadPoint& q) {
  return {q.l0 * v[0].x + q.l1 * v[1].x + q.l2 * v[2].x,
          q.l0 * v[0].y + q.l1 * v[1].y + q.l2 * v[2].y};
}

// Integrate a callable f(Point) over a physical triangle.
template <typename F>
double integrate_triangle(const std::array<Point, 3>& v, const QuadratureRule& rule, F&& f) {
  const double area =
      0.5 * std::abs((v[1].x - v[0].x) * (v[2].y - v[0].y) -
                     (v[2].x - v[0].x) * (v[1].y - v[0].y));
  double sum = 0.0;
  for (const QuadPoint& q : rule.points) sum += q.w * f(barycentric_point(v, q));
  return area * sum;
}

} // namespace sdfem
