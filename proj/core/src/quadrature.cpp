#include "sdfem/quadrature.hpp"

#include <string>

#include "sdfem/errors.hpp"

namespace sdfem {

namespace {

QuadPoint bary(double l1, double l2, double w) { return {1.0 - l1 - l2, l1, l2, w}; }

// Fully symmetric orbit of a point (a, a, 1-2a).
void orbit3(std::vector<QuadPoint>& pts, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  pts.push_back(bary(a, a, w));
  pts.push_back(bary(a, b, w));
  pts.push_back(bary(b, a, w));
}

// Orbit of a point with three distinct barycentric coordinates (6 images).
void orbit6(std::vector<QuadPoint>& pts, double a, double b, double w) {
  const double c = 1.0 - a - b;
  pts.push_back(bary(a, b, w));
  pts.push_back(bary(b, a, w));
  pts.push_back(bary(a, c, w));
  pts.push_back(bary(c, a, w));
  pts.push_back(bary(b, c, w));
  pts.push_back(bary(c, b, w));
}

QuadratureRule make_rule_1() {
  QuadratureRule r;
  r.degree = 1;
  r.points = {bary(1.0 / 3.0, 1.0 / 3.0, 1.0)};
  return r;
}

QuadratureRule make_rule_2() {
  QuadratureRule r;
  r.degree = 2;
  orbit3(r.points, 1.0 / 6.0, 1.0 / 3.0);
  return r;
}

QuadratureRule make_rule_4() {
  QuadratureRule r;
  r.degree = 4;
  orbit3(r.points, 0.445948490915965, 0.223381589678011);
  orbit3(r.points, 0.091576213509771, 0.109951743655322);
  return r;
}

QuadratureRule make_rule_6() {
  QuadratureRule r;
  r.degree = 6;
  orbit3(r.points, 0.063089014491502, 0.050844906370207);
  orbit3(r.points, 0.249286745170910, 0.116786275726379);
  orbit6(r.points, 0.310352451033785, 0.053145049844816, 0.082851075618374);
  return r;
}

QuadratureRule make_rule_10() {
  QuadratureRule r;
  r.degree = 10;
  r.points = {bary(3.3333333333333331e-01, 3.3333333333333331e-01, 2.0 * 4.0468714398811438e-02)};
  orbit3(r.points, 4.2727317884677551e-01, 2.0 * 3.8649294001481559e-02);
  orbit3(r.points, 1.8309922244867502e-01, 2.0 * 3.9228819306185866e-02);
  orbit3(r.points, 4.9043401970113060e-01, 2.0 * 8.7345839979647427e-03);
  orbit3(r.points, 1.2572445551580533e-02, 2.0 * 2.1461870924164139e-03);
  orbit6(r.points, 3.0804600168524771e-01, 3.7685330394686190e-02, 2.0 * 1.8734429105233822e-02);
  orbit6(r.points, 3.3371833739304788e-02, 8.4382358919213596e-01, 2.0 * 1.3474676295939981e-02);
  return r;
}

} // namespace

const QuadratureRule& triangle_rule(int degree) {
  static const QuadratureRule r1 = make_rule_1();
  static const QuadratureRule r2 = make_rule_2();
  static const QuadratureRule r4 = make_rule_4();
  static const QuadratureRule r6 = make_rule_6();
  static const QuadratureRule r10 = make_rule_10();
  if (degree <= 1) return r1;
  if (degree <= 2) return r2;
  if (degree <= 4) return r4;
  if (degree <= 6) return r6;
  if (degree <= 10) return r10;
  throw UnsupportedError("triangle_rule: no rule of degree " + std::to_string(degree));
}

} // namespace sdfem
