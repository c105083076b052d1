#include "core/quadrature.hpp"

#include <stdexcept>

namespace ellopt {

namespace {

SimplexQuadrature make_rule(int dim, int order) {
  SimplexQuadrature q;
  auto add = [&](double w, std::array<double, 4> b) {
    q.weights.push_back(w);
    q.barycentric.push_back(b);
  };
  if (dim == 2) {
    switch (order) {
      case 1:
        add(1.0, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0});
        break;
      case 2: {
        // edge-midpoint rule, degree 2
        const double w = 1.0 / 3.0;
        add(w, {0.5, 0.5, 0.0, 0.0});
        add(w, {0.5, 0.0, 0.5, 0.0});
        add(w, {0.0, 0.5, 0.5, 0.0});
        break;
      }
      case 4: {
        // Dunavant 6-point, degree 4
        const double w1 = 0.223381589678011, a1 = 0.108103018168070, b1 = 0.445948490915965;
        const double w2 = 0.109951743655322, a2 = 0.816847572980459, b2 = 0.091576213509771;
        add(w1, {a1, b1, b1, 0.0});
        add(w1, {b1, a1, b1, 0.0});
        add(w1, {b1, b1, a1, 0.0});
        add(w2, {a2, b2, b2, 0.0});
        add(w2, {b2, a2, b2, 0.0});
        add(w2, {b2, b2, a2, 0.0});
        break;
      }
      default:
        throw std::invalid_argument("simplex_quadrature: order must be 1, 2 or 4");
    }
  } else if (dim == 3) {
    switch (order) {
      case 1:
        add(1.0, {0.25, 0.25, 0.25, 0.25});
        break;
      case 2: {
        // 4-point rule, degree 2
        const double a = 0.5854101966249685;
        const double b = 0.1381966011250105;
        add(0.25, {a, b, b, b});
        add(0.25, {b, a, b, b});
        add(0.25, {b, b, a, b});
        add(0.25, {b, b, b, a});
        break;
      }
      case 4: {
        // Keast 14-point, degree 5
        const double wa = 0.1126879257180162, a1 = 0.0673422422100983, a2 = 0.3108859192633005;
        const double wb = 0.0734930431163619, b1 = 0.7217942490673264, b2 = 0.0927352503108912;
        const double wc = 0.0425460207770812, c1 = 0.4544962958743506, c2 = 0.0455037041256494;
        add(wa, {a1, a2, a2, a2});
        add(wa, {a2, a1, a2, a2});
        add(wa, {a2, a2, a1, a2});
        add(wa, {a2, a2, a2, a1});
        add(wb, {b1, b2, b2, b2});
        add(wb, {b2, b1, b2, b2});
        add(wb, {b2, b2, b1, b2});
        add(wb, {b2, b2, b2, b1});
        add(wc, {c1, c1, c2, c2});
        add(wc, {c1, c2, c1, c2});
        add(wc, {c1, c2, c2, c1});
        add(wc, {c2, c1, c1, c2});
        add(wc, {c2, c1, c2, c1});
        add(wc, {c2, c2, c1, c1});
        break;
      }
      default:
        throw std::invalid_argument("simplex_quadrature: order must be 1, 2 or 4");
    }
  } else {
    throw std::invalid_argument("simplex_quadrature: dim must be 2 or 3");
  }
  return q;
}

}  // namespace

const SimplexQuadrature& simplex_quadrature(int dim, int order) {
  static const SimplexQuadrature rules[2][3] = {
      {make_rule(2, 1), make_rule(2, 2), make_rule(2, 4)},
      {make_rule(3, 1), make_rule(3, 2), make_rule(3, 4)},
  };
  int oi = 0;
  switch (order) {
    case 1: oi = 0; break;
    case 2: oi = 1; break;
    case 4: oi = 2; break;
    default: throw std::invalid_argument("simplex_quadrature: order must be 1, 2 or 4");
  }
  if (dim != 2 && dim != 3) throw std::invalid_argument("simplex_quadrature: dim must be 2 or 3");
  return rules[dim - 2][oi];
}

}  // namespace ellopt
