#pragma once

// Named C2 paths in fundamental-weight coordinates: e1 = (1,0), e2 = (-1,1).

#include "lpath/charalg.hpp"

namespace fixtures {

using lpath::PiecewisePath;
using lpath::QVec;
using lpath::Rational;

inline QVec v(long a, long b) { return QVec{Rational(a), Rational(b)}; }

inline const QVec e1 = v(1, 0);
inline const QVec e2 = v(-1, 1);
inline const QVec e2bar = v(1, -1);
inline const QVec e1bar = v(-1, 0);

inline PiecewisePath two(const QVec& a, const QVec& b) { return PiecewisePath::from_segments({a, b}, 2); }

inline PiecewisePath pi1() { return PiecewisePath::line(e1); }
inline PiecewisePath pi2() { return PiecewisePath::line(e2); }
inline PiecewisePath pi2bar() { return PiecewisePath::line(e2bar); }
inline PiecewisePath pi1bar() { return PiecewisePath::line(e1bar); }

inline PiecewisePath gamma12() { return two(e1, e2); }
inline PiecewisePath gamma12bar() { return two(e1, e2bar); }
inline PiecewisePath gamma22bar() { return two(e2, e2bar); }
inline PiecewisePath gamma21bar() { return two(e2, e1bar); }
inline PiecewisePath gamma2bar1bar() { return two(e2bar, e1bar); }

inline const lpath::CartanDatum& c2() {
  static const auto d = lpath::CartanDatum::from_type("C2");
  return d;
}
inline const lpath::CartanDatum& a2() {
  static const auto d = lpath::CartanDatum::from_type("A2");
  return d;
}

}  // namespace fixtures

namespace fixtures {

/// Exponent vector helper for polynomials in two variables.
inline lpath::ExponentPolynomial poly2(std::initializer_list<std::tuple<long, Rational, Rational>> terms) {
  lpath::ExponentPolynomial p(2);
  for (const auto& [c, a, b] : terms) p.add_term(QVec{a, b}, Rational(c));
  return p;
}

/// The eight-term expansion of psi for C2 at the partition (m1, m2).
inline lpath::ExponentPolynomial c2_psi_display(long m1, long m2) {
  return poly2({{1, 0, 0},
                {1, m1 - m2 + 1, m1 + 2},
                {1, 2 * m1 + 4, m1 + m2 + 3},
                {1, m1 + m2 + 3, m2 + 1},
                {-1, m1 - m2 + 1, 0},
                {-1, 0, m2 + 1},
                {-1, 2 * m1 + 4, m1 + 2},
                {-1, m1 + m2 + 3, m1 + m2 + 3}});
}

}  // namespace fixtures
