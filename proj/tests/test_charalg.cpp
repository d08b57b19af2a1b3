#include <doctest.h>

#include "fixtures.hpp"

using namespace lpath;
using namespace fixtures;

namespace {

const Rational half(1, 2);

Weight partition(long m1, long m2) { return Weight{m1 - m2, m2}; }

}  // namespace

TEST_CASE("exponent polynomial arithmetic") {
  auto p = poly2({{1, 0, 0}, {-1, 1, 0}});
  auto q = poly2({{1, 0, 0}, {1, 1, 0}});
  CHECK(p * q == poly2({{1, 0, 0}, {-1, 2, 0}}));
  CHECK((p + q) == ExponentPolynomial::constant(2, 2));
  CHECK((p - p).is_zero());
  CHECK((p * Rational(0)).is_zero());
  CHECK(p.str() == "1 - t1");
  auto frac = poly2({{3, 0, half}, {-1, -1, 0}});
  CHECK(frac.str() == "-t1^(-1) + 3*t2^(1/2)");
  CHECK_FALSE(frac.in_positive_cone());
  CHECK(p.in_positive_cone());
  CHECK(p.shifted(QVec{0, 1}) == poly2({{1, 0, 1}, {-1, 1, 1}}));
  CHECK(ExponentPolynomial(2).str() == "0");
}

TEST_CASE("evaluation points") {
  TauPoint tau(QVec{half, Rational(1, 4)});
  CHECK(tau.in_domain());
  CHECK(tau.monomial(QVec{2, 1}) == Rational(1, 16));
  CHECK(tau.monomial(QVec{-1, 0}) == 2);
  CHECK_THROWS_AS(tau.monomial(QVec{0, half}), DomainError);
  auto rooted = TauPoint::from_roots(QVec{Rational(1, 2), Rational(1, 2)}, 2);
  CHECK(rooted.values() == QVec{Rational(1, 4), Rational(1, 4)});
  CHECK(rooted.monomial(QVec{0, half}) == half);
  CHECK(rooted.monomial(QVec{Rational(-3, 2), 0}) == 8);
  CHECK_THROWS_AS(rooted.monomial(QVec{Rational(1, 3), 0}), DomainError);
  TauPoint partial(QVec{half, Rational(1, 4)}, QVec{0, half}, 2);
  CHECK(partial.monomial(QVec{1, Rational(-1, 2)}) == 1);
  CHECK_THROWS_AS(partial.monomial(QVec{half, 0}), DomainError);
  CHECK_FALSE(TauPoint(QVec{1, half}).in_domain());
  CHECK_FALSE(TauPoint(QVec{0, half}).in_domain());
  CHECK_THROWS_AS(TauPoint(QVec{Rational(3, 2), half}).require_domain(), DomainError);
}

TEST_CASE("C2 characters") {
  auto s10 = character_poly(generate_crystal(c2(), pi1()));
  CHECK(s10 == poly2({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 2, 1}}));
  auto s11 = character_poly(generate_crystal(c2(), gamma12()));
  CHECK(s11 == poly2({{1, 0, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}, {1, 2, 2}}));
  CHECK(character_poly(generate_crystal(c2(), PiecewisePath::constant(2))) == ExponentPolynomial::constant(2, 1));
  CHECK(s10.evaluate(TauPoint(QVec{half, half})) == Rational(15, 8));
}

TEST_CASE("Sigma_M for the two-summand C2 module") {
  for (long a1 : {1, 2})
    for (long a2 : {0, 1, 3}) {
      std::vector<ModuleSummand> summands{{Weight{1, 0}, a1, std::nullopt}};
      if (a2 > 0) summands.push_back({Weight{0, 1}, a2, gamma12()});
      auto module = generate_module_crystal(c2(), ModuleSpec{summands});
      auto s10 = poly2({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 2, 1}});
      auto s11 = poly2({{1, 0, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}, {1, 2, 2}});
      auto expect = s10.shifted(QVec{-1, -half}) * Rational(a1) + s11.shifted(QVec{-1, -1}) * Rational(a2);
      CHECK(module_character(module) == expect);
    }
  // a1 = 1, a2 = 0 at tau = (1/2, 1/4) with sqrt(tau2) = 1/2
  auto single = generate_module_crystal(c2(), ModuleSpec::irreducible(Weight{1, 0}));
  TauPoint tau(QVec{half, Rational(1, 4)}, QVec{0, half}, 2);
  CHECK(sigma_M(single, tau) == Rational(27, 4));
  CHECK_THROWS_AS(sigma_M(single, TauPoint(QVec{half, Rational(1, 4)})), DomainError);
  CHECK_THROWS_AS(TauPoint(QVec{half, Rational(1, 4)}, QVec{0, Rational(1, 3)}, 2), std::invalid_argument);
}

TEST_CASE("Weyl numerator") {
  WeylGroup a1g(CartanDatum::from_type("A1"));
  auto a1 = CartanDatum::from_type("A1");
  auto num = weyl_numerator(Weight{0}, a1, a1g);
  ExponentPolynomial expect(1);
  expect.add_term(QVec{0}, 1);
  expect.add_term(QVec{1}, -1);
  CHECK(num == expect);

  WeylGroup group(c2());
  CHECK(weyl_numerator(Weight{0, 0}, c2(), group) ==
        poly2({{1, 0, 0}, {1, 1, 2}, {1, 4, 3}, {1, 3, 1}, {-1, 1, 0}, {-1, 0, 1}, {-1, 4, 2}, {-1, 3, 3}}));
  auto regular = weyl_numerator(Weight{3, 2}, c2(), group);
  CHECK(regular.size() == 8);
  CHECK(regular.in_positive_cone());
  CHECK(regular.coefficient(QVec{0, 0}) == 1);
}

TEST_CASE("product form equals the Weyl numerator") {
  for (const auto* d : {&c2(), &a2()}) {
    WeylGroup group(*d);
    CharacterCache cache(*d);
    for (Weight mu : {Weight{0, 0}, Weight{1, 0}, Weight{1, 1}, Weight{2, 1}, Weight{0, 3}})
      CHECK(cache.psi_poly(mu) == weyl_numerator(mu, *d, group));
  }
}

TEST_CASE("eight-term display for C2") {
  CharacterCache cache(c2());
  for (long m1 = 0; m1 <= 4; ++m1)
    for (long m2 = 0; m2 <= m1; ++m2) CHECK(cache.psi_poly(partition(m1, m2)) == c2_psi_display(m1, m2));
}

TEST_CASE("psi values") {
  CharacterCache cache(c2());
  TauPoint tau(QVec{half, half});
  CHECK(psi(cache, Weight{0, 0}, tau) == Rational(21, 128));
  CHECK_THROWS_AS(psi(cache, Weight{0, 0}, TauPoint(QVec{half, 1})), DomainError);

  auto a1 = CartanDatum::from_type("A1");
  CharacterCache c1(a1);
  TauPoint t1(QVec{Rational(2, 7)});
  for (long k = 0; k <= 5; ++k) CHECK(psi(c1, Weight{k}, t1) == 1 - pow(Rational(2, 7), k + 1));

  CharacterEvaluator eval(cache, tau);
  for (Weight mu : {Weight{0, 0}, Weight{1, 0}, Weight{2, 2}}) {
    CHECK(eval.psi(mu) > 0);
    CHECK(eval.psi(mu) <= 1);
  }
}

TEST_CASE("character product identity") {
  auto steps = generate_crystal(c2(), pi1());
  auto skappa = formal_character(steps);
  for (Weight mu : {Weight{0, 0}, Weight{1, 1}}) {
    auto layers = count_f_multiplicity(steps, mu, 3);
    auto smu = formal_character(generate_crystal(c2(), mu.is_zero() ? PiecewisePath::constant(2)
                                                                      : PiecewisePath::line(mu)));
    auto lhs = smu;
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      lhs = lhs * skappa;
      ExponentPolynomial rhs(2);
      for (const auto& [lambda, f] : layers[ell])
        rhs += formal_character(generate_crystal(c2(), PiecewisePath::line(lambda))) * Rational(f);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("finite-ell sums") {
  auto steps = generate_crystal(c2(), pi1());
  TauPoint tau(QVec{half, half});
  CHECK(psi_ell(steps, Weight{0, 0}, tau, 0) == 1);
  CHECK(psi_ell(steps, Weight{0, 0}, tau, 1) == Rational(8, 15));
  CharacterCache cache(c2());
  Rational prev = 1;
  for (std::size_t ell = 1; ell <= 6; ++ell) {
    Rational cur = psi_ell(steps, Weight{0, 0}, tau, ell);
    CHECK(cur <= prev);
    CHECK(cur >= psi(cache, Weight{0, 0}, tau));
    prev = cur;
  }
}

TEST_CASE("finite-ell master identity") {
  for (const auto* d : {&c2(), &a2()}) {
    WeylGroup group(*d);
    CharacterCache cache(*d);
    auto steps = generate_crystal(*d, PiecewisePath::line(Weight{1, 0}));
    for (const TauPoint& tau : {TauPoint(QVec{half, half}), TauPoint(QVec{Rational(1, 3), Rational(2, 5)})})
      for (Weight mu : {Weight{0, 0}, Weight{1, 0}}) {
        auto layers = count_f_multiplicity(steps, mu, 3);
        for (std::size_t ell = 1; ell <= 3; ++ell)
          CHECK(alternating_Pi_ell(steps, group, mu, tau, ell, layers[ell]) == psi(cache, mu, tau));
      }
  }
}

TEST_CASE("twisted characters") {
  // S_kappa(tau^w) = tau^{w(kappa) - kappa} S_kappa(tau)
  WeylGroup group(c2());
  TauPoint tau(QVec{Rational(1, 3), Rational(3, 5)});
  for (const auto& path : {pi1(), gamma12(), PiecewisePath::line(v(2, 1))}) {
    auto crystal = generate_crystal(c2(), path);
    auto s = character_poly(crystal);
    const Weight kappa = crystal.components().front().highest_weight;
    for (std::size_t w = 0; w < group.size(); ++w) {
      QVec twisted;
      for (std::size_t i = 0; i < 2; ++i)
        twisted.push_back(tau.monomial(c2().root_coords(group.act(w, c2().simple_root(i)))));
      TauPoint tw(twisted);
      // S(tau^w) = sum tau^{w(kappa - wt)}
      CHECK(s.evaluate(tw) == tau.monomial(c2().root_coords(group.act(w, kappa) - kappa)) * s.evaluate(tau));
    }
  }
}
