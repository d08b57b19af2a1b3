#include <doctest.h>

#include "fixtures.hpp"

using namespace lpath;

TEST_CASE("C2 datum") {
  const auto& d = fixtures::c2();
  CHECK(d.matrix() == std::vector<std::vector<std::int64_t>>{{2, -1}, {-2, 2}});
  CHECK(d.det() == 2);
  // omega_1 = e1, omega_2 = e1 + e2, rho = (2,1) in the ambient basis
  CHECK(d.to_ambient(d.fundamental_weight(0)) == QVec{1, 0});
  CHECK(d.to_ambient(d.fundamental_weight(1)) == QVec{1, 1});
  CHECK(d.to_ambient(d.rho()) == QVec{2, 1});
  CHECK(d.to_ambient(d.simple_root(0)) == QVec{1, -1});
  CHECK(d.to_ambient(d.simple_root(1)) == QVec{0, 2});
  CHECK(d.from_ambient(QVec{0, 1}) == QVec{-1, 1});
  for (std::size_t i = 0; i < 2; ++i) {
    // inverse * matrix = identity
    for (std::size_t j = 0; j < 2; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 2; ++k) s += d.inverse()[i][k] * d.entry(k, j);
      CHECK(s == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("label parsing and rank limits") {
  CHECK(CartanDatum::from_type("A1").matrix() == std::vector<std::vector<std::int64_t>>{{2}});
  CHECK(CartanDatum::from_type("C_2").rank() == 2);
  CHECK(CartanDatum::parse("[[2,-1],[-1,2]]").rank() == 2);
  CHECK_THROWS_AS(CartanDatum::from_type("A9"), FormatError);
  CHECK(CartanDatum::from_type("A9", 9).rank() == 9);
  CHECK_THROWS_AS(CartanDatum::from_type("B1"), FormatError);
  CHECK_THROWS_AS(CartanDatum::from_type("D3"), FormatError);
  CHECK_THROWS_AS(CartanDatum::from_type("Q2"), FormatError);
  CHECK_THROWS_AS(CartanDatum::parse("[[2,-1],[-1]]"), FormatError);
  CHECK_THROWS_AS(CartanDatum::parse("[[2,0.5],[-1,2]]"), FormatError);
}

TEST_CASE("non-finite matrices are rejected with the failing minor") {
  try {
    CartanDatum::from_matrix({{2, -2}, {-2, 2}});
    FAIL("affine A1 accepted");
  } catch (const CartanError& e) {
    CHECK(std::string(e.what()).find("minor") != std::string::npos);
  }
  CHECK_THROWS_AS(CartanDatum::from_matrix({{2, -1}, {0, 2}}), CartanError);   // zero pattern
  CHECK_THROWS_AS(CartanDatum::from_matrix({{2, 1}, {1, 2}}), CartanError);    // positive off-diagonal
  CHECK_THROWS_AS(CartanDatum::from_matrix({{3, -1}, {-1, 2}}), CartanError);  // diagonal
  CHECK_THROWS_AS(CartanDatum::from_matrix({{2, 0}, {0, 2}}), CartanError);    // decomposable
  CHECK_THROWS_AS(CartanDatum::from_matrix({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}), CartanError);
}

TEST_CASE("positive roots") {
  const auto& c2 = fixtures::c2();
  std::vector<QVec> amb;
  for (const auto& r : c2.positive_roots()) amb.push_back(c2.to_ambient(r));
  std::sort(amb.begin(), amb.end(), QVecLess{});
  std::vector<QVec> expect{{0, 2}, {1, -1}, {1, 1}, {2, 0}};
  CHECK(amb == expect);
  CHECK(CartanDatum::from_type("A1").positive_roots().size() == 1);
  CHECK(fixtures::a2().positive_roots().size() == 3);
  const std::pair<const char*, std::size_t> counts[] = {{"B3", 9}, {"C3", 9}, {"D4", 12}, {"G2", 6},
                                                         {"F4", 24}, {"E6", 36}, {"E7", 63}, {"E8", 120}};
  for (auto [label, count] : counts) CHECK(CartanDatum::from_type(label).positive_roots().size() == count);
}

TEST_CASE("Weyl groups") {
  WeylGroup c2(fixtures::c2());
  CHECK(c2.size() == 8);
  CHECK(c2[c2.identity()].sign == 1);
  Weight beta{3, 2};
  CHECK(c2.act(c2.longest(), beta) == -beta);

  WeylGroup a1(CartanDatum::from_type("A1"));
  CHECK(a1.size() == 2);
  CHECK(a1[a1.simple_reflection(0)].sign == -1);

  WeylGroup a2(fixtures::a2());
  CHECK(a2.size() == 6);
  CHECK(std::count_if(a2.elements().begin(), a2.elements().end(), [](auto& w) { return w.sign == -1; }) == 3);

  CHECK(WeylGroup(CartanDatum::from_type("G2")).size() == 12);
  CHECK(WeylGroup(CartanDatum::from_type("F4")).size() == 1152);
  CHECK_THROWS_AS(WeylGroup(CartanDatum::from_type("F4"), 100), BudgetError);

  // homomorphism, involutions and inverses
  for (std::size_t a = 0; a < c2.size(); ++a) {
    CHECK(c2.compose(a, c2.inverse(a)) == c2.identity());
    for (std::size_t b = 0; b < c2.size(); ++b) CHECK(c2[c2.compose(a, b)].sign == c2[a].sign * c2[b].sign);
  }
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(c2.compose(c2.simple_reflection(i), c2.simple_reflection(i)) == c2.identity());
}

TEST_CASE("reflections") {
  const auto& d = fixtures::c2();
  WeylGroup w(d);
  // s1(omega1) = omega1 - alpha1 = e2
  CHECK(w.act(w.simple_reflection(0), Weight{1, 0}) == Weight{-1, 1});
  CHECK(w.act(w.simple_reflection(1), d.simple_root(1)) == -d.simple_root(1));
  for (std::size_t k = 0; k < w.size(); ++k) CHECK(w.act(k, Weight{0, 0}) == Weight{0, 0});
}

TEST_CASE("chamber position") {
  CHECK(chamber_position(Weight{1, 1}) == ChamberPosition::interior);
  CHECK(chamber_position(Weight{0, 0}) == ChamberPosition::boundary);
  CHECK(chamber_position(Weight{-1, 1}) == ChamberPosition::outside);
}

TEST_CASE("mu + rho - w(mu + rho) lies in Q+") {
  for (const auto* d : {&fixtures::c2(), &fixtures::a2()}) {
    WeylGroup group(*d);
    for (Weight mu : {Weight{0, 0}, Weight{1, 0}, Weight{2, 3}}) {
      for (std::size_t w = 0; w < group.size(); ++w) {
        auto shifted = mu + d->rho();
        for (const auto& x : d->root_coords(shifted - group.act(w, shifted))) {
          CHECK(x >= 0);
          CHECK(x.get_den() == 1);
        }
      }
    }
  }
}

TEST_CASE("orbit of a dominant weight has a single dominant element") {
  WeylGroup group(fixtures::c2());
  Weight mu{2, 1};
  int dominant = 0;
  for (std::size_t w = 0; w < group.size(); ++w) dominant += group.act(w, mu).is_dominant();
  CHECK(dominant == 1);
}
