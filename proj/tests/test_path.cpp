#include <doctest.h>

#include "fixtures.hpp"

using namespace lpath;
using namespace fixtures;

TEST_CASE("canonical form") {
  auto half = [](const QVec& x) { return Rational(1, 2) * x; };
  CHECK(PiecewisePath::from_segments({half(e1), half(e1)}, 2) == pi1());
  auto g = gamma12();
  CHECK(g.segment_count() == 2);
  CHECK(g.breakpoints() == std::vector<Rational>{0, Rational(1, 2), 1});
  auto raw = PiecewisePath::canonicalize({0, Rational(1, 3), Rational(2, 3), 1},
                                         {v(0, 0), v(1, 0), v(1, 0), v(0, 1)});
  CHECK(raw.segment_count() == 2);
  CHECK(PiecewisePath::constant(2).is_constant());
  CHECK_THROWS_AS(PiecewisePath::canonicalize({0, Rational(2, 3), Rational(1, 3), 1},
                                              {v(0, 0), v(1, 0), v(1, 0), v(0, 1)}),
                  FormatError);
  CHECK_THROWS_AS(PiecewisePath::canonicalize({0, 1}, {v(1, 0), v(0, 1)}), FormatError);
}

TEST_CASE("concatenation") {
  CHECK(concat(pi1(), PiecewisePath::constant(2)) == pi1());
  auto back = concat(pi1(), pi1bar());
  CHECK(is_zero(back.endpoint()));
  CHECK(back.segment_count() == 2);
  CHECK(concat(concat(pi1(), pi2()), pi1bar()) == concat(pi1(), concat(pi2(), pi1bar())));
  CHECK(concat(pi1(), pi1()) == PiecewisePath::line(v(2, 0)));
}

TEST_CASE("height extrema") {
  auto a = height_function_extrema(pi1(), 0);
  CHECK(a.minimum == 0);
  CHECK(height_function_extrema(PiecewisePath::constant(2), 1).minimum == 0);
  auto b = height_function_extrema(pi1bar(), 0);
  CHECK(b.minimum == -1);
  CHECK(b.witnesses == std::vector<Rational>{1});
}

TEST_CASE("root operators on the C2 goldens") {
  const auto& d = c2();
  CHECK(apply_f(d, pi1(), 0) == pi2());
  CHECK(apply_f(d, pi2(), 1) == pi2bar());
  CHECK(apply_f(d, pi2bar(), 0) == pi1bar());
  CHECK_FALSE(apply_f(d, pi1bar(), 0).has_value());
  CHECK(apply_e(d, pi2(), 0) == pi1());
  CHECK_FALSE(apply_e(d, std::nullopt, 0).has_value());
  CHECK_FALSE(apply_f(d, std::nullopt, 1).has_value());

  CHECK(apply_f(d, gamma12(), 1) == gamma12bar());
  CHECK(apply_e(d, gamma12bar(), 1) == gamma12());
  auto g22 = apply_f(d, apply_f(d, gamma12(), 1), 0);
  REQUIRE(g22.has_value());
  CHECK(*g22 == gamma22bar());
  CHECK(is_zero(g22->points().front()));
  CHECK(is_zero(g22->endpoint()));
  CHECK(apply_f(d, gamma22bar(), 0) == gamma21bar());
  CHECK(apply_f(d, gamma21bar(), 1) == gamma2bar1bar());
}

TEST_CASE("eps and phi") {
  const auto& d = c2();
  CHECK(eps_phi(d, pi1(), 0) == std::pair{0, 1});
  CHECK(eps_phi(d, pi1(), 1) == std::pair{0, 0});
  CHECK(eps_phi(d, gamma22bar(), 0) == std::pair{1, 1});
  CHECK(path_weight(pi2()) == Weight{-1, 1});
  CHECK(path_weight(PiecewisePath::constant(2)) == Weight{0, 0});
  CHECK_THROWS_AS(path_weight(PiecewisePath::line(QVec{Rational(1, 2), 0})), std::domain_error);
}

TEST_CASE("non-integral paths follow the closed form") {
  // h_1 dips to -1/2 then rises: f~ and e~ stay mutually inverse.
  const auto& d = c2();
  auto eta = PiecewisePath::from_segments({QVec{Rational(-1, 2), 0}, QVec{Rational(5, 2), 0}}, 2);
  auto f = apply_f(d, eta, 0);
  REQUIRE(f.has_value());
  CHECK(f->endpoint() == eta.endpoint() - d.simple_root(0).to_qvec());
  CHECK(apply_e(d, f, 0) == eta);
  CHECK_FALSE(apply_e(d, eta, 0).has_value());
}

TEST_CASE("operator invariants on random concatenations") {
  const auto& d = c2();
  std::vector<PiecewisePath> pieces{pi1(), pi2(), pi2bar(), pi1bar(), gamma12(), gamma22bar()};
  for (const auto& a : pieces)
    for (const auto& b : pieces)
      for (const auto& c : pieces) {
        auto eta = concat({&a, &b, &c});
        for (std::size_t i = 0; i < 2; ++i) {
          auto f = apply_f(d, eta, i);
          if (f) {
            CHECK(apply_e(d, f, i) == eta);
            CHECK(f->endpoint() == eta.endpoint() - d.simple_root(i).to_qvec());
            // eta - f(eta) = g alpha_i with g nondecreasing from 0 to 1
            auto tr = trace_f(d, eta, i);
            REQUIRE(tr.has_value());
            CHECK(tr->weights.front() == 0);
            Rational prev = 0;
            for (std::size_t k = 0; k < tr->times.size(); ++k) {
              CHECK(tr->before[k] == eta.at(tr->times[k]));
              CHECK(tr->weights[k] >= prev);
              CHECK(tr->after[k][i] <= tr->before[k][i]);
              prev = tr->weights[k];
            }
            CHECK(prev == 1);
          }
          auto e = apply_e(d, eta, i);
          if (e) {
            CHECK(apply_f(d, e, i) == eta);
            auto tr = trace_e(d, eta, i);
            REQUIRE(tr.has_value());
            for (std::size_t k = 0; k < tr->times.size(); ++k) {
              CHECK(tr->weights[k] >= 0);
              CHECK(tr->after[k][i] >= tr->before[k][i]);
            }
            CHECK(tr->weights.back() == 1);
          }
        }
        bool highest = !apply_e(d, eta, 0) && !apply_e(d, eta, 1);
        CHECK(highest == eta.stays_in_chamber());
      }
}

TEST_CASE("path literals") {
  const auto& d = c2();
  auto p = parse_path(R"([[0,[0,0]],["1/2",[1,0]],[1,["0","1"]]])", d);
  CHECK(p == gamma12());
  auto amb = parse_path(R"([[0,[0,0]],["1/2",[1,0]],[1,[1,1]]])", d, true);
  CHECK(amb == gamma12());
  CHECK(parse_path(path_to_json(gamma22bar()), d) == gamma22bar());
  CHECK_THROWS_AS(parse_path("[[0,[0,0]],[1,[1]]]", d), FormatError);
  CHECK_THROWS_AS(parse_path("not json", d), FormatError);
  CHECK_THROWS_AS(parse_path(R"([[0,[0,0]],["x",[1,0]]])", d), FormatError);
}

TEST_CASE("Weyl transform and reversal") {
  const auto& d = c2();
  WeylGroup w(d);
  CHECK(pi1().transformed(w, w.simple_reflection(0)) == pi2());
  CHECK(gamma12().reversed() == gamma2bar1bar());
}
