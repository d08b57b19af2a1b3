// Acceptance suite: one PASS/FAIL line per criterion.

#include "fixtures.hpp"
#include "lpath/montecarlo.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

using namespace lpath;
using namespace fixtures;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Rational half(1, 2);
const TauPoint center(QVec{half, half});

Weight partition(long m1, long m2) { return Weight{m1 - m2, m2}; }

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (over the time limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %s  [%.2fs]%s%s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.empty() ? "" : "  ",
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const Rational& q) {
  std::ostringstream s;
  s << q.get_str() << " (" << to_double(q) << ")";
  return s.str();
}

CrystalGraph two_summand_module() {
  return generate_module_crystal(c2(), ModuleSpec{{{Weight{1, 0}, 1, std::nullopt}, {Weight{0, 1}, 1, gamma12()}}});
}

// doob(Pi^E, psi) against the Pitman chain on states with partition m1 <= 4
bool law_equality(const CrystalGraph& g, const CartanDatum& d, const TauPoint& tau, std::string& why) {
  CharacterCache cache(d);
  CharacterEvaluator eval(cache, tau);
  const auto dist = build_distribution(g, tau);
  const auto seeds = dominant_weights(d.rank(), 4);
  const auto killed = restricted_table(dist, seeds);
  killed.validate();
  const auto psi = psi_function(killed, eval);
  const auto doob = doob_transform(killed, psi);
  const auto hchain = hchain_matrix(dist, eval, seeds);
  hchain.validate();
  for (std::size_t r = 0; r < doob.size(); ++r)
    if (!doob.boundary[r] && doob.rows[r] != hchain.rows[r]) {
      why = "row " + doob.states[r].str() + " differs";
      return false;
    }
  return true;
}

}  // namespace

int main() {
  criterion(1, "C2 golden crystals B(pi1), B(gamma12)", 1.0, [] {
    auto g = generate_crystal(c2(), pi1());
    auto at = [](const CrystalGraph& c, const PiecewisePath& p) { return c.find(p).value(); };
    bool ok = g.size() == 4 && g.edges().size() == 3 && g.f(at(g, pi1()), 0) == at(g, pi2()) &&
              g.f(at(g, pi2()), 1) == at(g, pi2bar()) && g.f(at(g, pi2bar()), 0) == at(g, pi1bar());
    auto h = generate_crystal(c2(), gamma12());
    ok = ok && h.size() == 5 && h.edges().size() == 4 && h.f(at(h, gamma12()), 1) == at(h, gamma12bar()) &&
         h.f(at(h, gamma12bar()), 0) == at(h, gamma22bar()) && h.f(at(h, gamma22bar()), 0) == at(h, gamma21bar()) &&
         h.f(at(h, gamma21bar()), 1) == at(h, gamma2bar1bar());
    const auto& mid = h.node(at(h, gamma22bar())).path;
    ok = ok && is_zero(mid.at(0)) && is_zero(mid.at(1)) && !is_zero(mid.at(half));
    return Outcome{ok, "colors 1,2,1 and 2,1,1,2"};
  });

  criterion(2, "character goldens S_(1,0), S_(1,1), Sigma_M", 0, [] {
    const auto s10 = poly2({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 2, 1}});
    const auto s11 = poly2({{1, 0, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}, {1, 2, 2}});
    const auto c10 = character_poly(generate_crystal(c2(), pi1()));
    const auto c11 = character_poly(generate_crystal(c2(), gamma12()));
    const auto sigma = module_character(two_summand_module());
    const auto expect = s10.shifted(QVec{-1, -half}) + s11.shifted(QVec{-1, -1});
    return Outcome{c10 == s10 && c11 == s11 && sigma == expect, "Sigma_M = " + sigma.str()};
  });

  criterion(3, "Weyl-formula identity and the eight-term display", 5.0, [] {
    bool ok = true;
    std::size_t n = 0;
    {
      WeylGroup W(c2());
      CharacterCache cache(c2());
      for (auto [a, b] : std::vector<std::pair<long, long>>{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 1}})
        for (const Weight& mu : {Weight{a, b}, partition(a, b)}) {
          ok = ok && cache.psi_poly(mu) == weyl_numerator(mu, c2(), W);
          ++n;
        }
      for (long m1 = 0; m1 <= 4; ++m1)
        for (long m2 = 0; m2 <= m1; ++m2) {
          ok = ok && cache.psi_poly(partition(m1, m2)) == c2_psi_display(m1, m2);
          ++n;
        }
    }
    WeylGroup W(a2());
    CharacterCache cache(a2());
    for (const Weight& mu : {Weight{0, 0}, Weight{1, 0}, Weight{0, 1}, Weight{1, 1}, Weight{2, 1}}) {
      ok = ok && cache.psi_poly(mu) == weyl_numerator(mu, a2(), W);
      ++n;
    }
    return Outcome{ok, std::to_string(n) + " polynomial identities"};
  });

  criterion(4, "doob(Pi^E, psi) = Pitman chain", 10.0, [] {
    std::string why;
    const TauPoint module_tau = TauPoint::from_roots(QVec{half, Rational(2, 3)}, 2);
    auto b10 = generate_crystal(c2(), pi1());
    auto b11 = generate_crystal(c2(), gamma12());
    auto mod = two_summand_module();
    auto a = generate_crystal(a2(), PiecewisePath::line(Weight{1, 0}));
    bool ok = law_equality(b10, c2(), center, why) && law_equality(b11, c2(), center, why) &&
              law_equality(mod, c2(), module_tau, why) && law_equality(a, a2(), TauPoint(QVec{half, Rational(1, 3)}), why);
    return Outcome{ok, ok ? "C2 (1,0), (1,1), module a1=a2=1, A2 omega1" : why};
  });

  criterion(5, "finite-l alternating identity", 30.0, [] {
    bool ok = true;
    std::size_t n = 0;
    for (const auto* d : {&c2(), &a2()}) {
      WeylGroup W(*d);
      CharacterCache cache(*d);
      auto steps = generate_crystal(*d, PiecewisePath::line(Weight{1, 0}));
      for (const Weight& mu : {Weight{0, 0}, Weight{1, 0}}) {
        auto layers = count_f_multiplicity(steps, mu, 3);
        for (std::size_t ell = 1; ell <= 2; ++ell) ok = ok && count_f_multiplicity_enumerated(steps, mu, ell) == layers[ell];
        for (const TauPoint& tau : {center, TauPoint(QVec{Rational(1, 3), Rational(2, 5)})})
          for (std::size_t ell = 1; ell <= 3; ++ell) {
            ok = ok && alternating_Pi_ell(steps, W, mu, tau, ell, layers[ell]) == psi(cache, mu, tau);
            ++n;
          }
      }
    }
    return Outcome{ok, std::to_string(n) + " exact identities, DP checked by enumeration"};
  });

  criterion(6, "Pitman law by exhaustive enumeration", 30.0, [] {
    auto g = generate_crystal(c2(), pi1());
    auto d = build_distribution(g, center);
    CharacterCache cache(c2());
    CharacterEvaluator eval(cache, center);
    const auto hchain = hchain_matrix(d, eval, dominant_weights(2, 3));
    bool ok = true;
    for (std::size_t ell = 2; ell <= 3; ++ell) {
      Rational total = 0;
      for (const auto& [traj, prob] : exact_h_law(d, ell)) {
        Rational expect = 1;
        Weight prev{0, 0};
        for (const auto& w : traj) {
          expect *= hchain.entry(prev, w);
          prev = w;
        }
        ok = ok && prob == expect;
        total += prob;
      }
      ok = ok && total == 1;

      // components by union-find over f-edges; each must hold exactly one highest node, the Pitman image
      const auto nodes = tensor_power(g, ell);
      std::map<std::vector<std::size_t>, std::size_t> id;
      auto key = [](const TensorNode& b) {
        std::vector<std::size_t> k;
        for (const auto& f : b.factors) k.push_back(f.node);
        return k;
      };
      for (std::size_t k = 0; k < nodes.size(); ++k) id[key(nodes[k])] = k;
      std::vector<std::size_t> parent(nodes.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
      };
      for (std::size_t k = 0; k < nodes.size(); ++k)
        for (std::size_t i = 0; i < 2; ++i)
          if (auto f = tensor_apply_f(nodes[k], i)) parent[root(k)] = root(id.at(key(*f)));
      std::map<std::size_t, std::size_t> highest_per_component;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (tensor_is_highest(nodes[k])) ++highest_per_component[root(k)];
        const auto p01 = pitman(nodes[k], {0, 1});
        const auto p10 = pitman(nodes[k], {1, 0});
        ok = ok && p01 == p10 && tensor_is_highest(p01) && root(id.at(key(p01))) == root(k);
      }
      for (std::size_t k = 0; k < nodes.size(); ++k) ok = ok && highest_per_component[root(k)] == 1;
    }
    return Outcome{ok, "B^(x)2 and B^(x)3"};
  });

  criterion(7, "Monte Carlo psi for C2 (1,0) at (1/2,1/2)", 60.0, [] {
    auto g = generate_crystal(c2(), pi1());
    auto d = build_distribution(g, center);
    CharacterCache cache(c2());
    const Rational target = psi(cache, Weight{0, 0}, center);
    const Rational psi6 = psi_ell(g, Weight{0, 0}, center, 6);
    const std::size_t N = 200000;
    const auto c = simulate_stays(d, Weight{0, 0}, {6, 50}, N, 20240601);
    const auto r6 = bernoulli_report("L=6", c.continuous[0], N, psi6);
    const auto r50 = bernoulli_report("L=50", c.continuous[1], N, target, to_double(psi6 - target));
    std::ostringstream s;
    s << "psi6 " << fmt(psi6) << " est " << r6.estimate << " z " << r6.z << "; psi " << fmt(target) << " est50 "
      << r50.estimate << " band " << r50.band;
    return Outcome{r6.pass && r50.pass && target == Rational(21, 128), s.str()};
  });

  criterion(8, "twisted points leave the admissible region", 0, [] {
    const TauPoint tau(QVec{half, Rational(1, 3)});
    bool ok = true;
    std::size_t n = 0;
    for (const auto* d : {&c2(), &a2()}) {
      WeylGroup W(*d);
      for (std::size_t w = 1; w < W.size(); ++w, ++n) ok = ok && !twisted_tau(*d, W, w, tau).in_domain();
    }
    return Outcome{ok && n == 12, std::to_string(n) + " non-identity elements"};
  });

  criterion(9, "twisted node law is the relabelled law", 0, [] {
    const TauPoint tau(QVec{half, Rational(1, 3)});
    WeylGroup W(c2());
    bool ok = true;
    for (const auto& path : {pi1(), gamma12()}) {
      auto g = generate_crystal(c2(), path);
      auto d = build_distribution(g, tau);
      for (std::size_t w = 0; w < W.size(); ++w) {
        auto dw = build_twisted_distribution(g, W, w, tau);
        for (std::size_t k = 0; k < g.size(); ++k) ok = ok && dw.p[k] == d.p[weyl_action_on_crystal(g, W, w, k)];
      }
    }
    return Outcome{ok, "B(pi1), B(gamma12), all 8 elements"};
  });

  criterion(10, "drift in the open chamber, twisted drifts outside", 0, [] {
    WeylGroup W(c2());
    SplitMix64 rng(977);
    bool ok = true;
    std::string last;
    for (int trial = 0; trial < 10; ++trial) {
      const TauPoint tau(QVec{Rational(static_cast<long>(1 + rng.next() % 98), 99),
                              Rational(static_cast<long>(1 + rng.next() % 98), 99)});
      for (const auto& path : {pi1(), gamma12()}) {
        auto g = generate_crystal(c2(), path);
        ok = ok && chamber_position(drift(build_distribution(g, tau))) == ChamberPosition::interior;
        for (std::size_t w = 1; w < W.size(); ++w)
          ok = ok && chamber_position(drift(build_twisted_distribution(g, W, w, tau))) == ChamberPosition::outside;
      }
      last = tau.str();
    }
    return Outcome{ok, "10 random points, last " + last};
  });

  criterion(11, "sandwich bounds and the kappa0 shift", 120.0, [] {
    CharacterCache cache(c2());
    CharacterEvaluator eval(cache, center);
    const std::size_t L = 150, N = 100000;
    auto minus = generate_crystal(c2(), pi1());
    const auto a = sandwich_check(build_distribution(minus, center), eval, Weight{0, 0}, L, N, 7);
    const auto against_psi = bernoulli_report("minuscule", static_cast<std::uint64_t>(a.discrete.estimate * N + 0.5), N,
                                              a.lower);
    auto box = generate_crystal(c2(), gamma12());
    const auto b = sandwich_check(build_distribution(box, center), eval, Weight{0, 0}, L, N, 8);
    const bool ok = a.kappa0 == Weight{0, 0} && a.lower == a.upper && against_psi.pass && a.pass && b.pass &&
                    b.kappa0 == Weight{1, 0} && b.lower < b.upper && b.lemma_checks > 0;
    std::ostringstream s;
    s << "minuscule est " << a.discrete.estimate << " vs psi " << to_double(a.lower) << " (z " << against_psi.z
      << "); (1,1): " << to_double(b.lower) << " <= " << b.discrete.estimate << " <= " << to_double(b.upper)
      << ", lemma violations " << b.lemma_violations << "/" << b.lemma_checks;
    return Outcome{ok, s.str()};
  });

  criterion(12, "multiplicity ratio trend for mu = 2 omega1", 120.0, [] {
    auto g = generate_crystal(c2(), pi1());
    CharacterCache cache(c2());
    CharacterEvaluator eval(cache, center);
    const auto r = asymptotic_ratio(build_distribution(g, center), eval, Weight{2, 0}, {6, 7, 8, 9, 10, 11, 12, 13, 14});
    std::ostringstream s;
    s << "target " << fmt(r.target);
    if (!r.points.empty())
      s << ", deviation " << to_double(r.points.front().deviation) << " -> " << to_double(r.points.back().deviation);
    return Outcome{r.pass && r.points.size() == 9, s.str()};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
