#include "lpath/montecarlo.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <thread>

namespace lpath {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64::mix(SplitMix64::mix(seed) ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

NodeSampler::NodeSampler(const CrystalDistribution& dist) {
  if (dist.p.empty()) throw std::invalid_argument("empty distribution");
  if (dist.total() != 1) throw IntegrityError("step probabilities do not sum to one");
  mpz_class scale = 1;
  scale <<= 64;
  const mpz_class top = scale - 1;
  Rational cum = 0;
  for (std::size_t k = 0; k + 1 < dist.p.size(); ++k) {
    cum += dist.p[k];
    Rational x = cum * scale;
    mpz_class t;
    mpz_cdiv_q(t.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (t > top) t = top;
    thresholds_.push_back(static_cast<std::uint64_t>(mpz_get_ui(t.get_mpz_t())));
  }
}

std::size_t NodeSampler::draw(std::uint64_t u) const {
  return static_cast<std::size_t>(std::upper_bound(thresholds_.begin(), thresholds_.end(), u) - thresholds_.begin());
}

namespace {

nlohmann::json rational_json(const Rational& q) { return {{"exact", q.get_str()}, {"value", to_double(q)}}; }

bool node_stays(const CrystalNode& node, const Weight& at) {
  for (std::size_t i = 0; i < at.rank(); ++i)
    if (at[i] + node.min_height[i] < 0) return false;
  return true;
}

unsigned resolve_threads(unsigned threads, std::size_t N) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, 16);
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, N / 256 + 1)));
}

// Runs body(begin, end, slot) on contiguous index blocks.
template <class Body>
void parallel_blocks(std::size_t N, unsigned threads, Body body) {
  if (threads <= 1) {
    body(0, N, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex m;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = N * t / threads, e = N * (t + 1) / threads;
    pool.emplace_back([&, b, e, t] {
      try {
        body(b, e, t);
      } catch (...) {
        std::lock_guard lock(m);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

WalkSample sample_walk(const CrystalDistribution& dist, const Weight& mu, std::size_t L, std::uint64_t seed) {
  const NodeSampler sampler(dist);
  SplitMix64 rng(seed);
  WalkSample s;
  s.seed = seed;
  s.start = mu;
  s.positions.push_back(mu);
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t k = sampler.draw(rng.next());
    const auto& node = dist.crystal->node(k);
    s.steps.push_back(k);
    s.stays.push_back(node_stays(node, s.positions.back()));
    s.positions.push_back(s.positions.back() + node.weight);
  }
  return s;
}

std::vector<std::uint64_t> empirical_step_law(const CrystalDistribution& dist, std::size_t N, std::uint64_t seed) {
  const NodeSampler sampler(dist);
  std::vector<std::uint64_t> counts(sampler.size(), 0);
  for (std::size_t s = 0; s < N; ++s) ++counts[sampler.draw(SplitMix64(sample_seed(seed, s)).next())];
  return counts;
}

EstimatorReport bernoulli_report(std::string label, std::uint64_t successes, std::size_t n,
                                 std::optional<Rational> exact, double extra_band) {
  EstimatorReport r;
  r.label = std::move(label);
  r.n = n;
  r.estimate = n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0;
  r.exact = std::move(exact);
  // sigma from the target when known so that an estimate of exactly 0 or 1 still gets a band
  const double p = r.exact ? to_double(*r.exact) : r.estimate;
  r.standard_error = n ? std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(n)) : 0.0;
  r.band = std::max(4 * r.standard_error, extra_band);
  if (r.exact) {
    const double diff = r.estimate - p;
    r.z = r.standard_error > 0 ? diff / r.standard_error : (diff == 0 ? 0.0 : HUGE_VAL);
    r.pass = std::abs(diff) <= r.band;
  }
  return r;
}

std::string EstimatorReport::to_json() const {
  nlohmann::json j{{"label", label},        {"estimate", estimate}, {"n", n},
                   {"stderr", standard_error}, {"z", z},            {"band", band},
                   {"pass", pass}};
  j["exact"] = exact ? rational_json(*exact) : nlohmann::json(nullptr);
  return j.dump(2);
}

StayCounts simulate_stays(const CrystalDistribution& dist, const Weight& mu, std::vector<std::size_t> horizons,
                          std::size_t N, std::uint64_t seed, unsigned threads, const std::optional<Weight>& kappa0) {
  if (!mu.is_dominant()) throw std::invalid_argument("start " + mu.str() + " is not dominant");
  if (horizons.empty()) throw std::invalid_argument("no horizons");
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  const std::size_t L = horizons.back();
  const NodeSampler sampler(dist);
  const auto& crystal = *dist.crystal;
  const unsigned T = resolve_threads(threads, N);

  std::vector<StayCounts> part(T);
  parallel_blocks(N, T, [&](std::size_t b, std::size_t e, unsigned slot) {
    StayCounts& c = part[slot];
    c.continuous.assign(horizons.size(), 0);
    c.discrete.assign(horizons.size(), 0);
    std::vector<std::size_t> drawn(L);
    for (std::size_t s = b; s < e; ++s) {
      SplitMix64 rng(sample_seed(seed, s));
      Weight w = mu;
      // first step at which the event fails; L + 1 when it never does
      std::size_t cont_exit = L + 1, disc_exit = L + 1;
      for (std::size_t l = 1; l <= L; ++l) {
        const std::size_t k = sampler.draw(rng.next());
        drawn[l - 1] = k;
        const auto& node = crystal.node(k);
        if (cont_exit > L && !node_stays(node, w)) cont_exit = l;
        w += node.weight;
        if (disc_exit > L && !w.is_dominant()) disc_exit = l;
      }
      for (std::size_t h = 0; h < horizons.size(); ++h) {
        const bool cs = cont_exit > horizons[h], ds = disc_exit > horizons[h];
        c.continuous[h] += cs;
        c.discrete[h] += ds;
        if (cs && !ds) ++c.inclusion_violations;
      }
      if (kappa0 && disc_exit > L) {
        Weight at = mu + *kappa0;
        for (std::size_t l = 0; l < L; ++l) {
          const auto& node = crystal.node(drawn[l]);
          ++c.lemma_checks;
          if (!node_stays(node, at)) ++c.lemma_violations;
          at += node.weight;
        }
      }
    }
  });

  StayCounts out;
  out.horizons = horizons;
  out.n = N;
  out.continuous.assign(horizons.size(), 0);
  out.discrete.assign(horizons.size(), 0);
  for (const auto& c : part) {
    for (std::size_t h = 0; h < c.continuous.size(); ++h) {
      out.continuous[h] += c.continuous[h];
      out.discrete[h] += c.discrete[h];
    }
    out.inclusion_violations += c.inclusion_violations;
    out.lemma_checks += c.lemma_checks;
    out.lemma_violations += c.lemma_violations;
  }
  return out;
}

HLawReport empirical_h_law(const CrystalDistribution& dist, CharacterEvaluator& eval, std::size_t ell_max,
                           std::size_t N, std::uint64_t seed, unsigned threads) {
  if (dist.twist != 0) throw std::invalid_argument("the Pitman chain law needs the untwisted step law");
  const NodeSampler sampler(dist);
  const auto& crystal = *dist.crystal;
  const auto& datum = crystal.datum();
  const unsigned T = resolve_threads(threads, N);
  using Key = std::pair<Weight, Weight>;

  std::vector<std::map<Key, std::uint64_t>> part(T);
  parallel_blocks(N, T, [&](std::size_t b, std::size_t e, unsigned slot) {
    auto& counts = part[slot];
    for (std::size_t s = b; s < e; ++s) {
      SplitMix64 rng(sample_seed(seed, s));
      TensorNode node;
      for (std::size_t l = 0; l < ell_max; ++l) node.factors.push_back({&crystal, sampler.draw(rng.next())});
      const auto H = pitman_trajectory(node);
      for (std::size_t l = 0; l + 1 < H.size(); ++l) ++counts[{H[l], H[l + 1]}];
    }
  });

  std::map<Key, std::uint64_t> counts;
  std::map<Weight, std::uint64_t> rows;
  for (const auto& c : part)
    for (const auto& [k, v] : c) {
      counts[k] += v;
      rows[k.first] += v;
    }

  const Weight ref = crystal.components().front().highest_weight;
  HLawReport rep;
  rep.n = N;
  rep.ell_max = ell_max;
  std::map<Weight, Multiplicities> mult;
  for (const auto& [from, total] : rows) {
    auto it = mult.find(from);
    if (it == mult.end()) it = mult.emplace(from, count_multiplicity(crystal, from)).first;
    // cells with exact mass but no observations matter too
    std::map<Weight, std::uint64_t> seen;
    for (const auto& [lambda, m] : it->second) seen[lambda] = 0;
    for (auto c = counts.lower_bound({from, Weight()}); c != counts.end() && c->first.first == from; ++c)
      seen[c->first.second] = c->second;
    for (const auto& [to, cnt] : seen) {
      HLawCell cell;
      cell.from = from;
      cell.to = to;
      cell.count = cnt;
      cell.row_total = total;
      auto m = it->second.find(to);
      if (m != it->second.end())
        cell.exact = eval.S(to) / (eval.S(from) * dist.normalizer) *
                     eval.tau().monomial(datum.root_coords(ref + from - to)) * Rational(m->second);
      const double p = to_double(cell.exact);
      const double f = static_cast<double>(cnt) / static_cast<double>(total);
      const double sd = std::sqrt(p * (1 - p) / static_cast<double>(total));
      cell.z = sd > 0 ? (f - p) / sd : (f == p ? 0.0 : HUGE_VAL);
      cell.pass = std::abs(f - p) <= 4 * sd || (sd == 0 && f == p);
      rep.worst_z = std::max(rep.worst_z, std::abs(cell.z));
      rep.pass = rep.pass && cell.pass;
      rep.cells.push_back(std::move(cell));
    }
  }
  return rep;
}

std::string HLawReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cells)
    cs.push_back({{"from", c.from.coords()},
                  {"to", c.to.coords()},
                  {"count", c.count},
                  {"row_total", c.row_total},
                  {"exact", rational_json(c.exact)},
                  {"z", std::isfinite(c.z) ? nlohmann::json(c.z) : nlohmann::json("inf")},
                  {"pass", c.pass}});
  nlohmann::json j{{"n", n}, {"ell_max", ell_max}, {"worst_z", worst_z}, {"pass", pass}, {"cells", cs}};
  return j.dump(2);
}

SandwichReport sandwich_check(const CrystalDistribution& dist, CharacterEvaluator& eval, const Weight& mu,
                              std::size_t L, std::size_t N, std::uint64_t seed, unsigned threads) {
  if (dist.twist != 0) throw std::invalid_argument("the sandwich bounds need the untwisted step law");
  SandwichReport r;
  r.mu = mu;
  r.L = L;
  r.kappa0 = kappa0(*dist.crystal);
  r.lower = eval.psi(mu);
  r.upper = eval.psi(mu + r.kappa0);
  r.exact_discrete = stay_probabilities(dist, mu, L, false).back();
  const Rational exact_cont = stay_probabilities(dist, mu, L, true).back();

  const auto c = simulate_stays(dist, mu, {L}, N, seed, threads, r.kappa0);
  r.discrete = bernoulli_report("discrete stay", c.discrete[0], N, r.exact_discrete);
  r.continuous = bernoulli_report("continuous stay", c.continuous[0], N, exact_cont);
  r.lemma_checks = c.lemma_checks;
  r.lemma_violations = c.lemma_violations;
  r.inclusion_violations = c.inclusion_violations;
  r.lower_ok = r.discrete.estimate >= to_double(r.lower) - r.discrete.band;
  r.upper_ok = r.discrete.estimate <= to_double(r.upper) + r.discrete.band;
  r.pass = r.lower_ok && r.upper_ok && r.lemma_violations == 0 && r.inclusion_violations == 0;
  return r;
}

std::string SandwichReport::to_json() const {
  nlohmann::json j{{"mu", mu.coords()},
                   {"kappa0", kappa0.coords()},
                   {"L", L},
                   {"lower", rational_json(lower)},
                   {"upper", rational_json(upper)},
                   {"exact_discrete", rational_json(exact_discrete)},
                   {"discrete", nlohmann::json::parse(discrete.to_json())},
                   {"continuous", nlohmann::json::parse(continuous.to_json())},
                   {"lemma_checks", lemma_checks},
                   {"lemma_violations", lemma_violations},
                   {"inclusion_violations", inclusion_violations},
                   {"lower_ok", lower_ok},
                   {"upper_ok", upper_ok},
                   {"pass", pass}};
  return j.dump(2);
}

RatioReport asymptotic_ratio(const CrystalDistribution& dist, CharacterEvaluator& eval, const Weight& mu,
                             const std::vector<std::size_t>& ells) {
  if (ells.empty()) throw std::invalid_argument("no lengths");
  const auto& steps = *dist.crystal;
  const auto& datum = steps.datum();
  RatioReport r;
  r.mu = mu;
  r.drift = drift(dist);
  r.target = eval.tau().monomial(Rational(-1) * datum.root_coords(mu)) * eval.S(mu);

  const std::size_t top = *std::max_element(ells.begin(), ells.end());
  const auto f_mu = count_f_multiplicity(steps, mu, top);
  const auto f_0 = count_f_multiplicity(steps, Weight(steps.rank()), top);
  const QVec m_amb = datum.to_ambient(r.drift);

  for (std::size_t ell : ells) {
    std::optional<RatioPoint> best;
    Rational best_d;
    for (const auto& [lambda, a] : f_mu[ell]) {
      auto z = f_0[ell].find(lambda);
      if (a <= 0 || z == f_0[ell].end() || z->second <= 0) continue;
      const QVec diff = datum.to_ambient(lambda) - Rational(static_cast<long>(ell)) * m_amb;
      Rational d = 0;
      for (const auto& x : diff) d += x * x;
      // map order is lexicographic, so strict improvement keeps the lowest tie
      if (!best || d < best_d) {
        best_d = d;
        best = RatioPoint{ell, lambda, a, z->second, Rational(a) / Rational(z->second), 0};
      }
    }
    if (!best) {
      r.notes.push_back("no weight with both counts positive at l = " + std::to_string(ell));
      continue;
    }
    best->deviation = abs(best->ratio - r.target);
    r.points.push_back(*best);
  }
  r.pass = r.points.size() >= 2 && r.points.back().deviation < r.points.front().deviation;
  return r;
}

std::string RatioReport::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points)
    pts.push_back({{"ell", p.ell},
                   {"lambda", p.lambda.coords()},
                   {"f_mu", p.f_mu.get_str()},
                   {"f_zero", p.f_zero.get_str()},
                   {"ratio", rational_json(p.ratio)},
                   {"deviation", rational_json(p.deviation)}});
  nlohmann::json d = nlohmann::json::array();
  for (const auto& x : drift) d.push_back(rational_json(x));
  nlohmann::json j{{"mu", mu.coords()}, {"target", rational_json(target)}, {"drift", d},
                   {"points", pts},     {"notes", notes},                  {"pass", pass}};
  return j.dump(2);
}

}  // namespace lpath
