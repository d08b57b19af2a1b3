#include "lpath/markov.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace lpath {

Rational CrystalDistribution::total() const { return std::accumulate(p.begin(), p.end(), Rational(0)); }

namespace {

CrystalDistribution make_distribution(const CrystalGraph& crystal, const WeylGroup* group, std::size_t w,
                                      const TauPoint& tau) {
  if (tau.size() != crystal.rank()) throw std::invalid_argument("tau has the wrong number of coordinates");
  tau.require_domain();
  const auto& datum = crystal.datum();
  const Weight ref = crystal.components().front().highest_weight;
  CrystalDistribution d;
  d.crystal = &crystal;
  d.tau = tau;
  d.twist = w;
  d.normalizer = character_poly(crystal).evaluate(tau);
  d.p.reserve(crystal.size());
  for (std::size_t k = 0; k < crystal.size(); ++k) {
    Weight wt = crystal.node(k).weight;
    if (group) wt = group->act(w, wt);
    d.p.push_back(Rational(crystal.multiplicity_of(k)) * tau.monomial(datum.root_coords(ref - wt)) / d.normalizer);
  }
  return d;
}

bool stays(const CrystalNode& node, const Weight& mu) {
  for (std::size_t i = 0; i < mu.rank(); ++i)
    if (mu[i] + node.min_height[i] < 0) return false;
  return true;
}

std::string weight_label(const Weight& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.rank(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out + ")";
}

}  // namespace

CrystalDistribution build_distribution(const CrystalGraph& crystal, const TauPoint& tau) {
  return make_distribution(crystal, nullptr, 0, tau);
}

CrystalDistribution build_twisted_distribution(const CrystalGraph& crystal, const WeylGroup& group, std::size_t w,
                                               const TauPoint& tau) {
  return make_distribution(crystal, &group, w, tau);
}

TauPoint twisted_tau(const CartanDatum& datum, const WeylGroup& group, std::size_t w, const TauPoint& tau) {
  QVec values;
  for (std::size_t i = 0; i < datum.rank(); ++i)
    values.push_back(tau.monomial(datum.root_coords(group.act(w, datum.simple_root(i)))));
  return TauPoint(values);
}

QVec drift(const CrystalDistribution& dist) {
  QVec m = zeros(dist.crystal->rank());
  for (std::size_t k = 0; k < dist.p.size(); ++k) m = m + dist.p[k] * dist.crystal->node(k).weight.to_qvec();
  return m;
}

QVec drift_at(const CrystalDistribution& dist, const Rational& t) {
  QVec m = zeros(dist.crystal->rank());
  for (std::size_t k = 0; k < dist.p.size(); ++k) m = m + dist.p[k] * dist.crystal->node(k).path.at(t);
  return m;
}

Rational walk_transition(const CrystalDistribution& dist, const Weight& eta, const Weight& beta) {
  const Weight step = beta - eta;
  Rational out = 0;
  for (std::size_t k = 0; k < dist.p.size(); ++k)
    if (dist.crystal->node(k).weight == step) out += dist.p[k];
  return out;
}

Rational restricted_transition(const CrystalDistribution& dist, const Weight& mu, const Weight& lambda) {
  const QVec shift = mu.to_qvec();
  Rational out = 0;
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    const auto& node = dist.crystal->node(k);
    if (mu + node.weight == lambda && node.path.stays_in_chamber(shift)) out += dist.p[k];
  }
  return out;
}

std::map<Weight, Rational> restricted_row(const CrystalDistribution& dist, const Weight& mu) {
  std::map<Weight, Rational> row;
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    const auto& node = dist.crystal->node(k);
    if (stays(node, mu)) row[mu + node.weight] += dist.p[k];
  }
  return row;
}

Rational restricted_transition_formula(const CrystalDistribution& dist, const Multiplicities& m, const Weight& mu,
                                       const Weight& lambda) {
  auto it = m.find(lambda);
  if (it == m.end()) return 0;
  const auto& datum = dist.crystal->datum();
  const Weight ref = dist.crystal->components().front().highest_weight;
  return Rational(it->second) * dist.tau.monomial(datum.root_coords(ref + mu - lambda)) / dist.normalizer;
}

// ---------------------------------------------------------------- tables

Rational TransitionTable::entry(const Weight& mu, const Weight& lambda) const {
  auto a = index.find(mu), b = index.find(lambda);
  if (a == index.end() || b == index.end()) return 0;
  auto it = rows[a->second].find(b->second);
  return it == rows[a->second].end() ? Rational(0) : it->second;
}

Rational TransitionTable::row_sum(std::size_t r) const {
  Rational s = 0;
  for (const auto& [j, v] : rows[r]) s += v;
  return s;
}

void TransitionTable::validate() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [j, v] : rows[r])
      if (v < 0) throw IntegrityError("negative entry in row " + states[r].str());
    if (boundary[r]) continue;
    Rational s = row_sum(r);
    if (kind == Kind::stochastic && s != 1)
      throw IntegrityError("row " + states[r].str() + " sums to " + s.get_str() + ", not 1");
    if (kind == Kind::substochastic && s > 1)
      throw IntegrityError("row " + states[r].str() + " sums to " + s.get_str() + " > 1");
  }
}

std::string TransitionTable::to_csv() const {
  std::ostringstream out;
  out << "mu,lambda,exact,value,boundary\n";
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [j, v] : rows[r])
      out << '"' << weight_label(states[r]) << "\",\"" << weight_label(states[j]) << "\"," << v.get_str() << ','
          << to_double(v) << ',' << (boundary[r] ? 1 : 0) << '\n';
  return out.str();
}

std::string TransitionTable::to_json() const {
  using nlohmann::json;
  json j;
  j["kind"] = kind == Kind::stochastic ? "stochastic" : "substochastic";
  json st = json::array(), bd = json::array(), entries = json::array();
  for (std::size_t r = 0; r < states.size(); ++r) {
    st.push_back(states[r].coords());
    bd.push_back(static_cast<bool>(boundary[r]));
    for (const auto& [c, v] : rows[r])
      entries.push_back({{"mu", states[r].coords()},
                         {"lambda", states[c].coords()},
                         {"exact", v.get_str()},
                         {"value", to_double(v)}});
  }
  j["states"] = st;
  j["boundary"] = bd;
  j["entries"] = entries;
  return j.dump(2);
}

std::vector<Weight> dominant_weights(std::size_t rank, std::int64_t max_level) {
  std::vector<Weight> out;
  if (max_level < 0) return out;
  Weight w(rank);
  // odometer over coordinate vectors with bounded sum
  while (true) {
    out.push_back(w);
    std::size_t i = 0;
    for (; i < rank; ++i) {
      ++w[i];
      std::int64_t sum = 0;
      for (auto x : w.coords()) sum += x;
      if (sum <= max_level) break;
      w[i] = 0;
    }
    if (i == rank) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Weight> successors(const CrystalGraph& steps, const Weight& mu) {
  std::set<Weight> out;
  for (const auto& node : steps.nodes())
    if (stays(node, mu)) out.insert(mu + node.weight);
  return {out.begin(), out.end()};
}

std::vector<Weight> close_states(const CrystalGraph& steps, const std::vector<Weight>& seeds,
                                 std::vector<bool>& boundary) {
  std::set<Weight> seed_set(seeds.begin(), seeds.end()), all = seed_set;
  for (const auto& mu : seed_set) {
    if (!mu.is_dominant()) throw std::invalid_argument("state " + mu.str() + " is not dominant");
    for (const auto& lambda : successors(steps, mu)) all.insert(lambda);
  }
  std::vector<Weight> out(all.begin(), all.end());
  boundary.clear();
  for (const auto& w : out) boundary.push_back(!seed_set.count(w));
  return out;
}

void require_closed(const CrystalGraph& steps, const std::vector<Weight>& states) {
  std::set<Weight> have(states.begin(), states.end()), missing;
  for (const auto& mu : states)
    for (const auto& lambda : successors(steps, mu))
      if (!have.count(lambda)) missing.insert(lambda);
  if (missing.empty()) return;
  std::string list;
  for (const auto& w : missing) list += (list.empty() ? "" : " ") + w.str();
  throw IntegrityError("state set is not closed under one step; missing " + list);
}

namespace {

TransitionTable skeleton(const CrystalGraph& steps, const std::vector<Weight>& seeds) {
  TransitionTable t;
  t.states = close_states(steps, seeds, t.boundary);
  for (std::size_t k = 0; k < t.states.size(); ++k) t.index[t.states[k]] = k;
  t.rows.resize(t.states.size());
  return t;
}

}  // namespace

TransitionTable restricted_table(const CrystalDistribution& dist, const std::vector<Weight>& seeds) {
  TransitionTable t = skeleton(*dist.crystal, seeds);
  t.kind = TransitionTable::Kind::substochastic;
  for (std::size_t r = 0; r < t.size(); ++r)
    for (const auto& [lambda, v] : restricted_row(dist, t.states[r])) {
      auto it = t.index.find(lambda);
      if (it != t.index.end()) t.rows[r][it->second] = v;
    }
  return t;
}

TransitionTable hchain_matrix(const CrystalDistribution& dist, CharacterEvaluator& eval,
                              const std::vector<Weight>& seeds) {
  if (dist.twist != 0) throw std::invalid_argument("the Pitman chain uses the untwisted law");
  TransitionTable t = skeleton(*dist.crystal, seeds);
  t.kind = TransitionTable::Kind::stochastic;
  const auto& datum = dist.crystal->datum();
  const Weight ref = dist.crystal->components().front().highest_weight;
  for (std::size_t r = 0; r < t.size(); ++r) {
    const Weight& mu = t.states[r];
    const Rational smu = eval.S(mu);
    for (const auto& [lambda, m] : count_multiplicity(*dist.crystal, mu)) {
      auto it = t.index.find(lambda);
      if (it == t.index.end()) continue;
      t.rows[r][it->second] = eval.S(lambda) / (smu * dist.normalizer) *
                              dist.tau.monomial(datum.root_coords(ref + mu - lambda)) * Rational(m);
    }
  }
  return t;
}

HarmonicDefect harmonic_defect(const TransitionTable& table, const HarmonicFunction& h) {
  auto value = [&](const Weight& w) -> const Rational& {
    auto it = h.find(w);
    if (it == h.end()) throw IntegrityError("harmonic function is undefined at " + w.str());
    return it->second;
  };
  HarmonicDefect out;
  bool first = true;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table.boundary[r]) continue;
    Rational s = 0;
    for (const auto& [j, v] : table.rows[r]) s += v * value(table.states[j]);
    Rational d = abs(s - value(table.states[r]));
    if (first || d > out.worst) {
      out.worst = d;
      out.row = table.states[r];
      first = false;
    }
  }
  return out;
}

TransitionTable doob_transform(const TransitionTable& table, const HarmonicFunction& h) {
  auto defect = harmonic_defect(table, h);
  if (defect.worst != 0)
    throw IntegrityError("function is not harmonic: row " + defect.row.str() + " has defect " +
                         defect.worst.get_str());
  TransitionTable out = table;
  out.kind = TransitionTable::Kind::stochastic;
  for (std::size_t r = 0; r < out.size(); ++r) {
    const Rational& hr = h.at(out.states[r]);
    if (hr <= 0) throw IntegrityError("harmonic function is not positive at " + out.states[r].str());
    for (auto& [j, v] : out.rows[r]) v = v * h.at(out.states[j]) / hr;
  }
  return out;
}

HarmonicFunction psi_function(const TransitionTable& table, CharacterEvaluator& eval) {
  HarmonicFunction h;
  for (const auto& w : table.states) h[w] = eval.psi(w);
  return h;
}

Rational conditioned_transition(const CrystalDistribution& dist, CharacterEvaluator& eval, const Weight& mu,
                                const Weight& lambda) {
  if (!mu.is_dominant() || !lambda.is_dominant()) return 0;
  return restricted_transition(dist, mu, lambda) * eval.psi(lambda) / eval.psi(mu);
}

// ---------------------------------------------------------------- Pitman transform

namespace {

std::vector<std::size_t> color_order(std::size_t rank, const std::vector<std::size_t>& order) {
  if (order.empty()) {
    std::vector<std::size_t> out(rank);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != rank) throw std::invalid_argument("color order must be a permutation");
  return order;
}

}  // namespace

TensorNode pitman(const TensorNode& b, const std::vector<std::size_t>& order) {
  const auto colors = color_order(b.factors.front().crystal->rank(), order);
  TensorNode cur = b;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto i : colors) {
      if (auto up = tensor_apply_e(cur, i)) {
        cur = std::move(*up);
        moved = true;
        break;
      }
    }
  }
  return cur;
}

PiecewisePath pitman(const CartanDatum& datum, const PiecewisePath& eta, const std::vector<std::size_t>& order) {
  bool integral = is_integral(eta);
  for (const auto& x : eta.endpoint()) integral = integral && x.get_den() == 1;
  if (!integral) throw std::invalid_argument("Pitman transform needs an integral path");
  const auto colors = color_order(datum.rank(), order);
  PiecewisePath cur = eta;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto i : colors) {
      if (auto up = apply_e(datum, cur, i)) {
        cur = std::move(*up);
        moved = true;
        break;
      }
    }
  }
  return cur;
}

std::vector<Weight> pitman_trajectory(const TensorNode& b) {
  std::vector<Weight> out{Weight(b.factors.front().crystal->rank())};
  TensorNode prefix;
  for (const auto& f : b.factors) {
    prefix.factors.push_back(f);
    out.push_back(pitman(prefix).weight());
  }
  return out;
}

std::map<std::vector<Weight>, Rational> exact_h_law(const CrystalDistribution& dist, std::size_t ell,
                                                    std::size_t budget) {
  std::map<std::vector<Weight>, Rational> law;
  for (const auto& b : tensor_power(*dist.crystal, ell, budget)) {
    Rational prob = 1;
    for (const auto& f : b.factors) prob *= dist.p[f.node];
    auto traj = pitman_trajectory(b);
    law[std::vector<Weight>(traj.begin() + 1, traj.end())] += prob;
  }
  return law;
}

std::vector<Rational> stay_probabilities(const CrystalDistribution& dist, const Weight& mu, std::size_t L,
                                         bool continuous, std::size_t budget) {
  if (!mu.is_dominant()) throw std::invalid_argument("start " + mu.str() + " is not dominant");
  std::vector<Rational> out{1};
  std::map<Weight, Rational> mass{{mu, 1}};
  const auto& crystal = *dist.crystal;
  for (std::size_t step = 0; step < L; ++step) {
    std::map<Weight, Rational> next;
    for (const auto& [nu, q] : mass)
      for (std::size_t k = 0; k < crystal.size(); ++k) {
        const auto& node = crystal.node(k);
        const Weight lambda = nu + node.weight;
        if (continuous ? !stays(node, nu) : !lambda.is_dominant()) continue;
        next[lambda] += q * dist.p[k];
      }
    if (next.size() > budget) throw BudgetError("stay-probability recursion exceeded its state budget", next.size());
    mass = std::move(next);
    Rational total = 0;
    for (const auto& [nu, q] : mass) total += q;
    out.push_back(total);
  }
  return out;
}

}  // namespace lpath
