#include "lpath/crystal.hpp"

#include <json.hpp>

#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lpath {

void ModuleSpec::validate() const {
  if (summands.empty()) throw std::invalid_argument("module has no summands");
  std::set<Weight> seen;
  for (const auto& s : summands) {
    if (!s.kappa.is_dominant()) throw std::invalid_argument("summand weight " + s.kappa.str() + " is not dominant");
    if (s.multiplicity < 1) throw std::invalid_argument("summand multiplicity must be positive");
    if (!seen.insert(s.kappa).second) throw std::invalid_argument("summand weight " + s.kappa.str() + " repeated");
    if (s.path && path_weight(*s.path) != s.kappa)
      throw std::invalid_argument("highest path does not end at " + s.kappa.str());
  }
}

std::optional<std::size_t> CrystalGraph::find(const PiecewisePath& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<CrystalEdge> CrystalGraph::edges() const {
  std::vector<CrystalEdge> out;
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    for (std::size_t i = 0; i < rank(); ++i)
      if (f_[k][i] != npos) out.push_back({k, i, f_[k][i]});
  return out;
}

void CrystalGraph::add_component(const PiecewisePath& highest, std::int64_t multiplicity, std::size_t budget) {
  const std::size_t n = rank();
  if (highest.rank() != n) throw std::invalid_argument("highest path has the wrong rank");
  if (!highest.stays_in_chamber()) throw std::invalid_argument("highest path " + highest.str() + " leaves the chamber");
  const Weight kappa = path_weight(highest);
  if (index_.count(highest)) throw std::invalid_argument("highest path already belongs to the crystal");

  const std::size_t comp = components_.size();
  const std::size_t first = nodes_.size();
  components_.push_back({kappa, first, multiplicity});

  auto add = [&](const PiecewisePath& p) {
    if (nodes_.size() - first >= budget)
      throw BudgetError("crystal generation exceeded the node budget of " + std::to_string(budget),
                        nodes_.size() - first);
    CrystalNode node;
    node.path = p;
    node.weight = path_weight(p);
    node.component = comp;
    node.min_height.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational m = p.min_height(i);
      if (m.get_den() != 1) throw std::domain_error("crystal path " + p.str() + " is not integral");
      node.min_height[i] = m.get_num().get_si();
    }
    Rational ht = 0;
    for (const auto& x : datum_.root_coords(kappa - node.weight)) ht += x;
    node.height = ht.get_num().get_si();
    index_.emplace(p, nodes_.size());
    nodes_.push_back(std::move(node));
    f_.emplace_back(n, npos);
    e_.emplace_back(n, npos);
    return nodes_.size() - 1;
  };

  add(highest);
  for (std::size_t head = first; head < nodes_.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      MaybePath next = apply_f(datum_, nodes_[head].path, i);
      if (!next) continue;
      auto it = index_.find(*next);
      std::size_t target = it == index_.end() ? add(*next) : it->second;
      f_[head][i] = target;
      e_[target][i] = head;
    }
  }
  // eps/phi from the i-chains.
  for (std::size_t k = first; k < nodes_.size(); ++k) {
    nodes_[k].eps.assign(n, 0);
    nodes_[k].phi.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = e_[k][i]; j != npos; j = e_[j][i]) ++nodes_[k].eps[i];
      for (std::size_t j = f_[k][i]; j != npos; j = f_[j][i]) ++nodes_[k].phi[i];
    }
  }
}

CrystalGraph generate_crystal(const CartanDatum& datum, const PiecewisePath& highest, std::size_t budget) {
  CrystalGraph g = generate_module_crystal(datum, ModuleSpec{{ModuleSummand{path_weight(highest), 1, highest}}},
                                           budget);
  return g;
}

CrystalGraph generate_module_crystal(const CartanDatum& datum, const ModuleSpec& spec, std::size_t budget) {
  spec.validate();
  CrystalGraph g(datum);
  for (const auto& s : spec.summands) {
    if (s.kappa.rank() != datum.rank()) throw std::invalid_argument("summand weight has the wrong rank");
    g.add_component(s.path ? *s.path : PiecewisePath::line(s.kappa), s.multiplicity, budget);
  }
  return g;
}

bool isomorphic(const CrystalGraph& a, const CrystalGraph& b) {
  if (a.size() != b.size() || a.rank() != b.rank() || a.components().size() != 1 || b.components().size() != 1)
    return false;
  std::vector<std::size_t> map(a.size(), CrystalGraph::npos);
  std::vector<bool> used(b.size(), false);
  std::deque<std::size_t> queue{a.components()[0].highest_node};
  map[queue.front()] = b.components()[0].highest_node;
  used[map[queue.front()]] = true;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < a.rank(); ++i) {
      for (int dir = 0; dir < 2; ++dir) {
        auto ax = dir ? a.e(x, i) : a.f(x, i);
        auto bx = dir ? b.e(map[x], i) : b.f(map[x], i);
        if ((ax == CrystalGraph::npos) != (bx == CrystalGraph::npos)) return false;
        if (ax == CrystalGraph::npos) continue;
        if (map[ax] == CrystalGraph::npos) {
          if (used[bx]) return false;
          map[ax] = bx;
          used[bx] = true;
          queue.push_back(ax);
        } else if (map[ax] != bx) {
          return false;
        }
      }
    }
  }
  return std::find(map.begin(), map.end(), CrystalGraph::npos) == map.end();
}

// ---------------------------------------------------------------- tensor nodes

Weight TensorNode::weight() const {
  Weight w(factors.front().crystal->rank());
  for (const auto& f : factors) w += f.crystal->node(f.node).weight;
  return w;
}

PiecewisePath TensorNode::path() const {
  std::vector<const PiecewisePath*> parts;
  for (const auto& f : factors) parts.push_back(&f.crystal->node(f.node).path);
  return concat(parts);
}

std::int64_t TensorNode::multiplicity() const {
  std::int64_t a = 1;
  for (const auto& f : factors) a *= f.crystal->multiplicity_of(f.node);
  return a;
}

namespace {

struct ChainScan {
  std::int64_t minimum = 0;
  std::size_t first = 0;  ///< first factor whose interior reaches the minimum
  std::size_t last = 0;   ///< last such factor
  std::int64_t end = 0;   ///< h_i at the end of the concatenation
};

// h_i along the concatenation: factor k starts at H_{k-1} and dips to H_{k-1} - eps_k.
ChainScan scan(const TensorNode& b, std::size_t i) {
  ChainScan s;
  std::int64_t h = 0;
  bool any = false;
  for (std::size_t k = 0; k < b.factors.size(); ++k) {
    const auto& node = b.factors[k].crystal->node(b.factors[k].node);
    const std::int64_t low = h - node.eps[i];
    if (!any || low < s.minimum) {
      s.minimum = low;
      s.first = k;
      s.last = k;
      any = true;
    } else if (low == s.minimum) {
      s.last = k;
    }
    h += node.phi[i] - node.eps[i];
  }
  s.end = h;
  return s;
}

}  // namespace

std::pair<int, int> tensor_eps_phi(const TensorNode& b, std::size_t i) {
  auto s = scan(b, i);
  return {static_cast<int>(-s.minimum), static_cast<int>(s.end - s.minimum)};
}

std::optional<TensorNode> tensor_apply_e(const TensorNode& b, std::size_t i) {
  auto s = scan(b, i);
  if (s.minimum >= 0) return std::nullopt;
  TensorNode r = b;
  auto& f = r.factors[s.first];
  f.node = f.crystal->e(f.node, i);
  if (f.node == CrystalGraph::npos) throw std::logic_error("tensor rule selected a factor without e~_i");
  return r;
}

std::optional<TensorNode> tensor_apply_f(const TensorNode& b, std::size_t i) {
  auto s = scan(b, i);
  if (s.end - s.minimum <= 0) return std::nullopt;
  TensorNode r = b;
  auto& f = r.factors[s.last];
  f.node = f.crystal->f(f.node, i);
  if (f.node == CrystalGraph::npos) throw std::logic_error("tensor rule selected a factor without f~_i");
  return r;
}

bool tensor_is_highest(const TensorNode& b) {
  const std::size_t n = b.factors.front().crystal->rank();
  for (std::size_t i = 0; i < n; ++i)
    if (scan(b, i).minimum < 0) return false;
  return true;
}

std::vector<TensorNode> tensor_power(const CrystalGraph& crystal, std::size_t ell, std::size_t budget) {
  double total = 1;
  for (std::size_t k = 0; k < ell; ++k) total *= static_cast<double>(crystal.size());
  if (total > static_cast<double>(budget))
    throw BudgetError("tensor power has more than " + std::to_string(budget) + " nodes", 0);
  std::vector<TensorNode> out;
  std::vector<std::size_t> idx(ell, 0);
  if (ell == 0) return out;
  while (true) {
    TensorNode b;
    for (auto k : idx) b.factors.push_back({&crystal, k});
    out.push_back(std::move(b));
    std::size_t pos = ell;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < crystal.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

// ---------------------------------------------------------------- Weyl action

std::size_t weyl_action_on_crystal(const CrystalGraph& crystal, const WeylGroup& group, std::size_t w,
                                   std::size_t node) {
  const auto& word = group[w].word;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const auto i = static_cast<std::size_t>(*it);
    const auto& b = crystal.node(node);
    int k = b.phi[i] - b.eps[i];
    for (; k > 0; --k) node = crystal.f(node, i);
    for (; k < 0; ++k) node = crystal.e(node, i);
  }
  return node;
}

TensorNode weyl_action_on_tensor(const WeylGroup& group, std::size_t w, const TensorNode& b) {
  TensorNode r = b;
  const auto& word = group[w].word;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const auto i = static_cast<std::size_t>(*it);
    auto [eps, phi] = tensor_eps_phi(r, i);
    int k = phi - eps;
    for (; k > 0; --k) r = *tensor_apply_f(r, i);
    for (; k < 0; ++k) r = *tensor_apply_e(r, i);
  }
  return r;
}

// ---------------------------------------------------------------- multiplicities

Multiplicities count_multiplicity(const CrystalGraph& steps, const Weight& mu) {
  Multiplicities out;
  const std::size_t n = steps.rank();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& node = steps.node(k);
    bool stays = true;
    for (std::size_t i = 0; i < n && stays; ++i) stays = mu[i] + node.min_height[i] >= 0;
    if (!stays) continue;
    out[mu + node.weight] += Integer(static_cast<long>(steps.multiplicity_of(k)));
  }
  return out;
}

std::vector<Multiplicities> count_f_multiplicity(const CrystalGraph& steps, const Weight& mu, std::size_t ell,
                                                 std::size_t budget) {
  if (!mu.is_dominant()) throw std::invalid_argument("mu must be dominant");
  std::vector<Multiplicities> layers{{{mu, Integer(1)}}};
  std::map<Weight, Multiplicities> cache;
  for (std::size_t step = 0; step < ell; ++step) {
    Multiplicities next;
    for (const auto& [nu, count] : layers.back()) {
      auto it = cache.find(nu);
      if (it == cache.end()) it = cache.emplace(nu, count_multiplicity(steps, nu)).first;
      for (const auto& [lambda, m] : it->second) next[lambda] += count * m;
    }
    if (next.size() > budget)
      throw BudgetError("multiplicity table exceeded " + std::to_string(budget) + " states", next.size());
    layers.push_back(std::move(next));
  }
  return layers;
}

Multiplicities count_f_multiplicity_enumerated(const CrystalGraph& steps, const Weight& mu, std::size_t ell,
                                               std::size_t budget) {
  const auto& datum = steps.datum();
  const PiecewisePath start = mu.is_zero() ? PiecewisePath::constant(mu.rank()) : PiecewisePath::line(mu);
  Multiplicities out;
  for (const auto& b : tensor_power(steps, ell, budget)) {
    std::vector<const PiecewisePath*> parts{&start};
    for (const auto& f : b.factors) parts.push_back(&f.crystal->node(f.node).path);
    const PiecewisePath whole = concat(parts);
    bool highest = true;
    for (std::size_t i = 0; i < datum.rank() && highest; ++i) highest = !apply_e(datum, whole, i).has_value();
    if (highest) out[mu + b.weight()] += Integer(static_cast<long>(b.multiplicity()));
  }
  if (ell == 0) out[mu] = 1;
  return out;
}

Weight kappa0(const CrystalGraph& crystal) {
  Weight k(crystal.rank());
  for (std::size_t i = 0; i < crystal.rank(); ++i) {
    int longest = 0;
    for (const auto& node : crystal.nodes())
      if (node.eps[i] == 0) longest = std::max(longest, node.phi[i]);
    k[i] = std::max(longest - 1, 0);
  }
  return k;
}

std::string to_dot(const CrystalGraph& crystal) {
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
  std::ostringstream out;
  out << "digraph crystal {\n  node [shape=box];\n";
  for (std::size_t k = 0; k < crystal.size(); ++k) {
    const auto& node = crystal.node(k);
    out << "  n" << k << " [label=\"" << node.weight.str() << "\\nht " << node.height << "\"];\n";
  }
  for (const auto& e : crystal.edges())
    out << "  n" << e.source << " -> n" << e.target << " [label=\"" << e.color + 1 << "\", color="
        << palette[e.color % 8] << "];\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const CrystalGraph& crystal) {
  using nlohmann::json;
  json j;
  j["rank"] = crystal.rank();
  j["cartan"] = crystal.datum().label();
  json comps = json::array();
  for (const auto& c : crystal.components())
    comps.push_back({{"highest_weight", c.highest_weight.coords()},
                     {"highest_node", c.highest_node},
                     {"multiplicity", c.multiplicity}});
  j["components"] = comps;
  json nodes = json::array();
  for (std::size_t k = 0; k < crystal.size(); ++k) {
    const auto& node = crystal.node(k);
    nodes.push_back({{"id", k},
                     {"weight", node.weight.coords()},
                     {"height", node.height},
                     {"eps", node.eps},
                     {"phi", node.phi},
                     {"component", node.component},
                     {"path", json::parse(path_to_json(node.path))}});
  }
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : crystal.edges()) edges.push_back({{"source", e.source}, {"color", e.color + 1}, {"target", e.target}});
  j["edges"] = edges;
  return j.dump(2);
}

}  // namespace lpath
