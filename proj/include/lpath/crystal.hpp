#pragma once

// Crystal graphs generated from dominant paths, tensor products of crystal
// nodes, the Weyl group action on i-chains and multiplicity counting.

#include "lpath/path.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace lpath {

struct CrystalNode {
  PiecewisePath path;
  Weight weight;
  std::vector<int> eps;  ///< eps_i, one per color
  std::vector<int> phi;
  std::vector<std::int64_t> min_height;  ///< min_t h_i(eta(t)), exact and integral
  std::size_t component = 0;
  std::int64_t height = 0;  ///< root-coordinate sum of wt(highest) - wt(node)
};

struct CrystalComponent {
  Weight highest_weight;
  std::size_t highest_node = 0;
  std::int64_t multiplicity = 1;  ///< a_kappa for module crystals
};

struct CrystalEdge {
  std::size_t source;
  std::size_t color;
  std::size_t target;
};

/// A summand kappa with multiplicity a_kappa and an optional highest path
/// (the straight line to kappa when absent).
struct ModuleSummand {
  Weight kappa;
  std::int64_t multiplicity = 1;
  std::optional<PiecewisePath> path;
};

struct ModuleSpec {
  std::vector<ModuleSummand> summands;
  void validate() const;
  static ModuleSpec irreducible(const Weight& kappa) { return ModuleSpec{{ModuleSummand{kappa, 1, std::nullopt}}}; }
};

class CrystalGraph {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  const CartanDatum& datum() const { return datum_; }
  std::size_t rank() const { return datum_.rank(); }
  std::size_t size() const { return nodes_.size(); }
  const CrystalNode& node(std::size_t k) const { return nodes_[k]; }
  const std::vector<CrystalNode>& nodes() const { return nodes_; }
  const std::vector<CrystalComponent>& components() const { return components_; }
  bool is_irreducible() const { return components_.size() == 1; }

  std::size_t f(std::size_t k, std::size_t i) const { return f_[k][i]; }
  std::size_t e(std::size_t k, std::size_t i) const { return e_[k][i]; }
  std::optional<std::size_t> find(const PiecewisePath& p) const;
  std::vector<CrystalEdge> edges() const;
  std::int64_t multiplicity_of(std::size_t k) const { return components_[nodes_[k].component].multiplicity; }

 private:
  friend CrystalGraph generate_module_crystal(const CartanDatum&, const ModuleSpec&, std::size_t);
  explicit CrystalGraph(const CartanDatum& d) : datum_(d) {}
  void add_component(const PiecewisePath& highest, std::int64_t multiplicity, std::size_t budget);

  CartanDatum datum_;
  std::vector<CrystalNode> nodes_;
  std::vector<CrystalComponent> components_;
  std::vector<std::vector<std::size_t>> f_, e_;
  std::unordered_map<PiecewisePath, std::size_t, PathHash> index_;
};

/// Closure of a dominant path under all f~_i. Throws std::invalid_argument if
/// the path leaves the chamber or does not end at an integral weight, and
/// BudgetError once more than budget nodes are produced.
CrystalGraph generate_crystal(const CartanDatum& datum, const PiecewisePath& highest, std::size_t budget = 200000);
CrystalGraph generate_module_crystal(const CartanDatum& datum, const ModuleSpec& spec, std::size_t budget = 200000);

/// Colored-digraph isomorphism of two connected crystals (matched from their highest nodes).
bool isomorphic(const CrystalGraph& a, const CrystalGraph& b);

// ---------------------------------------------------------------- tensor nodes

struct TensorFactor {
  const CrystalGraph* crystal = nullptr;
  std::size_t node = 0;
  bool operator==(const TensorFactor&) const = default;
};

/// b_1 (x) ... (x) b_l, realized by the concatenation b_1 * ... * b_l.
struct TensorNode {
  std::vector<TensorFactor> factors;

  Weight weight() const;
  PiecewisePath path() const;
  std::int64_t multiplicity() const;  ///< product of the factors' a_kappa
  bool operator==(const TensorNode&) const = default;
};

std::pair<int, int> tensor_eps_phi(const TensorNode& b, std::size_t i);
std::optional<TensorNode> tensor_apply_e(const TensorNode& b, std::size_t i);
std::optional<TensorNode> tensor_apply_f(const TensorNode& b, std::size_t i);
bool tensor_is_highest(const TensorNode& b);

/// Every l-fold tensor node of a crystal, in lexicographic factor order.
std::vector<TensorNode> tensor_power(const CrystalGraph& crystal, std::size_t ell, std::size_t budget = 2000000);

// ---------------------------------------------------------------- Weyl action

/// s_i moves b to the mirror position on its i-chain; w acts through a reduced word.
std::size_t weyl_action_on_crystal(const CrystalGraph& crystal, const WeylGroup& group, std::size_t w,
                                   std::size_t node);
TensorNode weyl_action_on_tensor(const WeylGroup& group, std::size_t w, const TensorNode& b);

// ---------------------------------------------------------------- multiplicities

using Multiplicities = std::map<Weight, Integer>;

/// m^lambda_{mu,M} = sum over nodes eta whose mu-translate stays in the chamber,
/// weighted by a_kappa, keyed by lambda = mu + wt(eta).
Multiplicities count_multiplicity(const CrystalGraph& steps, const Weight& mu);

/// f^l_{lambda/mu} for l = 0..ell by layered dynamic programming over dominant weights.
std::vector<Multiplicities> count_f_multiplicity(const CrystalGraph& steps, const Weight& mu, std::size_t ell,
                                                 std::size_t budget = 5000000);

/// f^ell_{lambda/mu} by enumerating every tensor node of B(pi_mu) (x) B^{(x) ell} and
/// testing highest-ness with path-level raising operators on the concatenation.
Multiplicities count_f_multiplicity_enumerated(const CrystalGraph& steps, const Weight& mu, std::size_t ell,
                                               std::size_t budget = 2000000);

/// kappa_0 = sum_i (m0(i) - 1) omega_i with m0(i) the largest number of edges in an i-chain.
Weight kappa0(const CrystalGraph& crystal);

std::string to_dot(const CrystalGraph& crystal);
std::string to_json(const CrystalGraph& crystal);

}  // namespace lpath
