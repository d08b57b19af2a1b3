#pragma once

// Crystal distributions, walk transitions, killed and conditioned transition
// tables, Doob transforms and the Pitman transform.

#include "lpath/charalg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpath {

/// A harmonicity or closure check failed.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step law on the nodes of a (module) crystal:
/// p_b = a_kappa tau^{kappa_ref - w(wt b)} / S(tau), S the normalized character.
struct CrystalDistribution {
  const CrystalGraph* crystal = nullptr;
  TauPoint tau;
  std::size_t twist = 0;   ///< Weyl element index; 0 is the untwisted law
  std::vector<Rational> p;
  Rational normalizer;     ///< tau^{kappa_ref} Sigma_M(tau); S_kappa(tau) when irreducible

  Rational total() const;
};

CrystalDistribution build_distribution(const CrystalGraph& crystal, const TauPoint& tau);
/// p^w_b = p_{w(b)}; tau itself must be admissible.
CrystalDistribution build_twisted_distribution(const CrystalGraph& crystal, const WeylGroup& group, std::size_t w,
                                               const TauPoint& tau);

/// tau^w_i = tau^{w(alpha_i)}.
TauPoint twisted_tau(const CartanDatum& datum, const WeylGroup& group, std::size_t w, const TauPoint& tau);

/// m(1) = sum_b p_b wt(b), in fundamental-weight coordinates.
QVec drift(const CrystalDistribution& dist);
/// m(t) = sum_b p_b b(t).
QVec drift_at(const CrystalDistribution& dist, const Rational& t);

/// P(W_{l+1} = beta | W_l = eta).
Rational walk_transition(const CrystalDistribution& dist, const Weight& eta, const Weight& beta);

/// Killed transition Pi^E(mu, lambda): sum of p_b over nodes whose mu-translate stays in the chamber.
Rational restricted_transition(const CrystalDistribution& dist, const Weight& mu, const Weight& lambda);
/// The same row by summing over nodes, keyed by lambda.
std::map<Weight, Rational> restricted_row(const CrystalDistribution& dist, const Weight& mu);
/// Pi^E(mu, lambda) = m^lambda_{mu,M} tau^{kappa_ref + mu - lambda} / S(tau) from counted multiplicities.
Rational restricted_transition_formula(const CrystalDistribution& dist, const Multiplicities& m, const Weight& mu,
                                       const Weight& lambda);

struct TransitionTable {
  enum class Kind { stochastic, substochastic };

  Kind kind = Kind::substochastic;
  std::vector<Weight> states;
  std::map<Weight, std::size_t> index;
  std::vector<std::map<std::size_t, Rational>> rows;
  std::vector<bool> boundary;  ///< rows whose successors may leave the state set

  std::size_t size() const { return states.size(); }
  Rational entry(const Weight& mu, const Weight& lambda) const;
  Rational row_sum(std::size_t r) const;
  /// Nonnegative entries, and row sums equal to one (stochastic) or at most one, on non-boundary rows.
  void validate() const;
  std::string to_csv() const;
  std::string to_json() const;
};

/// Dominant weights whose fundamental-weight coordinates sum to at most max_level.
std::vector<Weight> dominant_weights(std::size_t rank, std::int64_t max_level);

/// Dominant weights reachable from mu in one step of the killed walk.
std::vector<Weight> successors(const CrystalGraph& steps, const Weight& mu);

/// Seeds plus their one-step successors; successor-only states are flagged as boundary rows.
std::vector<Weight> close_states(const CrystalGraph& steps, const std::vector<Weight>& seeds,
                                 std::vector<bool>& boundary);

/// Throws IntegrityError naming the missing states unless every successor of a
/// state lies in the set.
void require_closed(const CrystalGraph& steps, const std::vector<Weight>& states);

/// Killed walk table Pi^E on the closed state set.
TransitionTable restricted_table(const CrystalDistribution& dist, const std::vector<Weight>& seeds);
/// S_lambda / (S_mu S) tau^{kappa_ref + mu - lambda} m^lambda_{mu,M}.
TransitionTable hchain_matrix(const CrystalDistribution& dist, CharacterEvaluator& eval,
                              const std::vector<Weight>& seeds);

using HarmonicFunction = std::map<Weight, Rational>;

struct HarmonicDefect {
  Rational worst = 0;  ///< |sum_lambda Pi(mu,lambda) h(lambda) - h(mu)|
  Weight row;
};
/// Defect over non-boundary rows; throws IntegrityError if h is missing on a needed state.
HarmonicDefect harmonic_defect(const TransitionTable& table, const HarmonicFunction& h);

/// Pi_h(mu, lambda) = h(lambda)/h(mu) Pi(mu, lambda), after an exact harmonicity check.
TransitionTable doob_transform(const TransitionTable& table, const HarmonicFunction& h);

/// psi on every state of a table.
HarmonicFunction psi_function(const TransitionTable& table, CharacterEvaluator& eval);

/// Q(Y_{l+1} = lambda | Y_l = mu) = Pi^E(mu,lambda) psi(lambda) / psi(mu).
Rational conditioned_transition(const CrystalDistribution& dist, CharacterEvaluator& eval, const Weight& mu,
                                const Weight& lambda);

// ---------------------------------------------------------------- Pitman transform

/// Raising operators until every e~_i is null. order lists color preferences
/// (lowest index first when empty).
TensorNode pitman(const TensorNode& b, const std::vector<std::size_t>& order = {});
PiecewisePath pitman(const CartanDatum& datum, const PiecewisePath& eta, const std::vector<std::size_t>& order = {});

/// H_k = wt(P(b_1 (x) ... (x) b_k)) for k = 0..l.
std::vector<Weight> pitman_trajectory(const TensorNode& b);

/// Exact law of (H_1, ..., H_l) under the product law on l-fold tensor nodes.
std::map<std::vector<Weight>, Rational> exact_h_law(const CrystalDistribution& dist, std::size_t ell,
                                                    std::size_t budget = 2000000);

/// Probability that the walk from mu stays in the chamber up to each step l = 0..L:
/// continuously (killed chain) or at integer times only.
std::vector<Rational> stay_probabilities(const CrystalDistribution& dist, const Weight& mu, std::size_t L,
                                         bool continuous, std::size_t budget = 5000000);

}  // namespace lpath
