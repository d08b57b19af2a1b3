#pragma once

// Sampling of crystal walks, cone-stay estimators, the empirical Pitman chain,
// the sandwich bounds and the multiplicity ratio sequence.

#include "lpath/markov.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lpath {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

/// Independent stream for sample number index; results do not depend on how samples are split across threads.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Inverse-CDF node sampler against 64-bit thresholds ceil(cumulative * 2^64).
class NodeSampler {
 public:
  explicit NodeSampler(const CrystalDistribution& dist);
  std::size_t draw(std::uint64_t u) const;
  std::size_t size() const { return thresholds_.size() + 1; }

 private:
  std::vector<std::uint64_t> thresholds_;
};

struct WalkSample {
  std::uint64_t seed = 0;
  Weight start;
  std::vector<std::size_t> steps;   ///< node indices
  std::vector<Weight> positions;    ///< W_0 = start, ..., W_L
  std::vector<bool> stays;          ///< step l keeps the interpolated path in the chamber
};

/// Counts of N independent single-step draws, one per node.
std::vector<std::uint64_t> empirical_step_law(const CrystalDistribution& dist, std::size_t N, std::uint64_t seed);

WalkSample sample_walk(const CrystalDistribution& dist, const Weight& mu, std::size_t L, std::uint64_t seed);

struct EstimatorReport {
  std::string label;
  double estimate = 0;
  std::size_t n = 0;
  double standard_error = 0;
  std::optional<Rational> exact;
  double z = 0;
  double band = 0;  ///< allowed |estimate - exact|
  bool pass = true;

  std::string to_json() const;
};

/// Bernoulli report with band = max(4 sigma, extra_band) around an optional exact target.
EstimatorReport bernoulli_report(std::string label, std::uint64_t successes, std::size_t n,
                                 std::optional<Rational> exact, double extra_band = 0);

struct StayCounts {
  std::vector<std::size_t> horizons;
  std::vector<std::uint64_t> continuous;  ///< samples staying in the chamber for t in [0, L]
  std::vector<std::uint64_t> discrete;    ///< samples with W_0..W_L dominant
  std::size_t n = 0;
  std::uint64_t inclusion_violations = 0;  ///< continuous stay without discrete stay
  std::uint64_t lemma_checks = 0;
  std::uint64_t lemma_violations = 0;      ///< discrete stay but kappa0-shifted path leaves the chamber
};

/// Runs N walks of length max(horizons) and counts nested stay events. When
/// kappa0 is given, checks on every discretely staying sample that
/// kappa0 + W(t) remains in the chamber.
StayCounts simulate_stays(const CrystalDistribution& dist, const Weight& mu, std::vector<std::size_t> horizons,
                          std::size_t N, std::uint64_t seed, unsigned threads = 0,
                          const std::optional<Weight>& kappa0 = std::nullopt);

struct HLawCell {
  Weight from, to;
  std::uint64_t count = 0;
  std::uint64_t row_total = 0;
  Rational exact;
  double z = 0;
  bool pass = true;
};

struct HLawReport {
  std::size_t n = 0;
  std::size_t ell_max = 0;
  std::vector<HLawCell> cells;
  double worst_z = 0;
  bool pass = true;
  std::string to_json() const;
};

/// Frequencies of (H_l, H_{l+1}) for l < ell_max over N walks from 0, compared
/// with the Pitman chain within 4 sigma per cell.
HLawReport empirical_h_law(const CrystalDistribution& dist, CharacterEvaluator& eval, std::size_t ell_max,
                           std::size_t N, std::uint64_t seed, unsigned threads = 0);

struct SandwichReport {
  Weight mu, kappa0;
  std::size_t L = 0;
  Rational lower;          ///< psi(mu)
  Rational upper;          ///< prod(1 - tau^alpha) S_{mu + kappa0}
  Rational exact_discrete; ///< P(W_0..W_L dominant), by recursion
  EstimatorReport discrete;
  EstimatorReport continuous;
  std::uint64_t lemma_checks = 0;
  std::uint64_t lemma_violations = 0;
  std::uint64_t inclusion_violations = 0;
  bool lower_ok = false, upper_ok = false, pass = false;
  std::string to_json() const;
};

SandwichReport sandwich_check(const CrystalDistribution& dist, CharacterEvaluator& eval, const Weight& mu,
                              std::size_t L, std::size_t N, std::uint64_t seed, unsigned threads = 0);

struct RatioPoint {
  std::size_t ell = 0;
  Weight lambda;
  Integer f_mu, f_zero;
  Rational ratio, deviation;
};

struct RatioReport {
  Weight mu;
  Rational target;  ///< tau^{-mu} S_mu(tau)
  QVec drift;
  std::vector<RatioPoint> points;
  std::vector<std::string> notes;
  bool pass = false;  ///< final deviation below the initial one
  std::string to_json() const;
};

/// f^l_{lambda/mu} / f^l_{lambda} at the dominant lambda nearest l m(1) (ambient
/// distance) with both counts positive; ties go to the lexicographically lowest coordinates.
RatioReport asymptotic_ratio(const CrystalDistribution& dist, CharacterEvaluator& eval, const Weight& mu,
                             const std::vector<std::size_t>& ells);

}  // namespace lpath
