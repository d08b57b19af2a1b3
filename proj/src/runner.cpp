#include "lpath/runner.hpp"

#include "lpath/montecarlo.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lpath {

namespace {

using nlohmann::json;

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json rational_json(const Rational& q) { return {{"exact", q.get_str()}, {"value", to_double(q)}}; }

json rational_vector(const QVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Rational rational_of(const json& x, const std::string& key) {
  if (x.is_string()) return parse_rational(x.get<std::string>());
  if (x.is_number_integer()) return Rational(x.get<long>());
  throw ConfigError(key + ": expected a rational string \"p/q\" or an integer");
}

const std::set<std::string> known_keys = {
    "cartan", "max_rank", "kappa", "module", "tau", "tau_roots", "tau_degree", "mu", "mus", "max_level",
    "ell", "ells", "L", "horizons", "N", "seed", "threads", "twist", "paths", "path", "order",
    "ambient_paths", "budget", "h_law_ell", "exact_horizon"};

// Reads fields with defaults and records every value actually used.
class Config {
 public:
  explicit Config(std::string_view text) {
    try {
      in_ = text.empty() ? json::object() : json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!in_.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [k, v] : in_.items())
      if (!known_keys.count(k)) throw ConfigError("unknown configuration key '" + k + "'");
    out_ = json::object();
  }

  bool has(const std::string& key) const { return in_.contains(key) && !in_[key].is_null(); }
  const json& raw(const std::string& key) {
    out_[key] = in_[key];
    return in_[key];
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    T v = fallback;
    if (has(key)) {
      try {
        v = in_[key].get<T>();
      } catch (const json::exception&) {
        throw ConfigError(key + ": wrong type");
      }
    }
    out_[key] = v;
    return v;
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (has(key) && (!in_[key].is_number_integer() || in_[key].get<long long>() < 0))
      throw ConfigError(key + ": expected a nonnegative integer");
    return get<std::size_t>(key, fallback);
  }

  void record(const std::string& key, json v) { out_[key] = std::move(v); }
  const json& resolved() const { return out_; }

 private:
  json in_, out_;
};

Weight weight_of(const json& x, std::size_t rank, const std::string& key) {
  if (!x.is_array() || x.size() != rank) throw ConfigError(key + ": expected " + std::to_string(rank) + " integers");
  Weight w(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (!x[i].is_number_integer()) throw ConfigError(key + ": coordinates must be integers");
    w[i] = x[i].get<std::int64_t>();
  }
  return w;
}

struct Context {
  Config cfg;
  CartanDatum datum;
  std::size_t budget = 200000;
  bool ambient = false;
  std::optional<CrystalGraph> steps;
  std::optional<WeylGroup> group;
  std::optional<CharacterCache> cache;
  json report = json::object();
  std::map<std::string, std::string> artifacts;
  bool failed = false;

  explicit Context(std::string_view text) : cfg(text), datum(load_datum()) {
    budget = cfg.count("budget", 200000);
    ambient = cfg.get<bool>("ambient_paths", false);
  }

  CartanDatum load_datum() {
    const std::size_t max_rank = cfg.count("max_rank", 8);
    if (!cfg.has("cartan")) {
      cfg.record("cartan", "C2");
      return CartanDatum::from_type("C2", max_rank);
    }
    const json& c = cfg.raw("cartan");
    if (c.is_string()) return CartanDatum::parse(c.get<std::string>(), max_rank);
    if (c.is_array()) return CartanDatum::parse(c.dump(), max_rank);
    throw ConfigError("cartan: expected a type label or a matrix");
  }

  std::size_t rank() const { return datum.rank(); }

  PiecewisePath path(const json& literal) { return parse_path(literal.dump(), datum, ambient); }

  const CrystalGraph& crystal() {
    if (steps) return *steps;
    ModuleSpec spec;
    if (cfg.has("module")) {
      const json& m = cfg.raw("module");
      if (!m.is_array()) throw ConfigError("module: expected a list of summands");
      for (const auto& s : m) {
        if (!s.is_object() || !s.contains("kappa")) throw ConfigError("module: every summand needs a kappa");
        ModuleSummand summand{weight_of(s["kappa"], rank(), "module.kappa"), 1, std::nullopt};
        if (s.contains("multiplicity")) {
          if (!s["multiplicity"].is_number_integer()) throw ConfigError("module.multiplicity: expected an integer");
          summand.multiplicity = s["multiplicity"].get<std::int64_t>();
        }
        if (s.contains("path")) summand.path = path(s["path"]);
        spec.summands.push_back(std::move(summand));
      }
    } else {
      Weight kappa = datum.fundamental_weight(0);
      if (cfg.has("kappa")) kappa = weight_of(cfg.raw("kappa"), rank(), "kappa");
      cfg.record("kappa", kappa.coords());
      spec = ModuleSpec::irreducible(kappa);
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("module: ") + e.what());
    }
    steps.emplace(generate_module_crystal(datum, spec, budget));
    return *steps;
  }

  const WeylGroup& weyl() {
    if (!group) group.emplace(datum);
    return *group;
  }

  CharacterCache& characters() {
    if (!cache) cache.emplace(datum, budget);
    return *cache;
  }

  bool has_tau() const { return cfg.has("tau") || cfg.has("tau_roots"); }

  TauPoint tau() {
    const long degree = cfg.get<long>("tau_degree", 1);
    if (degree < 1) throw ConfigError("tau_degree must be positive");
    auto vec = [&](const std::string& key) {
      const json& x = cfg.raw(key);
      if (!x.is_array() || x.size() != rank()) throw ConfigError(key + ": expected " + std::to_string(rank()) + " rationals");
      QVec v;
      for (const auto& c : x) v.push_back(rational_of(c, key));
      return v;
    };
    TauPoint t;
    if (cfg.has("tau") && cfg.has("tau_roots")) {
      t = TauPoint(vec("tau"), vec("tau_roots"), degree);
    } else if (cfg.has("tau_roots")) {
      t = TauPoint::from_roots(vec("tau_roots"), degree);
    } else if (cfg.has("tau")) {
      t = TauPoint(vec("tau"));
    } else {
      throw ConfigError("tau is required for this command");
    }
    t.require_domain();
    return t;
  }

  Weight mu() {
    Weight m(rank());
    if (cfg.has("mu")) m = weight_of(cfg.raw("mu"), rank(), "mu");
    cfg.record("mu", m.coords());
    if (!m.is_dominant()) throw ConfigError("mu = " + m.str() + " is not dominant");
    return m;
  }

  std::size_t twist() {
    if (!cfg.has("twist")) {
      cfg.record("twist", json::array());
      return WeylGroup::identity();
    }
    const json& word = cfg.raw("twist");
    if (!word.is_array()) throw ConfigError("twist: expected a word of simple reflection indices (1-based)");
    std::size_t w = WeylGroup::identity();
    for (const auto& i : word) {
      if (!i.is_number_integer() || i.get<long>() < 1 || static_cast<std::size_t>(i.get<long>()) > rank())
        throw ConfigError("twist: indices must lie in 1.." + std::to_string(rank()));
      w = weyl().compose(w, weyl().simple_reflection(static_cast<std::size_t>(i.get<long>() - 1)));
    }
    return w;
  }

  std::vector<Weight> states(std::int64_t default_level) {
    if (cfg.has("mus")) {
      const json& x = cfg.raw("mus");
      if (!x.is_array()) throw ConfigError("mus: expected a list of weights");
      std::vector<Weight> out;
      for (const auto& w : x) {
        out.push_back(weight_of(w, rank(), "mus"));
        if (!out.back().is_dominant()) throw ConfigError("mus: " + out.back().str() + " is not dominant");
      }
      return out;
    }
    return dominant_weights(rank(), cfg.get<std::int64_t>("max_level", default_level));
  }

  std::vector<std::size_t> sizes(const std::string& key, std::vector<std::size_t> fallback) {
    if (cfg.has(key)) {
      const json& x = cfg.raw(key);
      if (!x.is_array()) throw ConfigError(key + ": expected a list of nonnegative integers");
      fallback.clear();
      for (const auto& v : x) {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key + ": expected nonnegative integers");
        fallback.push_back(v.get<std::size_t>());
      }
    }
    cfg.record(key, fallback);
    return fallback;
  }

  void check(json& list, const std::string& name, bool pass, json detail = nullptr) {
    list.push_back({{"name", name}, {"pass", pass}, {"detail", std::move(detail)}});
    if (!pass) failed = true;
  }
};

std::string weights_csv_label(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.rank(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

// ---------------------------------------------------------------- commands

void cmd_crystal(Context& c) {
  const auto& g = c.crystal();
  json comps = json::array();
  for (const auto& comp : g.components())
    comps.push_back({{"highest_weight", comp.highest_weight.coords()}, {"multiplicity", comp.multiplicity}});
  c.report["cartan"] = c.datum.label();
  c.report["nodes"] = g.size();
  c.report["edges"] = g.edges().size();
  c.report["components"] = comps;
  c.report["kappa0"] = kappa0(g).coords();
  c.report["character"] = character_poly(g).str();
  c.report["crystal"] = json::parse(to_json(g));
  c.artifacts["crystal.dot"] = to_dot(g);
  c.artifacts["crystal.json"] = to_json(g);
}

void cmd_character(Context& c) {
  const auto& g = c.crystal();
  const auto S = character_poly(g);
  const auto sigma = module_character(g);
  c.report["S"] = S.str();
  c.report["Sigma_M"] = sigma.str();
  c.report["formal"] = formal_character(g).str("x");
  c.report["kappa_ref"] = g.components().front().highest_weight.coords();
  json checks = json::array();
  if (g.is_irreducible()) {
    const Weight kappa = g.components().front().highest_weight;
    const bool weyl = positive_root_product(c.datum) * S == weyl_numerator(kappa, c.datum, c.weyl());
    c.check(checks, "Weyl character formula", weyl, kappa.coords());
  }
  c.report["checks"] = checks;
  if (c.has_tau()) {
    const auto tau = c.tau();
    c.report["S_value"] = rational_json(S.evaluate(tau));
    try {
      c.report["Sigma_M_value"] = rational_json(sigma.evaluate(tau));
    } catch (const DomainError& e) {
      c.report["Sigma_M_value"] = std::string("unavailable: ") + e.what();
    }
  }
}

void cmd_psi(Context& c) {
  const auto tau = c.tau();
  const auto mus = c.states(3);
  CharacterEvaluator eval(c.characters(), tau);
  json rows = json::array();
  std::ostringstream csv;
  csv << "mu,exact,value\n";
  for (const auto& mu : mus) {
    const Rational v = eval.psi(mu);
    rows.push_back({{"mu", mu.coords()}, {"psi", rational_json(v)}, {"polynomial", c.characters().psi_poly(mu).str()}});
    csv << '"' << weights_csv_label(mu) << "\"," << v.get_str() << ',' << to_double(v) << '\n';
  }
  c.report["tau"] = tau.str();
  c.report["root_product"] = c.characters().root_product().str();
  c.report["table"] = rows;
  c.artifacts["psi.csv"] = csv.str();
}

void cmd_hchain(Context& c) {
  const auto& g = c.crystal();
  const auto tau = c.tau();
  const auto seeds = c.states(4);
  CharacterEvaluator eval(c.characters(), tau);
  const auto dist = build_distribution(g, tau);
  auto killed = restricted_table(dist, seeds);
  killed.validate();
  auto hchain = hchain_matrix(dist, eval, seeds);
  hchain.validate();
  const auto psi = psi_function(killed, eval);
  const auto defect = harmonic_defect(killed, psi);
  json checks = json::array();
  c.check(checks, "psi harmonic for the killed walk", defect.worst == 0,
          {{"worst", rational_json(defect.worst)}, {"row", defect.row.coords()}});
  if (defect.worst == 0) {
    const auto doob = doob_transform(killed, psi);
    std::size_t mismatches = 0;
    for (std::size_t r = 0; r < doob.size(); ++r)
      if (!doob.boundary[r] && doob.rows[r] != hchain.rows[r]) ++mismatches;
    c.check(checks, "Doob transform equals the Pitman chain", mismatches == 0, {{"mismatched_rows", mismatches}});
  }
  c.report["tau"] = tau.str();
  c.report["states"] = hchain.size();
  c.report["checks"] = checks;
  c.report["hchain"] = json::parse(hchain.to_json());
  c.artifacts["hchain.csv"] = hchain.to_csv();
  c.artifacts["restricted.csv"] = killed.to_csv();
}

void cmd_conditioned(Context& c) {
  const auto& g = c.crystal();
  const auto tau = c.tau();
  const auto mu = c.mu();
  CharacterEvaluator eval(c.characters(), tau);
  const auto dist = build_distribution(g, tau);
  json rows = json::array();
  Rational total = 0;
  for (const auto& [lambda, killed] : restricted_row(dist, mu)) {
    const Rational q = conditioned_transition(dist, eval, mu, lambda);
    total += q;
    rows.push_back({{"lambda", lambda.coords()}, {"killed", rational_json(killed)}, {"conditioned", rational_json(q)}});
  }
  json checks = json::array();
  c.check(checks, "conditioned row sums to one", total == 1, rational_json(total));
  c.report["mu"] = mu.coords();
  c.report["psi"] = rational_json(eval.psi(mu));
  c.report["row"] = rows;
  c.report["checks"] = checks;
}

void cmd_pitman(Context& c) {
  std::vector<std::size_t> order;
  for (auto i : c.sizes("order", {})) {
    if (i < 1 || i > c.rank()) throw ConfigError("order: indices must lie in 1.." + std::to_string(c.rank()));
    order.push_back(i - 1);
  }
  if (c.cfg.has("path")) {
    const auto eta = c.path(c.cfg.raw("path"));
    const auto out = pitman(c.datum, eta, order);
    c.report["input"] = json::parse(path_to_json(eta));
    c.report["output"] = json::parse(path_to_json(out));
    c.report["weight"] = path_weight(out).coords();
    return;
  }
  if (!c.cfg.has("paths")) throw ConfigError("pitman needs 'path' or 'paths'");
  const auto& g = c.crystal();
  const json& lits = c.cfg.raw("paths");
  if (!lits.is_array() || lits.empty()) throw ConfigError("paths: expected a nonempty list of path literals");
  TensorNode b;
  for (const auto& lit : lits) {
    const auto eta = c.path(lit);
    const auto k = g.find(eta);
    if (!k) throw ConfigError("paths: " + eta.str() + " is not a node of the step crystal");
    b.factors.push_back({&g, *k});
  }
  const auto top = pitman(b, order);
  json factors = json::array();
  for (const auto& f : top.factors) factors.push_back(json::parse(path_to_json(g.node(f.node).path)));
  json traj = json::array();
  for (const auto& h : pitman_trajectory(b)) traj.push_back(h.coords());
  c.report["weight"] = b.weight().coords();
  c.report["output"] = factors;
  c.report["output_weight"] = top.weight().coords();
  c.report["highest"] = tensor_is_highest(top);
  c.report["trajectory"] = traj;
}

void cmd_simulate(Context& c) {
  const auto& g = c.crystal();
  const auto tau = c.tau();
  const auto mu = c.mu();
  const std::size_t w = c.twist();
  const auto horizons = c.sizes("horizons", w == WeylGroup::identity() ? std::vector<std::size_t>{6, 50}
                                                                       : std::vector<std::size_t>{5, 10, 20, 40});
  if (horizons.empty()) throw ConfigError("horizons: at least one horizon is needed");
  const std::size_t N = c.cfg.count("N", 200000);
  const auto seed = c.cfg.get<std::uint64_t>("seed", 1);
  const auto threads = c.cfg.get<unsigned>("threads", 0);
  const auto dist = w == WeylGroup::identity() ? build_distribution(g, tau)
                                               : build_twisted_distribution(g, c.weyl(), w, tau);
  const auto counts = simulate_stays(dist, mu, horizons, N, seed, threads);
  const std::size_t top = counts.horizons.back();
  const auto exact = stay_probabilities(dist, mu, top, true);
  const auto exact_discrete = stay_probabilities(dist, mu, top, false);

  json rows = json::array(), checks = json::array();
  std::ostringstream csv;
  csv << "L,continuous,discrete,exact_continuous,exact_discrete,stderr\n";
  for (std::size_t h = 0; h < counts.horizons.size(); ++h) {
    const auto L = counts.horizons[h];
    auto cont = bernoulli_report("continuous stay L=" + std::to_string(L), counts.continuous[h], N, exact[L]);
    auto disc = bernoulli_report("discrete stay L=" + std::to_string(L), counts.discrete[h], N, exact_discrete[L]);
    rows.push_back({{"L", L}, {"continuous", json::parse(cont.to_json())}, {"discrete", json::parse(disc.to_json())}});
    c.check(checks, cont.label + " within 4 sigma", cont.pass, cont.z);
    c.check(checks, disc.label + " within 4 sigma", disc.pass, disc.z);
    csv << L << ',' << cont.estimate << ',' << disc.estimate << ',' << to_double(exact[L]) << ','
        << to_double(exact_discrete[L]) << ',' << cont.standard_error << '\n';
  }
  c.check(checks, "continuous stay implies discrete stay", counts.inclusion_violations == 0,
          counts.inclusion_violations);
  if (w == WeylGroup::identity()) {
    CharacterEvaluator eval(c.characters(), tau);
    const Rational psi_mu = eval.psi(mu);
    const std::size_t ref = std::min(c.cfg.count("exact_horizon", 6), top);
    const Rational truncation = exact[ref] - psi_mu;
    c.report["psi"] = rational_json(psi_mu);
    c.report["truncation"] = {{"L", ref}, {"psi_L_minus_psi", rational_json(truncation)},
                              {"psi_top_minus_psi", rational_json(exact[top] - psi_mu)}};
    // the infinite-horizon comparison needs a shorter reference horizon to bound the truncation
    if (ref < top) {
      auto inf = bernoulli_report("continuous stay L=" + std::to_string(top) + " against psi",
                                  counts.continuous.back(), N, psi_mu, to_double(truncation));
      c.check(checks, inf.label, inf.pass, inf.z);
      c.report["against_psi"] = json::parse(inf.to_json());
    }

    const auto steps = empirical_step_law(dist, N, seed ^ 0x5157e9b1ULL);
    json law = json::array();
    bool ok = true;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      auto r = bernoulli_report("node " + std::to_string(k), steps[k], N, dist.p[k]);
      ok = ok && r.pass;
      law.push_back(json::parse(r.to_json()));
    }
    c.check(checks, "single-step law within 4 sigma", ok);
    c.report["step_law"] = law;

    const std::size_t hl = c.cfg.count("h_law_ell", 0);
    if (hl > 0) {
      auto rep = empirical_h_law(dist, eval, hl, N, seed ^ 0x1f0e3c2dULL, threads);
      c.check(checks, "Pitman chain frequencies within 4 sigma", rep.pass, rep.worst_z);
      c.report["h_law"] = json::parse(rep.to_json());
    }
  } else {
    bool decreasing = true;
    for (std::size_t h = 0; h + 1 < counts.horizons.size(); ++h)
      decreasing = decreasing && exact[counts.horizons[h + 1]] < exact[counts.horizons[h]];
    c.report["exact_decreasing"] = decreasing;
    c.report["twisted_tau"] = twisted_tau(c.datum, c.weyl(), w, tau).str();
  }
  c.report["N"] = N;
  c.report["estimates"] = rows;
  c.report["checks"] = checks;
  c.artifacts["estimates.csv"] = csv.str();
}

void cmd_sandwich(Context& c) {
  const auto& g = c.crystal();
  const auto tau = c.tau();
  const auto mu = c.mu();
  const std::size_t L = c.cfg.count("L", 50);
  const std::size_t N = c.cfg.count("N", 100000);
  const auto seed = c.cfg.get<std::uint64_t>("seed", 1);
  const auto threads = c.cfg.get<unsigned>("threads", 0);
  CharacterEvaluator eval(c.characters(), tau);
  const auto rep = sandwich_check(build_distribution(g, tau), eval, mu, L, N, seed, threads);
  json checks = json::array();
  c.check(checks, "lower bound", rep.lower_ok);
  c.check(checks, "upper bound", rep.upper_ok);
  c.check(checks, "kappa0 shift keeps discretely staying walks in the chamber", rep.lemma_violations == 0,
          {{"checks", rep.lemma_checks}, {"violations", rep.lemma_violations}});
  c.check(checks, "continuous stay implies discrete stay", rep.inclusion_violations == 0);
  c.check(checks, "discrete estimate within 4 sigma of the exact value", rep.discrete.pass, rep.discrete.z);
  c.report["sandwich"] = json::parse(rep.to_json());
  c.report["checks"] = checks;
}

void cmd_ratio(Context& c) {
  const auto& g = c.crystal();
  const auto tau = c.tau();
  const auto mu = c.mu();
  if (!c.datum.in_root_lattice(mu)) throw ConfigError("mu = " + mu.str() + " is not in the root lattice");
  auto ells = c.sizes("ells", {6, 7, 8, 9, 10, 11, 12, 13, 14});
  if (ells.empty()) throw ConfigError("ells: at least one length is needed");
  CharacterEvaluator eval(c.characters(), tau);
  const auto rep = asymptotic_ratio(build_distribution(g, tau), eval, mu, ells);
  json checks = json::array();
  c.check(checks, "final deviation below the initial deviation", rep.pass);
  c.report["ratio"] = json::parse(rep.to_json());
  c.report["checks"] = checks;
  std::ostringstream csv;
  csv << "ell,lambda,f_mu,f_zero,ratio,deviation\n";
  for (const auto& p : rep.points)
    csv << p.ell << ",\"" << weights_csv_label(p.lambda) << "\"," << p.f_mu.get_str() << ',' << p.f_zero.get_str()
        << ',' << to_double(p.ratio) << ',' << to_double(p.deviation) << '\n';
  c.artifacts["ratio.csv"] = csv.str();
}

void cmd_verify(Context& c) {
  const auto& g = c.crystal();
  const auto tau = c.tau();
  const auto& W = c.weyl();
  auto& cache = c.characters();
  CharacterEvaluator eval(cache, tau);
  const std::size_t max_ell = c.cfg.count("ell", 3);
  const auto mus = c.states(1);
  json checks = json::array();

  // product form of psi against the Weyl numerator
  for (const auto& mu : dominant_weights(c.rank(), 2))
    c.check(checks, "Weyl numerator " + mu.str(),
            cache.psi_poly(mu) == weyl_numerator(mu, c.datum, W));

  // finite-ell alternating identity, with the DP checked against enumeration
  for (const auto& mu : mus) {
    const auto layers = count_f_multiplicity(g, mu, max_ell, c.budget * 25);
    for (std::size_t ell = 1; ell <= max_ell; ++ell) {
      if (ell <= 2)
        c.check(checks, "multiplicity DP against enumeration " + mu.str() + " l=" + std::to_string(ell),
                count_f_multiplicity_enumerated(g, mu, ell) == layers[ell]);
      const Rational lhs = alternating_Pi_ell(g, W, mu, tau, ell, layers[ell]);
      c.check(checks, "alternating identity " + mu.str() + " l=" + std::to_string(ell), lhs == eval.psi(mu),
              {{"lhs", rational_json(lhs)}, {"psi", rational_json(eval.psi(mu))}});
    }
  }

  // Doob transform of the killed walk by psi against the Pitman chain
  const auto dist = build_distribution(g, tau);
  const auto seeds = dominant_weights(c.rank(), 3);
  const auto killed = restricted_table(dist, seeds);
  const auto psi = psi_function(killed, eval);
  const auto defect = harmonic_defect(killed, psi);
  bool equal = defect.worst == 0;
  if (equal) {
    const auto doob = doob_transform(killed, psi);
    const auto hchain = hchain_matrix(dist, eval, seeds);
    for (std::size_t r = 0; r < doob.size(); ++r)
      if (!doob.boundary[r] && doob.rows[r] != hchain.rows[r]) equal = false;
  }
  c.check(checks, "Doob transform equals the Pitman chain", equal, rational_json(defect.worst));

  // twisted points leave the admissible region; twisted laws are relabelled laws
  bool outside = true, relabel = true, drift_out = true;
  for (std::size_t w = 1; w < W.size(); ++w) {
    outside = outside && !twisted_tau(c.datum, W, w, tau).in_domain();
    const auto tw = build_twisted_distribution(g, W, w, tau);
    for (std::size_t k = 0; k < g.size(); ++k)
      relabel = relabel && tw.p[k] == dist.p[weyl_action_on_crystal(g, W, w, k)];
    drift_out = drift_out && chamber_position(drift(tw)) == ChamberPosition::outside;
  }
  c.check(checks, "twisted points outside the admissible region", outside);
  c.check(checks, "twisted node law is the relabelled law", relabel);
  c.check(checks, "drift interior", chamber_position(drift(dist)) == ChamberPosition::interior,
          rational_vector(drift(dist)));
  c.check(checks, "twisted drifts outside the chamber", drift_out);

  // tensor rule against path operators on the concatenation
  bool tensor_ok = true;
  for (const auto& b : tensor_power(g, 2, c.budget * 10)) {
    const auto eta = b.path();
    for (std::size_t i = 0; i < c.rank(); ++i) {
      const auto e = tensor_apply_e(b, i);
      const auto f = tensor_apply_f(b, i);
      const auto pe = apply_e(c.datum, eta, i);
      const auto pf = apply_f(c.datum, eta, i);
      tensor_ok = tensor_ok && e.has_value() == pe.has_value() && f.has_value() == pf.has_value();
      if (e && pe) tensor_ok = tensor_ok && e->path() == *pe;
      if (f && pf) tensor_ok = tensor_ok && f->path() == *pf;
    }
  }
  c.check(checks, "tensor rule matches path operators on concatenations", tensor_ok);

  c.report["tau"] = tau.str();
  c.report["checks"] = checks;
  std::size_t passed = 0;
  for (const auto& ch : checks) passed += ch["pass"].get<bool>();
  c.report["passed"] = passed;
  c.report["total"] = checks.size();
}

using Handler = std::function<void(Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"crystal", cmd_crystal},     {"character", cmd_character}, {"psi", cmd_psi},
      {"hchain", cmd_hchain},       {"conditioned", cmd_conditioned}, {"pitman", cmd_pitman},
      {"simulate", cmd_simulate},   {"sandwich", cmd_sandwich},   {"ratio", cmd_ratio},
      {"verify", cmd_verify}};
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"crystal", "character", "psi",      "hchain",   "conditioned",
                                                 "pitman",  "simulate",  "sandwich", "ratio",    "verify"};
  return names;
}

RunResult run_command(std::string_view command, std::string_view config_json) {
  RunResult r;
  auto fail = [&](int status, const std::string& what) {
    r.status = status;
    r.error = std::string(command) + ": " + what;
  };
  const auto it = handlers().find(std::string(command));
  if (it == handlers().end()) {
    fail(run_config, "unknown command");
    return r;
  }
  std::optional<Context> ctx;
  try {
    ctx.emplace(config_json);
    it->second(*ctx);
    ctx->report["command"] = std::string(command);
    ctx->report["status"] = ctx->failed ? "fail" : "pass";
    r.status = ctx->failed ? run_verify : run_ok;
    r.report = ctx->report.dump(2);
    r.artifacts = std::move(ctx->artifacts);
  } catch (const BudgetError& e) {
    fail(run_budget, e.what());
  } catch (const IntegrityError& e) {
    fail(run_verify, e.what());
  } catch (const ConfigError& e) {
    fail(run_config, e.what());
  } catch (const FormatError& e) {
    fail(run_config, e.what());
  } catch (const CartanError& e) {
    fail(run_config, e.what());
  } catch (const DomainError& e) {
    fail(run_config, e.what());
  } catch (const std::invalid_argument& e) {
    fail(run_config, e.what());
  } catch (const std::exception& e) {
    fail(run_internal, e.what());
  }
  if (ctx) r.resolved = ctx->cfg.resolved().dump(2);
  return r;
}

}  // namespace lpath
