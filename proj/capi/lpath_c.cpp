#include "lpath.h"

#include "lpath/charalg.hpp"
#include "lpath/runner.hpp"

#include <json.hpp>

#include <cstring>
#include <string>

struct lpath_crystal {
  lpath::CrystalGraph graph;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int fail(int code, const std::string& what) {
  last_error = what;
  return code;
}

template <class F>
int guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const lpath::BudgetError& e) {
    return fail(LPATH_ERR_BUDGET, e.what());
  } catch (const lpath::FormatError& e) {
    return fail(LPATH_ERR_CONFIG, e.what());
  } catch (const lpath::CartanError& e) {
    return fail(LPATH_ERR_CONFIG, e.what());
  } catch (const lpath::DomainError& e) {
    return fail(LPATH_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LPATH_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(LPATH_ERR_INTERNAL, e.what());
  }
}

bool null_args(std::initializer_list<const void*> ptrs) {
  for (auto p : ptrs)
    if (!p) return true;
  return false;
}

}  // namespace

extern "C" {

const char* lpath_version(void) { return "1.0.0"; }

const char* lpath_last_error(void) { return last_error.c_str(); }

void lpath_string_free(char* s) { std::free(s); }

int lpath_run(const char* command, const char* config_json, char** result) {
  if (null_args({command, result})) return fail(LPATH_ERR_CONFIG, "null argument");
  return guarded([&]() -> int {
    auto r = lpath::run_command(command, config_json ? config_json : "");
    nlohmann::json out;
    out["status"] = r.status;
    out["error"] = r.error;
    out["report"] = r.report.empty() ? nlohmann::json(nullptr) : nlohmann::json::parse(r.report);
    out["config"] = r.resolved.empty() ? nlohmann::json::object() : nlohmann::json::parse(r.resolved);
    out["artifacts"] = r.artifacts;
    *result = dup(out.dump(2));
    if (r.status != LPATH_OK) last_error = r.error.empty() ? "verification failed" : r.error;
    return r.status;
  });
}

int lpath_commands(char** out) {
  if (!out) return fail(LPATH_ERR_CONFIG, "null argument");
  std::string s;
  for (const auto& c : lpath::command_names()) s += c + "\n";
  *out = dup(s);
  return LPATH_OK;
}

int lpath_crystal_new(const char* cartan, const char* path_literal, lpath_crystal** out) {
  if (null_args({cartan, path_literal, out})) return fail(LPATH_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&]() -> int {
    auto datum = lpath::CartanDatum::parse(cartan);
    auto path = lpath::parse_path(path_literal, datum);
    *out = new lpath_crystal{lpath::generate_crystal(datum, path)};
    return LPATH_OK;
  });
}

void lpath_crystal_free(lpath_crystal* c) { delete c; }

int lpath_crystal_size(const lpath_crystal* c, size_t* out) {
  if (null_args({c, out})) return fail(LPATH_ERR_CONFIG, "null argument");
  *out = c->graph.size();
  return LPATH_OK;
}

int lpath_crystal_rank(const lpath_crystal* c, size_t* out) {
  if (null_args({c, out})) return fail(LPATH_ERR_CONFIG, "null argument");
  *out = c->graph.rank();
  return LPATH_OK;
}

int lpath_crystal_weight(const lpath_crystal* c, size_t k, long long* weight) {
  if (null_args({c, weight})) return fail(LPATH_ERR_CONFIG, "null argument");
  if (k >= c->graph.size()) return fail(LPATH_ERR_CONFIG, "node index out of range");
  const auto& w = c->graph.node(k).weight;
  for (std::size_t i = 0; i < w.rank(); ++i) weight[i] = w[i];
  return LPATH_OK;
}

namespace {

int step(const lpath_crystal* c, size_t k, size_t i, size_t* target, bool raise) {
  if (null_args({c, target})) return fail(LPATH_ERR_CONFIG, "null argument");
  if (k >= c->graph.size() || i >= c->graph.rank()) return fail(LPATH_ERR_CONFIG, "index out of range");
  *target = raise ? c->graph.e(k, i) : c->graph.f(k, i);
  return LPATH_OK;
}

int text(const lpath_crystal* c, char** out, std::string (*render)(const lpath::CrystalGraph&)) {
  if (null_args({c, out})) return fail(LPATH_ERR_CONFIG, "null argument");
  return guarded([&]() -> int {
    *out = dup(render(c->graph));
    return LPATH_OK;
  });
}

}  // namespace

int lpath_crystal_f(const lpath_crystal* c, size_t k, size_t i, size_t* target) { return step(c, k, i, target, false); }
int lpath_crystal_e(const lpath_crystal* c, size_t k, size_t i, size_t* target) { return step(c, k, i, target, true); }

int lpath_crystal_dot(const lpath_crystal* c, char** out) {
  return text(c, out, [](const lpath::CrystalGraph& g) { return lpath::to_dot(g); });
}

int lpath_crystal_json(const lpath_crystal* c, char** out) {
  return text(c, out, [](const lpath::CrystalGraph& g) { return lpath::to_json(g); });
}

int lpath_crystal_character(const lpath_crystal* c, char** out) {
  return text(c, out, [](const lpath::CrystalGraph& g) { return lpath::character_poly(g).str(); });
}

int lpath_psi(const char* cartan, const long long* mu, const char* const* tau, size_t rank, char** out) {
  if (null_args({cartan, mu, tau, out})) return fail(LPATH_ERR_CONFIG, "null argument");
  return guarded([&]() -> int {
    auto datum = lpath::CartanDatum::parse(cartan);
    if (datum.rank() != rank) return fail(LPATH_ERR_CONFIG, "rank does not match the Cartan type");
    lpath::Weight w(rank);
    lpath::QVec t;
    for (std::size_t i = 0; i < rank; ++i) {
      if (!tau[i]) return fail(LPATH_ERR_CONFIG, "null tau entry");
      w[i] = mu[i];
      t.push_back(lpath::parse_rational(tau[i]));
    }
    if (!w.is_dominant()) return fail(LPATH_ERR_CONFIG, "mu is not dominant");
    lpath::CharacterCache cache(datum);
    *out = dup(lpath::psi(cache, w, lpath::TauPoint(t)).get_str());
    return LPATH_OK;
  });
}

}  // extern "C"
