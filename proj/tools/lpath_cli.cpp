#include "lpath.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Overrides {
  std::string cartan, kappa, tau, tau_roots, mu, twist, horizons, ells, path, paths, module;
  long tau_degree = 0;
  long long N = -1, L = -1, ell = -1, max_level = -1, seed = -1, threads = -1, h_law_ell = -1;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json ints(const std::string& s) {
  json a = json::array();
  for (const auto& x : split(s)) a.push_back(std::stoll(x));
  return a;
}

json rationals(const std::string& s) {
  json a = json::array();
  for (const auto& x : split(s)) a.push_back(x);
  return a;
}

void apply(json& cfg, const Overrides& o) {
  if (!o.cartan.empty()) cfg["cartan"] = o.cartan.front() == '[' ? json::parse(o.cartan) : json(o.cartan);
  if (!o.kappa.empty()) cfg["kappa"] = ints(o.kappa);
  if (!o.tau.empty()) cfg["tau"] = rationals(o.tau);
  if (!o.tau_roots.empty()) cfg["tau_roots"] = rationals(o.tau_roots);
  if (o.tau_degree > 0) cfg["tau_degree"] = o.tau_degree;
  if (!o.mu.empty()) cfg["mu"] = ints(o.mu);
  if (!o.twist.empty()) cfg["twist"] = ints(o.twist);
  if (!o.horizons.empty()) cfg["horizons"] = ints(o.horizons);
  if (!o.ells.empty()) cfg["ells"] = ints(o.ells);
  if (!o.path.empty()) cfg["path"] = json::parse(o.path);
  if (!o.paths.empty()) cfg["paths"] = json::parse(o.paths);
  if (!o.module.empty()) cfg["module"] = json::parse(o.module);
  if (o.N >= 0) cfg["N"] = o.N;
  if (o.L >= 0) cfg["L"] = o.L;
  if (o.ell >= 0) cfg["ell"] = o.ell;
  if (o.max_level >= 0) cfg["max_level"] = o.max_level;
  if (o.seed >= 0) cfg["seed"] = o.seed;
  if (o.threads >= 0) cfg["threads"] = o.threads;
  if (o.h_law_ell >= 0) cfg["h_law_ell"] = o.h_law_ell;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_file(const fs::path& p, const std::string& contents) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << contents;
  if (contents.empty() || contents.back() != '\n') f << '\n';
}

void summarize(const std::string& command, const json& report, std::ostream& out) {
  out << command << ": " << report.value("status", "?") << '\n';
  if (report.contains("checks"))
    for (const auto& c : report["checks"])
      out << "  " << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << '\n';
  if (report.contains("table")) {
    out << "  mu            psi\n";
    for (const auto& row : report["table"])
      out << "  " << std::left << std::setw(14) << row["mu"].dump() << row["psi"]["exact"].get<std::string>() << "  ("
          << row["psi"]["value"].get<double>() << ")\n";
  }
  if (report.contains("estimates"))
    for (const auto& e : report["estimates"])
      out << "  L=" << e["L"] << "  continuous " << e["continuous"]["estimate"] << "  discrete "
          << e["discrete"]["estimate"] << '\n';
  if (report.contains("nodes")) out << "  nodes " << report["nodes"] << ", edges " << report["edges"] << '\n';
  if (report.contains("S")) out << "  S = " << report["S"].get<std::string>() << '\n';
}

std::string describe(const std::string& name) {
  static const std::map<std::string, std::string> text = {
      {"crystal", "crystal graph as DOT and JSON"},
      {"character", "normalized character, Sigma_M and the Weyl formula check"},
      {"psi", "table of psi(mu) with its polynomial form"},
      {"hchain", "Pitman chain and killed walk tables, Doob identity"},
      {"conditioned", "conditioned transition row from mu"},
      {"pitman", "Pitman transform of a path or tensor node"},
      {"simulate", "Monte Carlo cone-stay estimates"},
      {"sandwich", "discrete stay probability against its two bounds"},
      {"ratio", "multiplicity ratio sequence"},
      {"verify", "exact identity suite"}};
  auto it = text.find(name);
  return it == text.end() ? "" : it->second;
}

int run(const std::string& command, const std::string& config_path, const Overrides& o, const fs::path& out_dir,
        bool quiet) {
  json cfg = json::object();
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "error: cannot read " << config_path << '\n';
      return LPATH_ERR_CONFIG;
    }
    try {
      cfg = json::parse(f);
    } catch (const json::exception& e) {
      std::cerr << "error: " << config_path << ": " << e.what() << '\n';
      return LPATH_ERR_CONFIG;
    }
    // a manifest replays its resolved configuration
    if (cfg.is_object() && cfg.contains("manifest_version")) cfg = cfg["config"];
  }
  try {
    apply(cfg, o);
  } catch (const std::exception& e) {
    std::cerr << "error: bad flag value: " << e.what() << '\n';
    return LPATH_ERR_CONFIG;
  }

  char* raw = nullptr;
  const int status = lpath_run(command.c_str(), cfg.dump().c_str(), &raw);
  if (!raw) {
    std::cerr << "error: " << lpath_last_error() << '\n';
    return status ? status : LPATH_ERR_INTERNAL;
  }
  const json result = json::parse(raw);
  lpath_string_free(raw);
  if (!result["error"].get<std::string>().empty()) std::cerr << "error: " << result["error"].get<std::string>() << '\n';
  if (result["report"].is_null()) return status;

  fs::create_directories(out_dir);
  json outputs = json::array({"report.json"});
  write_file(out_dir / "report.json", result["report"].dump(2));
  for (const auto& [name, contents] : result["artifacts"].items()) {
    write_file(out_dir / name, contents.get<std::string>());
    outputs.push_back(name);
  }
  json manifest = {{"manifest_version", 1},
                   {"command", command},
                   {"library_version", lpath_version()},
                   {"config", result["config"]},
                   {"outputs", outputs},
                   {"status", status},
                   {"timestamp", timestamp()}};
  write_file(out_dir / "manifest.json", manifest.dump(2));
  if (!quiet) summarize(command, result["report"], std::cout);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littelmann paths, crystals and conditioned walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lpath_version()));

  std::string config_path, out = "lpath-out";
  bool quiet = false;
  Overrides o;

  char* names = nullptr;
  lpath_commands(&names);
  std::stringstream list(names ? names : "");
  lpath_string_free(names);

  std::string cmd;
  std::vector<CLI::App*> subs;
  for (std::string name; std::getline(list, name);) {
    auto* s = app.add_subcommand(name, describe(name));
    s->add_option("-c,--config", config_path, "JSON configuration or manifest")->check(CLI::ExistingFile);
    s->add_option("-o,--out", out, "output directory");
    s->add_flag("-q,--quiet", quiet, "no summary on stdout");
    s->add_option("--cartan", o.cartan, "type label (C2) or matrix JSON");
    s->add_option("--kappa", o.kappa, "highest weight, comma separated");
    s->add_option("--tau", o.tau, "tau values, comma separated rationals");
    s->add_option("--tau-roots", o.tau_roots, "D-th roots of tau");
    s->add_option("--tau-degree", o.tau_degree, "D");
    s->add_option("--mu", o.mu, "start weight");
    s->add_option("--twist", o.twist, "reduced word of the twist, 1-based");
    s->add_option("--horizons", o.horizons, "stay horizons");
    s->add_option("--ells", o.ells, "lengths for the ratio sequence");
    s->add_option("--path", o.path, "path literal");
    s->add_option("--paths", o.paths, "JSON list of path literals (tensor factors)");
    s->add_option("--module", o.module, "JSON list of {kappa, multiplicity, path}");
    s->add_option("-N,--samples", o.N, "sample count");
    s->add_option("-L,--horizon", o.L, "horizon");
    s->add_option("--ell", o.ell, "tensor length");
    s->add_option("--max-level", o.max_level, "state set level");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--threads", o.threads, "worker threads, 0 = all");
    s->add_option("--h-law-ell", o.h_law_ell, "Pitman chain check length");
    s->callback([s, &cmd] { cmd = s->get_name(); });
    subs.push_back(s);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : LPATH_ERR_CONFIG;
  }
  try {
    return run(cmd, config_path, o, out, quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return LPATH_ERR_INTERNAL;
  }
}
