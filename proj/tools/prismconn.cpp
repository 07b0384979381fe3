// prismconn: analytic, simulate, compare, phase-map, validate.
//
// Exit codes: 0 ok, 1 validation failure, 2 configuration error,
// 3 numeric failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "prismconn/jobs.hpp"

namespace {

using namespace prismconn;

constexpr const char* kOutDirEnv = "PRISMCONN_OUT_DIR";

struct Flags {
  std::string domain, model, rho, rho_list, L, L_list, out, config;
  std::optional<std::uint64_t> trials, seed;
  std::optional<unsigned> threads;
  bool plot = false;
};

std::vector<double> sweep_from(const std::string& range, const std::string& list, const char* what) {
  if (!range.empty() && !list.empty())
    throw ConfigError(std::string("give only one of --") + what + " and --" + what + "-list");
  if (!range.empty()) return parse_range(range);
  if (!list.empty()) return parse_list(list);
  return {};
}

std::vector<double> sweep_from_json(const Json& v, const char* what) {
  if (v.is_string()) return parse_range(v.get<std::string>());
  if (v.is_array()) {
    std::vector<double> out;
    for (const Json& x : v) {
      if (!x.is_number()) throw ConfigError(std::string(what) + " list must hold numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  throw ConfigError(std::string(what) + " must be \"a:b:step\" or an array");
}

template <class T>
T json_get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config \"") + key + "\": " + e.what());
  }
}

JobSpec build_spec(Subcommand cmd, const Flags& f) {
  JobSpec s;
  s.command = cmd;
  if (!f.domain.empty()) s.domain = parse_domain(load_json(f.domain));
  if (!f.model.empty()) s.model = parse_model(load_json(f.model));
  s.rho = sweep_from(f.rho, f.rho_list, "rho");
  s.L = sweep_from(f.L, f.L_list, "L");
  if (f.trials) s.trials = *f.trials;
  if (f.seed) s.seed = *f.seed;
  if (f.threads) s.threads = *f.threads;
  s.plot = f.plot;
  std::optional<std::string> out;
  if (!f.out.empty()) out = f.out;

  if (!f.config.empty()) {
    const Json c = load_json(f.config);
    if (!c.is_object()) throw ConfigError("config file must hold a JSON object");
    auto overrides = [&](const char* key, bool flag_given) {
      if (!c.contains(key)) return false;
      if (flag_given) std::cerr << "warning: config file value for '" << key << "' overrides the flag\n";
      return true;
    };
    if (overrides("domain", !f.domain.empty())) s.domain = parse_domain(c.at("domain"));
    if (overrides("model", !f.model.empty())) s.model = parse_model(c.at("model"));
    if (overrides("rho", !f.rho.empty() || !f.rho_list.empty()))
      s.rho = sweep_from_json(c.at("rho"), "rho");
    if (overrides("L", !f.L.empty() || !f.L_list.empty())) s.L = sweep_from_json(c.at("L"), "L");
    if (overrides("trials", f.trials.has_value())) s.trials = json_get<std::uint64_t>(c, "trials");
    if (overrides("seed", f.seed.has_value())) s.seed = json_get<std::uint64_t>(c, "seed");
    if (overrides("threads", f.threads.has_value())) s.threads = json_get<unsigned>(c, "threads");
    if (overrides("plot", f.plot)) s.plot = json_get<bool>(c, "plot");
    if (overrides("out", out.has_value())) out = json_get<std::string>(c, "out");
  }
  if (!out) {
    if (const char* env = std::getenv(kOutDirEnv); env && *env) out = env;
  }
  s.out_dir = out.value_or(".");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-connectivity probability of dense networks in prisms and half-cylinders"};
  app.require_subcommand(1);
  Flags f;

  const std::pair<const char*, const char*> commands[] = {
      {"analytic", "closed-form outage breakdown per boundary feature"},
      {"simulate", "Monte Carlo estimate of full connectivity"},
      {"compare", "analytic total vs simulation with z-scores"},
      {"phase-map", "dominant component over a (rho, L) grid for the house"},
      {"validate", "closed forms vs adaptive quadrature"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--domain", f.domain, "domain JSON, inline or file");
    sub->add_option("--model", f.model, "model JSON, inline or file");
    sub->add_option("--rho", f.rho, "density range a:b:step");
    sub->add_option("--rho-list", f.rho_list, "densities v1,v2,...");
    sub->add_option("--L", f.L, "phase-map side lengths a:b:step");
    sub->add_option("--L-list", f.L_list, "phase-map side lengths v1,v2,...");
    sub->add_option("--trials", f.trials, "Monte Carlo trials per point");
    sub->add_option("--seed", f.seed, "base seed (default " + std::to_string(kDefaultSeed) + ")");
    sub->add_option("--out", f.out, std::string("output directory (else $") + kOutDirEnv + ", else .)");
    sub->add_flag("--plot", f.plot, "also write SVG plots");
    sub->add_option("--threads", f.threads, "worker threads (default: all cores)");
    sub->add_option("--config", f.config, "JSON job file; its values win over flags");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Subcommand cmd = subcommand_from_string(app.get_subcommands().front()->get_name());
    const JobOutcome out = run_job(build_spec(cmd, f));
    for (const auto& file : out.files) std::cout << file << '\n';
    return out.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedModelError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
