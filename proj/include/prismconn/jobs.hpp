#pragma once

// Subcommand bodies: analytic, simulate, compare, phase-map, validate.
// Each writes its CSV (and optionally SVG/JSON) into spec.out_dir and
// returns the process exit code; errors propagate as exceptions that the
// CLI maps to codes 2 (ConfigError, bad arguments) and 3 (NumericError).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "prismconn/analytic.hpp"
#include "prismconn/config.hpp"
#include "prismconn/csv.hpp"
#include "prismconn/quadrature.hpp"
#include "prismconn/simulator.hpp"
#include "prismconn/svg.hpp"
#include "prismconn/validate.hpp"

namespace prismconn {

enum class Subcommand { Analytic, Simulate, Compare, PhaseMap, Validate };

inline Subcommand subcommand_from_string(const std::string& s) {
  if (s == "analytic") return Subcommand::Analytic;
  if (s == "simulate") return Subcommand::Simulate;
  if (s == "compare") return Subcommand::Compare;
  if (s == "phase-map") return Subcommand::PhaseMap;
  if (s == "validate") return Subcommand::Validate;
  throw ConfigError("unknown subcommand '" + s + "'");
}

struct JobSpec {
  Subcommand command = Subcommand::Analytic;
  std::optional<Domain> domain;  // house(5) when unset
  ConnectivityModel model = ConnectivityModel::mimo_mrc_2x2(1.0);
  std::vector<double> rho;       // density sweep
  std::vector<double> L;         // phase-map side lengths
  std::uint64_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir = ".";
  bool plot = false;
  unsigned threads = 0;          // 0 = machine parallelism

  const Domain& domain_or_default() const {
    static const Domain house = build_house(5.0);
    return domain ? *domain : house;
  }
};

struct JobOutcome {
  int exit_code = 0;
  std::vector<std::string> files;
};

namespace jobs_detail {

inline void check_sweep(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw ConfigError(std::string(name) + " sweep is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw ConfigError(std::string(name) + " values must be positive");
    if (i && !(v[i] > v[i - 1])) throw ConfigError(std::string(name) + " sweep must be increasing");
  }
}

inline std::string prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("output directory '" + dir + "' cannot be created");
  const auto probe = std::filesystem::path(dir) / ".prismconn_write_test";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError("output directory '" + dir + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
  return dir;
}

inline std::string path_in(const JobSpec& s, const char* name) {
  return (std::filesystem::path(s.out_dir) / name).string();
}

// Closed forms for MIMO-MRC, the quadrature pipeline for everything else.
class Analytic {
 public:
  Analytic(const FeatureSet& fs, const ConnectivityModel& m) : fs_(fs), m_(m) {
    if (!closed_form(FeatureKind::Bulk, m)) numeric_.emplace(fs, m);
  }
  PfcBreakdown at(double rho) const {
    return numeric_ ? numeric_->at(rho) : assemble_pfc(fs_, m_, rho);
  }
  bool numeric() const { return numeric_.has_value(); }

 private:
  FeatureSet fs_;
  ConnectivityModel m_;
  std::optional<NumericPfc> numeric_;
};

inline const char* component_color(Component c) {
  switch (c) {
    case Component::Bulk: return "#2b8a3e";
    case Component::Face: return "#e0a800";
    case Component::Edge: return "#7b3fa0";
    case Component::Corner: return "#1c64b4";
  }
  return "#000000";
}

inline std::string domain_title(const JobSpec& s) {
  return to_json(s.domain_or_default()).dump() + " " + to_json(s.model).dump();
}

inline Json result_json(const SimResult& r) {
  return {{"rho", r.rho},
          {"nodes", r.nodes},
          {"seed", r.seed},
          {"n_trials", r.n_trials},
          {"fc_count", r.fc_count},
          {"min_deg_ge1_count", r.min_deg_ge1_count},
          {"implication_violations", r.implication_violations},
          {"p_fc_hat", r.p_fc_hat},
          {"p_min_deg_hat", r.p_min_deg_hat},
          {"std_err", r.std_err},
          {"wall_time_s", r.wall_time_s}};
}

inline std::vector<SimResult> run_sweep(const JobSpec& s) {
  SimConfig c{s.domain_or_default(), s.model, std::nullopt, std::nullopt, s.trials, s.seed,
              s.threads};
  c.density = s.rho.front();
  try {
    return sweep(c, s.rho);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace jobs_detail

/// breakdown.csv: one row per (rho, group); analytic.csv: one row per rho
/// with a column per group plus the total.
inline JobOutcome cmd_analytic(const JobSpec& s) {
  using namespace jobs_detail;
  check_sweep(s.rho, "rho");
  prepare_out_dir(s.out_dir);
  const FeatureSet fs = s.domain_or_default().features();
  const Analytic a(fs, s.model);

  std::vector<PfcBreakdown> rows;
  for (double rho : s.rho) rows.push_back(a.at(rho));

  CsvTable longform({"rho", "label", "component", "dihedral", "multiplicity", "prefactor",
                     "density_power", "exponent_rate", "value", "p_out", "p_fc"});
  std::vector<std::string> wide_header{"rho"};
  for (const auto& g : rows.front().groups) wide_header.push_back(g.label);
  for (const char* c : {"total", "p_fc", "in_regime", "dominant"}) wide_header.push_back(c);
  CsvTable wide(wide_header);
  if (a.numeric()) {
    longform.comment("numeric quadrature pipeline (no closed form for this model)");
    wide.comment("numeric quadrature pipeline (no closed form for this model)");
  }
  for (const auto& b : rows) {
    std::vector<std::string> w{csv_number(b.rho)};
    for (const auto& g : b.groups) {
      longform.row({csv_number(b.rho), g.label, std::string(to_string(g.kind)),
                    csv_number(g.dihedral), std::to_string(g.multiplicity), csv_number(g.prefactor),
                    std::to_string(g.density_power), csv_number(g.exponent_rate),
                    csv_number(g.value), csv_number(b.p_out), csv_number(b.p_fc)});
      w.push_back(csv_number(g.value));
    }
    w.push_back(csv_number(b.p_out));
    w.push_back(csv_number(b.p_fc));
    w.push_back(b.in_regime ? "1" : "0");
    w.push_back(std::string(to_string(b.dominant)));
    wide.row(std::move(w));
  }
  for (const auto& warning : rows.front().warnings) std::cerr << "warning: " << warning << '\n';

  JobOutcome out;
  longform.save(path_in(s, "breakdown.csv"));
  wide.save(path_in(s, "analytic.csv"));
  out.files = {path_in(s, "breakdown.csv"), path_in(s, "analytic.csv")};

  if (s.plot) {
    std::vector<PlotSeries> series;
    for (int c = 0; c < 4; ++c) {
      const auto comp = static_cast<Component>(c);
      PlotSeries p{std::string(to_string(comp)), component_color(comp)};
      p.dashed = true;
      for (const auto& b : rows) {
        p.x.push_back(b.rho);
        p.y.push_back(b.component_value(comp));
      }
      series.push_back(std::move(p));
    }
    PlotSeries total{"total", "#000000"};
    for (const auto& b : rows) {
      total.x.push_back(b.rho);
      total.y.push_back(b.p_out);
    }
    series.push_back(std::move(total));
    save_text(path_in(s, "analytic.svg"), render_plot({domain_title(s)}, series));
    out.files.push_back(path_in(s, "analytic.svg"));
  }
  return out;
}

/// sweep.csv and results.json.
inline JobOutcome cmd_simulate(const JobSpec& s) {
  using namespace jobs_detail;
  check_sweep(s.rho, "rho");
  if (s.trials < 1) throw ConfigError("trials must be >= 1");
  prepare_out_dir(s.out_dir);
  const auto results = run_sweep(s);

  CsvTable csv({"rho", "N", "trials", "fc_count", "p_fc_hat", "std_err", "p_min_deg_hat",
                "wall_time_s"});
  Json js = {{"domain", to_json(s.domain_or_default())},
             {"model", to_json(s.model)},
             {"seed", s.seed},
             {"trials", s.trials},
             {"results", Json::array()}};
  for (const auto& r : results) {
    csv.row({csv_number(r.rho), std::to_string(r.nodes), std::to_string(r.n_trials),
             std::to_string(r.fc_count), csv_number(r.p_fc_hat), csv_number(r.std_err),
             csv_number(r.p_min_deg_hat), csv_number(r.wall_time_s)});
    js["results"].push_back(result_json(r));
  }
  JobOutcome out;
  csv.save(path_in(s, "sweep.csv"));
  save_text(path_in(s, "results.json"), js.dump(2) + "\n");
  out.files = {path_in(s, "sweep.csv"), path_in(s, "results.json")};
  if (s.plot) {
    PlotSeries p{"simulated", "#000000"};
    p.points = true;
    for (const auto& r : results) {
      p.x.push_back(r.rho);
      p.y.push_back(r.p_out_hat());
      p.err.push_back(r.std_err);
    }
    save_text(path_in(s, "sweep.svg"), render_plot({domain_title(s)}, {p}));
    out.files.push_back(path_in(s, "sweep.svg"));
  }
  return out;
}

/// compare.csv: analytic total next to the simulated outage, with
/// z = (simulated - analytic) / std_err (nan when all trials agree).
inline JobOutcome cmd_compare(const JobSpec& s) {
  using namespace jobs_detail;
  check_sweep(s.rho, "rho");
  if (s.trials < 1) throw ConfigError("trials must be >= 1");
  prepare_out_dir(s.out_dir);
  const Analytic a(s.domain_or_default().features(), s.model);
  const auto results = run_sweep(s);

  CsvTable csv({"rho", "N", "trials", "fc_count", "analytic_p_out", "sim_p_out", "std_err",
                "z_score", "in_regime"});
  PlotSeries line{"analytic", "#000000"}, dots{"simulated", "#c0392b"};
  dots.points = true;
  for (const auto& r : results) {
    const PfcBreakdown b = a.at(r.rho);
    const bool degenerate = r.fc_count == 0 || r.fc_count == r.n_trials;
    const double z = degenerate ? std::nan("") : (r.p_out_hat() - b.p_out) / r.std_err;
    csv.row({csv_number(r.rho), std::to_string(r.nodes), std::to_string(r.n_trials),
             std::to_string(r.fc_count), csv_number(b.p_out), csv_number(r.p_out_hat()),
             csv_number(r.std_err), csv_number(z), b.in_regime ? "1" : "0"});
    line.x.push_back(r.rho);
    line.y.push_back(b.p_out);
    dots.x.push_back(r.rho);
    dots.y.push_back(r.p_out_hat());
    dots.err.push_back(r.std_err);
  }
  JobOutcome out;
  csv.save(path_in(s, "compare.csv"));
  out.files = {path_in(s, "compare.csv")};
  if (s.plot) {
    save_text(path_in(s, "compare.svg"), render_plot({domain_title(s)}, {line, dots}));
    out.files.push_back(path_in(s, "compare.svg"));
  }
  return out;
}

/// phase_map.csv: dominant component of the house outage on the (rho, L)
/// grid, using the model's beta. Only MIMO-MRC has closed forms to compare.
inline JobOutcome cmd_phase_map(const JobSpec& s) {
  using namespace jobs_detail;
  check_sweep(s.rho, "rho");
  check_sweep(s.L, "L");
  if (s.model.family() != ChannelFamily::MimoMrc2x2)
    throw ConfigError("phase-map needs the mimo_mrc_2x2 model");
  prepare_out_dir(s.out_dir);
  const auto cells = phase_map(s.model.beta(), s.rho, s.L);

  CsvTable csv({"rho", "L", "dominant", "in_regime"});
  csv.comment("grid rho=" + std::to_string(s.rho.size()) + " L=" + std::to_string(s.L.size()) +
              " beta=" + csv_number(s.model.beta()));
  GridPlot g;
  g.title = "dominant component, house, beta=" + csv_number(s.model.beta());
  g.x = s.rho;
  g.y = s.L;
  for (int c = 0; c < 4; ++c) {
    g.category_names.emplace_back(to_string(static_cast<Component>(c)));
    g.category_colors.emplace_back(component_color(static_cast<Component>(c)));
  }
  for (const auto& cell : cells) {
    csv.row({csv_number(cell.rho), csv_number(cell.L), std::string(to_string(cell.dominant)),
             cell.in_regime ? "1" : "0"});
    g.cell.push_back(static_cast<int>(cell.dominant));
  }
  JobOutcome out;
  csv.save(path_in(s, "phase_map.csv"));
  out.files = {path_in(s, "phase_map.csv")};
  if (s.plot) {
    save_text(path_in(s, "phase_map.svg"), render_grid(g));
    out.files.push_back(path_in(s, "phase_map.svg"));
  }
  return out;
}

/// validate.csv (closed form vs quadrature) and cone.csv; exit 1 on any
/// failing row.
inline JobOutcome cmd_validate(const JobSpec& s) {
  using namespace jobs_detail;
  prepare_out_dir(s.out_dir);
  const ValidationReport rep = run_validation();
  CsvTable csv({"kind", "parameters", "closed_form", "quadrature", "rel_error", "tolerance", "pass"});
  for (const auto& r : rep.rows)
    csv.row({r.kind, r.parameters, csv_number(r.closed_form), csv_number(r.quadrature),
             csv_number(r.rel_error), csv_number(r.tolerance), r.pass ? "1" : "0"});
  CsvTable cone({"theta", "corner_profile", "cone_profile", "ratio"});
  for (const auto& c : rep.cone)
    cone.row({csv_number(c.theta), csv_number(c.corner), csv_number(c.cone), csv_number(c.ratio)});
  JobOutcome out;
  csv.save(path_in(s, "validate.csv"));
  cone.save(path_in(s, "cone.csv"));
  out.files = {path_in(s, "validate.csv"), path_in(s, "cone.csv")};
  for (const auto& r : rep.rows)
    if (!r.pass)
      std::cerr << "FAIL " << r.kind << " " << r.parameters << " rel_error " << r.rel_error
                << " > " << r.tolerance << '\n';
  out.exit_code = rep.all_pass() ? 0 : 1;
  return out;
}

inline JobOutcome run_job(const JobSpec& s) {
  switch (s.command) {
    case Subcommand::Analytic: return cmd_analytic(s);
    case Subcommand::Simulate: return cmd_simulate(s);
    case Subcommand::Compare: return cmd_compare(s);
    case Subcommand::PhaseMap: return cmd_phase_map(s);
    case Subcommand::Validate: return cmd_validate(s);
  }
  throw ConfigError("unknown subcommand");
}

}  // namespace prismconn
