#pragma once

// Monte Carlo estimate of the full-connectivity probability: drop N nodes
// uniformly in the domain, link every pair independently with probability
// H(distance), and check whether the resulting graph is connected.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "prismconn/channel.hpp"
#include "prismconn/geometry.hpp"
#include "prismconn/graph.hpp"
#include "prismconn/random.hpp"

namespace prismconn {

inline constexpr std::uint64_t kDefaultSeed = 20140101;

struct SimConfig {
  Domain domain;
  ConnectivityModel model;
  std::optional<double> density;       // nodes per unit volume
  std::optional<std::size_t> nodes;    // explicit N; exactly one of the two
  std::uint64_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;                // 0 = hardware concurrency

  void validate() const {
    if (density.has_value() == nodes.has_value())
      throw std::invalid_argument("give exactly one of density and node count");
    if (density && (!(*density > 0.0) || !std::isfinite(*density)))
      throw std::invalid_argument("density must be positive");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (node_count() == 0) throw std::invalid_argument("node count rounds to zero");
  }

  // Fixed N = round(rho V) when a density is given.
  std::size_t node_count() const {
    if (nodes) return *nodes;
    return static_cast<std::size_t>(std::llround(*density * domain.volume()));
  }

  double effective_density() const {
    return density ? *density : static_cast<double>(*nodes) / domain.volume();
  }
};

struct TrialOutcome {
  bool connected = false;
  std::size_t min_degree = 0;
  std::size_t component_count = 0;
};

struct SimResult {
  double rho = 0.0;
  std::size_t nodes = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_trials = 0;
  std::uint64_t fc_count = 0;
  std::uint64_t min_deg_ge1_count = 0;
  // Trials where connected but min degree 0, or connected with more than
  // one component. Always zero unless the connectivity code is broken.
  std::uint64_t implication_violations = 0;
  double p_fc_hat = 0.0;
  double p_min_deg_hat = 0.0;
  double std_err = 0.0;
  double wall_time_s = 0.0;

  double p_out_hat() const { return 1.0 - p_fc_hat; }

  // Everything except wall time.
  bool same_outcome(const SimResult& o) const {
    return rho == o.rho && nodes == o.nodes && seed == o.seed && n_trials == o.n_trials &&
           fc_count == o.fc_count && min_deg_ge1_count == o.min_deg_ge1_count &&
           implication_violations == o.implication_violations && p_fc_hat == o.p_fc_hat &&
           p_min_deg_hat == o.p_min_deg_hat && std_err == o.std_err;
  }
};

namespace sim_detail {

// One uniform draw per pair, in (i, j) lexicographic order, whatever the
// link probability; trials at different parameters stay coupled.
template <class LinkProbability>
void draw_links(const std::vector<Point3>& pts, LinkProbability&& hsq, RandomStream& rng,
                std::vector<Edge>& out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point3 p = pts[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = canonical(rng);
      if (u < hsq(squared_distance(p, pts[j])))
        out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
}

}  // namespace sim_detail

/// Node positions and random links for one trial; deterministic in
/// (config.seed, trial_index).
inline Graph sample_graph(const SimConfig& config, std::uint64_t trial_index,
                          std::vector<Point3>* positions = nullptr) {
  const std::size_t n = config.node_count();
  if (n == 0) throw std::invalid_argument("node count must be positive");
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("node count too large");
  RandomStream rng = trial_stream(config.seed, trial_index);
  std::vector<Point3> pts(n);
  for (auto& p : pts) p = config.domain.sample(rng);

  Graph g;
  g.vertex_count = n;
  const ConnectivityModel& m = config.model;
  switch (m.family()) {
    case ChannelFamily::MimoMrc2x2: {
      const double beta = m.beta();
      sim_detail::draw_links(
          pts,
          [beta](double r2) {
            const double x = beta * r2;
            const double y = std::exp(-x);
            return y * (x * x + 2.0 - y);
          },
          rng, g.edges);
      break;
    }
    case ChannelFamily::RayleighSiso: {
      const double beta = m.beta();
      const double half_eta = 0.5 * m.eta();
      sim_detail::draw_links(
          pts, [beta, half_eta](double r2) { return std::exp(-beta * std::pow(r2, half_eta)); },
          rng, g.edges);
      break;
    }
    case ChannelFamily::HardDisk: {
      const double cut = m.r0() * m.r0();
      sim_detail::draw_links(
          pts, [cut](double r2) { return r2 <= cut ? 1.0 : 0.0; }, rng, g.edges);
      break;
    }
  }
  if (positions) *positions = std::move(pts);
  return g;
}

inline TrialOutcome run_trial(const SimConfig& config, std::uint64_t trial_index) {
  const Connectivity c = is_connected(sample_graph(config, trial_index));
  return {c.connected, c.min_degree, c.component_count};
}

/// Runs config.trials trials, split across threads by trial index. Counts
/// are integers, so the result does not depend on the thread count.
inline SimResult estimate(const SimConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(threads ? threads : 1, 1, config.trials));

  struct Counts {
    std::uint64_t fc = 0, min_deg = 0, violations = 0;
  };
  std::vector<Counts> per_thread(threads);
  auto worker = [&](unsigned w) {
    Counts c;
    for (std::uint64_t t = w; t < config.trials; t += threads) {
      const TrialOutcome o = run_trial(config, t);
      c.fc += o.connected;
      c.min_deg += o.min_degree >= 1;
      const bool single = o.component_count == 1;
      if (o.connected != single || (single && config.node_count() >= 2 && o.min_degree < 1))
        ++c.violations;
    }
    per_thread[w] = c;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  SimResult r;
  r.rho = config.effective_density();
  r.nodes = config.node_count();
  r.seed = config.seed;
  r.n_trials = config.trials;
  for (const auto& c : per_thread) {
    r.fc_count += c.fc;
    r.min_deg_ge1_count += c.min_deg;
    r.implication_violations += c.violations;
  }
  const double n = static_cast<double>(r.n_trials);
  r.p_fc_hat = static_cast<double>(r.fc_count) / n;
  r.p_min_deg_hat = static_cast<double>(r.min_deg_ge1_count) / n;
  r.std_err = std::sqrt(r.p_fc_hat * (1.0 - r.p_fc_hat) / n);
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// One estimate per density (or per node count when `as_node_counts`).
/// The list must be strictly increasing.
inline std::vector<SimResult> sweep(const SimConfig& base, const std::vector<double>& values,
                                    bool as_node_counts = false) {
  if (values.empty()) throw std::invalid_argument("sweep list is empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw std::invalid_argument("sweep list must be increasing");
  std::vector<SimResult> out;
  out.reserve(values.size());
  for (double v : values) {
    SimConfig c = base;
    if (as_node_counts) {
      if (v < 1.0 || v != std::floor(v)) throw std::invalid_argument("node counts must be integers");
      c.density.reset();
      c.nodes = static_cast<std::size_t>(v);
    } else {
      c.nodes.reset();
      c.density = v;
    }
    out.push_back(estimate(c));
  }
  return out;
}

}  // namespace prismconn
