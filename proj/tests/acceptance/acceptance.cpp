// Acceptance checks 1-9. Usage: acceptance <n>|all
// Each check prints its evidence, then one "criterion n: PASS|FAIL" line.

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <queue>
#include <random>
#include <string>

#include "prismconn/analytic.hpp"
#include "prismconn/simulator.hpp"
#include "prismconn/validate.hpp"

using namespace prismconn;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// --- 1 ---------------------------------------------------------------------

// Reference contribution: prefactor * rho^(-codim) * exp(-coef * g * rho) with
// g = (23 - sqrt 2) (pi / beta)^(3/2); our group value carries one more rho.
struct Reference {
  const char* label;
  double prefactor;
  int codim;
  double coef;
};

bool check_reference(const char* domain, const PfcBreakdown& b, const std::vector<Reference>& want,
                   double beta, double rho) {
  const double g = (23 - kSqrt2) * std::pow(kPi / beta, 1.5);
  bool ok = b.groups.size() == want.size();
  for (const Reference& p : want) {
    const TermGroup* t = b.find(p.label);
    if (!t) {
      std::printf("  %s %s missing\n", domain, p.label);
      ok = false;
      continue;
    }
    const bool pre = rel_close(t->prefactor, p.prefactor, 1e-12) && t->density_power == 1 - p.codim;
    const bool rate = rel_close(t->exponent_rate, p.coef * g, 1e-12);
    const double reference = p.prefactor * std::pow(rho, -p.codim) * std::exp(-p.coef * g * rho);
    const bool value = rel_close(t->value, rho * reference, 1e-12);
    if (!(pre && rate && value)) {
      std::printf("  %s %s beta=%g rho=%g prefactor %.17g vs %.17g rate %.17g vs %.17g\n", domain,
                  p.label, beta, rho, t->prefactor, p.prefactor, t->exponent_rate, p.coef * g);
      ok = false;
    }
  }
  return ok;
}

bool criterion1() {
  bool ok = true;
  int cases = 0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  for (int i = 0; i < 200; ++i) {
    const double beta = std::exp(logu(rng)), rho = std::exp(logu(rng)), L = std::exp(logu(rng));
    const double b3 = beta * beta * beta, pi3 = kPi * kPi * kPi;
    const auto m = ConnectivityModel::mimo_mrc_2x2(beta);
    ok &= check_reference("house", assemble_pfc(build_house(L).features(), m, rho),
                        {{"C1", 6 * 512 * b3 / (343 * pi3), 3, 1.0 / 32},
                         {"C2", 4 * 1024 * kSqrt2 * b3 / (1029 * pi3), 3, 3.0 / 64},
                         {"E1", L * (9 + 2 * kSqrt2) * 16 * beta * beta / (49 * kPi * kPi), 2, 1.0 / 16},
                         {"E2", 2 * L * 16 * kSqrt2 * beta * beta / (49 * kPi * kPi), 2, 3.0 / 32},
                         {"F", 2 * beta * (11 + 2 * kSqrt2) / 2 * L * L / (7 * kPi), 1, 1.0 / 8},
                         {"U", 1.25 * L * L * L, 0, 1.0 / 4}},
                        beta, rho);
    const double r = std::exp(logu(rng)), h = std::exp(logu(rng));
    ok &= check_reference("half_cylinder", assemble_pfc(build_half_cylinder(r, h).features(), m, rho),
                        {{"U", kPi * r * r * h / 2, 0, 1.0 / 4},
                         {"F", (kPi * r * r + 2 * r * h + kPi * r * h) * 2 * beta / (7 * kPi), 1, 1.0 / 8},
                         {"E", (2 * kPi * r + 4 * r + 2 * h) * 16 * beta * beta / (49 * kPi * kPi), 2, 1.0 / 16},
                         {"C", 4 * 512 * b3 / (343 * pi3), 3, 1.0 / 32}},
                        beta, rho);
    cases += 2;
  }
  std::printf("  %d random (beta, rho, size) cases, prefactor/exponent/value at rel 1e-12\n", cases);
  return ok;
}

// --- 2 ---------------------------------------------------------------------

bool criterion2() {
  const ValidationReport rep = run_validation();
  for (const auto& r : rep.rows)
    std::printf("  %-4s %-12s %-40s closed %.12g quad %.12g rel %.3g tol %.0e\n", r.pass ? "ok" : "FAIL",
                r.kind.c_str(), r.parameters.c_str(), r.closed_form, r.quadrature, r.rel_error,
                r.tolerance);
  return rep.all_pass();
}

// --- 3, 4 ------------------------------------------------------------------

constexpr std::uint64_t kFigureTrials = 200000;

struct Point {
  double rho;
  std::size_t nodes;
};

bool agree(const Domain& d, const std::vector<Point>& points) {
  const auto m = ConnectivityModel::mimo_mrc_2x2(1.0);
  const FeatureSet fs = d.features();
  bool ok = true;
  for (const Point& p : points) {
    SimConfig c{d, m, std::nullopt, p.nodes, kFigureTrials, kDefaultSeed, 0};
    const SimResult s = estimate(c);
    const double analytic = assemble_pfc(fs, m, p.rho).p_out;
    const double sim = s.p_out_hat();
    const double allowed = std::max(3 * s.std_err, 0.2 * analytic);
    const bool pass = std::abs(sim - analytic) <= allowed;
    std::printf("  rho=%g N=%zu trials=%llu analytic %.6g sim %.6g se %.3g |diff| %.3g allowed %.3g %s\n",
                p.rho, p.nodes, static_cast<unsigned long long>(s.n_trials), analytic, sim, s.std_err,
                std::abs(sim - analytic), allowed, pass ? "ok" : "FAIL");
    ok &= pass;
  }
  return ok;
}

bool criterion3() {
  const Domain house = build_house(5.0);
  bool ok = agree(house, {{0.8, 125}, {1.0, 156}, {1.2, 187}});

  // Low-density divergence: the sum overshoots the simulation.
  const auto m = ConnectivityModel::mimo_mrc_2x2(1.0);
  SimConfig c{house, m, 0.25, std::nullopt, kFigureTrials, kDefaultSeed, 0};
  const SimResult s = estimate(c);
  const double analytic = assemble_pfc(house.features(), m, 0.25).p_out;
  const bool diverges = analytic - s.p_out_hat() > 3 * s.std_err;
  std::printf("  rho=0.25 N=%zu analytic %.6g sim %.6g se %.3g diverges %s\n", s.nodes, analytic,
              s.p_out_hat(), s.std_err, diverges ? "yes" : "no");
  return ok && diverges;
}

bool criterion4() {
  const Domain hc = build_half_cylinder(5.0, 4.0);
  const auto nodes = [&](double rho) { return static_cast<std::size_t>(std::llround(rho * hc.volume())); };
  return agree(hc, {{1.0, nodes(1.0)}, {1.2, nodes(1.2)}});
}

// --- 5 ---------------------------------------------------------------------

bool criterion5() {
  const auto m = ConnectivityModel::mimo_mrc_2x2(1.0);
  const FeatureSet fs = build_house(5.0).features();
  bool corner_ok = true;
  int points = 0;
  for (int i = 0; i <= 4900; ++i, ++points) {
    const double rho = 1.0 + 0.01 * i;
    const PfcBreakdown b = assemble_pfc(fs, m, rho);
    const double corner = b.component_value(Component::Corner);
    for (Component c : {Component::Bulk, Component::Face, Component::Edge})
      if (!(corner > b.component_value(c))) {
        std::printf("  rho=%g corner %.6g not above %s %.6g\n", rho, corner, std::string(to_string(c)).c_str(),
                    b.component_value(c));
        corner_ok = false;
      }
  }
  std::printf("  corner group largest on %d densities in [1, 50]: %s\n", points, corner_ok ? "yes" : "no");

  // Rays restricted to the cells where the outage sum is a probability.
  std::vector<double> rho, Ls;
  for (double r = 0.02; r <= 50.0; r *= 1.02) rho.push_back(r);
  for (double L = 0.5; L <= 1e4; L *= 1.25) Ls.push_back(L);
  bool order_ok = true;
  std::size_t rays = 0, switches = 0;
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto cells = phase_map(beta, rho, Ls);
    for (std::size_t i = 0; i < Ls.size(); ++i, ++rays) {
      int last = -1;
      for (std::size_t j = 0; j < rho.size(); ++j) {
        const PhaseCell& c = cells[i * rho.size() + j];
        if (!c.in_regime) continue;
        const int k = static_cast<int>(c.dominant);
        if (k < last) {
          std::printf("  beta=%g L=%g rho=%g: %s after a later label\n", beta, c.L, c.rho,
                      std::string(to_string(c.dominant)).c_str());
          order_ok = false;
        }
        if (last >= 0 && k > last) ++switches;
        last = std::max(last, k);
      }
    }
  }
  std::printf("  %zu rays, %zu label switches, order bulk<face<edge<corner respected: %s\n", rays, switches,
              order_ok ? "yes" : "no");
  return corner_ok && order_ok;
}

// --- 6 ---------------------------------------------------------------------

bool criterion6() {
  bool ok = true;
  int checked = 0;
  const std::vector<Domain> domains{
      build_house(5.0), build_house(0.7), build_half_cylinder(5.0, 4.0),
      build_right_prism(Polygon2D({{0, 0}, {3, 0}, {4, 2}, {1, 3}, {-1, 1}}), 2.5),
      build_right_prism(Polygon2D({{0, 0}, {1, 0}, {0.2, 0.1}}), 1.0)};
  for (double beta : {0.3, 1.0, 3.7}) {
    const double M = mimo_bulk_mass(beta);
    for (const Domain& d : domains) {
      const FeatureSet fs = d.features();
      std::vector<BoundaryFeature> features{fs.bulk, fs.face};
      features.insert(features.end(), fs.edges.begin(), fs.edges.end());
      features.insert(features.end(), fs.corners.begin(), fs.corners.end());
      for (const BoundaryFeature& f : features) {
        const ClosedForm cf = *closed_form(f.kind, ConnectivityModel::mimo_mrc_2x2(beta));
        const double rate = cf.exponent_rate(f, beta);
        if (!rel_close(rate, f.solid_angle / (4 * kPi) * M, 1e-12)) {
          std::printf("  %s beta=%g rate %.17g vs %.17g\n", std::string(to_string(f.kind)).c_str(), beta, rate,
                      f.solid_angle / (4 * kPi) * M);
          ok = false;
        }
        ++checked;
      }
    }
    const PfcBreakdown b = assemble_pfc(build_house(5.0).features(), ConnectivityModel::mimo_mrc_2x2(beta), 1.0);
    const double u = b.find("U")->exponent_rate;
    const double ratios[] = {b.find("F")->exponent_rate / u, b.find("E1")->exponent_rate / u,
                             b.find("C1")->exponent_rate / u};
    std::printf("  beta=%g U:F:E1:C1 = 1 : %.17g : %.17g : %.17g\n", beta, ratios[0], ratios[1], ratios[2]);
    ok &= ratios[0] == 0.5 && ratios[1] == 0.25 && ratios[2] == 0.125;
  }
  std::printf("  %d feature rates against (omega / 4 pi) M at rel 1e-12\n", checked);
  return ok;
}

// --- 7 ---------------------------------------------------------------------

bool reach_all(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        q.push(w);
      }
  }
  return reached == n;
}

bool criterion7() {
  std::vector<Edge> all;
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = i + 1; j < 6; ++j) all.push_back({i, j});
  std::size_t mismatches = 0;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < all.size(); ++k)
      if (mask >> k & 1u) edges.push_back(all[k]);
    mismatches += is_connected({6, edges}).connected != reach_all(6, edges);
  }
  std::printf("  6 vertices: %u graphs, %zu mismatches\n", 1u << all.size(), mismatches);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u;
  std::size_t random_mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const double p = 0.05 + 0.3 * u(rng);
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < 12; ++i)
      for (std::uint32_t j = i + 1; j < 12; ++j)
        if (u(rng) < p) edges.push_back({i, j});
    random_mismatches += is_connected({12, edges}).connected != reach_all(12, edges);
  }
  std::printf("  12 vertices: 1000 random graphs, %zu mismatches\n", random_mismatches);

  SimConfig c{build_house(5.0), ConnectivityModel::mimo_mrc_2x2(1.0), 1.0, std::nullopt, 100000, kDefaultSeed, 0};
  const SimResult s = estimate(c);
  std::printf("  house rho=1: %llu trials, connected %llu, min degree >= 1 %llu, violations %llu\n",
              static_cast<unsigned long long>(s.n_trials), static_cast<unsigned long long>(s.fc_count),
              static_cast<unsigned long long>(s.min_deg_ge1_count),
              static_cast<unsigned long long>(s.implication_violations));
  return mismatches == 0 && random_mismatches == 0 && s.implication_violations == 0 &&
         s.fc_count <= s.min_deg_ge1_count;
}

// --- 8 ---------------------------------------------------------------------

bool criterion8() {
  bool exponents = true;
  for (double t = 0.05; t < kPi - 1e-3; t += 0.05)
    exponents &= cone_term(t, 1.3).exponent_rate == corner_term(t, 1.3).exponent_rate;
  std::printf("  exponents identical on (0, pi): %s\n", exponents ? "yes" : "no");

  bool band = true;
  double worst = 0, worst_theta = 0;
  for (int k = 0; k <= 200; ++k) {
    const double t = kPi / 4 + k * (kPi / 2) / 200;
    const double rel = std::abs(corner_profile(t) / cone_profile(t) - 1);
    if (rel > worst) worst = rel, worst_theta = t;
    band &= rel <= 0.25;
  }
  for (const ConeRow& r : cone_table(default_cone_angles()))
    std::printf("  theta=%.4f pi corner %.6g cone %.6g ratio %.4g\n", r.theta / kPi, r.corner, r.cone, r.ratio);
  std::printf("  worst relative gap on [pi/4, 3pi/4]: %.4g at theta=%.4f pi (limit 0.25)\n", worst,
              worst_theta / kPi);

  const double near = kPi - 1e-6;
  const bool diverges = corner_profile(near) > 1e5 && corner_profile(near) > 100 * corner_profile(kPi - 1e-3);
  const bool bounded = std::isfinite(cone_profile(kPi)) && cone_profile(near) < 1.0;
  std::printf("  corner at pi-1e-6 %.4g, cone at pi %.6g\n", corner_profile(near), cone_profile(kPi));
  return exponents && band && diverges && bounded;
}

// --- 9 ---------------------------------------------------------------------

bool chi_square_uniform(const Domain& d, const char* name) {
  const auto box = d.bounding_box();
  const int B = 4, sub = 40, samples = 400000;
  double w[3];
  for (int a = 0; a < 3; ++a) w[a] = (box[1][a] - box[0][a]) / B;
  std::vector<double> vol(B * B * B, 0.0);
  for (int i = 0; i < B * sub; ++i)
    for (int j = 0; j < B * sub; ++j)
      for (int k = 0; k < B * sub; ++k) {
        const Point3 p{box[0].x + (i + 0.5) * w[0] / sub, box[0].y + (j + 0.5) * w[1] / sub,
                       box[0].z + (k + 0.5) * w[2] / sub};
        if (d.contains(p)) vol[(i / sub) * B * B + (j / sub) * B + k / sub] += 1.0;
      }
  double total = 0;
  for (double v : vol) total += v;
  std::vector<double> count(vol.size(), 0.0);
  RandomStream rng = trial_stream(kDefaultSeed, 9);
  for (int n = 0; n < samples; ++n) {
    const Point3 p = d.sample(rng);
    int idx[3];
    for (int a = 0; a < 3; ++a) idx[a] = std::clamp(static_cast<int>((p[a] - box[0][a]) / w[a]), 0, B - 1);
    count[idx[0] * B * B + idx[1] * B + idx[2]] += 1;
  }
  double stat = 0;
  int bins = 0;
  for (std::size_t b = 0; b < vol.size(); ++b) {
    const double expected = samples * vol[b] / total;
    if (expected < 5.0) continue;
    stat += (count[b] - expected) * (count[b] - expected) / expected;
    ++bins;
  }
  const double crit = boost::math::quantile(boost::math::complement(boost::math::chi_squared(bins - 1), 1e-3));
  std::printf("  %s: chi2 %.2f on %d dof, critical %.2f at alpha 1e-3\n", name, stat, bins - 1, crit);
  return stat < crit;
}

bool criterion9() {
  bool ok = chi_square_uniform(build_house(5.0), "house(5)");
  ok &= chi_square_uniform(build_half_cylinder(5.0, 4.0), "half_cylinder(5, 4)");
  const auto m = ConnectivityModel::mimo_mrc_2x2(1.0);
  RandomStream rng = trial_stream(kDefaultSeed, 10);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += sample_link(m, 1.0, rng);
  const double p = m.h(1.0), rate = static_cast<double>(hits) / n;
  const double sigma = std::sqrt(p * (1 - p) / n);
  std::printf("  link rate at r=1: %.6f over %d draws, H(1) %.6f, %.2f sigma\n", rate, n, p, (rate - p) / sigma);
  return ok && std::abs(rate - p) <= 4 * sigma;
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<bool()> checks[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                          criterion6, criterion7, criterion8, criterion9};
  const std::string which = argc > 1 ? argv[1] : "all";
  int first = 1, last = 9;
  if (which != "all") {
    first = last = std::atoi(which.c_str());
    if (first < 1 || first > 9) {
      std::fprintf(stderr, "usage: acceptance <1-9|all>\n");
      return 2;
    }
  }
  int failed = 0;
  for (int c = first; c <= last; ++c) {
    bool pass = false;
    try {
      pass = checks[c - 1]();
    } catch (const std::exception& e) {
      std::printf("  exception: %s\n", e.what());
    }
    std::printf("criterion %d: %s\n", c, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
    failed += !pass;
  }
  return failed ? 1 : 0;
}
