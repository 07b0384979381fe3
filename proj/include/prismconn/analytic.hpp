#pragma once

// Closed-form boundary contributions to the full-connectivity probability of
// a dense network, for the 2x2 MIMO-MRC link model with eta = 2.
//
// Every feature k of codimension l contributes
//     rho^(1-l) * G_k * V_k * exp(-rho * (omega_k / 4pi) * M)
// to the outage probability, with M the connection mass of the link model.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prismconn/channel.hpp"
#include "prismconn/errors.hpp"
#include "prismconn/geometry.hpp"

namespace prismconn {

/// One additive outage term: value(rho) = prefactor * rho^density_power *
/// exp(-rho * exponent_rate). The global rho multiplier is included, so
/// outer_integral() recovers the per-feature integral before it.
struct ContributionTerm {
  std::string label;
  FeatureKind kind = FeatureKind::Bulk;
  double dihedral = 0.0;
  double solid_angle = 0.0;
  double prefactor = 0.0;  // G_k * V_k
  int density_power = 1;   // 1 - codim
  double exponent_rate = 0.0;

  int codim() const { return static_cast<int>(kind); }

  double value(double rho) const {
    return prefactor * std::pow(rho, density_power) * std::exp(-rho * exponent_rate);
  }
  double outer_integral(double rho) const { return value(rho) / rho; }
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kCornerGuard = 1e-6;

inline void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
}

inline void check_dihedral(double theta) {
  if (!(theta > 0.0) || !(theta <= kPi - kCornerGuard))
    throw std::domain_error("dihedral angle must lie in (0, pi - 1e-6]; got " +
                            std::to_string(theta));
}

// Exponent rate for a feature with solid angle omega: (omega / 4 pi) * M.
inline double mimo_rate(double omega, double beta) {
  return omega / (4.0 * kPi) * mimo_bulk_mass(beta);
}

}  // namespace detail

// Geometric factors G_k for the MIMO-MRC model.
inline double corner_factor(double theta, double beta) {
  const double b3 = beta * beta * beta;
  return 256.0 * b3 / (343.0 * detail::kPi * detail::kPi * theta * std::sin(theta));
}
inline double edge_factor(double theta, double beta) {
  return 16.0 * beta * beta / (49.0 * detail::kPi * detail::kPi * std::sin(theta));
}
inline double face_factor(double beta) { return 2.0 * beta / (7.0 * detail::kPi); }

inline ContributionTerm corner_term(double theta, double beta) {
  detail::check_dihedral(theta);
  detail::check_beta(beta);
  return {"corner", FeatureKind::Corner, theta, theta, corner_factor(theta, beta), -2,
          detail::mimo_rate(theta, beta)};
}

inline ContributionTerm edge_term(double theta, double length, double beta) {
  detail::check_dihedral(theta);
  detail::check_beta(beta);
  if (!(length > 0.0)) throw std::invalid_argument("edge length must be positive");
  return {"edge", FeatureKind::Edge, theta, 2.0 * theta, length * edge_factor(theta, beta), -1,
          detail::mimo_rate(2.0 * theta, beta)};
}

inline ContributionTerm face_term(double area, double beta) {
  detail::check_beta(beta);
  if (!(area > 0.0)) throw std::invalid_argument("surface area must be positive");
  return {"face", FeatureKind::Face, 0.0, 2.0 * detail::kPi, area * face_factor(beta), 0,
          detail::mimo_rate(2.0 * detail::kPi, beta)};
}

inline ContributionTerm bulk_term(double volume, double beta) {
  detail::check_beta(beta);
  if (!(volume > 0.0)) throw std::invalid_argument("volume must be positive");
  return {"bulk", FeatureKind::Bulk, 0.0, 4.0 * detail::kPi, volume, 1, mimo_bulk_mass(beta)};
}

/// Corner replaced by a circular cone of equal solid angle theta (steradians),
/// theta = 2 pi (1 - cos lambda) for apex half-angle lambda.
inline ContributionTerm cone_term(double theta, double beta) {
  detail::check_beta(beta);
  if (!(theta > 0.0) || !(theta < 2.0 * detail::kPi))
    throw std::domain_error("cone solid angle must lie in (0, 2 pi)");
  const double pi = detail::kPi;
  const double q = theta * theta - 6.0 * pi * theta + 8.0 * pi * pi;
  const double pre = 1024.0 * beta * beta * beta * std::pow(pi, 4) / (343.0 * theta * theta * q * q);
  return {"cone", FeatureKind::Corner, theta, theta, pre, -2, detail::mimo_rate(theta, beta)};
}

// Corner and cone contributions with the shared factor
// 256 beta^3 exp(...) / (343 pi theta rho^3) divided out.
inline double corner_profile(double theta) { return 1.0 / (detail::kPi * std::sin(theta)); }
inline double cone_profile(double theta) {
  const double pi = detail::kPi;
  const double q = theta * theta - 6.0 * pi * theta + 8.0 * pi * pi;
  return 4.0 * std::pow(pi, 5) / (theta * q * q);
}

// --- closed-form registry ---------------------------------------------------

/// Closed forms keyed by (feature kind, channel family). Only the MIMO-MRC
/// eta = 2 entries exist; every other model has to use the numeric oracle.
struct ClosedForm {
  double (*prefactor)(const BoundaryFeature&, double beta);
  double (*exponent_rate)(const BoundaryFeature&, double beta);
};

inline std::optional<ClosedForm> closed_form(FeatureKind kind, const ConnectivityModel& model) {
  if (model.family() != ChannelFamily::MimoMrc2x2) return std::nullopt;
  auto rate = [](const BoundaryFeature& f, double beta) {
    return detail::mimo_rate(f.solid_angle, beta);
  };
  switch (kind) {
    case FeatureKind::Corner:
      return ClosedForm{[](const BoundaryFeature& f, double b) {
                          detail::check_dihedral(f.dihedral);
                          return f.measure * corner_factor(f.dihedral, b);
                        },
                        rate};
    case FeatureKind::Edge:
      return ClosedForm{[](const BoundaryFeature& f, double b) {
                          detail::check_dihedral(f.dihedral);
                          return f.measure * edge_factor(f.dihedral, b);
                        },
                        rate};
    case FeatureKind::Face:
      return ClosedForm{[](const BoundaryFeature& f, double b) { return f.measure * face_factor(b); },
                        rate};
    case FeatureKind::Bulk:
      return ClosedForm{[](const BoundaryFeature& f, double) { return f.measure; }, rate};
  }
  return std::nullopt;
}

// --- assembly ---------------------------------------------------------------

enum class Component { Bulk = 0, Face = 1, Edge = 2, Corner = 3 };

inline std::string_view to_string(Component c) {
  switch (c) {
    case Component::Bulk: return "bulk";
    case Component::Face: return "face";
    case Component::Edge: return "edge";
    case Component::Corner: return "corner";
  }
  return "?";
}

inline Component component_from_string(std::string_view s) {
  if (s == "bulk") return Component::Bulk;
  if (s == "face") return Component::Face;
  if (s == "edge") return Component::Edge;
  if (s == "corner") return Component::Corner;
  throw std::invalid_argument("unknown component label: " + std::string(s));
}

/// Features of one kind sharing a dihedral class, summed. `prefactor` is the
/// group total sum(mult * G_k * V_k); all members share `exponent_rate`.
struct TermGroup {
  std::string label;  // U, F, E / E1.., C / C1..
  FeatureKind kind = FeatureKind::Bulk;
  double dihedral = 0.0;
  int multiplicity = 0;
  double prefactor = 0.0;
  int density_power = 1;
  double exponent_rate = 0.0;
  double value = 0.0;  // includes the global rho
};

struct PfcBreakdown {
  double rho = 0.0;
  std::vector<TermGroup> groups;
  double p_out = 0.0;  // raw asymptotic sum, may exceed 1 at low density
  double p_fc = 1.0;   // 1 - p_out, unclamped
  double p_fc_clamped = 1.0;
  bool clamped = false;    // p_out > 1
  bool in_regime = true;   // !clamped and L_c / r0 >= 5
  std::vector<std::string> warnings;
  Component dominant = Component::Corner;

  double component_value(Component c) const {
    double s = 0.0;
    for (const auto& g : groups)
      if (static_cast<int>(g.kind) == static_cast<int>(c)) s += g.value;
    return s;
  }

  const TermGroup* find(std::string_view label) const {
    for (const auto& g : groups)
      if (g.label == label) return &g;
    return nullptr;
  }
};

namespace detail {

// Partition features into dihedral classes (ascending).
inline std::vector<std::vector<BoundaryFeature>> by_angle_class(
    const std::vector<BoundaryFeature>& features) {
  std::vector<BoundaryFeature> sorted = features;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.dihedral < b.dihedral; });
  std::vector<std::vector<BoundaryFeature>> classes;
  for (const auto& f : sorted) {
    if (classes.empty() ||
        std::abs(classes.back().front().dihedral - f.dihedral) > kAngleTolerance) {
      classes.emplace_back();
    }
    classes.back().push_back(f);
  }
  return classes;
}

inline std::string class_label(char prefix, std::size_t index, std::size_t count) {
  std::string s(1, prefix);
  if (count > 1) s += std::to_string(index + 1);
  return s;
}

// Ties go to the higher codimension.
inline Component argmax_component(const PfcBreakdown& b) {
  Component best = Component::Bulk;
  double best_value = -1.0;
  for (int c = 0; c < 4; ++c) {
    const double v = b.component_value(static_cast<Component>(c));
    if (v >= best_value) {
      best_value = v;
      best = static_cast<Component>(c);
    }
  }
  return best;
}

}  // namespace detail

/// Builds the grouped breakdown. `group_term` maps (kind, features of one
/// dihedral class) to the group's (prefactor, exponent_rate) pair, so the
/// closed-form and numeric routes share labelling and bookkeeping.
template <class GroupTerm>
PfcBreakdown make_breakdown(const FeatureSet& fs, const ConnectivityModel& model, double rho,
                            GroupTerm&& group_term) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("density must be positive");
  PfcBreakdown b;
  b.rho = rho;

  auto add = [&](std::string label, FeatureKind kind, const std::vector<BoundaryFeature>& members) {
    TermGroup g;
    g.label = std::move(label);
    g.kind = kind;
    g.dihedral = members.front().dihedral;
    for (const auto& f : members) g.multiplicity += f.multiplicity;
    const auto [prefactor, rate] = group_term(kind, members);
    g.prefactor = prefactor;
    g.exponent_rate = rate;
    g.density_power = 1 - static_cast<int>(kind);
    g.value = prefactor * std::pow(rho, g.density_power) * std::exp(-rho * rate);
    b.groups.push_back(std::move(g));
  };

  add("U", FeatureKind::Bulk, {fs.bulk});
  add("F", FeatureKind::Face, {fs.face});
  const auto edge_classes = detail::by_angle_class(fs.edges);
  for (std::size_t i = 0; i < edge_classes.size(); ++i)
    add(detail::class_label('E', i, edge_classes.size()), FeatureKind::Edge, edge_classes[i]);
  const auto corner_classes = detail::by_angle_class(fs.corners);
  for (std::size_t i = 0; i < corner_classes.size(); ++i)
    add(detail::class_label('C', i, corner_classes.size()), FeatureKind::Corner,
        corner_classes[i]);

  for (const auto& g : b.groups) b.p_out += g.value;
  b.p_fc = 1.0 - b.p_out;
  b.clamped = b.p_out > 1.0;
  b.p_fc_clamped = std::clamp(b.p_fc, 0.0, 1.0);

  const double range = model.r0();
  if (range > 0.0) {
    if (fs.characteristic_length / range < 5.0)
      b.warnings.push_back("domain size " + std::to_string(fs.characteristic_length) +
                           " is below 5 effective ranges; boundary expansion is unreliable");
    for (const auto& e : fs.edges) {
      if (e.measure / range < 5.0) {
        b.warnings.push_back("edge of length " + std::to_string(e.measure) +
                             " is below 5 effective ranges");
        break;
      }
    }
  }
  b.in_regime = !b.clamped && (range <= 0.0 || fs.characteristic_length / range >= 5.0);
  b.dominant = detail::argmax_component(b);
  return b;
}

/// Closed-form outage breakdown, p_fc = 1 - rho * sum(outer integrals).
/// Throws UnsupportedModelError for anything but MIMO-MRC (eta = 2); those
/// models go through numeric_breakdown() in quadrature.hpp.
inline PfcBreakdown assemble_pfc(const FeatureSet& fs, const ConnectivityModel& model, double rho) {
  if (!closed_form(FeatureKind::Bulk, model)) {
    throw UnsupportedModelError("no closed-form boundary terms for model '" +
                                std::string(to_string(model.family())) +
                                "'; use the numeric (quadrature) pipeline");
  }
  const double beta = model.beta();
  return make_breakdown(fs, model, rho,
                        [&](FeatureKind kind, const std::vector<BoundaryFeature>& members) {
                          const ClosedForm cf = *closed_form(kind, model);
                          double prefactor = 0.0;
                          for (const auto& f : members)
                            prefactor += f.multiplicity * cf.prefactor(f, beta);
                          return std::pair{prefactor, cf.exponent_rate(members.front(), beta)};
                        });
}

inline Component dominant_component(const PfcBreakdown& b) { return b.dominant; }

// House of side L under MIMO-MRC with the given beta.
inline Component dominant_component(double L, double beta, double rho) {
  return assemble_pfc(build_house(L).features(), ConnectivityModel::mimo_mrc_2x2(beta), rho)
      .dominant;
}

struct PhaseCell {
  double rho = 0.0;
  double L = 0.0;
  Component dominant = Component::Bulk;
  bool in_regime = true;  // raw outage sum <= 1
};

/// Dominant component over a (rho, L) grid for the house; row-major in L,
/// i.e. cells [iL * rho_grid.size() + irho].
inline std::vector<PhaseCell> phase_map(double beta, const std::vector<double>& rho_grid,
                                        const std::vector<double>& L_grid) {
  if (rho_grid.empty() || L_grid.empty()) throw std::invalid_argument("phase-map grid is empty");
  for (const auto* grid : {&rho_grid, &L_grid}) {
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if (!((*grid)[i] > 0.0)) throw std::invalid_argument("phase-map grid values must be positive");
      if (i > 0 && !((*grid)[i] > (*grid)[i - 1]))
        throw std::invalid_argument("phase-map grid must be strictly increasing");
    }
  }
  const auto model = ConnectivityModel::mimo_mrc_2x2(beta);
  std::vector<PhaseCell> cells;
  cells.reserve(rho_grid.size() * L_grid.size());
  for (double L : L_grid) {
    const FeatureSet fs = build_house(L).features();
    for (double rho : rho_grid) {
      const PfcBreakdown b = assemble_pfc(fs, model, rho);
      cells.push_back({rho, L, b.dominant, !b.clamped});
    }
  }
  return cells;
}

}  // namespace prismconn

namespace prismconn {

// Closed-form first-order inner integrals for MIMO-MRC; the quadrature
// oracle is checked against these.

inline double inner_corner_closed(double r2, double theta2, double z2, double theta, double beta) {
  const double pi = std::numbers::pi;
  const double c = (23.0 - std::numbers::sqrt2) / 2.0 * std::sqrt(pi / beta);
  return (14.0 * z2 * theta + c * theta +
          7.0 * pi * r2 * (std::sin(theta2) - std::sin(theta2 - theta))) /
         (8.0 * beta);
}

// Edge form after dropping exp(-beta L^2/4) and erf(L sqrt(beta/2)) - 1.
inline double inner_edge_closed(double r2, double theta2, double theta, double beta) {
  const double pi = std::numbers::pi;
  const double c = (23.0 - std::numbers::sqrt2) / 2.0 * std::sqrt(pi / beta);
  return (c * theta + 7.0 * pi * r2 * (std::sin(theta2) - std::sin(theta2 - theta))) /
         (4.0 * beta);
}

inline double inner_face_closed(double r2, double radius, double beta) {
  const double pi = std::numbers::pi;
  const double c = (23.0 - std::numbers::sqrt2) / 2.0 * std::sqrt(pi / beta);
  return pi / (4.0 * beta) * (c + 14.0 * (radius - r2));
}

inline double inner_bulk_closed(double beta) { return mimo_bulk_mass(beta); }

}  // namespace prismconn
