#pragma once

// Closed form vs quadrature oracle, row by row.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "prismconn/analytic.hpp"
#include "prismconn/quadrature.hpp"

namespace prismconn {

struct ValidationRow {
  std::string kind;        // inner_corner, inner_edge, inner_face, inner_bulk, outer_*
  std::string parameters;  // "beta=1 theta=1.5708 ..."
  double closed_form = 0.0;
  double quadrature = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ConeRow {
  double theta = 0.0;
  double corner = 0.0;  // corner_profile; infinite at theta = pi
  double cone = 0.0;
  double ratio = 0.0;   // corner / cone
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::vector<ConeRow> cone;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }
};

inline constexpr double kInnerTolerance = 1e-4;
inline constexpr double kBulkTolerance = 1e-8;
inline constexpr double kOuterCornerTolerance = 1e-3;
inline constexpr double kOuterEdgeTolerance = 1e-2;
inline constexpr double kOuterBulkTolerance = 1e-6;

namespace validate_detail {

inline std::string fmt(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", name, v);
  return buf;
}

inline ValidationRow row(std::string kind, std::string params, double closed, double quad,
                         double tol) {
  ValidationRow r{std::move(kind), std::move(params), closed, quad, 0.0, tol, false};
  r.rel_error = std::abs(quad - closed) / std::abs(closed);
  r.pass = std::isfinite(r.rel_error) && r.rel_error <= tol;
  return r;
}

}  // namespace validate_detail

inline const std::vector<double>& default_validation_betas() {
  static const std::vector<double> b{0.5, 1.0, 2.0};
  return b;
}

inline const std::vector<double>& default_validation_angles() {
  static const std::vector<double> a{std::numbers::pi / 3, std::numbers::pi / 2,
                                     3 * std::numbers::pi / 4};
  return a;
}

/// Inner integrals at a point a fifth of an effective range off the feature,
/// for every (beta, theta). The face is checked at sqrt(beta) R = 1e5, where
/// the dropped curvature term is below 1e-5.
inline std::vector<ValidationRow> validate_inner(const std::vector<double>& betas,
                                                 const std::vector<double>& angles,
                                                 const OracleOptions& o = {}) {
  using validate_detail::fmt;
  using validate_detail::row;
  std::vector<ValidationRow> rows;
  for (double beta : betas) {
    const auto m = ConnectivityModel::mimo_mrc_2x2(beta);
    const double r0 = m.r0();
    const double off = 0.2 * r0;
    for (double theta : angles) {
      const std::string p = fmt("beta", beta) + " " + fmt("theta", theta);
      const WedgeExpansion c = corner_expansion(theta, m, o);
      rows.push_back(row("inner_corner", p, inner_corner_closed(off, theta / 3, off, theta, beta),
                         c(off, theta / 3, off), kInnerTolerance));
      const double length = 20.0 * r0;  // long enough that the end terms vanish
      const WedgeExpansion e = edge_expansion(theta, length, m, o);
      rows.push_back(row("inner_edge", p + " " + fmt("L", length),
                         inner_edge_closed(off, theta / 3, theta, beta), e(off, theta / 3, 0.0),
                         kInnerTolerance));
    }
    const double radius = 1e5 * r0;
    const FaceExpansion f = face_expansion(radius, m, o);
    rows.push_back(row("inner_face", fmt("beta", beta) + " " + fmt("R", radius),
                       inner_face_closed(radius - off, radius, beta), f(radius - off),
                       kInnerTolerance));
    rows.push_back(row("inner_bulk", fmt("beta", beta), inner_bulk_closed(beta),
                       bulk_expansion(m, o).constant, kBulkTolerance));
  }
  return rows;
}

/// Outer integrals at the given beta and rho against corner_term, edge_term
/// (length `edge_length`) and bulk_term (volume `volume`).
inline std::vector<ValidationRow> validate_outer(double beta, double rho,
                                                 const std::vector<double>& angles,
                                                 double edge_length, double volume,
                                                 const OracleOptions& o = {}) {
  using validate_detail::fmt;
  using validate_detail::row;
  const auto m = ConnectivityModel::mimo_mrc_2x2(beta);
  const std::string base = fmt("beta", beta) + " " + fmt("rho", rho);
  std::vector<ValidationRow> rows;
  for (double theta : angles) {
    const std::string p = base + " " + fmt("theta", theta);
    rows.push_back(row("outer_corner", p, corner_term(theta, beta).outer_integral(rho),
                       outer_corner(corner_expansion(theta, m, o), rho, o).value,
                       kOuterCornerTolerance));
    rows.push_back(row("outer_edge", p + " " + fmt("L", edge_length),
                       edge_term(theta, edge_length, beta).outer_integral(rho),
                       outer_edge(edge_expansion(theta, edge_length, m, o), edge_length, rho, o).value,
                       kOuterEdgeTolerance));
  }
  rows.push_back(row("outer_bulk", base + " " + fmt("V", volume),
                     bulk_term(volume, beta).outer_integral(rho),
                     outer_bulk(bulk_expansion(m, o), equivalent_sphere_radius_from_volume(volume),
                                rho, o)
                         .value,
                     kOuterBulkTolerance));
  return rows;
}

inline std::vector<ConeRow> cone_table(const std::vector<double>& thetas) {
  std::vector<ConeRow> out;
  for (double t : thetas) {
    ConeRow r;
    r.theta = t;
    r.corner = std::abs(t - std::numbers::pi) < 1e-12 ? INFINITY : corner_profile(t);
    r.cone = cone_profile(t);
    r.ratio = r.corner / r.cone;
    out.push_back(r);
  }
  return out;
}

// pi/8 .. 7pi/8 in steps of pi/16, then pi.
inline std::vector<double> default_cone_angles() {
  std::vector<double> t;
  for (int k = 2; k <= 14; ++k) t.push_back(k * std::numbers::pi / 16);
  t.push_back(std::numbers::pi);
  return t;
}

/// The default suite: inner rows over beta {0.5, 1, 2} x theta {pi/3, pi/2,
/// 3pi/4}, outer rows at beta = rho = 1 with the house(5) edge and volume.
inline ValidationReport run_validation(const OracleOptions& o = {}) {
  ValidationReport rep;
  rep.rows = validate_inner(default_validation_betas(), default_validation_angles(), o);
  const Domain house = build_house(5.0);
  auto outer = validate_outer(1.0, 1.0, default_validation_angles(), 5.0, house.volume(), o);
  rep.rows.insert(rep.rows.end(), outer.begin(), outer.end());
  rep.cone = cone_table(default_cone_angles());
  return rep;
}

}  // namespace prismconn
