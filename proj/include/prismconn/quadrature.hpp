#pragma once

// Numeric oracle for the boundary expansion.
//
// Each boundary feature's inner integral (the connection mass seen by a node
// sitting on the feature) is expanded to first order in the node's offset
// from the feature and the resulting coefficient integrals are evaluated by
// nested adaptive Gauss-Kronrod quadrature. The outer integral over node
// positions is then done numerically with that linear exponent. Nothing in
// this header uses the closed forms from analytic.hpp; it is the
// independent side of every closed-form check, and the only route for link
// models without closed forms.
//
// Coordinates used for the inner integrals are spherical about the point
// of expansion (radius s, polar angle phi), with the azimuth done in closed
// form where the integrand is a plain cos/sin polynomial in it.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "prismconn/analytic.hpp"
#include "prismconn/channel.hpp"
#include "prismconn/geometry.hpp"
#include "prismconn/integrate.hpp"

namespace prismconn {

struct OracleOptions {
  double radial_tol = 1e-12;
  double angular_tol = 1e-13;
  double outer_tol = 1e-10;
  // Multiplies the model's truncation radius; > 1 only in convergence checks.
  double radius_scale = 1.0;
};

namespace quad_detail {

inline constexpr double kPi = std::numbers::pi;
// exp(-60) ~ 1e-26: outer integrals are cut where the exponent reaches this.
inline constexpr double kOuterCut = 60.0;

inline double radial_limit(const ConnectivityModel& m, const OracleOptions& o) {
  if (m.family() == ChannelFamily::HardDisk) return m.r0();
  return m.truncation_radius() * o.radius_scale;
}

// Piecewise integral over sorted breakpoints. Past an interior breakpoint k
// the polar limits go like sqrt(s - k), so those pieces are done in
// s = k + t^2, which makes the integrand smooth.
template <class F>
double split_at_kinks(F&& f, std::vector<double> pts, double tol) {
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    if (!(b > a)) continue;
    if (a == 0.0) {
      total += integrate(f, a, b, tol).value;
    } else {
      total += integrate([&](double t) { return 2.0 * t * f(a + t * t); }, 0.0, std::sqrt(b - a),
                         tol)
                   .value;
    }
  }
  return total;
}

// integral_0^Rmax w(s) H(s) ds, split at the given kinks of w.
template <class W>
double radial_h(const ConnectivityModel& m, W&& w, std::vector<double> kinks,
                const OracleOptions& o) {
  const double rmax = radial_limit(m, o);
  std::vector<double> pts{0.0, rmax};
  for (double k : kinks)
    if (k > 0.0 && k < rmax) pts.push_back(k);
  if (m.family() == ChannelFamily::HardDisk)
    return split_at_kinks([&](double s) { return w(s); }, pts, o.radial_tol);
  return split_at_kinks([&](double s) { return w(s) * m.h(s); }, pts, o.radial_tol);
}

// integral_0^Rmax w(s) H'(s) ds; the hard disk's H' = -delta(s - r0).
template <class W>
double radial_dh(const ConnectivityModel& m, W&& w, std::vector<double> kinks,
                 const OracleOptions& o) {
  if (m.family() == ChannelFamily::HardDisk) return -w(m.r0());
  const double rmax = radial_limit(m, o);
  std::vector<double> pts{0.0, rmax};
  for (double k : kinks)
    if (k > 0.0 && k < rmax) pts.push_back(k);
  return split_at_kinks([&](double s) { return w(s) * m.dh(s); }, pts, o.radial_tol);
}

template <class F>
double angular(F&& f, double lo, double hi, const OracleOptions& o) {
  if (hi <= lo) return 0.0;
  return integrate(f, lo, hi, o.angular_tol).value;
}

}  // namespace quad_detail

/// First-order expansion of the inner integral at a corner or edge:
///   mass(r2, theta2, z2) = constant + z_slope * z2
///                          + r_slope * r2 * (sin theta2 - sin(theta2 - dihedral)).
struct WedgeExpansion {
  double dihedral = 0.0;
  double constant = 0.0;
  double z_slope = 0.0;
  double r_slope = 0.0;

  double operator()(double r2, double theta2, double z2) const {
    return constant + z_slope * z2 +
           r_slope * r2 * (std::sin(theta2) - std::sin(theta2 - dihedral));
  }
};

/// Corner of dihedral angle theta: node region [0,inf) x [0,theta) x [0,inf)
/// in cylindrical coordinates with the z-axis along the vertical edge.
inline WedgeExpansion corner_expansion(double theta, const ConnectivityModel& m,
                                       const OracleOptions& o = {}) {
  if (!(theta > 0.0) || !(theta < quad_detail::kPi))
    throw std::domain_error("corner angle must lie in (0, pi)");
  using namespace quad_detail;
  const double half = kPi / 2.0;
  auto a0 = [&](double) { return angular([](double p) { return std::sin(p); }, 0.0, half, o); };
  auto a1 = [&](double) {
    return angular([](double p) { return std::sin(p) * std::cos(p); }, 0.0, half, o);
  };
  auto a2 = [&](double) {
    return angular([](double p) { return std::sin(p) * std::sin(p); }, 0.0, half, o);
  };
  WedgeExpansion e;
  e.dihedral = theta;
  e.constant = theta * radial_h(m, [&](double s) { return s * s * a0(s); }, {}, o);
  e.z_slope = -theta * radial_dh(m, [&](double s) { return s * s * a1(s); }, {}, o);
  e.r_slope = -radial_dh(m, [&](double s) { return s * s * a2(s); }, {}, o);
  return e;
}

/// Edge of length L and dihedral theta, origin at the edge midpoint: node
/// region [0,inf) x [0,theta) x (-L/2, L/2).
inline WedgeExpansion edge_expansion(double theta, double length, const ConnectivityModel& m,
                                     const OracleOptions& o = {}) {
  if (!(theta > 0.0) || !(theta < quad_detail::kPi))
    throw std::domain_error("edge angle must lie in (0, pi)");
  if (!(length > 0.0)) throw std::invalid_argument("edge length must be positive");
  using namespace quad_detail;
  // |s cos(phi)| < L/2 limits the polar range once s exceeds L/2.
  auto lo = [&](double s) { return s <= 0.5 * length ? 0.0 : std::acos(0.5 * length / s); };
  auto a0 = [&](double s) {
    return angular([](double p) { return std::sin(p); }, lo(s), kPi - lo(s), o);
  };
  auto a2 = [&](double s) {
    return angular([](double p) { return std::sin(p) * std::sin(p); }, lo(s), kPi - lo(s), o);
  };
  const std::vector<double> kinks{0.5 * length};
  WedgeExpansion e;
  e.dihedral = theta;
  e.constant = theta * radial_h(m, [&](double s) { return s * s * a0(s); }, kinks, o);
  // sin*cos is odd about pi/2 over a symmetric polar range: the z slope is
  // zero exactly, and integrating rounding noise to a relative tolerance
  // would never terminate.
  e.z_slope = 0.0;
  e.r_slope = -radial_dh(m, [&](double s) { return s * s * a2(s); }, kinks, o);
  return e;
}

/// Face by local equivalence with a ball of radius R, node at radius r2
/// close to R:  mass(r2) = constant + slope * (R - r2).
///
/// Integrated about the surface point R*z: the ball is the cap
/// cos(polar) < -s / (2R) of each sphere of radius s, so the O(1/R)
/// curvature deficit is retained.
struct FaceExpansion {
  double radius = 0.0;
  double constant = 0.0;
  double slope = 0.0;

  double operator()(double r2) const { return constant + slope * (radius - r2); }
};

inline FaceExpansion face_expansion(double radius, const ConnectivityModel& m,
                                    const OracleOptions& o = {}) {
  if (!(radius > 0.0)) throw std::invalid_argument("face radius must be positive");
  using namespace quad_detail;
  auto cap_hi = [&](double s) { return std::max(-1.0, -s / (2.0 * radius)); };
  auto c0 = [&](double s) { return angular([](double) { return 1.0; }, -1.0, cap_hi(s), o); };
  auto c1 = [&](double s) { return angular([](double c) { return c; }, -1.0, cap_hi(s), o); };
  const std::vector<double> kinks{2.0 * radius};
  FaceExpansion f;
  f.radius = radius;
  f.constant = 2.0 * kPi * radial_h(m, [&](double s) { return s * s * c0(s); }, kinks, o);
  f.slope = 2.0 * kPi * radial_dh(m, [&](double s) { return s * s * c1(s); }, kinks, o);
  return f;
}

/// Bulk: node at the centre, full-space integral. `first_order` multiplies
/// r2 and vanishes by symmetry.
struct BulkExpansion {
  double constant = 0.0;
  double first_order = 0.0;
};

inline BulkExpansion bulk_expansion(const ConnectivityModel& m, const OracleOptions& o = {}) {
  using namespace quad_detail;
  auto a0 = [&](double) { return angular([](double t) { return std::sin(t); }, 0.0, kPi, o); };
  BulkExpansion b;
  b.constant = 2.0 * kPi * radial_h(m, [&](double s) { return s * s * a0(s); }, {}, o);
  b.first_order = 0.0;  // odd in cos(polar) over the full sphere
  return b;
}

// --- inner-integral operations ----------------------------------------------

inline double inner_corner(double r2, double theta2, double z2, double theta,
                           const ConnectivityModel& m, const OracleOptions& o = {}) {
  if (r2 < 0.0 || z2 < 0.0) throw std::invalid_argument("corner offsets must be non-negative");
  if (theta2 < 0.0 || theta2 > theta) throw std::invalid_argument("theta2 must lie in [0, theta]");
  return corner_expansion(theta, m, o)(r2, theta2, z2);
}

inline double inner_edge(double r2, double theta2, double z2, double theta, double length,
                         const ConnectivityModel& m, const OracleOptions& o = {}) {
  if (r2 < 0.0) throw std::invalid_argument("edge offset must be non-negative");
  return edge_expansion(theta, length, m, o)(r2, theta2, z2);
}

inline double inner_face(double r2, double radius, const ConnectivityModel& m,
                         const OracleOptions& o = {}) {
  if (r2 > radius || r2 < 0.0) throw std::invalid_argument("r2 must lie in [0, R]");
  return face_expansion(radius, m, o)(r2);
}

inline BulkExpansion inner_bulk(const ConnectivityModel& m, const OracleOptions& o = {}) {
  return bulk_expansion(m, o);
}

// --- outer integrals ----------------------------------------------------------

/// Outer integral with the leading exp(-rho * constant) split off:
/// value = reduced * exp(-rho * rate).
struct OuterIntegral {
  double value = 0.0;
  double reduced = 0.0;
  double rate = 0.0;
};

namespace quad_detail {

// integral over the wedge [0,theta) x z-range of r dr dtheta dz of
// exp(-rho * (z_slope*z + r_slope*r*g(theta2))), the constant factored out.
inline double wedge_outer(const WedgeExpansion& e, double z_lo, double z_hi, double rho,
                          const OracleOptions& o) {
  const double th = e.dihedral;
  auto g = [&](double t) { return std::sin(t) - std::sin(t - th); };
  if (!(e.r_slope > 0.0)) throw NumericError("non-positive radial slope in wedge expansion");
  auto radial = [&](double t) {
    const double k = rho * e.r_slope * g(t);
    const double rmax = kOuterCut / k;
    return integrate([&](double r) { return r * std::exp(-k * r); }, 0.0, rmax, o.outer_tol * 0.1)
        .value;
  };
  auto angular_part = [&]() { return integrate(radial, 0.0, th, o.outer_tol * 0.1).value; };
  const double ang = angular_part();
  auto zpart = [&](double z) { return std::exp(-rho * e.z_slope * z); };
  return ang * integrate(zpart, z_lo, z_hi, o.outer_tol).value;
}

}  // namespace quad_detail

inline OuterIntegral outer_corner(const WedgeExpansion& e, double rho,
                                  const OracleOptions& o = {}) {
  if (!(e.z_slope > 0.0)) throw NumericError("non-positive z slope in corner expansion");
  const double zmax = quad_detail::kOuterCut / (rho * e.z_slope);
  OuterIntegral out;
  out.rate = e.constant;
  out.reduced = quad_detail::wedge_outer(e, 0.0, zmax, rho, o);
  out.value = out.reduced * std::exp(-rho * e.constant);
  return out;
}

inline OuterIntegral outer_edge(const WedgeExpansion& e, double length, double rho,
                                const OracleOptions& o = {}) {
  OuterIntegral out;
  out.rate = e.constant;
  out.reduced = quad_detail::wedge_outer(e, -0.5 * length, 0.5 * length, rho, o);
  out.value = out.reduced * std::exp(-rho * e.constant);
  return out;
}

inline OuterIntegral outer_face(const FaceExpansion& f, double rho, const OracleOptions& o = {}) {
  if (!(f.slope > 0.0)) throw NumericError("non-positive slope in face expansion");
  const double depth = std::min(f.radius, quad_detail::kOuterCut / (rho * f.slope));
  OuterIntegral out;
  out.rate = f.constant;
  out.reduced = integrate(
                    [&](double r) {
                      return 4.0 * quad_detail::kPi * r * r *
                             std::exp(-rho * f.slope * (f.radius - r));
                    },
                    f.radius - depth, f.radius, o.outer_tol)
                    .value;
  out.value = out.reduced * std::exp(-rho * f.constant);
  return out;
}

inline OuterIntegral outer_bulk(const BulkExpansion& b, double radius, double rho,
                                const OracleOptions& o = {}) {
  OuterIntegral out;
  out.rate = b.constant;
  out.reduced = integrate(
                    [&](double r) {
                      return 4.0 * quad_detail::kPi * r * r * std::exp(-rho * b.first_order * r);
                    },
                    0.0, radius, o.outer_tol)
                    .value;
  out.value = out.reduced * std::exp(-rho * b.constant);
  return out;
}

inline double equivalent_sphere_radius_from_area(double area) {
  return std::sqrt(area / (4.0 * quad_detail::kPi));
}
inline double equivalent_sphere_radius_from_volume(double volume) {
  return std::cbrt(3.0 * volume / (4.0 * quad_detail::kPi));
}

/// Numeric outer integral for one instance of a feature. Face and bulk use
/// the sphere of equal area or volume.
inline OuterIntegral outer_integral(const BoundaryFeature& f, const ConnectivityModel& m,
                                    double rho, const OracleOptions& o = {}) {
  if (!(rho > 0.0)) throw std::invalid_argument("density must be positive");
  switch (f.kind) {
    case FeatureKind::Corner:
      return outer_corner(corner_expansion(f.dihedral, m, o), rho, o);
    case FeatureKind::Edge:
      return outer_edge(edge_expansion(f.dihedral, f.measure, m, o), f.measure, rho, o);
    case FeatureKind::Face:
      return outer_face(face_expansion(equivalent_sphere_radius_from_area(f.measure), m, o), rho,
                        o);
    case FeatureKind::Bulk:
      return outer_bulk(bulk_expansion(m, o), equivalent_sphere_radius_from_volume(f.measure), rho,
                        o);
  }
  throw std::logic_error("unknown feature kind");
}

/// The generic-model pathway: inner expansions are computed once per
/// feature, outer integrals once per density. Group prefactors are
/// effective values at the requested rho.
class NumericPfc {
 public:
  NumericPfc(FeatureSet features, ConnectivityModel model, OracleOptions opts = {})
      : fs_(std::move(features)), model_(model), opts_(opts) {
    bulk_ = bulk_expansion(model_, opts_);
    face_ = face_expansion(equivalent_sphere_radius_from_area(fs_.face.measure), model_, opts_);
    for (const auto& e : fs_.edges)
      edges_.push_back(edge_expansion(e.dihedral, e.measure, model_, opts_));
    for (const auto& c : fs_.corners) corners_.push_back(corner_expansion(c.dihedral, model_, opts_));
  }

  PfcBreakdown at(double rho) const {
    return make_breakdown(
        fs_, model_, rho, [&](FeatureKind kind, const std::vector<BoundaryFeature>& members) {
          double reduced_sum = 0.0;
          double rate = 0.0;
          for (const auto& f : members) {
            const OuterIntegral oi = one(kind, f, rho);
            reduced_sum += f.multiplicity * oi.reduced;
            rate = oi.rate;
          }
          const int power = 1 - static_cast<int>(kind);
          // value = rho * reduced_sum * e^{-rho rate} = prefactor * rho^power * e^{-rho rate}
          return std::pair{rho * reduced_sum / std::pow(rho, power), rate};
        });
  }

 private:
  OuterIntegral one(FeatureKind kind, const BoundaryFeature& f, double rho) const {
    switch (kind) {
      case FeatureKind::Bulk:
        return outer_bulk(bulk_, equivalent_sphere_radius_from_volume(f.measure), rho, opts_);
      case FeatureKind::Face:
        return outer_face(face_, rho, opts_);
      case FeatureKind::Edge:
        return outer_edge(edges_.at(index_of(fs_.edges, f)), f.measure, rho, opts_);
      case FeatureKind::Corner:
        return outer_corner(corners_.at(index_of(fs_.corners, f)), rho, opts_);
    }
    throw std::logic_error("unknown feature kind");
  }

  static std::size_t index_of(const std::vector<BoundaryFeature>& list, const BoundaryFeature& f) {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].dihedral == f.dihedral && list[i].measure == f.measure) return i;
    throw std::logic_error("feature not found in set");
  }

  FeatureSet fs_;
  ConnectivityModel model_;
  OracleOptions opts_;
  BulkExpansion bulk_;
  FaceExpansion face_;
  std::vector<WedgeExpansion> edges_;
  std::vector<WedgeExpansion> corners_;
};

inline PfcBreakdown numeric_breakdown(const FeatureSet& fs, const ConnectivityModel& m, double rho,
                                      const OracleOptions& o = {}) {
  return NumericPfc(fs, m, o).at(rho);
}

}  // namespace prismconn
