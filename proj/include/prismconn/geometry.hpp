#pragma once

// Convex right prisms and the half-cylinder: volume/surface bookkeeping,
// boundary-feature inventory, point membership and exact uniform sampling.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prismconn/random.hpp"

namespace prismconn {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
};

inline double squared_distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

namespace detail {

inline double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline double norm(Point2 a, Point2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

}  // namespace detail

/// Strictly convex polygon, stored counter-clockwise.
///
/// Clockwise input is accepted and reversed. Anything with fewer than three
/// vertices, repeated vertices, collinear or reflex corners is rejected with
/// std::invalid_argument.
class Polygon2D {
 public:
  explicit Polygon2D(std::vector<Point2> vertices) : v_(std::move(vertices)) {
    if (v_.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (const auto& p : v_) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("polygon vertex is not finite");
      scale_ = std::max({scale_, std::abs(p.x), std::abs(p.y)});
    }
    const std::size_t n = v_.size();
    const double tol = 1e-12 * std::max(scale_, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (detail::norm(v_[i], v_[j]) <= tol)
          throw std::invalid_argument("polygon has repeated vertices");
      }
    }
    double signed_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = v_[i];
      const auto& b = v_[(i + 1) % n];
      signed_area += a.x * b.y - b.x * a.y;
    }
    if (signed_area < 0.0) std::reverse(v_.begin(), v_.end());
    const double cross_tol = 1e-12 * std::max(scale_ * scale_, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::cross(v_[i], v_[(i + 1) % n], v_[(i + 2) % n]) <= cross_tol)
        throw std::invalid_argument("polygon is not strictly convex");
    }

    // Fan triangulation from vertex 0; cumulative areas drive sampling.
    fan_cdf_.reserve(n - 2);
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      acc += 0.5 * detail::cross(v_[0], v_[i], v_[i + 1]);
      fan_cdf_.push_back(acc);
    }
    area_ = acc;
    for (std::size_t i = 0; i < n; ++i) perimeter_ += edge_length(i);
  }

  std::span<const Point2> vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  double scale() const { return scale_; }

  // Edge i runs from vertex i to vertex i+1.
  double edge_length(std::size_t i) const { return detail::norm(v_[i], v_[(i + 1) % v_.size()]); }

  double interior_angle(std::size_t i) const {
    const std::size_t n = v_.size();
    const Point2 p = v_[i];
    const Point2 prev = v_[(i + n - 1) % n];
    const Point2 next = v_[(i + 1) % n];
    const double ax = prev.x - p.x, ay = prev.y - p.y;
    const double bx = next.x - p.x, by = next.y - p.y;
    return std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
  }

  // Minimum width over all edge directions (exact for convex polygons).
  double width() const {
    const std::size_t n = v_.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = v_[i];
      const Point2 b = v_[(i + 1) % n];
      const double len = detail::norm(a, b);
      double far = 0.0;
      for (const auto& p : v_) far = std::max(far, detail::cross(a, b, p) / len);
      best = std::min(best, far);
    }
    return best;
  }

  bool contains(Point2 p, double tol = 0.0) const {
    const std::size_t n = v_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 a = v_[i];
      const Point2 b = v_[(i + 1) % n];
      if (detail::cross(a, b, p) < -tol * detail::norm(a, b)) return false;
    }
    return true;
  }

  template <class URBG>
  Point2 sample(URBG& rng) const {
    const double pick = canonical(rng) * area_;
    auto it = std::upper_bound(fan_cdf_.begin(), fan_cdf_.end(), pick);
    const std::size_t tri = std::min<std::size_t>(it - fan_cdf_.begin(), fan_cdf_.size() - 1);
    const Point2 a = v_[0];
    const Point2 b = v_[tri + 1];
    const Point2 c = v_[tri + 2];
    double s = canonical(rng);
    double t = canonical(rng);
    if (s + t > 1.0) {
      s = 1.0 - s;
      t = 1.0 - t;
    }
    return {a.x + s * (b.x - a.x) + t * (c.x - a.x), a.y + s * (b.y - a.y) + t * (c.y - a.y)};
  }

 private:
  std::vector<Point2> v_;
  std::vector<double> fan_cdf_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  double scale_ = 0.0;
};

enum class FeatureKind { Bulk = 0, Face = 1, Edge = 2, Corner = 3 };

inline std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Bulk: return "bulk";
    case FeatureKind::Face: return "face";
    case FeatureKind::Edge: return "edge";
    case FeatureKind::Corner: return "corner";
  }
  return "?";
}

/// One corner, edge, face or bulk object of a domain boundary.
///
/// `measure` is the (3 - codim)-dimensional size of a single instance (1 for
/// corners, length for edges, total area for the face entry, volume for
/// bulk). `dihedral` is only meaningful for edges and corners.
struct BoundaryFeature {
  FeatureKind kind = FeatureKind::Bulk;
  double measure = 0.0;
  double dihedral = 0.0;
  double solid_angle = 0.0;
  int multiplicity = 1;

  int codim() const { return static_cast<int>(kind); }
};

struct FeatureSet {
  BoundaryFeature bulk;
  BoundaryFeature face;
  std::vector<BoundaryFeature> edges;
  std::vector<BoundaryFeature> corners;
  // Smallest of the extrusion height and the base width; the length that
  // must satisfy sqrt(beta)*L >> 1 for the boundary expansion to hold.
  double characteristic_length = 0.0;

  int corner_count() const {
    int n = 0;
    for (const auto& c : corners) n += c.multiplicity;
    return n;
  }
  int edge_count() const {
    int n = 0;
    for (const auto& e : edges) n += e.multiplicity;
    return n;
  }
  double total_edge_length() const {
    double s = 0.0;
    for (const auto& e : edges) s += e.multiplicity * e.measure;
    return s;
  }
};

inline constexpr double kAngleTolerance = 1e-9;

namespace detail {

inline BoundaryFeature make_edge(double length, double dihedral, int mult) {
  return {FeatureKind::Edge, length, dihedral, 2.0 * dihedral, mult};
}

// Right-prism corners: solid angle takes the numeric value of the dihedral.
inline BoundaryFeature make_corner(double dihedral, int mult) {
  return {FeatureKind::Corner, 1.0, dihedral, dihedral, mult};
}

// Merge identical features and sort by (dihedral, measure).
inline std::vector<BoundaryFeature> canonicalize(std::vector<BoundaryFeature> in) {
  std::sort(in.begin(), in.end(), [](const auto& a, const auto& b) {
    if (std::abs(a.dihedral - b.dihedral) > kAngleTolerance) return a.dihedral < b.dihedral;
    return a.measure < b.measure;
  });
  std::vector<BoundaryFeature> out;
  for (const auto& f : in) {
    if (!out.empty() && std::abs(out.back().dihedral - f.dihedral) <= kAngleTolerance &&
        std::abs(out.back().measure - f.measure) <=
            1e-12 * std::max(std::abs(f.measure), 1.0)) {
      out.back().multiplicity += f.multiplicity;
    } else {
      out.push_back(f);
    }
  }
  return out;
}

}  // namespace detail

enum class DomainKind { House, RightPrism, HalfCylinder };

inline std::string_view to_string(DomainKind k) {
  switch (k) {
    case DomainKind::House: return "house";
    case DomainKind::RightPrism: return "prism";
    case DomainKind::HalfCylinder: return "half_cylinder";
  }
  return "?";
}

/// A convex right prism (base polygon extruded along one world axis) or a
/// half-cylinder whose flat face lies on the y = 0 plane and whose axis is z.
///
/// Prisms carry an axis map from the local (u, v, w) frame, where the base
/// lives in u-v and w is the extrusion, to world axes. Generic prisms use
/// the identity; the house maps (u, v, w) -> (x, z, y) so that its walls
/// stand on z = 0 and the roof points up.
class Domain {
 public:
  static Domain right_prism(Polygon2D base, double height, std::array<int, 3> axes = {0, 1, 2},
                            DomainKind kind = DomainKind::RightPrism) {
    if (!(height > 0.0) || !std::isfinite(height))
      throw std::invalid_argument("prism height must be positive");
    Domain d;
    d.kind_ = kind;
    d.height_ = height;
    d.axes_ = axes;
    d.base_.emplace(std::move(base));
    return d;
  }

  static Domain half_cylinder(double radius, double height) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw std::invalid_argument("half-cylinder radius must be positive");
    if (!(height > 0.0) || !std::isfinite(height))
      throw std::invalid_argument("half-cylinder height must be positive");
    Domain d;
    d.kind_ = DomainKind::HalfCylinder;
    d.height_ = height;
    d.radius_ = radius;
    d.axes_ = {0, 1, 2};
    return d;
  }

  DomainKind kind() const { return kind_; }
  double height() const { return height_; }
  double radius() const { return radius_; }
  const Polygon2D* base() const { return base_ ? &*base_ : nullptr; }
  int extrusion_axis() const { return axes_[2]; }

  double volume() const {
    if (base_) return base_->area() * height_;
    return 0.5 * std::numbers::pi * radius_ * radius_ * height_;
  }

  double surface_area() const {
    if (base_) return 2.0 * base_->area() + base_->perimeter() * height_;
    const double pi = std::numbers::pi;
    return pi * radius_ * radius_ + 2.0 * radius_ * height_ + pi * radius_ * height_;
  }

  double characteristic_length() const {
    if (base_) return std::min(height_, base_->width());
    return std::min(height_, radius_);
  }

  // Axis-aligned bounding box as {min corner, max corner}.
  std::array<Point3, 2> bounding_box() const {
    if (!base_) return {Point3{-radius_, 0.0, 0.0}, Point3{radius_, radius_, height_}};
    Point3 lo_local{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(), 0.0};
    Point3 hi_local{-std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(), height_};
    for (const auto& p : base_->vertices()) {
      lo_local.x = std::min(lo_local.x, p.x);
      lo_local.y = std::min(lo_local.y, p.y);
      hi_local.x = std::max(hi_local.x, p.x);
      hi_local.y = std::max(hi_local.y, p.y);
    }
    return {to_world(lo_local), to_world(hi_local)};
  }

  bool contains(const Point3& p) const {
    if (!base_) {
      const double tol = 1e-12 * std::max(radius_, height_);
      return p.y >= -tol && p.z >= -tol && p.z <= height_ + tol &&
             p.x * p.x + p.y * p.y <= radius_ * radius_ * (1.0 + 2e-12);
    }
    const Point3 q = to_local(p);
    const double tol = 1e-12 * std::max({base_->scale(), height_, 1.0});
    if (q.z < -tol || q.z > height_ + tol) return false;
    return base_->contains({q.x, q.y}, tol);
  }

  template <class URBG>
  Point3 sample(URBG& rng) const {
    if (!base_) {
      const double s = radius_ * std::sqrt(canonical(rng));
      const double a = std::numbers::pi * canonical(rng);
      const double z = height_ * canonical(rng);
      return {s * std::cos(a), s * std::sin(a), z};
    }
    const Point2 b = base_->sample(rng);
    const double w = height_ * canonical(rng);
    return to_world({b.x, b.y, w});
  }

  FeatureSet features() const {
    FeatureSet fs;
    fs.bulk = {FeatureKind::Bulk, volume(), 0.0, 4.0 * std::numbers::pi, 1};
    fs.face = {FeatureKind::Face, surface_area(), 0.0, 2.0 * std::numbers::pi, 1};
    fs.characteristic_length = characteristic_length();
    std::vector<BoundaryFeature> edges;
    std::vector<BoundaryFeature> corners;
    const double right = std::numbers::pi / 2.0;
    if (base_) {
      for (std::size_t i = 0; i < base_->size(); ++i) {
        const double angle = base_->interior_angle(i);
        edges.push_back(detail::make_edge(base_->edge_length(i), right, 2));  // top + bottom
        edges.push_back(detail::make_edge(height_, angle, 1));                // vertical
        corners.push_back(detail::make_corner(angle, 2));
      }
    } else {
      const double pi = std::numbers::pi;
      edges.push_back(detail::make_edge(pi * radius_, right, 2));   // semicircular rims
      edges.push_back(detail::make_edge(2.0 * radius_, right, 2));  // diameters
      edges.push_back(detail::make_edge(height_, right, 2));        // flat/curved seams
      corners.push_back(detail::make_corner(right, 4));
    }
    fs.edges = detail::canonicalize(std::move(edges));
    fs.corners = detail::canonicalize(std::move(corners));
    return fs;
  }

 private:
  Domain() = default;

  Point3 to_world(const Point3& local) const {
    Point3 w;
    w[axes_[0]] = local.x;
    w[axes_[1]] = local.y;
    w[axes_[2]] = local.z;
    return w;
  }
  Point3 to_local(const Point3& world) const {
    return {world[axes_[0]], world[axes_[1]], world[axes_[2]]};
  }

  DomainKind kind_ = DomainKind::RightPrism;
  std::optional<Polygon2D> base_;
  double height_ = 0.0;
  double radius_ = 0.0;
  std::array<int, 3> axes_{0, 1, 2};
};

/// Pentagonal "house": square [0,L]x[0,L] in x-z with a right-angled roof
/// reaching z = 3L/2, extruded over y in [0, L].
///
/// The fan apex sits at (0, L) so the sampler decomposes the cross-section
/// into the wall square (two triangles, weight 4/5) and the roof triangle
/// (weight 1/5).
inline Polygon2D house_polygon(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("house side L must be positive");
  return Polygon2D({{0.0, L}, {0.0, 0.0}, {L, 0.0}, {L, L}, {0.5 * L, 1.5 * L}});
}

inline Domain build_house(double L) {
  return Domain::right_prism(house_polygon(L), L, {0, 2, 1}, DomainKind::House);
}

inline Domain build_half_cylinder(double r, double h) { return Domain::half_cylinder(r, h); }

inline Domain build_right_prism(Polygon2D base, double h) {
  return Domain::right_prism(std::move(base), h);
}

inline FeatureSet enumerate_features(const Domain& d) { return d.features(); }

inline bool contains(const Domain& d, const Point3& p) { return d.contains(p); }

template <class URBG>
Point3 sample_uniform(const Domain& d, URBG& rng) {
  return d.sample(rng);
}

}  // namespace prismconn
