#pragma once

// Pair connectedness functions H(r): the probability that two nodes a
// distance r apart share a direct link.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "prismconn/errors.hpp"
#include "prismconn/integrate.hpp"
#include "prismconn/random.hpp"

namespace prismconn {

enum class ChannelFamily { MimoMrc2x2, RayleighSiso, HardDisk };

inline std::string_view to_string(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::MimoMrc2x2: return "mimo_mrc_2x2";
    case ChannelFamily::RayleighSiso: return "rayleigh";
    case ChannelFamily::HardDisk: return "hard_disk";
  }
  return "?";
}

/// H(r) for one of three link models.
///
///  - MimoMrc2x2: 2x2 beamforming + MRC over i.i.d. Rayleigh, path loss
///    exponent fixed at 2: H = e^{-x}(x^2 + 2 - e^{-x}), x = beta r^2.
///  - RayleighSiso: H = e^{-beta r^eta}.
///  - HardDisk: H = 1 for r <= r0, else 0 (the eta -> infinity limit).
///
/// beta has units length^-eta; r0 = beta^(-1/eta) is the effective range.
class ConnectivityModel {
 public:
  static ConnectivityModel mimo_mrc_2x2(double beta) {
    check_beta(beta);
    return ConnectivityModel(ChannelFamily::MimoMrc2x2, beta, 2.0, std::pow(beta, -0.5));
  }

  static ConnectivityModel rayleigh(double beta, double eta) {
    check_beta(beta);
    if (!(eta >= 2.0) || !std::isfinite(eta))
      throw std::invalid_argument("path-loss exponent eta must be finite and >= 2");
    return ConnectivityModel(ChannelFamily::RayleighSiso, beta, eta, std::pow(beta, -1.0 / eta));
  }

  static ConnectivityModel hard_disk(double r0) {
    if (!(r0 >= 0.0) || !std::isfinite(r0))
      throw std::invalid_argument("hard-disk range r0 must be finite and >= 0");
    return ConnectivityModel(ChannelFamily::HardDisk, 1.0,
                             std::numeric_limits<double>::infinity(), r0);
  }

  ChannelFamily family() const { return family_; }
  double beta() const { return beta_; }
  double eta() const { return eta_; }
  double r0() const { return r0_; }

  double h(double r) const {
    if (!(r >= 0.0)) throw std::invalid_argument("distance must be non-negative");
    return h_squared(r * r);
  }

  // H evaluated from a squared distance; the simulator's hot path.
  double h_squared(double r2) const {
    switch (family_) {
      case ChannelFamily::MimoMrc2x2: {
        const double x = beta_ * r2;
        const double y = std::exp(-x);
        return y * (x * x + 2.0 - y);
      }
      case ChannelFamily::RayleighSiso:
        return std::exp(-beta_ * std::pow(r2, 0.5 * eta_));
      case ChannelFamily::HardDisk:
        return r2 <= r0_ * r0_ ? 1.0 : 0.0;
    }
    return 0.0;
  }

  // dH/dr. The hard disk has a delta-function derivative; callers that need
  // it (the quadrature oracle) handle that family separately.
  double dh(double r) const {
    switch (family_) {
      case ChannelFamily::MimoMrc2x2: {
        const double x = beta_ * r * r;
        const double y = std::exp(-x);
        return y * (2.0 * x - x * x - 2.0 + 2.0 * y) * 2.0 * beta_ * r;
      }
      case ChannelFamily::RayleighSiso: {
        if (r == 0.0) return 0.0;
        const double t = beta_ * std::pow(r, eta_);
        return -eta_ * t / r * std::exp(-t);
      }
      case ChannelFamily::HardDisk:
        throw std::logic_error("hard-disk H has no pointwise derivative");
    }
    return 0.0;
  }

  // Radius past which H is negligible: smallest r with beta r^eta >= 45 and
  // H(r) < 1e-18. Exactly r0 for the hard disk.
  double truncation_radius() const {
    if (family_ == ChannelFamily::HardDisk) return r0_;
    double x = 45.0;
    auto radius = [&](double xx) { return std::pow(xx / beta_, 1.0 / eta_); };
    while (h(radius(x)) >= 1e-18) x += 1.0;
    return radius(x);
  }

  bool operator==(const ConnectivityModel&) const = default;

 private:
  ConnectivityModel(ChannelFamily f, double beta, double eta, double r0)
      : family_(f), beta_(beta), eta_(eta), r0_(r0) {}

  static void check_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
  }

  ChannelFamily family_;
  double beta_;
  double eta_;
  double r0_;
};

inline double h(const ConnectivityModel& m, double r) { return m.h(r); }

// (23 - sqrt 2)/4: the MIMO-MRC connection mass in units of (pi/beta)^{3/2}.
inline constexpr double kMimoMassCoefficient = (23.0 - std::numbers::sqrt2) / 4.0;

inline double mimo_bulk_mass(double beta) {
  return kMimoMassCoefficient * std::pow(std::numbers::pi / beta, 1.5);
}

/// Connection mass M = 4 pi * integral_0^inf r^2 H(r) dr.
///
/// Closed forms for MimoMrc2x2 and HardDisk; Rayleigh goes through adaptive
/// quadrature up to the truncation radius.
inline double bulk_mass(const ConnectivityModel& m) {
  const double pi = std::numbers::pi;
  switch (m.family()) {
    case ChannelFamily::MimoMrc2x2:
      return mimo_bulk_mass(m.beta());
    case ChannelFamily::HardDisk:
      return 4.0 / 3.0 * pi * m.r0() * m.r0() * m.r0();
    case ChannelFamily::RayleighSiso:
      break;
  }
  const double rmax = m.truncation_radius();
  const Integral in = integrate([&](double r) { return r * r * m.h(r); }, 0.0, rmax, 1e-13);
  const double mass = 4.0 * pi * in.value;
  if (!std::isfinite(mass)) throw NumericError("connection mass diverged");
  return mass;
}

template <class URBG>
bool sample_link(const ConnectivityModel& m, double r, URBG& rng) {
  return canonical(rng) < m.h(r);
}

}  // namespace prismconn
