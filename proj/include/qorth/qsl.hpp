#pragma once

// Mean energy, energy dispersion and the unified quantum speed limit
//   tau >= tau_qsl = max(pi / (2 eps), pi / (2 sigma_H)),
// with alpha = sigma_H / eps deciding which of the two bounds binds
// (alpha < 1: Mandelstam-Tamm, alpha > 1: Margolus-Levitin).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qorth/core.hpp"

namespace qorth {

inline constexpr double kQslClassTol = 1e-9;

enum class QslClass { MT, ML, Equal };

inline std::string to_string(QslClass c) {
  switch (c) {
    case QslClass::MT: return "MT";
    case QslClass::ML: return "ML";
    case QslClass::Equal: return "EQUAL";
  }
  return "?";
}

inline QslClass classify_alpha(double alpha, double tol = kQslClassTol) {
  if (alpha < 1.0 - tol) return QslClass::MT;
  if (alpha > 1.0 + tol) return QslClass::ML;
  return QslClass::Equal;
}

struct QslReport {
  double mean_energy;
  double dispersion;
  double alpha;
  double tau_qsl;
  QslClass classification;
};

namespace detail {

inline void require_non_stationary(Triad const& triad) {
  if (triad.support_size() < 2) {
    throw UndefinedQslError("speed limit is undefined for a stationary state");
  }
}

}  // namespace detail

/// <H> minus the lowest level that carries weight.
inline double mean_energy(Triad const& triad, Spectrum const& s) {
  detail::require_non_stationary(triad);
  int ref = 1;
  while (triad.at(ref) == 0.0) ++ref;
  double const e_ref = s.energy(ref);
  double eps = 0.0;
  for (int i = ref + 1; i <= 3; ++i) eps += triad.at(i) * (s.energy(i) - e_ref);
  return eps;
}

/// sigma_H = omega21 sqrt(r1 r2 + r1 r3 (1+Omega)^2 + r2 r3 Omega^2).
inline double energy_dispersion(Triad const& triad, Spectrum const& s) {
  detail::require_non_stationary(triad);
  double const om = s.ratio();
  double const q = triad.r1() * triad.r2() + triad.r1() * triad.r3() * (1.0 + om) * (1.0 + om) +
                   triad.r2() * triad.r3() * om * om;
  return s.omega21() * std::sqrt(q);
}

/// alpha = sigma_H / eps as a function of the triad and Omega only.
inline double alpha(Triad const& triad, double omega_ratio) {
  detail::require_non_stationary(triad);
  if (!(omega_ratio > 0.0)) throw ValidationError("Omega must be > 0");
  if (triad.r1() == 0.0) {
    // Two-level state on (E2, E3): eps = r3 w32, sigma = w32 sqrt(r2 r3).
    return std::sqrt(triad.r2() / triad.r3());
  }
  double const a = 1.0 + omega_ratio;
  double const e = triad.r2() + triad.r3() * a;
  double const h2 = triad.r2() + triad.r3() * a * a;
  return std::sqrt(std::max(0.0, h2 / (e * e) - 1.0));
}

inline QslReport qsl_report(Triad const& triad, Spectrum const& s) {
  double const eps = mean_energy(triad, s);
  double const sigma = energy_dispersion(triad, s);
  double const a = sigma / eps;
  double const tau = std::max(kPi / (2.0 * eps), kPi / (2.0 * sigma));
  return {eps, sigma, a, tau, classify_alpha(a)};
}

/// Closed forms of alpha along the three I-b edges; `half_level` is the
/// level pinned to 1/2 and r in (0, 1/2) the free parameter.
inline double edge_alpha(int half_level, double r, double omega_ratio) {
  if (!(r > 0.0 && r < 0.5)) throw DomainError("edge parameter r must lie in (0, 1/2)");
  if (!(omega_ratio > 0.0)) throw ValidationError("Omega must be > 0");
  double const om = omega_ratio;
  switch (half_level) {
    case 1: {  // {1/2, r, 1/2 - r}
      double const den = r + (0.5 - r) * (1.0 + om);
      return std::sqrt(1.0 + r * (1.0 - 2.0 * r) * om * om / (den * den));
    }
    case 3: {  // {r, 1/2 - r, 1/2}
      double const den = 1.0 - r + 0.5 * om;
      return std::sqrt(1.0 - (1.0 - 2.0 * r) * (1.0 - r + om) / (den * den));
    }
    case 2: {  // {r, 1/2, 1/2 - r}
      double const den = 1.0 - r + om * (0.5 - r);
      return std::sqrt(1.0 + (1.0 - 2.0 * r) * (1.0 + om) * (r * (1.0 + om) - 1.0) / (den * den));
    }
    default: throw ValidationError("half level must be 1, 2 or 3");
  }
}

/// Point r* = 1 / (1 + Omega) where alpha crosses 1 on the r2 = 1/2 edge.
/// No crossover for Omega <= 1, where the whole edge is MT-limited.
inline std::optional<double> edge_crossover(double omega_ratio) {
  if (!(omega_ratio > 0.0)) throw ValidationError("Omega must be > 0");
  if (omega_ratio <= 1.0) return std::nullopt;
  return 1.0 / (1.0 + omega_ratio);
}

}  // namespace qorth
