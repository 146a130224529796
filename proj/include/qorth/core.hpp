#pragma once

// Three-level system in dimensionless form (hbar = 1) and the exact
// survival amplitude <psi(0)|psi(t)> = sum_i r_i exp(-i E_i t).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qorth/errors.hpp"

namespace qorth {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sum-to-one tolerance for a probability triple.
inline constexpr double kTriadSumTol = 1e-12;
/// Default threshold on |amplitude| below which a state counts as orthogonal.
inline constexpr double kDefaultOrthoTol = 1e-10;

using Amplitude = std::complex<double>;

/// Level spacings of a non-degenerate spectrum E1 < E2 < E3.
///
/// Only differences enter the dynamics, so the spectrum is stored as the
/// two independent spacings. Energies are reported in the gauge E1 = 0.
class Spectrum {
 public:
  Spectrum(double omega21, double omega32) : omega21_(omega21), omega32_(omega32) {
    if (!(std::isfinite(omega21) && std::isfinite(omega32)) || !(omega21 > 0.0) ||
        !(omega32 > 0.0)) {
      throw ValidationError("spectrum requires omega21 > 0 and omega32 > 0");
    }
  }

  /// Spectrum with omega21 = omega21 and omega32 = ratio * omega21.
  static Spectrum from_ratio(double omega21, double ratio) {
    return Spectrum(omega21, ratio * omega21);
  }

  double omega21() const noexcept { return omega21_; }
  double omega32() const noexcept { return omega32_; }
  double omega31() const noexcept { return omega21_ + omega32_; }
  /// Omega = omega32 / omega21.
  double ratio() const noexcept { return omega32_ / omega21_; }

  /// Energy of level `level` (1, 2 or 3) with E1 = 0.
  double energy(int level) const {
    switch (level) {
      case 1: return 0.0;
      case 2: return omega21_;
      case 3: return omega21() + omega32_;
      default: throw ValidationError("level index must be 1, 2 or 3");
    }
  }

  /// Signed transition frequency omega_ij = E_i - E_j.
  double omega(int i, int j) const { return energy(i) - energy(j); }

  Spectrum scaled(double c) const { return Spectrum(c * omega21_, c * omega32_); }

 private:
  double omega21_;
  double omega32_;
};

/// Energy distribution (r1, r2, r3) of the initial state.
class Triad {
 public:
  Triad(double r1, double r2, double r3) : r_{r1, r2, r3} {
    for (double r : r_) {
      if (!std::isfinite(r) || r < 0.0) {
        throw ValidationError("triad components must be finite and non-negative");
      }
    }
    if (std::abs(r1 + r2 + r3 - 1.0) > kTriadSumTol) {
      throw ValidationError("triad components must sum to 1");
    }
  }

  /// Rescales a non-negative triple onto the simplex.
  static Triad normalized(double r1, double r2, double r3) {
    double const s = r1 + r2 + r3;
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ValidationError("cannot normalize a triple with non-positive sum");
    }
    return Triad(r1 / s, r2 / s, r3 / s);
  }

  double r1() const noexcept { return r_[0]; }
  double r2() const noexcept { return r_[1]; }
  double r3() const noexcept { return r_[2]; }

  /// Component of level `level` (1-based).
  double at(int level) const {
    if (level < 1 || level > 3) throw ValidationError("level index must be 1, 2 or 3");
    return r_[static_cast<std::size_t>(level - 1)];
  }

  std::array<double, 3> const& values() const noexcept { return r_; }

  /// Number of levels with a strictly positive weight.
  int support_size() const noexcept {
    return (r_[0] > 0.0) + (r_[1] > 0.0) + (r_[2] > 0.0);
  }

  friend bool operator==(Triad const&, Triad const&) = default;

 private:
  std::array<double, 3> r_;
};

/// Triad plus the phases of the expansion coefficients. Phases are kept in
/// [0, 2pi) and never influence the overlap with the initial state.
class QutritState {
 public:
  QutritState(Triad triad, double theta1, double theta2, double theta3)
      : triad_(triad), theta_{reduce(theta1), reduce(theta2), reduce(theta3)} {}

  Triad const& triad() const noexcept { return triad_; }
  std::array<double, 3> const& phases() const noexcept { return theta_; }

  /// Complex coefficient sqrt(r_i) e^{i theta_i} of level `level`.
  std::complex<double> coefficient(int level) const {
    return std::polar(std::sqrt(triad_.at(level)),
                      theta_[static_cast<std::size_t>(level - 1)]);
  }

 private:
  static double reduce(double theta) {
    if (!std::isfinite(theta)) throw ValidationError("phase must be finite");
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
  }

  Triad triad_;
  std::array<double, 3> theta_;
};

/// <psi(0)|psi(t)> in the gauge E1 = 0.
inline Amplitude survival_amplitude(Triad const& triad, Spectrum const& spectrum, double t) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("time must be finite and >= 0");
  Amplitude a{triad.r1(), 0.0};
  a += triad.r2() * std::polar(1.0, -spectrum.omega21() * t);
  a += triad.r3() * std::polar(1.0, -spectrum.omega31() * t);
  return a;
}

inline Amplitude survival_amplitude(QutritState const& state, Spectrum const& spectrum,
                                    double t) {
  return survival_amplitude(state.triad(), spectrum, t);
}

inline double survival_probability(Triad const& triad, Spectrum const& spectrum, double t) {
  return std::norm(survival_amplitude(triad, spectrum, t));
}

inline bool is_orthogonal_at(Triad const& triad, Spectrum const& spectrum, double t,
                             double tol = kDefaultOrthoTol) {
  if (!(tol > 0.0)) throw ValidationError("orthogonality tolerance must be > 0");
  return std::abs(survival_amplitude(triad, spectrum, t)) < tol;
}

}  // namespace qorth
