#pragma once

// Brute-force zero search on |<psi(0)|psi(t)>|, independent of the closed
// forms: dense sampling, then golden-section refinement of each sampled
// local minimum. |amplitude| touches zero without changing sign, so the
// search minimizes the magnitude instead of bracketing a sign change.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "qorth/core.hpp"

namespace qorth {

/// Sampled minima above this value are not refined.
inline constexpr double kBracketThreshold = 0.05;

struct ZeroSearchConfig {
  double t_max;
  double scan_step;
  double refine_tol = 1e-11;
  double amp_tol = 1e-8;

  /// Horizon 20 (2 pi / omega21) max(1, 1/Omega), step pi / (100 omega31).
  static ZeroSearchConfig defaults_for(Spectrum const& s) {
    double const beat = kTwoPi / s.omega21() * std::max(1.0, 1.0 / s.ratio());
    return {20.0 * beat, kPi / (100.0 * s.omega31())};
  }

  /// Largest admissible step for this spectrum.
  static double max_step(Spectrum const& s) { return kPi / (10.0 * s.omega31()); }

  void validate(Spectrum const& s) const {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be > 0");
    if (!(scan_step > 0.0)) throw ConfigError("scan_step must be > 0");
    if (scan_step > max_step(s) * (1.0 + 1e-12)) {
      throw ConfigError("scan_step must not exceed pi / (10 omega31)");
    }
    if (!(refine_tol > 0.0)) throw ConfigError("refine_tol must be > 0");
    if (!(amp_tol > 0.0)) throw ConfigError("amp_tol must be > 0");
  }
};

struct MinimumPoint {
  double t;
  double value;
};

namespace detail {

inline double magnitude(Triad const& triad, Spectrum const& s, double t) {
  return std::abs(survival_amplitude(triad, s, t));
}

inline MinimumPoint golden_section(Triad const& triad, Spectrum const& s, double a, double b,
                                   double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = magnitude(triad, s, c);
  double fd = magnitude(triad, s, d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = magnitude(triad, s, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = magnitude(triad, s, d);
    }
    if (c >= d) break;  // interval below floating-point resolution
  }
  double const m = 0.5 * (a + b);
  MinimumPoint best{m, magnitude(triad, s, m)};
  for (auto const& p : {MinimumPoint{c, fc}, MinimumPoint{d, fd}}) {
    if (p.value < best.value) best = p;
  }
  return best;
}

inline void require_evolving(Triad const& triad) {
  if (triad.support_size() < 2) {
    throw ValidationError("a stationary state never reaches an orthogonal state");
  }
}

}  // namespace detail

/// Ordered zeros of |amplitude| on (0, t_max], at most `max_count` of them.
inline std::vector<double> orthogonality_times(Triad const& triad, Spectrum const& s,
                                               ZeroSearchConfig const& cfg,
                                               std::size_t max_count) {
  detail::require_evolving(triad);
  cfg.validate(s);
  // A true zero lies within half a step of a sample, and |amplitude| changes
  // at most omega31 / 2 per unit time.
  double const threshold = std::max(kBracketThreshold, 1.01 * 0.25 * s.omega31() * cfg.scan_step);
  std::vector<double> zeros;
  auto const n = static_cast<long long>(std::floor(cfg.t_max / cfg.scan_step));
  auto sample = [&](long long k) { return detail::magnitude(triad, s, k * cfg.scan_step); };
  double prev = sample(0);
  double cur = sample(1);
  for (long long k = 1; k <= n && zeros.size() < max_count; ++k) {
    double const next = sample(k + 1);
    if (cur < prev && cur <= next && cur < threshold) {
      auto const m = detail::golden_section(triad, s, (k - 1) * cfg.scan_step,
                                            (k + 1) * cfg.scan_step, cfg.refine_tol);
      if (m.value < cfg.amp_tol && m.t > 0.0 && m.t <= cfg.t_max &&
          (zeros.empty() || m.t - zeros.back() > cfg.refine_tol)) {
        zeros.push_back(m.t);
      }
    }
    prev = cur;
    cur = next;
  }
  return zeros;
}

/// Smallest t in (0, t_max] with |amplitude| < amp_tol, if any.
inline std::optional<double> first_orthogonality_time(Triad const& triad, Spectrum const& s,
                                                      ZeroSearchConfig const& cfg) {
  auto z = orthogonality_times(triad, s, cfg, 1);
  if (z.empty()) return std::nullopt;
  return z.front();
}

inline std::optional<double> first_orthogonality_time(Triad const& triad, Spectrum const& s) {
  return first_orthogonality_time(triad, s, ZeroSearchConfig::defaults_for(s));
}

inline std::optional<double> second_zero(Triad const& triad, Spectrum const& s,
                                         ZeroSearchConfig const& cfg) {
  auto z = orthogonality_times(triad, s, cfg, 2);
  if (z.size() < 2) return std::nullopt;
  return z[1];
}

inline std::optional<double> second_zero(Triad const& triad, Spectrum const& s) {
  return second_zero(triad, s, ZeroSearchConfig::defaults_for(s));
}

/// Minimum of |amplitude| over samples t_lo, t_lo + step, ..., t_hi.
inline MinimumPoint min_amplitude(Triad const& triad, Spectrum const& s, double t_lo,
                                  double t_hi, double step) {
  if (!(step > 0.0) || !(t_hi >= t_lo) || t_lo < 0.0) {
    throw ValidationError("min_amplitude requires 0 <= t_lo <= t_hi and step > 0");
  }
  MinimumPoint best{t_lo, detail::magnitude(triad, s, t_lo)};
  auto const n = static_cast<long long>(std::floor((t_hi - t_lo) / step));
  for (long long k = 1; k <= n; ++k) {
    double const t = t_lo + k * step;
    double const v = detail::magnitude(triad, s, t);
    if (v < best.value) best = {t, v};
  }
  return best;
}

struct VerificationReport {
  double claimed_tau;
  std::optional<double> oracle_first_zero;
  double amplitude_at_claim;
  bool agrees;
  bool is_first;
};

/// Checks a claimed orthogonality time against direct evaluation and the
/// brute-force first zero.
inline VerificationReport verify_solution(Triad const& triad, Spectrum const& s,
                                          double claimed_tau, ZeroSearchConfig const& cfg) {
  double const amp = std::abs(survival_amplitude(triad, s, claimed_tau));
  auto const first = first_orthogonality_time(triad, s, cfg);
  bool const is_first = first && std::abs(*first - claimed_tau) < cfg.refine_tol;
  return {claimed_tau, first, amp, amp < cfg.amp_tol, is_first};
}

inline VerificationReport verify_solution(Triad const& triad, Spectrum const& s,
                                          double claimed_tau) {
  auto cfg = ZeroSearchConfig::defaults_for(s);
  cfg.t_max = std::max(cfg.t_max, claimed_tau + 10.0 * cfg.scan_step);
  return verify_solution(triad, s, claimed_tau, cfg);
}

}  // namespace qorth
