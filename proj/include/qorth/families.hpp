#pragma once

// Closed-form solutions of the orthogonality condition sum_i r_i e^{-i E_i tau} = 0
// and the classification of triads into the families that solve it:
//
//   I-qubit  one weight is zero, the other two are 1/2;
//   I-b      one weight is exactly 1/2, all weights nonzero (rational Omega only);
//   II       all weights in (0, 1/2), r_i = sin(omega_jk tau) / D with (i,j,k) cyclic.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qorth/core.hpp"

namespace qorth {

/// Band on |sin(omega_ij tau)| that separates Family II from the boundary cases.
inline constexpr double kAngleTol = 1e-9;
/// Band on |D| below which the sine-ratio formula has no solution.
inline constexpr double kDenominatorTol = 1e-9;
inline constexpr double kClassifyTol = 1e-9;

enum class Family { IQubit, IB, II, Stationary, NotClassified };

/// Family plus the distinguished level: the zero weight (I-qubit), the weight
/// pinned to 1/2 (I-b) or the weight equal to 1 (stationary). Zero otherwise.
struct FamilyLabel {
  Family family;
  int level = 0;

  friend bool operator==(FamilyLabel const&, FamilyLabel const&) = default;
};

inline std::string to_string(Family f) {
  switch (f) {
    case Family::IQubit: return "I_QUBIT";
    case Family::IB: return "I_B";
    case Family::II: return "II";
    case Family::Stationary: return "STATIONARY";
    case Family::NotClassified: return "NOT_CLASSIFIED";
  }
  return "?";
}

inline std::string to_string(FamilyLabel const& label) {
  std::string s = to_string(label.family);
  switch (label.family) {
    case Family::IQubit: return s + "(r" + std::to_string(label.level) + "=0)";
    case Family::IB: return s + "(r" + std::to_string(label.level) + "=1/2)";
    case Family::Stationary: return s + "(r" + std::to_string(label.level) + "=1)";
    default: return s;
  }
}

/// Unique family of a triad. Every valid triad maps to exactly one label.
inline FamilyLabel classify_triad(Triad const& triad, double tol = kClassifyTol) {
  auto const& r = triad.values();
  for (int i = 0; i < 3; ++i) {
    if (r[i] >= 1.0 - tol) return {Family::Stationary, i + 1};
  }
  auto near_half = [tol](double x) { return std::abs(x - 0.5) <= tol; };
  for (int k = 0; k < 3; ++k) {
    if (r[k] <= tol) {
      int const i = (k + 1) % 3;
      int const j = (k + 2) % 3;
      if (near_half(r[i]) && near_half(r[j])) return {Family::IQubit, k + 1};
      // Unequal two-level superpositions never reach an orthogonal state.
      return {Family::NotClassified, 0};
    }
  }
  for (int h = 0; h < 3; ++h) {
    if (near_half(r[h])) return {Family::IB, h + 1};
  }
  if (r[0] < 0.5 && r[1] < 0.5 && r[2] < 0.5) return {Family::II, 0};
  return {Family::NotClassified, 0};
}

/// Sine-ratio components before any range check. They sum to one whenever
/// D != 0.
inline std::array<double, 3> family2_components(Spectrum const& s, double tau) {
  double const s23 = std::sin(s.omega(2, 3) * tau);
  double const s31 = std::sin(s.omega(3, 1) * tau);
  double const s12 = std::sin(s.omega(1, 2) * tau);
  double const d = s31 + s12 + s23;
  return {s23 / d, s31 / d, s12 / d};
}

enum class Family2Status { Solution, NoSolution, Boundary };

struct Family2Outcome {
  Family2Status status;
  std::optional<Triad> triad;
};

/// Non-throwing form of family2_triad, for scanners.
inline Family2Outcome solve_family2(Spectrum const& s, double tau, double angle_tol = kAngleTol) {
  if (!std::isfinite(tau) || !(tau > 0.0)) throw ValidationError("tau must be > 0");
  double const s21 = std::sin(s.omega21() * tau);
  double const s32 = std::sin(s.omega32() * tau);
  double const s31 = std::sin(s.omega31() * tau);
  if (std::abs(s21) < angle_tol || std::abs(s32) < angle_tol || std::abs(s31) < angle_tol) {
    return {Family2Status::Boundary, std::nullopt};
  }
  // D = sin(w31 t) + sin(w12 t) + sin(w23 t)
  double const d = s31 - s21 - s32;
  if (std::abs(d) < kDenominatorTol) return {Family2Status::NoSolution, std::nullopt};
  double const r1 = -s32 / d;
  double const r2 = s31 / d;
  double const r3 = -s21 / d;
  if (!(r1 > 0.0 && r1 < 1.0 && r2 > 0.0 && r2 < 1.0 && r3 > 0.0 && r3 < 1.0)) {
    return {Family2Status::NoSolution, std::nullopt};
  }
  return {Family2Status::Solution, Triad(r1, r2, r3)};
}

/// Family-II triad orthogonal at `tau`, or nullopt when no such triad exists.
/// Throws BoundaryCaseError when some omega_ij tau is a multiple of pi.
inline std::optional<Triad> family2_triad(Spectrum const& s, double tau,
                                          double angle_tol = kAngleTol) {
  auto out = solve_family2(s, tau, angle_tol);
  if (out.status == Family2Status::Boundary) {
    throw BoundaryCaseError(
        "omega_ij * tau is a multiple of pi; use the Family-I solvers at this tau");
  }
  return out.triad;
}

/// Equally weighted qubit on levels (i, j), i > j.
inline Triad qubit_triad(int i, int j) {
  if (!(i > j && j >= 1 && i <= 3)) throw ValidationError("qubit pair must satisfy 3 >= i > j >= 1");
  std::array<double, 3> r{0.0, 0.0, 0.0};
  r[static_cast<std::size_t>(i - 1)] = 0.5;
  r[static_cast<std::size_t>(j - 1)] = 0.5;
  return Triad(r[0], r[1], r[2]);
}

struct FamilyITimes {
  int i;
  int j;
  std::vector<double> times;
};

/// The first `count` orthogonality times (2n+1) pi / omega_ij of the (i, j) qubit.
inline FamilyITimes family1_qubit_times(int i, int j, Spectrum const& s, int count) {
  if (!(i > j && j >= 1 && i <= 3)) throw ValidationError("qubit pair must satisfy 3 >= i > j >= 1");
  if (count < 1) throw ValidationError("count must be >= 1");
  FamilyITimes out{i, j, {}};
  out.times.reserve(static_cast<std::size_t>(count));
  double const w = s.omega(i, j);
  for (int n = 0; n < count; ++n) out.times.push_back((2 * n + 1) * kPi / w);
  return out;
}

enum class Parity { NOddMEven, NEvenMOdd, NOddMOdd };

inline std::string to_string(Parity p) {
  switch (p) {
    case Parity::NOddMEven: return "n_odd_m_even";
    case Parity::NEvenMOdd: return "n_even_m_odd";
    case Parity::NOddMOdd: return "n_odd_m_odd";
  }
  return "?";
}

/// omega32 / omega21 = m / n with gcd(m, n) = 1.
struct RationalRelation {
  std::int64_t m;
  std::int64_t n;
  Parity parity;
};

inline RationalRelation make_relation(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw ValidationError("relation requires positive m and n");
  if (std::gcd(m, n) != 1) throw ValidationError("relation requires coprime m and n");
  bool const n_odd = n % 2 != 0;
  bool const m_odd = m % 2 != 0;
  // Both even is excluded by coprimality.
  Parity p = n_odd ? (m_odd ? Parity::NOddMOdd : Parity::NOddMEven) : Parity::NEvenMOdd;
  return {m, n, p};
}

/// Continued-fraction search for Omega = m/n with n <= max_denominator and
/// |Omega - m/n| < tol.
inline std::optional<RationalRelation> detect_rational_relation(Spectrum const& s,
                                                                std::int64_t max_denominator = 64,
                                                                double tol = 1e-9) {
  if (max_denominator < 1) throw ValidationError("max_denominator must be >= 1");
  double const x = s.ratio();
  // Convergents h_k / k_k.
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    double const a_real = std::floor(rest);
    if (a_real > 1e15) break;
    auto const a = static_cast<std::int64_t>(a_real);
    std::int64_t const h = a * h_prev + h_prev2;
    std::int64_t const k = a * k_prev + k_prev2;
    if (k > max_denominator) break;
    if (h > 0 && std::abs(x - static_cast<double>(h) / static_cast<double>(k)) < tol) {
      return make_relation(h, k);
    }
    double const frac = rest - a_real;
    if (frac <= 0.0) break;
    rest = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

/// One of the three I-b edges: the level pinned to 1/2 and the arrangement
/// of the free parameter r in (0, 1/2).
struct IbTemplate {
  int half_level;

  Triad triad(double r) const {
    if (!(r > 0.0 && r < 0.5)) throw DomainError("I-b parameter r must lie in (0, 1/2)");
    switch (half_level) {
      case 1: return Triad(0.5, r, 0.5 - r);
      case 2: return Triad(r, 0.5, 0.5 - r);
      case 3: return Triad(r, 0.5 - r, 0.5);
      default: throw ValidationError("half level must be 1, 2 or 3");
    }
  }

  std::string describe() const {
    switch (half_level) {
      case 1: return "{1/2, r, 1/2-r}";
      case 2: return "{r, 1/2, 1/2-r}";
      case 3: return "{r, 1/2-r, 1/2}";
      default: return "?";
    }
  }
};

inline IbTemplate ib_template_for(Parity p) {
  switch (p) {
    case Parity::NOddMEven: return {1};
    case Parity::NEvenMOdd: return {3};
    case Parity::NOddMOdd: return {2};
  }
  throw ValidationError("unknown parity");
}

struct IbSolution {
  IbTemplate edge;
  double tau;
  RationalRelation relation;
};

/// I-b edge selected by the parity of the relation, reached at tau = n pi / omega21.
inline IbSolution family1b_solutions(RationalRelation const& rel, Spectrum const& s) {
  if (rel.m < 1 || rel.n < 1 || std::gcd(rel.m, rel.n) != 1) {
    throw ValidationError("relation must have positive coprime m, n");
  }
  double const target = static_cast<double>(rel.m) / static_cast<double>(rel.n);
  if (std::abs(s.ratio() - target) > 1e-6 * std::max(1.0, target)) {
    throw ValidationError("spectrum ratio does not match the relation m/n");
  }
  auto const checked = make_relation(rel.m, rel.n);
  return {ib_template_for(checked.parity), static_cast<double>(rel.n) * kPi / s.omega21(),
          checked};
}

/// Equally spaced levels (omega21 = omega32 = omega):
/// r1 = r3 = 1 / (2 (1 - cos w tau)), r2 = cos w tau / (cos w tau - 1).
inline std::optional<Triad> equally_spaced_triad(double omega, double tau) {
  if (!(omega > 0.0) || !(tau > 0.0) || !std::isfinite(omega * tau)) {
    throw ValidationError("omega and tau must be > 0");
  }
  double const x = omega * tau;
  if (std::abs(std::sin(0.5 * x)) < kAngleTol) {
    throw DomainError("cos(omega tau) = 1: no orthogonal state at this tau");
  }
  // 1 - cos x = 2 sin^2(x/2) keeps precision near x = 2 pi k.
  double const one_minus_cos = 2.0 * std::sin(0.5 * x) * std::sin(0.5 * x);
  double const c = std::cos(x);
  double const r1 = 1.0 / (2.0 * one_minus_cos);
  double const r2 = -c / one_minus_cos;
  double const r3 = r1;
  if (!(r1 > 0.0 && r1 < 1.0 && r2 > 0.0 && r2 < 1.0)) return std::nullopt;
  return Triad(r1, r2, r3);
}

/// Every triad that is orthogonal at exactly `tau` for the given spectrum.
struct OrthogonalSet {
  enum class Kind { FamilyII, Boundary, None };
  Kind kind = Kind::None;
  std::optional<Triad> family2;
  /// Qubit pairs (i, j) whose odd multiple of pi / omega_ij equals tau.
  std::vector<std::pair<int, int>> qubits;
  std::optional<IbSolution> ib;
  /// omega_ij tau / pi rounded, for the pairs (2,1), (3,2), (3,1); -1 when off-grid.
  std::array<std::int64_t, 3> multiples{-1, -1, -1};

  bool empty() const { return !family2 && qubits.empty() && !ib; }
};

inline OrthogonalSet orthogonal_states_at(Spectrum const& s, double tau,
                                          double angle_tol = kAngleTol) {
  if (!std::isfinite(tau) || !(tau > 0.0)) throw ValidationError("tau must be > 0");
  OrthogonalSet out;
  auto const outcome = solve_family2(s, tau, angle_tol);
  if (outcome.status != Family2Status::Boundary) {
    out.kind = outcome.triad ? OrthogonalSet::Kind::FamilyII : OrthogonalSet::Kind::None;
    out.family2 = outcome.triad;
    return out;
  }
  out.kind = OrthogonalSet::Kind::Boundary;
  std::array<double, 3> const angles{s.omega21() * tau, s.omega32() * tau, s.omega31() * tau};
  std::array<bool, 3> on{};
  for (std::size_t p = 0; p < 3; ++p) {
    on[p] = std::abs(std::sin(angles[p])) < angle_tol;
    if (on[p]) out.multiples[p] = std::llround(angles[p] / kPi);
  }
  constexpr std::array<std::pair<int, int>, 3> pairs{{{2, 1}, {3, 2}, {3, 1}}};
  for (std::size_t p = 0; p < 3; ++p) {
    if (on[p] && out.multiples[p] % 2 != 0) out.qubits.push_back(pairs[p]);
  }
  if (on[0] + on[1] + on[2] >= 2) {
    std::int64_t n = on[0] ? out.multiples[0] : out.multiples[2] - out.multiples[1];
    std::int64_t m = on[1] ? out.multiples[1] : out.multiples[2] - out.multiples[0];
    if (n >= 1 && m >= 1 && !(n % 2 == 0 && m % 2 == 0)) {
      std::int64_t const g = std::gcd(n, m);
      auto rel = make_relation(m / g, n / g);
      // Odd rescaling keeps the parity of the reduced pair.
      out.ib = IbSolution{ib_template_for(rel.parity), tau, rel};
    }
  }
  return out;
}

}  // namespace qorth
