#pragma once

// Geometry of the solution diagram in the (Omega, omega21 tau) plane and of
// the orthogonality simplex. Family-II solutions fill "zebra stripes"; their
// borders carry the I-qubit triads and the border intersections the I-b ones.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qorth/core.hpp"
#include "qorth/families.hpp"
#include "qorth/parallel.hpp"
#include "qorth/qsl.hpp"

namespace qorth {

/// Global minimal orthogonality time pi / omega31.
inline double tau_min(Spectrum const& s) { return kPi / s.omega31(); }

enum class StripeRegime { Plateau, Decay };

inline std::string to_string(StripeRegime r) {
  return r == StripeRegime::Plateau ? "PLATEAU" : "DECAY";
}

/// Bounds on omega21 tau of the l-th stripe inside 0 < omega21 tau < pi.
struct StripeBounds {
  int l;
  double lower;
  double upper;
  StripeRegime regime;

  bool contains(double omega21_tau) const { return omega21_tau > lower && omega21_tau < upper; }
};

/// Lower bound (2l+1) pi / (1 + Omega); upper bound pi for 2l <= Omega <= 2l+1
/// and (2l+1) pi / Omega beyond. Empty when the stripe has not opened yet.
inline std::optional<StripeBounds> stripe_bounds(int l, double omega_ratio) {
  if (l < 0) throw ValidationError("stripe index must be >= 0");
  if (!(omega_ratio > 0.0)) throw ValidationError("Omega must be > 0");
  double const odd = 2.0 * l + 1.0;
  double const lower = odd * kPi / (1.0 + omega_ratio);
  StripeBounds b{l, lower, 0.0, StripeRegime::Plateau};
  if (omega_ratio <= odd) {
    b.upper = kPi;
  } else {
    b.upper = odd * kPi / omega_ratio;
    b.regime = StripeRegime::Decay;
  }
  if (omega_ratio < 2.0 * l || !(b.lower < b.upper)) return std::nullopt;
  return b;
}

/// All non-empty stripes at this Omega, ordered by l.
inline std::vector<StripeBounds> stripes_at(double omega_ratio) {
  std::vector<StripeBounds> out;
  for (int l = 0; 2.0 * l < omega_ratio || l == 0; ++l) {
    if (auto b = stripe_bounds(l, omega_ratio)) out.push_back(*b);
  }
  return out;
}

/// Index of the stripe strictly containing omega21 tau, if any.
inline std::optional<int> stripe_containing(double omega21_tau, double omega_ratio) {
  for (auto const& b : stripes_at(omega_ratio)) {
    if (b.contains(omega21_tau)) return b.l;
  }
  return std::nullopt;
}

/// Omega at which the Family-II triad found at (omega21 tau, Omega) reappears
/// in stripe l: every sine in the closed form shifts by 2 pi l.
inline double replicated_ratio(double omega_ratio, double omega21_tau, int l) {
  return omega_ratio + kTwoPi * l / omega21_tau;
}

// --- Border curves --------------------------------------------------------

/// BLUE: omega21 tau = (2l+1) pi, triad {1/2, 1/2, 0}.
/// RED: omega31 tau = (2l+1) pi, triad {1/2, 0, 1/2}.
/// GREEN: omega32 tau = (2l+1) pi, triad {0, 1/2, 1/2}.
enum class BorderKind { Blue, Red, Green };

inline std::string to_string(BorderKind k) {
  switch (k) {
    case BorderKind::Blue: return "blue";
    case BorderKind::Red: return "red";
    case BorderKind::Green: return "green";
  }
  return "?";
}

inline Triad border_triad(BorderKind k) {
  switch (k) {
    case BorderKind::Blue: return qubit_triad(2, 1);
    case BorderKind::Red: return qubit_triad(3, 1);
    case BorderKind::Green: return qubit_triad(3, 2);
  }
  throw ValidationError("unknown border kind");
}

struct BorderMatch {
  BorderKind kind;
  int l;
  /// omega21 tau of the curve at this Omega.
  double curve;
  double distance;
};

/// omega21 tau = (2l+1) pi / scale for the odd multiple nearest to `x`.
inline std::optional<BorderMatch> nearest_odd_curve(BorderKind kind, double x, double scale) {
  double const y = x * scale / kPi;
  auto l = static_cast<std::int64_t>(std::llround((y - 1.0) / 2.0));
  if (l < 0) l = 0;
  double const curve = (2.0 * static_cast<double>(l) + 1.0) * kPi / scale;
  return BorderMatch{kind, static_cast<int>(l), curve, std::abs(x - curve)};
}

/// Border curves passing within `tol` (in omega21 tau) of the point, nearest
/// first. Empty when the point lies on no border.
inline std::vector<BorderMatch> border_kind(double omega21_tau, double omega_ratio,
                                            double tol = kAngleTol) {
  if (!(omega21_tau > 0.0) || !(omega_ratio > 0.0)) {
    throw ValidationError("diagram coordinates must be > 0");
  }
  std::vector<BorderMatch> out;
  for (auto const& [kind, scale] : {std::pair{BorderKind::Blue, 1.0},
                                    std::pair{BorderKind::Red, 1.0 + omega_ratio},
                                    std::pair{BorderKind::Green, omega_ratio}}) {
    auto m = nearest_odd_curve(kind, omega21_tau, scale);
    if (m && m->distance <= tol) out.push_back(*m);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](auto const& a, auto const& b) { return a.distance < b.distance; });
  return out;
}

// --- Intersections (I-b points) --------------------------------------------

/// STAR: {1/2, r, 1/2-r}, TRIANGLE: {r, 1/2, 1/2-r}, SQUARE: {r, 1/2-r, 1/2}.
enum class IntersectionKind { Star, Triangle, Square };

inline std::string to_string(IntersectionKind k) {
  switch (k) {
    case IntersectionKind::Star: return "star";
    case IntersectionKind::Triangle: return "triangle";
    case IntersectionKind::Square: return "square";
  }
  return "?";
}

inline IbTemplate intersection_template(IntersectionKind k) {
  switch (k) {
    case IntersectionKind::Star: return {1};
    case IntersectionKind::Triangle: return {2};
    case IntersectionKind::Square: return {3};
  }
  throw ValidationError("unknown intersection kind");
}

struct IntersectionMatch {
  IntersectionKind kind;
  int l;
  int lp;
  double omega21_tau;
  double omega_ratio;
};

/// I-b point near (omega21 tau, Omega), with l, l' <= max_index:
///   STAR      omega21 tau = (2l+1) pi,   Omega = 2(l'+1) / (2l+1)
///   TRIANGLE  omega21 tau = (2l+1) pi,   Omega = (2l'+1) / (2l+1)
///   SQUARE    omega21 tau = 2(l+1) pi,   Omega = (2l'+1) / (2(l+1))
inline std::optional<IntersectionMatch> intersection_kind(double omega21_tau, double omega_ratio,
                                                          double tol = kAngleTol,
                                                          double omega_tol = -1.0,
                                                          int max_index = 1000) {
  if (!(omega21_tau > 0.0) || !(omega_ratio > 0.0)) {
    throw ValidationError("diagram coordinates must be > 0");
  }
  if (omega_tol < 0.0) omega_tol = tol;
  std::optional<IntersectionMatch> best;
  double best_dist = 0.0;
  auto consider = [&](IntersectionKind kind, int l, int lp, double x, double om) {
    if (l < 0 || lp < 0 || l > max_index || lp > max_index) return;
    if (std::abs(omega21_tau - x) > tol || std::abs(omega_ratio - om) > omega_tol) return;
    double const d = std::hypot((omega21_tau - x) / std::max(tol, 1e-300),
                                (omega_ratio - om) / std::max(omega_tol, 1e-300));
    if (!best || d < best_dist) {
      best = IntersectionMatch{kind, l, lp, x, om};
      best_dist = d;
    }
  };
  double const y = omega21_tau / kPi;
  // Odd multiples of pi: stars and triangles.
  {
    int const l = static_cast<int>(std::max<std::int64_t>(0, std::llround((y - 1.0) / 2.0)));
    double const odd = 2.0 * l + 1.0;
    double const x = odd * kPi;
    int const lp_star = static_cast<int>(std::llround(omega_ratio * odd / 2.0 - 1.0));
    consider(IntersectionKind::Star, l, lp_star, x, 2.0 * (lp_star + 1) / odd);
    int const lp_tri = static_cast<int>(std::llround((omega_ratio * odd - 1.0) / 2.0));
    consider(IntersectionKind::Triangle, l, lp_tri, x, (2.0 * lp_tri + 1.0) / odd);
  }
  // Even multiples of pi: squares.
  {
    int const l = static_cast<int>(std::max<std::int64_t>(0, std::llround(y / 2.0 - 1.0)));
    double const even = 2.0 * (l + 1);
    int const lp = static_cast<int>(std::llround((omega_ratio * even - 1.0) / 2.0));
    consider(IntersectionKind::Square, l, lp, even * kPi, (2.0 * lp + 1.0) / even);
  }
  return best;
}

// --- Diagram scan -----------------------------------------------------------

struct EmptyCell {
  friend bool operator==(EmptyCell const&, EmptyCell const&) = default;
};
struct InteriorCell {
  Triad triad;
};
struct BorderCell {
  BorderKind kind;
  int l;
  /// Exact omega21 tau of the rasterized curve in this column.
  double curve;
  Triad triad() const { return border_triad(kind); }
};
struct IntersectionCell {
  IntersectionMatch match;
};

using CellContent = std::variant<EmptyCell, InteriorCell, BorderCell, IntersectionCell>;

struct DiagramCell {
  double omega_ratio;
  double omega21_tau;
  CellContent content;

  bool is_empty() const { return std::holds_alternative<EmptyCell>(content); }
  bool is_interior() const { return std::holds_alternative<InteriorCell>(content); }
};

inline std::string cell_type_name(DiagramCell const& c) {
  struct Visitor {
    std::string operator()(EmptyCell const&) const { return "empty"; }
    std::string operator()(InteriorCell const&) const { return "interior_II"; }
    std::string operator()(BorderCell const& b) const { return "border_" + to_string(b.kind); }
    std::string operator()(IntersectionCell const& i) const {
      return "intersection_" + to_string(i.match.kind);
    }
  };
  return std::visit(Visitor{}, c.content);
}

/// Grid over (omega_lo, omega_hi] x (tau_lo, tau_hi] in (Omega, omega21 tau),
/// sampled at cell centers.
struct DiagramGrid {
  double omega_lo = 0.0;
  double omega_hi = 6.0;
  double tau_lo = 0.0;
  double tau_hi = kPi;
  int n_omega = 600;
  int n_tau = 600;
  int max_index = 1000;
  unsigned threads = 0;

  double omega_step() const { return (omega_hi - omega_lo) / n_omega; }
  double tau_step() const { return (tau_hi - tau_lo) / n_tau; }
  double omega_center(int i) const { return omega_lo + (i + 0.5) * omega_step(); }
  double tau_center(int j) const { return tau_lo + (j + 0.5) * tau_step(); }

  void validate() const {
    if (!(omega_lo >= 0.0 && omega_hi > omega_lo && tau_lo >= 0.0 && tau_hi > tau_lo)) {
      throw ValidationError("diagram ranges must be positive and non-empty");
    }
    if (n_omega < 1 || n_tau < 1) throw ValidationError("diagram resolution must be >= 1");
  }
};

/// Scan result; cells are stored row-major with rows along omega21 tau.
struct Diagram {
  DiagramGrid grid;
  std::vector<DiagramCell> cells;

  DiagramCell const& at(int i_omega, int j_tau) const {
    return cells[static_cast<std::size_t>(j_tau) * static_cast<std::size_t>(grid.n_omega) +
                 static_cast<std::size_t>(i_omega)];
  }

  /// Cell whose area contains the point; nullopt outside the grid.
  std::optional<std::pair<int, int>> index_of(double omega_ratio, double omega21_tau) const {
    auto i = static_cast<int>(std::floor((omega_ratio - grid.omega_lo) / grid.omega_step()));
    auto j = static_cast<int>(std::floor((omega21_tau - grid.tau_lo) / grid.tau_step()));
    // Upper edges are inclusive.
    if (i == grid.n_omega && omega_ratio <= grid.omega_hi) --i;
    if (j == grid.n_tau && omega21_tau <= grid.tau_hi) --j;
    if (i < 0 || j < 0 || i >= grid.n_omega || j >= grid.n_tau) return std::nullopt;
    return std::pair{i, j};
  }
};

/// Classifies one diagram point. Intersections take precedence over borders,
/// borders over the Family-II interior.
inline CellContent classify_point(double omega_ratio, double omega21_tau, double tau_tol,
                                  double omega_tol, int max_index) {
  if (auto x = intersection_kind(omega21_tau, omega_ratio, tau_tol, omega_tol, max_index)) {
    return IntersectionCell{*x};
  }
  auto borders = border_kind(omega21_tau, omega_ratio, tau_tol);
  if (!borders.empty()) {
    auto const& b = borders.front();
    return BorderCell{b.kind, b.l, b.curve};
  }
  auto const out = solve_family2(Spectrum::from_ratio(1.0, omega_ratio), omega21_tau);
  if (out.status == Family2Status::Solution) return InteriorCell{*out.triad};
  return EmptyCell{};
}

/// Rasterizes the solution diagram with omega21 = 1. Border and intersection
/// tolerances are half a grid step along each axis.
inline Diagram scan_diagram(DiagramGrid const& grid) {
  grid.validate();
  Diagram d{grid, {}};
  std::size_t const n = static_cast<std::size_t>(grid.n_omega) * static_cast<std::size_t>(grid.n_tau);
  d.cells.assign(n, DiagramCell{0.0, 0.0, EmptyCell{}});
  // Closed on both sides, so a curve on a cell edge marks both neighbours.
  double const tau_tol = 0.5 * grid.tau_step() * (1.0 + 1e-9);
  double const omega_tol = 0.5 * grid.omega_step() * (1.0 + 1e-9);
  parallel_for(
      static_cast<std::size_t>(grid.n_tau),
      [&](std::size_t j) {
        double const x = grid.tau_center(static_cast<int>(j));
        for (int i = 0; i < grid.n_omega; ++i) {
          double const om = grid.omega_center(i);
          d.cells[j * static_cast<std::size_t>(grid.n_omega) + static_cast<std::size_t>(i)] =
              DiagramCell{om, x, classify_point(om, x, tau_tol, omega_tol, grid.max_index)};
        }
      },
      grid.threads);
  return d;
}

// --- Simplex map ------------------------------------------------------------

enum class SimplexSource { Interior, Edge, Vertex };

struct SimplexPoint {
  Triad triad;
  double alpha;
  QslClass alpha_class;
  double omega_ratio;
  SimplexSource source;
  /// Level pinned to 1/2 for edge points, zero level for vertices.
  int level = 0;
};

/// Family-II triads sampled at `tau_resolution` points inside every stripe of
/// every Omega, plus the three I-b edges (edge closed forms) and the three
/// I-qubit vertices. Output order follows the input order of Omega.
inline std::vector<SimplexPoint> scan_simplex(std::vector<double> const& omega_samples,
                                              int tau_resolution) {
  if (tau_resolution < 1) throw ValidationError("tau resolution must be >= 1");
  std::vector<SimplexPoint> out;
  for (double om : omega_samples) {
    if (!(om > 0.0)) throw ValidationError("Omega samples must be > 0");
    Spectrum const s = Spectrum::from_ratio(1.0, om);
    for (auto const& b : stripes_at(om)) {
      double const h = (b.upper - b.lower) / tau_resolution;
      for (int k = 0; k < tau_resolution; ++k) {
        auto const res = solve_family2(s, b.lower + (k + 0.5) * h);
        if (res.status != Family2Status::Solution) continue;
        double const a = alpha(*res.triad, om);
        out.push_back({*res.triad, a, classify_alpha(a), om, SimplexSource::Interior, 0});
      }
    }
    for (int half = 1; half <= 3; ++half) {
      IbTemplate const edge{half};
      for (int k = 0; k < tau_resolution; ++k) {
        double const r = 0.5 * (k + 0.5) / tau_resolution;
        double const a = edge_alpha(half, r, om);
        out.push_back({edge.triad(r), a, classify_alpha(a), om, SimplexSource::Edge, half});
      }
    }
    for (int zero = 1; zero <= 3; ++zero) {
      int const i = zero == 3 ? 2 : 3;
      int const j = zero == 1 ? 2 : 1;
      out.push_back({qubit_triad(i, j), 1.0, QslClass::Equal, om, SimplexSource::Vertex, zero});
    }
  }
  return out;
}

}  // namespace qorth
