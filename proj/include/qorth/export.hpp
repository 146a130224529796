#pragma once

// CSV, JSON and SVG writers for diagram scans and simplex maps. Numbers are
// written in shortest round-trip form so identical inputs give identical bytes.
//
// CSV schemas
//   diagram: omega,omega21_tau,cell_type,r1,r2,r3
//   simplex: r1,r2,r3,alpha,class,omega
// I-b intersection cells carry their edge template ("1/2", "r", "1/2-r").

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "qorth/regions.hpp"

namespace qorth {

inline constexpr char const* kFormatVersion = "1.0.0";

inline std::string format_double(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  auto const [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

/// Header block shared by every JSON document.
struct ExportMetadata {
  std::string kind;
  unsigned long long seed = 0;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kFormatVersion;
    j["kind"] = kind;
    j["seed"] = seed;
    j["tolerances"] = {{"angle", kAngleTol},
                       {"denominator", kDenominatorTol},
                       {"classify", kClassifyTol},
                       {"alpha_equal", kQslClassTol},
                       {"orthogonality", kDefaultOrthoTol}};
    j["parameters"] = parameters;
    return j;
  }
};

namespace detail {

inline std::array<std::string, 3> cell_components(DiagramCell const& c) {
  struct Visitor {
    std::array<std::string, 3> operator()(EmptyCell const&) const { return {"", "", ""}; }
    std::array<std::string, 3> operator()(InteriorCell const& i) const {
      return {format_double(i.triad.r1()), format_double(i.triad.r2()),
              format_double(i.triad.r3())};
    }
    std::array<std::string, 3> operator()(BorderCell const& b) const {
      auto const t = b.triad();
      return {format_double(t.r1()), format_double(t.r2()), format_double(t.r3())};
    }
    std::array<std::string, 3> operator()(IntersectionCell const& x) const {
      switch (intersection_template(x.match.kind).half_level) {
        case 1: return {"1/2", "r", "1/2-r"};
        case 2: return {"r", "1/2", "1/2-r"};
        default: return {"r", "1/2-r", "1/2"};
      }
    }
  };
  return std::visit(Visitor{}, c.content);
}

}  // namespace detail

inline void write_diagram_csv(std::ostream& os, Diagram const& d) {
  os << "omega,omega21_tau,cell_type,r1,r2,r3\n";
  for (auto const& c : d.cells) {
    auto const r = detail::cell_components(c);
    os << format_double(c.omega_ratio) << ',' << format_double(c.omega21_tau) << ','
       << cell_type_name(c) << ',' << r[0] << ',' << r[1] << ',' << r[2] << '\n';
  }
}

inline void write_diagram_json(std::ostream& os, Diagram const& d, ExportMetadata meta) {
  meta.parameters["omega_range"] = {d.grid.omega_lo, d.grid.omega_hi};
  meta.parameters["tau_range"] = {d.grid.tau_lo, d.grid.tau_hi};
  meta.parameters["resolution"] = {d.grid.n_omega, d.grid.n_tau};
  os << "{\"metadata\":" << meta.to_json().dump() << ",\"cells\":[";
  bool first = true;
  for (auto const& c : d.cells) {
    auto const r = detail::cell_components(c);
    os << (first ? "" : ",") << "{\"omega\":" << format_double(c.omega_ratio)
       << ",\"omega21_tau\":" << format_double(c.omega21_tau) << ",\"cell_type\":\""
       << cell_type_name(c) << "\"";
    if (!c.is_empty()) {
      os << ",\"r\":[";
      for (std::size_t k = 0; k < 3; ++k) {
        bool const numeric = !r[k].empty() && (std::isdigit(static_cast<unsigned char>(r[k][0])) != 0) &&
                             r[k].find('/') == std::string::npos;
        os << (k ? "," : "") << (numeric ? r[k] : "\"" + r[k] + "\"");
      }
      os << "]";
    }
    os << "}";
    first = false;
  }
  os << "]}\n";
}

inline void write_simplex_csv(std::ostream& os, std::vector<SimplexPoint> const& pts) {
  os << "r1,r2,r3,alpha,class,omega\n";
  for (auto const& p : pts) {
    os << format_double(p.triad.r1()) << ',' << format_double(p.triad.r2()) << ','
       << format_double(p.triad.r3()) << ',' << format_double(p.alpha) << ','
       << to_string(p.alpha_class) << ',' << format_double(p.omega_ratio) << '\n';
  }
}

inline void write_simplex_json(std::ostream& os, std::vector<SimplexPoint> const& pts,
                               ExportMetadata const& meta) {
  os << "{\"metadata\":" << meta.to_json().dump() << ",\"points\":[";
  bool first = true;
  for (auto const& p : pts) {
    os << (first ? "" : ",") << "{\"r1\":" << format_double(p.triad.r1())
       << ",\"r2\":" << format_double(p.triad.r2()) << ",\"r3\":" << format_double(p.triad.r3())
       << ",\"alpha\":" << format_double(p.alpha) << ",\"class\":\"" << to_string(p.alpha_class)
       << "\",\"omega\":" << format_double(p.omega_ratio) << "}";
    first = false;
  }
  os << "]}\n";
}

// --- SVG ---------------------------------------------------------------------

namespace svg {

inline constexpr char const* kStripeFill = "#9ec5e8";
inline constexpr char const* kBlue = "#1f4fd6";
inline constexpr char const* kRed = "#d62728";
inline constexpr char const* kGreen = "#2ca02c";
inline constexpr char const* kCyan = "#00bcd4";
inline constexpr char const* kMagenta = "#d81b9c";

inline std::string num(double v) {
  // Two decimals keep files small and output stable.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double width = 900.0;
  double height = 640.0;
  double left = 70.0;
  double right = 20.0;
  double top = 20.0;
  double bottom = 60.0;
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right); }
  double py(double y) const {
    return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom);
  }
};

inline void polyline(std::ostream& os, std::vector<std::pair<double, double>> const& pts,
                     char const* color, double width, char const* dash = nullptr) {
  if (pts.size() < 2) return;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\"";
  if (dash) os << " stroke-dasharray=\"" << dash << "\"";
  os << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
  }
  os << "\"/>\n";
}

inline void marker(std::ostream& os, IntersectionKind kind, double x, double y) {
  switch (kind) {
    case IntersectionKind::Star: {
      os << "<polygon fill=\"#ffd400\" stroke=\"black\" stroke-width=\"0.8\" points=\"";
      for (int k = 0; k < 10; ++k) {
        double const rad = (k % 2 == 0) ? 7.0 : 3.0;
        double const a = -kPi / 2 + k * kPi / 5;
        os << (k ? " " : "") << num(x + rad * std::cos(a)) << ',' << num(y + rad * std::sin(a));
      }
      os << "\"/>\n";
      break;
    }
    case IntersectionKind::Triangle:
      os << "<polygon fill=\"#ff7f0e\" stroke=\"black\" stroke-width=\"0.8\" points=\""
         << num(x - 6) << ',' << num(y) << ' ' << num(x + 5) << ',' << num(y - 6) << ' '
         << num(x + 5) << ',' << num(y + 6) << "\"/>\n";
      break;
    case IntersectionKind::Square:
      os << "<rect fill=\"#9467bd\" stroke=\"black\" stroke-width=\"0.8\" x=\"" << num(x - 5)
         << "\" y=\"" << num(y - 5) << "\" width=\"10\" height=\"10\"/>\n";
      break;
  }
}

}  // namespace svg

/// Stripes from the scan, border curves and intersection markers from the
/// closed forms, and the tau_min curve dashed.
inline void write_diagram_svg(std::ostream& os, Diagram const& d) {
  auto const& g = d.grid;
  svg::Frame f;
  f.x_lo = g.omega_lo;
  f.x_hi = g.omega_hi;
  f.y_lo = g.tau_lo;
  f.y_hi = g.tau_hi;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(f.width)
     << "\" height=\"" << svg::num(f.height) << "\" viewBox=\"0 0 " << svg::num(f.width) << ' '
     << svg::num(f.height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << svg::num(f.left) << "\" y=\""
     << svg::num(f.top) << "\" width=\"" << svg::num(f.width - f.left - f.right) << "\" height=\""
     << svg::num(f.height - f.top - f.bottom) << "\"/></clipPath></defs>\n";
  os << "<g clip-path=\"url(#plot)\">\n";

  // Family-II interior, one rectangle per vertical run.
  double const hx = g.omega_step();
  double const hy = g.tau_step();
  for (int i = 0; i < g.n_omega; ++i) {
    int j = 0;
    while (j < g.n_tau) {
      if (!d.at(i, j).is_interior()) {
        ++j;
        continue;
      }
      int const start = j;
      while (j < g.n_tau && d.at(i, j).is_interior()) ++j;
      double const x0 = g.omega_lo + i * hx;
      double const y0 = g.tau_lo + start * hy;
      double const y1 = g.tau_lo + j * hy;
      os << "<rect fill=\"" << svg::kStripeFill << "\" x=\"" << svg::num(f.px(x0)) << "\" y=\""
         << svg::num(f.py(y1)) << "\" width=\"" << svg::num(f.px(x0 + hx) - f.px(x0) + 0.05)
         << "\" height=\"" << svg::num(f.py(y0) - f.py(y1)) << "\"/>\n";
    }
  }

  int const samples = 1200;
  auto curve = [&](auto&& fn) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k <= samples; ++k) {
      double const om = g.omega_lo + (g.omega_hi - g.omega_lo) * k / samples;
      if (om <= 0.0) continue;
      // Curves are monotone in Omega; clamped parts fall outside the clip box.
      double const y = std::clamp(fn(om), g.tau_lo - hy, g.tau_hi + hy);
      pts.emplace_back(f.px(om), f.py(y));
    }
    return pts;
  };
  auto const max_odd = static_cast<int>(g.tau_hi * (1.0 + g.omega_hi) / kPi) + 1;
  for (int l = 0; 2 * l + 1 <= max_odd; ++l) {
    double const odd = 2.0 * l + 1.0;
    svg::polyline(os, curve([odd](double om) { return odd * kPi / (1.0 + om); }), svg::kRed, 1.4);
    svg::polyline(os, curve([odd](double om) { return odd * kPi / om; }), svg::kGreen, 1.4);
    double const yb = odd * kPi;
    if (yb >= g.tau_lo && yb <= g.tau_hi) {
      svg::polyline(os, {{f.px(g.omega_lo), f.py(yb)}, {f.px(g.omega_hi), f.py(yb)}}, svg::kBlue, 2.0);
    }
    double const yd = (odd + 1.0) * kPi;
    if (yd >= g.tau_lo && yd <= g.tau_hi) {
      svg::polyline(os, {{f.px(g.omega_lo), f.py(yd)}, {f.px(g.omega_hi), f.py(yd)}}, svg::kBlue, 1.2,
                    "6,4");
    }
  }
  svg::polyline(os, curve([](double om) { return kPi / (1.0 + om); }), "#7a0000", 1.6, "5,3");
  os << "</g>\n";

  // I-b markers at their analytic coordinates.
  for (int l = 0; (2 * l + 1) * kPi <= g.tau_hi + 1e-12; ++l) {
    double const odd = 2.0 * l + 1.0;
    for (int lp = 0; 2.0 * lp / odd <= g.omega_hi; ++lp) {
      double const om_star = 2.0 * (lp + 1) / odd;
      double const om_tri = (2.0 * lp + 1.0) / odd;
      if (om_star > g.omega_lo && om_star <= g.omega_hi) {
        svg::marker(os, IntersectionKind::Star, f.px(om_star), f.py(odd * kPi));
      }
      if (om_tri > g.omega_lo && om_tri <= g.omega_hi) {
        svg::marker(os, IntersectionKind::Triangle, f.px(om_tri), f.py(odd * kPi));
      }
    }
  }
  for (int l = 0; 2.0 * (l + 1) * kPi <= g.tau_hi + 1e-12; ++l) {
    double const even = 2.0 * (l + 1);
    for (int lp = 0; (2.0 * lp + 1.0) / even <= g.omega_hi; ++lp) {
      double const om = (2.0 * lp + 1.0) / even;
      if (om > g.omega_lo) svg::marker(os, IntersectionKind::Square, f.px(om), f.py(even * kPi));
    }
  }

  // Axes.
  double const x_axis = f.height - f.bottom;
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">"
     << "<rect x=\"" << svg::num(f.left) << "\" y=\"" << svg::num(f.top) << "\" width=\""
     << svg::num(f.width - f.left - f.right) << "\" height=\"" << svg::num(f.height - f.top - f.bottom)
     << "\"/></g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int k = 0; k <= 6; ++k) {
    double const om = g.omega_lo + (g.omega_hi - g.omega_lo) * k / 6;
    os << "<text x=\"" << svg::num(f.px(om)) << "\" y=\"" << svg::num(x_axis + 16)
       << "\" text-anchor=\"middle\">" << svg::num(om) << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    double const y = g.tau_lo + (g.tau_hi - g.tau_lo) * k / 4;
    os << "<text x=\"" << svg::num(f.left - 6) << "\" y=\"" << svg::num(f.py(y) + 4)
       << "\" text-anchor=\"end\">" << svg::num(y) << "</text>\n";
  }
  os << "<text x=\"" << svg::num((f.left + f.width - f.right) / 2) << "\" y=\""
     << svg::num(f.height - 18) << "\" text-anchor=\"middle\">&#937; = &#969;32/&#969;21</text>\n";
  os << "<text x=\"18\" y=\"" << svg::num((f.top + x_axis) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << svg::num((f.top + x_axis) / 2)
     << ")\">&#969;21 &#964;</text>\n";
  os << "</g>\n</svg>\n";
}

/// Barycentric map of the simplex: MT points cyan, ML magenta, EQUAL black.
inline void write_simplex_svg(std::ostream& os, std::vector<SimplexPoint> const& pts) {
  double const w = 720.0, h = 660.0;
  // Vertices of the probability simplex for r1 = 1, r2 = 1, r3 = 1.
  std::array<std::pair<double, double>, 3> const v{{{60.0, 600.0}, {660.0, 600.0}, {360.0, 80.4}}};
  auto project = [&](double r1, double r2, double r3) {
    return std::pair{r1 * v[0].first + r2 * v[1].first + r3 * v[2].first,
                     r1 * v[0].second + r2 * v[1].second + r3 * v[2].second};
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(w) << "\" height=\""
     << svg::num(h) << "\" viewBox=\"0 0 " << svg::num(w) << ' ' << svg::num(h) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto tri = [&](std::array<std::pair<double, double>, 3> const& p, char const* fill,
                 char const* stroke) {
    os << "<polygon fill=\"" << fill << "\" stroke=\"" << stroke << "\" points=\"";
    for (std::size_t k = 0; k < 3; ++k) {
      os << (k ? " " : "") << svg::num(p[k].first) << ',' << svg::num(p[k].second);
    }
    os << "\"/>\n";
  };
  tri(v, "#e8f1fb", "#7f9fbf");
  tri({project(0.5, 0.5, 0.0), project(0.5, 0.0, 0.5), project(0.0, 0.5, 0.5)}, "none", "black");
  for (auto const& p : pts) {
    auto const [x, y] = project(p.triad.r1(), p.triad.r2(), p.triad.r3());
    char const* color = p.alpha_class == QslClass::MT   ? svg::kCyan
                        : p.alpha_class == QslClass::ML ? svg::kMagenta
                                                        : "black";
    double const radius = p.source == SimplexSource::Vertex ? 4.0 : 1.1;
    os << "<circle cx=\"" << svg::num(x) << "\" cy=\"" << svg::num(y) << "\" r=\""
       << svg::num(radius) << "\" fill=\"" << color << "\"/>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"13\">\n"
     << "<text x=\"" << svg::num(v[0].first) << "\" y=\"" << svg::num(v[0].second + 20)
     << "\" text-anchor=\"middle\">r1 = 1</text>\n"
     << "<text x=\"" << svg::num(v[1].first) << "\" y=\"" << svg::num(v[1].second + 20)
     << "\" text-anchor=\"middle\">r2 = 1</text>\n"
     << "<text x=\"" << svg::num(v[2].first) << "\" y=\"" << svg::num(v[2].second - 10)
     << "\" text-anchor=\"middle\">r3 = 1</text>\n"
     << "<text x=\"20\" y=\"24\" fill=\"" << svg::kCyan << "\">&#945; &lt; 1 (MT)</text>\n"
     << "<text x=\"20\" y=\"42\" fill=\"" << svg::kMagenta << "\">&#945; &gt; 1 (ML)</text>\n"
     << "</g>\n</svg>\n";
}

}  // namespace qorth
