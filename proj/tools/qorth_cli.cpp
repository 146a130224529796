// qorth: orthogonality times, family classification, speed limits and
// solution-diagram scans for three-level systems.
//
// Exit codes: 0 success, 1 usage or validation error, 2 no solution.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qorth/export.hpp"
#include "qorth/oracle.hpp"
#include "qorth/qsl.hpp"
#include "qorth/regions.hpp"

using namespace qorth;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSolution = 2;

/// Decimal input such as 3.14159265 sits a few 1e-9 away from pi; the
/// command line accepts that as a boundary angle.
constexpr double kCliAngleTol = 1e-7;

struct Output {
  std::string format = "json";
  std::string path;
};

void emit(Output const& out, std::string const& text) {
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file " + out.path);
  f << text;
}

void add_output_flags(CLI::App* cmd, Output& out, std::string const& default_format,
                      std::vector<std::string> const& formats) {
  out.format = default_format;
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "Write to this file instead of stdout");
}

Json triad_json(Triad const& t) { return Json::array({t.r1(), t.r2(), t.r3()}); }

Json qsl_json(Triad const& t, Spectrum const& s) {
  auto const q = qsl_report(t, s);
  return Json{{"mean_energy", q.mean_energy},
              {"dispersion", q.dispersion},
              {"alpha", q.alpha},
              {"tau_qsl", q.tau_qsl},
              {"class", to_string(q.classification)}};
}

Json spectrum_json(Spectrum const& s) {
  return Json{{"omega21", s.omega21()},
              {"omega32", s.omega32()},
              {"omega31", s.omega31()},
              {"Omega", s.ratio()}};
}

/// QSL class along an I-b edge as a function of r.
Json edge_class_json(int half_level, double omega_ratio) {
  Json j{{"template", IbTemplate{half_level}.describe()}};
  switch (half_level) {
    case 1: j["class"] = "ML"; break;
    case 3: j["class"] = "MT"; break;
    default:
      if (auto rs = edge_crossover(omega_ratio)) {
        j["class"] = "MT for r < r*, ML for r > r*";
        j["crossover"] = *rs;
      } else {
        j["class"] = "MT";
      }
  }
  return j;
}

std::string csv_row(std::vector<std::string> const& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
  double omega21 = 0, omega32 = 0, tau = 0;
  double angle_tol = kCliAngleTol;
  Output out;
};

int run_solve(SolveArgs const& a) {
  Spectrum const s(a.omega21, a.omega32);
  if (!(a.tau > 0.0)) throw ValidationError("tau must be > 0");
  auto const set = orthogonal_states_at(s, a.tau, a.angle_tol);

  Json j;
  j["spectrum"] = spectrum_json(s);
  j["tau"] = a.tau;
  j["omega21_tau"] = s.omega21() * a.tau;
  j["tau_min"] = tau_min(s);
  std::string csv = csv_row({"family", "template", "r1", "r2", "r3", "alpha", "class", "tau_qsl"});
  Json solutions = Json::array();

  if (set.family2) {
    auto const& t = *set.family2;
    auto const v = verify_solution(t, s, a.tau);
    Json sol{{"family", to_string(Family::II)},
             {"label", to_string(classify_triad(t))},
             {"triad", triad_json(t)},
             {"qsl", qsl_json(t, s)},
             {"verification",
              {{"amplitude_at_tau", v.amplitude_at_claim},
               {"oracle_first_zero", v.oracle_first_zero ? Json(*v.oracle_first_zero) : Json()},
               {"agrees", v.agrees},
               {"is_first", v.is_first}}}};
    solutions.push_back(sol);
    auto const q = qsl_report(t, s);
    csv += csv_row({"II", "", format_double(t.r1()), format_double(t.r2()), format_double(t.r3()),
                    format_double(q.alpha), to_string(q.classification), format_double(q.tau_qsl)});
  }
  for (auto const& [i, jj] : set.qubits) {
    auto const t = qubit_triad(i, jj);
    solutions.push_back(Json{{"family", to_string(Family::IQubit)},
                             {"label", to_string(classify_triad(t))},
                             {"pair", Json::array({i, jj})},
                             {"triad", triad_json(t)},
                             {"qsl", qsl_json(t, s)}});
    auto const q = qsl_report(t, s);
    csv += csv_row({"I_QUBIT", "", format_double(t.r1()), format_double(t.r2()),
                    format_double(t.r3()), format_double(q.alpha), to_string(q.classification),
                    format_double(q.tau_qsl)});
  }
  if (set.ib) {
    auto const& ib = *set.ib;
    Json sol{{"family", to_string(Family::IB)},
             {"template", ib.edge.describe()},
             {"half_level", ib.edge.half_level},
             {"relation",
              {{"m", ib.relation.m}, {"n", ib.relation.n}, {"parity", to_string(ib.relation.parity)}}},
             {"r_range", "0 < r < 1/2"},
             {"qsl", edge_class_json(ib.edge.half_level, s.ratio())}};
    solutions.push_back(sol);
    csv += csv_row({"I_B", "\"" + ib.edge.describe() + "\"", "", "", "", "",
                    sol["qsl"]["class"].get<std::string>(), ""});
  }

  bool const found = !solutions.empty();
  j["status"] = found ? "solution" : "no_solution";
  j["boundary"] = set.kind == OrthogonalSet::Kind::Boundary;
  j["solutions"] = solutions;
  if (!found) {
    j["reason"] = a.tau < tau_min(s)
                      ? "tau is below the global minimum pi / omega31"
                      : "no triad reaches an orthogonal state at exactly this tau";
  }
  emit(a.out, a.out.format == "csv" ? csv : j.dump(2) + "\n");
  return found ? kExitOk : kExitNoSolution;
}

// --- classify ----------------------------------------------------------------

struct ClassifyArgs {
  double r1 = 0, r2 = 0, r3 = 0;
  std::optional<double> omega21, omega32;
  int count = 3;
  Output out;
};

int run_classify(ClassifyArgs const& a) {
  double const sum = a.r1 + a.r2 + a.r3;
  if (std::abs(sum - 1.0) > 1e-9) {
    std::cerr << "warning: r1 + r2 + r3 = " << format_double(sum) << "; renormalizing\n";
  }
  Triad const t = Triad::normalized(a.r1, a.r2, a.r3);
  auto const label = classify_triad(t);
  bool const orthogonalizable = label.family == Family::IQubit || label.family == Family::IB ||
                                label.family == Family::II;
  Json j{{"triad", triad_json(t)},
         {"label", to_string(label)},
         {"family", to_string(label.family)}};
  if (!orthogonalizable) {
    j["orthogonal"] = "never";
    j["reason"] = label.family == Family::Stationary
                      ? "stationary state: never orthogonal"
                      : "unbalanced weights: never orthogonal for any spectrum";
  }

  std::vector<double> times;
  std::string method;
  if (a.omega21 || a.omega32) {
    if (!(a.omega21 && a.omega32)) throw ValidationError("give both --omega21 and --omega32");
    Spectrum const s(*a.omega21, *a.omega32);
    j["spectrum"] = spectrum_json(s);
    if (orthogonalizable) {
      if (label.family == Family::IQubit) {
        int const i = label.level == 1 ? 3 : (label.level == 2 ? 3 : 2);
        int const k = label.level == 3 ? 1 : (label.level == 2 ? 1 : 2);
        times = family1_qubit_times(i, k, s, a.count).times;
        method = "analytic";
      } else if (label.family == Family::IB) {
        auto const rel = detect_rational_relation(s);
        if (rel && ib_template_for(rel->parity).half_level == label.level) {
          double const tau = family1b_solutions(*rel, s).tau;
          for (int n = 0; n < a.count; ++n) times.push_back((2 * n + 1) * tau);
          method = "analytic";
          j["relation"] = {{"m", rel->m}, {"n", rel->n}, {"parity", to_string(rel->parity)}};
        }
      }
      if (method.empty()) {
        auto cfg = ZeroSearchConfig::defaults_for(s);
        times = orthogonality_times(t, s, cfg, static_cast<std::size_t>(a.count));
        method = "oracle";
      }
      j["qsl"] = qsl_json(t, s);
      j["times_method"] = method;
      j["times"] = times;
      if (times.empty()) j["orthogonal"] = "never for this spectrum within the search horizon";
    }
  }

  std::string csv = csv_row({"label", "family", "r1", "r2", "r3", "times"});
  std::string tlist;
  for (std::size_t k = 0; k < times.size(); ++k) tlist += (k ? ";" : "") + format_double(times[k]);
  csv += csv_row({to_string(label), to_string(label.family), format_double(t.r1()),
                  format_double(t.r2()), format_double(t.r3()),
                  orthogonalizable ? tlist : "never"});
  emit(a.out, a.out.format == "csv" ? csv : j.dump(2) + "\n");
  if (!orthogonalizable) return kExitNoSolution;
  if (a.omega21 && times.empty()) return kExitNoSolution;
  return kExitOk;
}

// --- report ------------------------------------------------------------------

struct ReportArgs {
  double omega21 = 0, omega32 = 0;
  std::optional<double> r1, r2, r3;
  std::int64_t max_den = 64;
  Output out;
};

int run_report(ReportArgs const& a) {
  Spectrum const s(a.omega21, a.omega32);
  Json rows = Json::array();
  std::string csv = csv_row({"family", "coefficients", "tau", "alpha"});
  for (auto [i, jj] : {std::pair{3, 2}, std::pair{3, 1}, std::pair{2, 1}}) {
    auto const t = qubit_triad(i, jj);
    double const tau = family1_qubit_times(i, jj, s, 1).times.front();
    rows.push_back(Json{{"family", "I_QUBIT"},
                        {"pair", Json::array({i, jj})},
                        {"triad", triad_json(t)},
                        {"tau", tau},
                        {"tau_rule", "n pi / omega" + std::to_string(i) + std::to_string(jj) +
                                         ", n odd"},
                        {"alpha", 1.0}});
    std::ostringstream coeff;
    coeff << "\"{" << format_double(t.r1()) << ", " << format_double(t.r2()) << ", "
          << format_double(t.r3()) << "}\"";
    csv += csv_row({"I_QUBIT", coeff.str(), format_double(tau), "1"});
  }
  if (auto rel = detect_rational_relation(s, a.max_den)) {
    auto const sol = family1b_solutions(*rel, s);
    rows.push_back(Json{{"family", "I_B"},
                        {"parity", to_string(rel->parity)},
                        {"m", rel->m},
                        {"n", rel->n},
                        {"template", sol.edge.describe()},
                        {"tau", sol.tau},
                        {"qsl", edge_class_json(sol.edge.half_level, s.ratio())}});
    csv += csv_row({"I_B " + to_string(rel->parity), "\"" + sol.edge.describe() + "\"",
                    format_double(sol.tau), edge_class_json(sol.edge.half_level, s.ratio())["class"]});
  } else {
    rows.push_back(Json{{"family", "I_B"},
                        {"parity", "none"},
                        {"reason", "Omega is not m/n with n <= " + std::to_string(a.max_den)}});
  }
  Json stripes = Json::array();
  for (auto const& b : stripes_at(s.ratio())) {
    stripes.push_back(Json{{"l", b.l},
                           {"tau_lower", b.lower / s.omega21()},
                           {"tau_upper", b.upper / s.omega21()},
                           {"regime", to_string(b.regime)}});
  }
  rows.push_back(Json{{"family", "II"},
                      {"coefficients", "r_i = sin(omega_jk tau) / D, (i, j, k) cyclic"},
                      {"tau_min", tau_min(s)},
                      {"stripes", stripes}});
  csv += csv_row({"II", "\"sin(omega_jk tau) / D\"", format_double(tau_min(s)), ""});

  Json j{{"spectrum", spectrum_json(s)}, {"rows", rows}};
  if (a.r1 || a.r2 || a.r3) {
    if (!(a.r1 && a.r2 && a.r3)) throw ValidationError("give all of --r1 --r2 --r3");
    Triad const t = Triad::normalized(*a.r1, *a.r2, *a.r3);
    j["triad"] = triad_json(t);
    j["label"] = to_string(classify_triad(t));
    j["qsl"] = qsl_json(t, s);
  }
  emit(a.out, a.out.format == "csv" ? csv : j.dump(2) + "\n");
  return kExitOk;
}

// --- scan --------------------------------------------------------------------

struct ScanArgs {
  bool diagram = false;
  bool simplex = false;
  std::optional<double> omega_max;
  double omega_min = 0.0;
  double tau_max = kPi;
  double tau_min_arg = 0.0;
  int res = 600;
  int omega_samples = 200;
  int tau_res = 50;
  unsigned threads = 0;
  Output out;
};

int run_scan(ScanArgs const& a) {
  std::ostringstream os;
  if (a.diagram) {
    DiagramGrid g;
    g.omega_lo = a.omega_min;
    g.omega_hi = a.omega_max.value_or(6.0 * kPi);
    g.tau_lo = a.tau_min_arg;
    g.tau_hi = a.tau_max;
    g.n_omega = g.n_tau = a.res;
    g.threads = a.threads;
    if (g.tau_hi > kPi + 1e-4) {
      std::cerr << "warning: stripe bounds and the tau_min curve describe 0 < omega21 tau < pi; "
                   "cells above pi are classified by the closed form only\n";
    }
    auto const d = scan_diagram(g);
    if (a.out.format == "csv") {
      write_diagram_csv(os, d);
    } else if (a.out.format == "json") {
      write_diagram_json(os, d, ExportMetadata{"diagram", 0, {}});
    } else {
      write_diagram_svg(os, d);
    }
  } else {
    if (a.omega_samples < 1) throw ValidationError("--omega-samples must be >= 1");
    double const hi = a.omega_max.value_or(6.0);
    if (!(hi > a.omega_min)) throw ValidationError("--omega-max must exceed --omega-min");
    std::vector<double> oms;
    for (int k = 0; k < a.omega_samples; ++k) {
      oms.push_back(a.omega_min + (hi - a.omega_min) * (k + 0.5) / a.omega_samples);
    }
    auto const pts = scan_simplex(oms, a.tau_res);
    if (a.out.format == "csv") {
      write_simplex_csv(os, pts);
    } else if (a.out.format == "json") {
      ExportMetadata meta{"simplex", 0, {}};
      meta.parameters = {{"omega_range", {a.omega_min, hi}},
                         {"omega_samples", a.omega_samples},
                         {"tau_resolution", a.tau_res}};
      write_simplex_json(os, pts, meta);
    } else {
      write_simplex_svg(os, pts);
    }
  }
  emit(a.out, os.str());
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "analytic";
  int count = 100;
  std::uint64_t seed = 0;
  Output out;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct Case {
  std::string family;
  Triad triad;
  Spectrum spectrum;
  double tau;
};

Case analytic_case(Sampler& rng, int k) {
  switch (k % 4) {
    case 0: {
      for (;;) {
        double const om = rng.uniform(0.05, 8.0);
        Spectrum const s = Spectrum::from_ratio(rng.uniform(0.2, 4.0), om);
        auto const stripes = stripes_at(om);
        auto const& b = stripes[static_cast<std::size_t>(
            rng.integer(0, static_cast<int>(stripes.size()) - 1))];
        double const x = rng.uniform(b.lower, b.upper);
        if (auto t = solve_family2(s, x / s.omega21()).triad) {
          return {"II", *t, s, x / s.omega21()};
        }
      }
    }
    case 1: {
      Spectrum const s(rng.uniform(0.2, 4.0), rng.uniform(0.2, 4.0));
      int const p = rng.integer(0, 2);
      int const i = p == 0 ? 2 : 3;
      int const j = p == 1 ? 2 : 1;
      double const tau = family1_qubit_times(i, j, s, 3).times[static_cast<std::size_t>(rng.integer(0, 2))];
      return {"I_QUBIT", qubit_triad(i, j), s, tau};
    }
    case 2: {
      std::int64_t m = rng.integer(1, 9), n = rng.integer(1, 9);
      std::int64_t const g = std::gcd(m, n);
      m /= g;
      n /= g;
      double const w21 = rng.uniform(0.2, 4.0);
      Spectrum const s(w21, w21 * static_cast<double>(m) / static_cast<double>(n));
      auto const sol = family1b_solutions(make_relation(m, n), s);
      return {"I_B", sol.edge.triad(rng.uniform(0.01, 0.49)), s, sol.tau};
    }
    default: {
      double const w = rng.uniform(0.2, 4.0);
      for (;;) {
        double const tau = rng.uniform(0.05, kTwoPi) / w;
        if (auto t = equally_spaced_triad(w, tau); t && classify_triad(*t).family == Family::II) {
          return {"II_equal_spacing", *t, Spectrum(w, w), tau};
        }
      }
    }
  }
}

int run_verify(VerifyArgs const& a) {
  if (a.count < 1) throw ValidationError("--count must be >= 1");
  Sampler rng(a.seed);
  int passed = 0, failed = 0, not_first = 0, never = 0;
  double max_residual = 0.0, min_qsl_gap = 1e300;
  Json failures = Json::array();

  for (int k = 0; k < a.count; ++k) {
    bool ok = true;
    std::string why;
    if (a.suite == "analytic") {
      auto const c = analytic_case(rng, k);
      auto const v = verify_solution(c.triad, c.spectrum, c.tau);
      max_residual = std::max(max_residual, v.amplitude_at_claim);
      double const gap = c.tau - qsl_report(c.triad, c.spectrum).tau_qsl;
      min_qsl_gap = std::min(min_qsl_gap, gap);
      if (!(v.amplitude_at_claim < 1e-10)) {
        ok = false;
        why = "residual at claimed tau";
      } else if (!v.oracle_first_zero || *v.oracle_first_zero > c.tau + 1e-9) {
        ok = false;
        why = "oracle missed the claimed zero";
      } else if (gap < -1e-9) {
        ok = false;
        why = "claimed tau below tau_qsl";
      }
      if (ok && !v.is_first) ++not_first;
      if (!ok) {
        failures.push_back(Json{{"case", k}, {"family", c.family}, {"reason", why}});
      }
    } else {
      double x = rng.uniform(0, 1), y = rng.uniform(0, 1);
      if (x > y) std::swap(x, y);
      Triad const t(x, y - x, 1.0 - y);
      Spectrum const s(rng.uniform(0.2, 4.0), rng.uniform(0.2, 4.0));
      auto const label = classify_triad(t);
      auto const first = label.family == Family::Stationary
                             ? std::nullopt
                             : first_orthogonality_time(t, s);
      if (!first) ++never;
      if (first) {
        double const gap = *first - qsl_report(t, s).tau_qsl;
        min_qsl_gap = std::min(min_qsl_gap, gap);
        max_residual = std::max(max_residual, std::abs(survival_amplitude(t, s, *first)));
        if (gap < -1e-9) {
          ok = false;
          why = "oracle zero below tau_qsl";
        }
        if (label.family == Family::NotClassified && std::max({t.r1(), t.r2(), t.r3()}) > 0.5) {
          ok = false;
          why = "unbalanced triad reached an orthogonal state";
        }
      }
      if (!ok) failures.push_back(Json{{"case", k}, {"label", to_string(label)}, {"reason", why}});
    }
    (ok ? passed : failed) += 1;
  }

  Json j;
  j["suite"] = a.suite;
  j["count"] = a.count;
  j["seed"] = a.seed;
  j["passed"] = passed;
  j["failed"] = failed;
  j["max_amplitude_residual"] = max_residual;
  j["min_tau_minus_tau_qsl"] = min_qsl_gap < 1e300 ? Json(min_qsl_gap) : Json();
  if (a.suite == "analytic") {
    j["claimed_tau_not_first_zero"] = not_first;
  } else {
    j["no_zero_within_horizon"] = never;
  }
  j["failures"] = failures;
  if (a.out.format == "csv") {
    emit(a.out, csv_row({"suite", "count", "seed", "passed", "failed", "max_amplitude_residual"}) +
                    csv_row({a.suite, std::to_string(a.count), std::to_string(a.seed),
                             std::to_string(passed), std::to_string(failed),
                             format_double(max_residual)}));
  } else {
    emit(a.out, j.dump(2) + "\n");
  }
  return failed == 0 ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string const arg = argv[i];
    if (arg == "--units" || arg.rfind("--units=", 0) == 0) {
      std::cerr << "error: --units is not supported; all angles and times are in radians "
                   "with hbar = 1\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Orthogonality times and speed limits of three-level systems"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Triads orthogonal at a given tau");
  solve_cmd->add_option("--omega21", solve.omega21, "E2 - E1")->required();
  solve_cmd->add_option("--omega32", solve.omega32, "E3 - E2")->required();
  solve_cmd->add_option("--tau", solve.tau, "Orthogonality time")->required();
  solve_cmd->add_option("--angle-tol", solve.angle_tol,
                        "Band on |sin(omega_ij tau)| treated as a boundary angle")
      ->capture_default_str();
  add_output_flags(solve_cmd, solve.out, "json", {"json", "csv"});

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Family of a triad and its orthogonality times");
  classify_cmd->add_option("--r1", classify.r1)->required();
  classify_cmd->add_option("--r2", classify.r2)->required();
  classify_cmd->add_option("--r3", classify.r3)->required();
  classify_cmd->add_option("--omega21", classify.omega21, "E2 - E1");
  classify_cmd->add_option("--omega32", classify.omega32, "E3 - E2");
  classify_cmd->add_option("--count", classify.count, "Number of times to list")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_flags(classify_cmd, classify.out, "json", {"json", "csv"});

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Complete set of orthogonal triads for a spectrum");
  report_cmd->add_option("--omega21", report.omega21)->required();
  report_cmd->add_option("--omega32", report.omega32)->required();
  report_cmd->add_option("--r1", report.r1);
  report_cmd->add_option("--r2", report.r2);
  report_cmd->add_option("--r3", report.r3);
  report_cmd->add_option("--max-denominator", report.max_den, "Bound for rational Omega = m/n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_flags(report_cmd, report.out, "json", {"json", "csv"});

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Solution diagram or simplex map");
  auto* diagram_flag = scan_cmd->add_flag("--diagram", scan.diagram, "Scan the (Omega, omega21 tau) plane");
  auto* simplex_flag = scan_cmd->add_flag("--simplex", scan.simplex, "Map triads onto the simplex");
  diagram_flag->excludes(simplex_flag);
  scan_cmd->add_option("--omega-max", scan.omega_max,
                       "Largest Omega (diagram default 6 pi, simplex default 6)");
  scan_cmd->add_option("--omega-min", scan.omega_min)->capture_default_str();
  scan_cmd->add_option("--tau-max", scan.tau_max, "Largest omega21 tau")->capture_default_str();
  scan_cmd->add_option("--tau-min", scan.tau_min_arg, "Smallest omega21 tau")->capture_default_str();
  scan_cmd->add_option("--res", scan.res, "Cells per axis")->capture_default_str();
  scan_cmd->add_option("--omega-samples", scan.omega_samples)->capture_default_str();
  scan_cmd->add_option("--tau-res", scan.tau_res, "Samples per stripe and per edge")
      ->capture_default_str();
  scan_cmd->add_option("--threads", scan.threads, "Worker threads (0: QORTH_THREADS or all cores)");
  add_output_flags(scan_cmd, scan.out, "csv", {"csv", "json", "svg"});

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check closed forms against the oracle");
  verify_cmd->add_option("--suite", verify.suite)
      ->check(CLI::IsMember({"analytic", "random"}))
      ->capture_default_str();
  verify_cmd->add_option("--count", verify.count)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  add_output_flags(verify_cmd, verify.out, "json", {"json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    // svg is rejected by the format validator outside scan.
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve);
    if (classify_cmd->parsed()) return run_classify(classify);
    if (report_cmd->parsed()) return run_report(report);
    if (scan_cmd->parsed()) {
      if (!scan.diagram && !scan.simplex) throw ValidationError("choose --diagram or --simplex");
      return run_scan(scan);
    }
    if (verify_cmd->parsed()) return run_verify(verify);
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
