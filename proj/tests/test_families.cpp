#include <catch_amalgamated.hpp>

#include <cmath>

#include "qorth/families.hpp"
#include "qorth/oracle.hpp"
#include "test_support.hpp"

using namespace qorth;
using Catch::Approx;

namespace {

void check_triad(Triad const& t, double r1, double r2, double r3, double tol) {
  CHECK(t.r1() == Approx(r1).margin(tol));
  CHECK(t.r2() == Approx(r2).margin(tol));
  CHECK(t.r3() == Approx(r3).margin(tol));
}

}  // namespace

TEST_CASE("family2_triad examples", "[families]") {
  SECTION("equal spacing at 2pi/3 gives equal weights") {
    auto const t = family2_triad(Spectrum(1, 1), 2 * kPi / 3);
    REQUIRE(t);
    check_triad(*t, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1e-14);
  }
  SECTION("Omega = 1/2 at omega21 tau = 2.5 matches the linear-system oracle") {
    Spectrum const s(1.0, 0.5);
    auto const t = family2_triad(s, 2.5);
    REQUIRE(t);
    auto const ref = qorth_test::solve_orthogonal_triad(1.0, 0.5, 2.5);
    check_triad(*t, ref[0], ref[1], ref[2], 1e-13);
    check_triad(*t, 0.447841680694621, 0.269729325833987, 0.282428993471391, 1e-12);
    CHECK(std::abs(t->r1() + t->r2() + t->r3() - 1.0) < 1e-12);
    CHECK(std::abs(survival_amplitude(*t, s, 2.5)) < 1e-12);
  }
  SECTION("below the stripe there is no solution") {
    CHECK_FALSE(family2_triad(Spectrum(1, 1), 0.1));
    // r2 = cos(0.1) / (cos(0.1) - 1) is negative there.
    CHECK(std::cos(0.1) / (std::cos(0.1) - 1.0) < 0.0);
  }
  SECTION("boundary angles raise BoundaryCaseError") {
    CHECK_THROWS_AS(family2_triad(Spectrum(1, 1), kPi), BoundaryCaseError);
    CHECK_THROWS_AS(family2_triad(Spectrum(1, 1), kPi / 2), BoundaryCaseError);
    CHECK(solve_family2(Spectrum(1, 1), kPi).status == Family2Status::Boundary);
  }
  SECTION("invalid tau") {
    CHECK_THROWS_AS(family2_triad(Spectrum(1, 1), 0.0), ValidationError);
    CHECK_THROWS_AS(family2_triad(Spectrum(1, 1), -1.0), ValidationError);
  }
}

TEST_CASE("classify_triad examples", "[families]") {
  CHECK(classify_triad(Triad(0.5, 0, 0.5)) == FamilyLabel{Family::IQubit, 2});
  CHECK(classify_triad(Triad(0.3, 0.5, 0.2)) == FamilyLabel{Family::IB, 2});
  CHECK(classify_triad(Triad(0.7, 0.2, 0.1)) == FamilyLabel{Family::NotClassified, 0});
  CHECK(classify_triad(Triad(0.5, 0.5, 0)) == FamilyLabel{Family::IQubit, 3});
  CHECK(classify_triad(Triad(0, 0.5, 0.5)) == FamilyLabel{Family::IQubit, 1});
  CHECK(classify_triad(Triad(0.2, 0.3, 0.5)) == FamilyLabel{Family::IB, 3});
  CHECK(classify_triad(Triad(0.3, 0.3, 0.4)) == FamilyLabel{Family::II, 0});
  CHECK(classify_triad(Triad(0, 0, 1)) == FamilyLabel{Family::Stationary, 3});
  CHECK(classify_triad(Triad(0.4, 0.6, 0)) == FamilyLabel{Family::NotClassified, 0});
  CHECK(to_string(classify_triad(Triad(0.5, 0, 0.5))) == "I_QUBIT(r2=0)");
  CHECK(to_string(classify_triad(Triad(0.3, 0.5, 0.2))) == "I_B(r2=1/2)");
}

TEST_CASE("classify_triad is total", "[families][property]") {
  qorth_test::Rng rng(5);
  for (int k = 0; k < 20000; ++k) {
    auto r = rng.simplex();
    // Push a fraction of samples onto the special sets.
    switch (rng.integer(0, 4)) {
      case 0: r = {0.5, rng.uniform(0, 0.5), 0}; r[2] = 1.0 - r[0] - r[1]; break;
      case 1: r = {0.0, 0.5, 0.5}; break;
      default: break;
    }
    Triad const t(r[0], r[1], r[2]);
    auto const a = classify_triad(t);
    REQUIRE(a == classify_triad(t));
    int const matches = (a.family == Family::II) + (a.family == Family::IB) +
                        (a.family == Family::IQubit) + (a.family == Family::Stationary) +
                        (a.family == Family::NotClassified);
    REQUIRE(matches == 1);
    if (a.family == Family::II) {
      for (double x : r) REQUIRE((x > 0.0 && x < 0.5));
    }
  }
}

TEST_CASE("family1_qubit_times examples", "[families]") {
  auto const a = family1_qubit_times(2, 1, Spectrum(1, 1), 3);
  REQUIRE(a.times.size() == 3);
  CHECK(a.times[0] == Approx(kPi));
  CHECK(a.times[1] == Approx(3 * kPi));
  CHECK(a.times[2] == Approx(5 * kPi));

  auto const b = family1_qubit_times(3, 1, Spectrum(1, 1), 1);
  REQUIRE(b.times.size() == 1);
  CHECK(b.times[0] == Approx(kPi / 2));

  auto const c = family1_qubit_times(3, 2, Spectrum(1, 2), 2);
  CHECK(c.times[0] == Approx(kPi / 2));
  CHECK(c.times[1] == Approx(1.5 * kPi));

  CHECK_THROWS_AS(family1_qubit_times(1, 2, Spectrum(1, 1), 1), ValidationError);
  CHECK_THROWS_AS(family1_qubit_times(2, 1, Spectrum(1, 1), 0), ValidationError);
}

TEST_CASE("Qubit times are increasing orthogonality times", "[families][property]") {
  qorth_test::Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    Spectrum const s(rng.uniform(0.1, 3), rng.uniform(0.1, 3));
    for (auto [i, j] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{3, 1}}) {
      auto const q = family1_qubit_times(i, j, s, 6);
      for (std::size_t n = 0; n < q.times.size(); ++n) {
        if (n > 0) REQUIRE(q.times[n] > q.times[n - 1]);
        REQUIRE(is_orthogonal_at(qubit_triad(i, j), s, q.times[n], 1e-12));
      }
    }
  }
}

TEST_CASE("detect_rational_relation examples", "[families]") {
  auto const two = detect_rational_relation(Spectrum(1, 2));
  REQUIRE(two);
  CHECK(two->m == 2);
  CHECK(two->n == 1);
  CHECK(two->parity == Parity::NOddMEven);

  auto const one = detect_rational_relation(Spectrum(1, 1));
  REQUIRE(one);
  CHECK(one->m == 1);
  CHECK(one->n == 1);
  CHECK(one->parity == Parity::NOddMOdd);

  CHECK_FALSE(detect_rational_relation(Spectrum(1, std::sqrt(2.0)), 10, 1e-6));

  auto const half = detect_rational_relation(Spectrum(2, 1));
  REQUIRE(half);
  CHECK(half->m == 1);
  CHECK(half->n == 2);
  CHECK(half->parity == Parity::NEvenMOdd);

  auto const frac = detect_rational_relation(Spectrum(7, 5));
  REQUIRE(frac);
  CHECK(frac->m == 5);
  CHECK(frac->n == 7);

  CHECK_THROWS_AS(detect_rational_relation(Spectrum(1, 1), 0), ValidationError);
  CHECK_THROWS_AS(make_relation(2, 4), ValidationError);
}

TEST_CASE("family1b_solutions examples", "[families]") {
  auto const a = family1b_solutions(make_relation(2, 1), Spectrum(1, 2));
  CHECK(a.edge.describe() == "{1/2, r, 1/2-r}");
  CHECK(a.tau == Approx(kPi));

  auto const b = family1b_solutions(make_relation(1, 2), Spectrum(1, 0.5));
  CHECK(b.edge.describe() == "{r, 1/2-r, 1/2}");
  CHECK(b.tau == Approx(2 * kPi));

  auto const c = family1b_solutions(make_relation(1, 1), Spectrum(1, 1));
  CHECK(c.edge.describe() == "{r, 1/2, 1/2-r}");
  CHECK(c.tau == Approx(kPi));

  CHECK_THROWS_AS(family1b_solutions(make_relation(1, 1), Spectrum(1, 2)), ValidationError);
  CHECK_THROWS_AS(a.edge.triad(0.0), DomainError);
  CHECK_THROWS_AS(a.edge.triad(0.5), DomainError);
}

TEST_CASE("I-b templates are orthogonal at their tau for every r", "[families][property]") {
  struct Case {
    std::int64_t m, n;
  };
  qorth_test::Rng rng(21);
  for (auto const [m, n] : {Case{2, 1}, Case{1, 2}, Case{1, 1}, Case{3, 1}, Case{4, 3}, Case{5, 2},
                            Case{3, 5}, Case{6, 7}}) {
    double const w21 = rng.uniform(0.5, 2.0);
    Spectrum const s(w21, w21 * static_cast<double>(m) / static_cast<double>(n));
    auto const sol = family1b_solutions(make_relation(m, n), s);
    for (int k = 0; k < 50; ++k) {
      double const r = rng.uniform(1e-6, 0.5 - 1e-6);
      auto const t = sol.edge.triad(r);
      REQUIRE(is_orthogonal_at(t, s, sol.tau, 1e-12));
      REQUIRE(classify_triad(t).family == Family::IB);
      REQUIRE(classify_triad(t).level == sol.edge.half_level);
    }
  }
}

TEST_CASE("equally_spaced_triad examples", "[families]") {
  auto const a = equally_spaced_triad(1.0, 2 * kPi / 3);
  REQUIRE(a);
  check_triad(*a, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1e-14);

  auto const b = equally_spaced_triad(1.0, kPi);
  REQUIRE(b);
  check_triad(*b, 0.25, 0.5, 0.25, 1e-15);
  // The sine-ratio formula has a boundary here; the point is the I-b edge r2 = 1/2.
  CHECK(solve_family2(Spectrum(1, 1), kPi).status == Family2Status::Boundary);
  CHECK(classify_triad(*b) == FamilyLabel{Family::IB, 2});
  CHECK(is_orthogonal_at(*b, Spectrum(1, 1), kPi, 1e-15));

  CHECK_FALSE(equally_spaced_triad(1.0, 0.3));
  CHECK(1.0 / (2.0 * (1.0 - std::cos(0.3))) > 1.0);

  CHECK_THROWS_AS(equally_spaced_triad(1.0, kTwoPi), DomainError);
  CHECK_THROWS_AS(equally_spaced_triad(0.0, 1.0), ValidationError);
}

TEST_CASE("equally_spaced_triad agrees with family2_triad", "[families][property]") {
  qorth_test::Rng rng(33);
  int solutions = 0;
  for (int k = 0; k < 5000; ++k) {
    double const w = rng.uniform(0.1, 4.0);
    double const tau = rng.uniform(0.01, 3.0 * kPi) / w;
    auto const out = solve_family2(Spectrum(w, w), tau);
    if (out.status == Family2Status::Boundary) continue;
    auto const eq = equally_spaced_triad(w, tau);
    REQUIRE(eq.has_value() == out.triad.has_value());
    if (!eq) continue;
    ++solutions;
    REQUIRE(std::abs(eq->r1() - out.triad->r1()) < 1e-12);
    REQUIRE(std::abs(eq->r2() - out.triad->r2()) < 1e-12);
    REQUIRE(std::abs(eq->r3() - out.triad->r3()) < 1e-12);
  }
  CHECK(solutions > 500);
}

TEST_CASE("Family II completeness over the diagram grid", "[families][property]") {
  int solutions = 0;
  for (int i = 1; i <= 120; ++i) {
    double const om = 6.0 * i / 120.0;
    Spectrum const s = Spectrum::from_ratio(1.0, om);
    for (int j = 1; j <= 120; ++j) {
      double const tau = kPi * j / 121.0;
      auto const out = solve_family2(s, tau);
      if (!out.triad) continue;
      ++solutions;
      auto const& t = *out.triad;
      REQUIRE(std::abs(survival_amplitude(t, s, tau)) < 1e-10);
      REQUIRE(std::abs(t.r1() + t.r2() + t.r3() - 1.0) < 1e-12);
      REQUIRE(classify_triad(t).family == Family::II);
    }
  }
  CHECK(solutions > 1000);
}

TEST_CASE("Family II matches the linear-system oracle", "[families][property]") {
  qorth_test::Rng rng(1234);
  int compared = 0;
  for (int k = 0; k < 3000; ++k) {
    double const w21 = rng.uniform(0.2, 3.0);
    double const w32 = rng.uniform(0.2, 3.0);
    double const tau = rng.uniform(0.05, kPi) / w21;
    auto const out = solve_family2(Spectrum(w21, w32), tau);
    if (!out.triad) continue;
    auto const ref = qorth_test::solve_orthogonal_triad(w21, w32, tau);
    ++compared;
    REQUIRE(out.triad->r1() == Approx(ref[0]).margin(1e-9));
    REQUIRE(out.triad->r2() == Approx(ref[1]).margin(1e-9));
    REQUIRE(out.triad->r3() == Approx(ref[2]).margin(1e-9));
  }
  CHECK(compared > 300);
}

TEST_CASE("Unbalanced triads never become orthogonal", "[families][property]") {
  qorth_test::Rng rng(404);
  int checked = 0;
  while (checked < 60) {
    auto const r = rng.simplex();
    if (std::max({r[0], r[1], r[2]}) < 0.51) continue;
    Triad const t(r[0], r[1], r[2]);
    REQUIRE(classify_triad(t).family == Family::NotClassified);
    Spectrum const s(1.0, rng.uniform(0.1, 6.0));
    double const step = kPi / (100.0 * s.omega31());
    auto const m = min_amplitude(t, s, step, 50.0, step);
    REQUIRE(m.value > 0.01);
    ++checked;
  }
}

TEST_CASE("Red-border limit drives r2 to zero monotonically", "[families][property]") {
  for (double om : {0.3, 1.0, 2.5, 4.0}) {
    Spectrum const s = Spectrum::from_ratio(1.0, om);
    for (int l = 0; 2 * l <= om; ++l) {
      double const lower = (2 * l + 1) * kPi / (1.0 + om);
      if (lower >= kPi) continue;
      double prev = 1.0;
      for (double h : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 1e-4, 1e-5}) {
        auto const t = family2_triad(s, lower + h * std::min(1.0, lower));
        if (!t) continue;
        REQUIRE(t->r2() < prev);
        prev = t->r2();
        REQUIRE(t->r1() > 0.0);
      }
      REQUIRE(prev < 1e-4);
    }
  }
}

TEST_CASE("orthogonal_states_at reports the full set", "[families]") {
  SECTION("interior") {
    auto const set = orthogonal_states_at(Spectrum(1, 1), 2 * kPi / 3);
    CHECK(set.kind == OrthogonalSet::Kind::FamilyII);
    REQUIRE(set.family2);
    CHECK(set.qubits.empty());
  }
  SECTION("no solution") {
    auto const set = orthogonal_states_at(Spectrum(1, 1), 1.0);
    CHECK(set.kind == OrthogonalSet::Kind::None);
    CHECK(set.empty());
  }
  SECTION("Omega = 1 at pi: blue qubit and the r2 = 1/2 edge") {
    auto const set = orthogonal_states_at(Spectrum(1, 1), kPi);
    CHECK(set.kind == OrthogonalSet::Kind::Boundary);
    REQUIRE(set.qubits.size() == 2);
    CHECK(set.qubits[0] == std::pair{2, 1});
    CHECK(set.qubits[1] == std::pair{3, 2});
    REQUIRE(set.ib);
    CHECK(set.ib->edge.half_level == 2);
  }
  SECTION("Omega = 1 at pi/2: red qubit only") {
    auto const set = orthogonal_states_at(Spectrum(1, 1), kPi / 2);
    REQUIRE(set.qubits.size() == 1);
    CHECK(set.qubits[0] == std::pair{3, 1});
    CHECK_FALSE(set.ib);
  }
  SECTION("Omega = 1/2 at 2pi: square edge r3 = 1/2") {
    auto const set = orthogonal_states_at(Spectrum(1, 0.5), kTwoPi);
    REQUIRE(set.ib);
    CHECK(set.ib->edge.half_level == 3);
    CHECK(set.ib->relation.m == 1);
    CHECK(set.ib->relation.n == 2);
    REQUIRE(set.qubits.size() == 2);
    CHECK(set.qubits[0] == std::pair{3, 2});
    CHECK(set.qubits[1] == std::pair{3, 1});
  }
  SECTION("Omega = 2 at pi: star edge r1 = 1/2") {
    auto const set = orthogonal_states_at(Spectrum(1, 2), kPi);
    REQUIRE(set.ib);
    CHECK(set.ib->edge.half_level == 1);
  }
}
