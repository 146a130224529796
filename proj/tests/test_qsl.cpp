#include <catch_amalgamated.hpp>

#include <cmath>

#include "qorth/families.hpp"
#include "qorth/qsl.hpp"
#include "test_support.hpp"

using namespace qorth;
using Catch::Approx;

namespace {

std::array<double, 3> energies(Spectrum const& s) {
  return {0.0, s.omega21(), s.omega31()};
}

}  // namespace

TEST_CASE("mean_energy examples", "[qsl]") {
  CHECK(mean_energy(Triad(0.5, 0, 0.5), Spectrum(1, 1)) == Approx(1.0));
  double const third = 1.0 / 3;
  CHECK(mean_energy(Triad(third, third, third), Spectrum(1, 1)) == Approx(1.0));
  // Reference level is E2, the lowest one carrying weight.
  CHECK(mean_energy(Triad(0, 0.5, 0.5), Spectrum(1, 2)) == Approx(1.0));
  CHECK_THROWS_AS(mean_energy(Triad(0, 1, 0), Spectrum(1, 2)), UndefinedQslError);
}

TEST_CASE("energy_dispersion examples", "[qsl]") {
  CHECK(energy_dispersion(Triad(0.5, 0.5, 0), Spectrum(1, 3)) == Approx(0.5));
  double const third = 1.0 / 3;
  Triad const eq(third, third, third);
  CHECK(energy_dispersion(eq, Spectrum(1, 1)) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(qorth_test::dispersion_pairs(eq.values(), {0, 1, 2}) ==
        Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(energy_dispersion(Triad(1, 0, 0), Spectrum(1, 1)), UndefinedQslError);
}

TEST_CASE("alpha examples", "[qsl]") {
  for (double om : {0.2, 1.0, 3.7}) {
    CHECK(alpha(qubit_triad(2, 1), om) == Approx(1.0).margin(1e-15));
    CHECK(alpha(qubit_triad(3, 1), om) == Approx(1.0).margin(1e-15));
    CHECK(alpha(qubit_triad(3, 2), om) == Approx(1.0).margin(1e-15));
  }
  for (double om : {1.5, 3.0, 7.0}) {
    double const r = 1.0 / (1.0 + om);
    CHECK(alpha(Triad(r, 0.5, 0.5 - r), om) == Approx(1.0).margin(1e-12));
  }
  double const third = 1.0 / 3;
  CHECK(alpha(Triad(third, third, third), 1.0) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(alpha(Triad(third, third, third), 1.0) == Approx(0.8165).margin(1e-4));
  CHECK_THROWS_AS(alpha(Triad(0, 0, 1), 1.0), UndefinedQslError);
  CHECK_THROWS_AS(alpha(Triad(0.5, 0.5, 0), 0.0), ValidationError);
}

TEST_CASE("qsl_report examples", "[qsl]") {
  SECTION("extreme-level qubit attains the bound") {
    auto const q = qsl_report(Triad(0.5, 0, 0.5), Spectrum(1, 1));
    CHECK(q.tau_qsl == Approx(kPi / 2));
    CHECK(q.classification == QslClass::Equal);
  }
  SECTION("equal weights stay above the bound") {
    double const third = 1.0 / 3;
    auto const q = qsl_report(Triad(third, third, third), Spectrum(1, 1));
    CHECK(q.mean_energy == Approx(1.0));
    CHECK(q.dispersion == Approx(std::sqrt(2.0 / 3.0)));
    CHECK(q.tau_qsl == Approx(kPi * std::sqrt(1.5) / 2));
    CHECK(2 * kPi / 3 > q.tau_qsl);
    CHECK(q.classification == QslClass::MT);
  }
  SECTION("lower qubit") {
    auto const q = qsl_report(Triad(0.5, 0.5, 0), Spectrum(1, 4));
    CHECK(q.tau_qsl == Approx(kPi));
    CHECK(q.classification == QslClass::Equal);
  }
  CHECK_THROWS_AS(qsl_report(Triad(1, 0, 0), Spectrum(1, 1)), UndefinedQslError);
}

TEST_CASE("classify_alpha uses a 1e-9 band", "[qsl]") {
  CHECK(classify_alpha(1.0) == QslClass::Equal);
  CHECK(classify_alpha(1.0 + 5e-10) == QslClass::Equal);
  CHECK(classify_alpha(1.0 + 2e-9) == QslClass::ML);
  CHECK(classify_alpha(1.0 - 2e-9) == QslClass::MT);
  CHECK(to_string(QslClass::Equal) == "EQUAL");
}

TEST_CASE("edge_alpha examples", "[qsl]") {
  CHECK(edge_alpha(1, 0.25, 1.0) > 1.0);
  CHECK(edge_alpha(3, 0.25, 1.0) < 1.0);
  CHECK(edge_alpha(2, 0.25, 3.0) == Approx(1.0).margin(1e-14));
  CHECK_THROWS_AS(edge_alpha(1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(edge_alpha(2, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(edge_alpha(4, 0.25, 1.0), ValidationError);
}

TEST_CASE("edge_crossover examples", "[qsl]") {
  REQUIRE(edge_crossover(3.0));
  CHECK(*edge_crossover(3.0) == Approx(0.25));
  CHECK_FALSE(edge_crossover(1.0));
  CHECK_FALSE(edge_crossover(0.5));
}

TEST_CASE("Closed forms agree with moment definitions", "[qsl][property]") {
  qorth_test::Rng rng(10000);
  for (int k = 0; k < 10000; ++k) {
    auto r = rng.simplex();
    if (r[0] <= 0.0 || r[1] <= 0.0 || r[2] <= 0.0) continue;
    Triad const t(r[0], r[1], r[2]);
    Spectrum const s(rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0));
    auto const e = energies(s);
    double const sigma = energy_dispersion(t, s);
    REQUIRE(sigma == Approx(qorth_test::dispersion_pairs(r, e)).epsilon(1e-12));
    REQUIRE(sigma == Approx(qorth_test::dispersion_moments(r, e)).epsilon(1e-9));
    double const eps = r[1] * e[1] + r[2] * e[2];
    REQUIRE(mean_energy(t, s) == Approx(eps).epsilon(1e-12));
    REQUIRE(std::abs(alpha(t, s.ratio()) - sigma / eps) < 1e-12 * std::max(1.0, sigma / eps));
  }
}

TEST_CASE("alpha and the class are scale invariant", "[qsl][property]") {
  qorth_test::Rng rng(2);
  for (int k = 0; k < 2000; ++k) {
    auto const r = rng.simplex();
    Triad const t(r[0], r[1], r[2]);
    Spectrum const s(rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0));
    double const c = rng.uniform(0.01, 100.0);
    auto const a = qsl_report(t, s);
    auto const b = qsl_report(t, s.scaled(c));
    REQUIRE(a.alpha == Approx(b.alpha).epsilon(1e-12));
    REQUIRE(a.classification == b.classification);
    REQUIRE(b.tau_qsl == Approx(a.tau_qsl / c).epsilon(1e-12));
  }
}

TEST_CASE("tau_qsl is pi / (2 sigma) exactly when alpha <= 1", "[qsl][property]") {
  qorth_test::Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    auto const r = rng.simplex();
    Triad const t(r[0], r[1], r[2]);
    auto const q = qsl_report(t, Spectrum(1.0, rng.uniform(0.1, 6.0)));
    REQUIRE(q.mean_energy > 0.0);
    REQUIRE(q.dispersion > 0.0);
    if (q.alpha <= 1.0) {
      REQUIRE(q.tau_qsl == kPi / (2.0 * q.dispersion));
    } else {
      REQUIRE(q.tau_qsl == kPi / (2.0 * q.mean_energy));
    }
  }
}

TEST_CASE("edge_alpha agrees with alpha on assembled triads", "[qsl][property]") {
  qorth_test::Rng rng(44);
  for (int k = 0; k < 10000; ++k) {
    int const edge = rng.integer(1, 3);
    double const r = rng.uniform(1e-6, 0.5 - 1e-6);
    double const om = rng.uniform(0.01, 20.0);
    double const a = edge_alpha(edge, r, om);
    REQUIRE(std::abs(a - alpha(IbTemplate{edge}.triad(r), om)) < 1e-12);
    if (edge == 1) REQUIRE(a > 1.0);
    if (edge == 3) REQUIRE(a < 1.0);
  }
}

TEST_CASE("r2 = 1/2 edge changes class once at 1/(1+Omega)", "[qsl][property]") {
  for (double om : {1.1, 2.0, 3.0, 5.0, 11.0}) {
    double const rs = *edge_crossover(om);
    // Sign pattern on a fine grid: MT below r*, ML above.
    int changes = 0;
    double prev = edge_alpha(2, 1e-4, om) - 1.0;
    for (int k = 2; k < 5000; ++k) {
      double const r = 0.5 * k / 5000.0;
      double const cur = edge_alpha(2, r, om) - 1.0;
      if ((cur > 0) != (prev > 0)) ++changes;
      prev = cur;
    }
    CHECK(changes == 1);
    CHECK(edge_alpha(2, 0.5 * rs, om) < 1.0);
    CHECK(edge_alpha(2, 0.5 * (rs + 0.5), om) > 1.0);
    // Bisection recovers r*.
    double lo = 1e-6, hi = 0.5 - 1e-6;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      double const mid = 0.5 * (lo + hi);
      (edge_alpha(2, mid, om) < 1.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == Approx(rs).margin(1e-9));
  }
  for (double om : {0.1, 0.5, 1.0}) {
    for (int k = 1; k < 1000; ++k) CHECK(edge_alpha(2, 0.5 * k / 1000.0, om) < 1.0);
  }
}
