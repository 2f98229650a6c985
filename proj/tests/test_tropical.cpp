#include <doctest.h>

#include <cmath>

#include "padic/tropical.hpp"
#include "testutil.hpp"

using namespace padic;
namespace tu = padic::testutil;

namespace {

Lattice d3_example(const FieldConfig& cfg) {
  MatrixQ a = MatrixQ::Identity(3, 3);
  a(1, 0) = 1;
  a(2, 0) = 1;
  a(1, 1) = pow_pi(cfg, 2);
  a(2, 1) = pow_pi(cfg, 1);
  a(2, 2) = pow_pi(cfg, 2);
  return hnf(a, cfg);
}

TropPoly d3_polynomial() {
  TropPoly poly;
  poly.dim = 3;
  poly.coeffs = {{0u, 0}, {1u, 0}, {2u, 0}, {4u, 0},
                 {3u, 2}, {5u, 1}, {6u, 1}, {7u, 4}};
  return poly;
}

}  // namespace

TEST_CASE("exact tail exponents") {
  FieldConfig q3(3), q2(2);
  Lattice std2 = hnf(MatrixQ::Identity(2, 2), q3);
  CHECK(phi_exact(std2, {1, 1}) == 2);
  CHECK(phi_exact(std2, {-2, 0}) == 0);

  Lattice skew = hnf(tu::mat(2, 2, {"1", "0", "1", "3"}), q3);
  CHECK(phi_exact(skew, {1, 1}) == 1);

  Lattice ex = d3_example(q2);
  CHECK(phi_exact(ex, {3, 3, 2}) == 4);
}

TEST_CASE("tail oracle matches the literal formula") {
  CounterRng rng(707);
  for (long p : {2L, 3L}) {
    FieldConfig cfg(p);
    for (int trial = 0; trial < 15; ++trial) {
      Eigen::Index d = tu::rand_range(rng, 2, 3);
      Lattice l = tu::rand_lattice(rng, cfg, d);
      TailOracle oracle(l);
      for (int s = 0; s < 10; ++s) {
        std::vector<long> v(static_cast<std::size_t>(d));
        for (auto& x : v) x = tu::rand_range(rng, -6, 6);
        CHECK(oracle.phi(v) == phi_exact(l, v));
      }
    }
  }
}

TEST_CASE("phi normalization and monotonicity") {
  CounterRng rng(808);
  FieldConfig q3(3);
  for (int trial = 0; trial < 15; ++trial) {
    Lattice l = tu::rand_lattice(rng, q3, 2);
    TailOracle oracle(l);
    long lo = min_valuation(l.form.matrix, q3).value();
    CHECK(oracle.phi({lo, lo}) == 0);
    CHECK(oracle.phi({lo - 3, lo - 1}) == 0);
    for (int s = 0; s < 8; ++s) {
      long a = tu::rand_range(rng, -5, 5), b = tu::rand_range(rng, -5, 5);
      CHECK(oracle.phi({a + 1, b}) >= oracle.phi({a, b}));
      CHECK(oracle.phi({a, b + 1}) >= oracle.phi({a, b}));
    }
  }
}

TEST_CASE("dimension-2 closed form") {
  FieldConfig q3(3);
  TropPoly flat = trop2d(hnf(MatrixQ::Identity(2, 2), q3));
  for (auto& [mask, c] : flat.coeffs) CHECK(c == 0);

  TropPoly skew = trop2d(hnf(tu::mat(2, 2, {"1", "0", "1", "3"}), q3));
  CHECK(skew.coeffs.at(0u) == 0);
  CHECK(skew.coeffs.at(1u) == 0);
  CHECK(skew.coeffs.at(2u) == 0);
  CHECK(skew.coeffs.at(3u) == 1);
  CHECK(eval_trop(skew, {1, 1}) == 1);

  // Hermite data (a, c, b) maps to coefficients (0, a, c, a+b).
  MatrixQ h = tu::mat(2, 2, {"9", "0", "15", "27"});  // a=2, x=5*3, c=1, b=3
  TropPoly generic = trop2d(hnf(h, q3));
  CHECK(generic.coeffs.at(1u) == 2);
  CHECK(generic.coeffs.at(2u) == 1);
  CHECK(generic.coeffs.at(3u) == 5);
  CHECK(is_supermodular(generic));

  CHECK_THROWS_AS(trop2d(hnf(MatrixQ::Identity(3, 3), q3)), Error);
}

TEST_CASE("theorem-3 equivalence on a box") {
  CounterRng rng(909);
  for (long p : {2L, 3L, 5L}) {
    FieldConfig cfg(p);
    for (int trial = 0; trial < 10; ++trial) {
      Lattice l = tu::rand_lattice(rng, cfg, 2);
      TropPoly poly = trop2d(l);
      TailOracle oracle(l);
      for (long v1 = -5; v1 <= 5; ++v1)
        for (long v2 = -5; v2 <= 5; ++v2)
          CHECK(oracle.phi({v1, v2}) == eval_trop(poly, {v1, v2}));
    }
  }
}

TEST_CASE("tropical evaluation and supermodularity") {
  TropPoly zero;
  zero.dim = 2;
  zero.coeffs = {{0u, 0}, {1u, 0}, {2u, 0}, {3u, 0}};
  CHECK(eval_trop(zero, {-1, -2}) == 0);
  CHECK(is_supermodular(zero));

  CHECK(eval_trop(d3_polynomial(), {3, 3, 2}) == 4);
  CHECK(is_supermodular(d3_polynomial()));

  TropPoly bad = zero;
  bad.coeffs[3u] = -1;  // c_{12} < c_1 + c_2
  CHECK_FALSE(is_supermodular(bad));

  TropPoly shifted = d3_polynomial();
  shifted.coeffs[0u] = 1;
  CHECK_FALSE(is_supermodular(shifted));

  CHECK_THROWS_AS(eval_trop(zero, {1, 2, 3}), Error);
}

TEST_CASE("coefficient fitting") {
  FieldConfig q2(2), q3(3);
  TropPoly fit = fit_tropical(d3_example(q2));
  CHECK(fit == d3_polynomial());

  // Diagonal lattices give c_I = sum of the exponents in I.
  Lattice diag = diagonal_lattice(q3, {1, 0, 2});
  TropPoly dfit = fit_tropical(diag);
  CHECK(dfit.coeffs.at(1u) == 1);
  CHECK(dfit.coeffs.at(2u) == 0);
  CHECK(dfit.coeffs.at(4u) == 2);
  CHECK(dfit.coeffs.at(3u) == 1);
  CHECK(dfit.coeffs.at(5u) == 3);
  CHECK(dfit.coeffs.at(6u) == 2);
  CHECK(dfit.coeffs.at(7u) == 3);

  CounterRng rng(1010);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice l = tu::rand_lattice(rng, q3, 2);
    CHECK(fit_tropical(l) == trop2d(l));
  }
}

TEST_CASE("conjecture verification") {
  FieldConfig q2(2);
  ConjectureReport report = verify_conjecture(d3_example(q2), 6);
  CHECK(report.mismatches.empty());
  CHECK(report.supermodular);
  CHECK(report.holds());
  CHECK(report.points_checked == 13 * 13 * 13);

  ConjectureReport std_report = verify_conjecture(hnf(MatrixQ::Identity(2, 2), q2), 4);
  CHECK(std_report.holds());

  // Thread count must not change the findings.
  ConjectureReport threaded = verify_conjecture(d3_example(q2), 4, 4);
  CHECK(threaded.holds());
  CHECK(threaded.points_checked == 9 * 9 * 9);
}

TEST_CASE("monte carlo tails") {
  FieldConfig q3(3);
  GaussianDist std2{hnf(MatrixQ::Identity(2, 2), q3)};
  TailEstimate est = mc_tail(std2, {1, 1}, 30000, 99);
  CHECK(std::abs(est.estimate - 1.0 / 9.0) <= 4 * est.std_error);

  GaussianDist skew{hnf(tu::mat(2, 2, {"1", "0", "1", "3"}), q3)};
  TailEstimate est2 = mc_tail(skew, {1, 1}, 30000, 100);
  CHECK(std::abs(est2.estimate - 1.0 / 3.0) <= 4 * est2.std_error);

  // Below the support minimum the event is certain.
  TailEstimate sure = mc_tail(skew, {-2, -2}, 500, 7);
  CHECK(sure.estimate == 1.0);

  CHECK_THROWS_AS(mc_tail(std2, {1, 1}, 100, 0, 5), Error);

  TailEstimate t1 = mc_tail(std2, {1, 1}, 5000, 31, 0, 1);
  TailEstimate t4 = mc_tail(std2, {1, 1}, 5000, 31, 0, 4);
  CHECK(t1.hits == t4.hits);
}
