#include <doctest.h>

#include <cmath>

#include "padic/gaussian.hpp"
#include "testutil.hpp"

using namespace padic;
namespace tu = padic::testutil;

namespace {

// The Q_p^4 lattice from the conditional-independence worked example.
GaussianDist ci_example(const FieldConfig& cfg) {
  std::string p = std::to_string(cfg.p);
  std::string p2 = std::to_string(cfg.p * cfg.p);
  MatrixQ a = tu::mat(4, 4,
                      {"1", "0", "0", "0",
                       "1", "1", "0", "0",
                       "1", "0", p, "0",
                       "1", "1/" + p, "1/" + p, p2});
  return GaussianDist{hnf(a, cfg)};
}

}  // namespace

TEST_CASE("sampling stays in the support") {
  FieldConfig q3(3);
  GaussianDist std2{hnf(MatrixQ::Identity(2, 2), q3)};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SampleResult s = sample(std2, 6, seed);
    for (Eigen::Index i = 0; i < 2; ++i)
      CHECK(s.valuations[static_cast<std::size_t>(i)] >= ValInt::of(0));
  }

  GaussianDist skew{diagonal_lattice(q3, {2, -1})};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SampleResult s = sample(skew, 6, seed);
    CHECK(s.valuations[0] >= ValInt::of(2));
    CHECK(s.valuations[1] >= ValInt::of(-1));
  }
}

TEST_CASE("sampling is deterministic and sharded") {
  FieldConfig q3(3);
  GaussianDist g{hnf(tu::mat(2, 2, {"1", "0", "1", "3"}), q3)};
  SampleResult a = sample(g, 8, 42), b = sample(g, 8, 42);
  CHECK(a.point == b.point);

  auto batch1 = sample_many(g, 2500, 8, 7, 1);
  auto batch4 = sample_many(g, 2500, 8, 7, 4);
  REQUIRE(batch1.size() == batch4.size());
  for (std::size_t i = 0; i < batch1.size(); ++i)
    CHECK(batch1[i].point == batch4[i].point);
}

TEST_CASE("tail frequency of the standard Gaussian") {
  FieldConfig q3(3);
  GaussianDist std2{hnf(MatrixQ::Identity(2, 2), q3)};
  const long long n = 20000;
  auto samples = sample_many(std2, n, 9, 2024);
  long long hits = 0;
  for (const auto& s : samples)
    if (s.valuations[0] >= ValInt::of(1) && s.valuations[1] >= ValInt::of(1)) ++hits;
  // P(val >= (1,1)) = 1/9 for independent shifted geometrics.
  double expect = 1.0 / 9.0;
  double se = std::sqrt(expect * (1 - expect) / static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(hits) / n - expect) <= 4 * se);
}

TEST_CASE("log likelihood") {
  FieldConfig q3(3);
  GaussianDist std2{hnf(MatrixQ::Identity(2, 2), q3)};
  CHECK(log_likelihood(std2, {tu::vec({"0", "0"})}) == 0);
  CHECK(log_likelihood(std2, {tu::vec({"1", "1"}), tu::vec({"1", "0"})}) == 0);
  CHECK_FALSE(log_likelihood(std2, {tu::vec({"1/3", "0"})}).has_value());

  GaussianDist small{diagonal_lattice(q3, {1, 1})};
  CHECK_FALSE(log_likelihood(small, {tu::vec({"1", "1"}), tu::vec({"1", "0"})}).has_value());
  CHECK(log_likelihood(small, {tu::vec({"3", "3"}), tu::vec({"0", "9"})}) == 4);
  CHECK_THROWS_AS(log_likelihood(std2, {tu::vec({"1", "1", "1"})}), Error);
}

TEST_CASE("maximum likelihood estimation") {
  FieldConfig q3(3);
  auto basis = tu::rows_of(MatrixQ::Identity(3, 3));
  CHECK(mle(basis, q3) == hnf(MatrixQ::Identity(3, 3), q3));

  CHECK(mle({tu::vec({"1", "1"}), tu::vec({"1", "0"})}, q3) ==
        hnf(MatrixQ::Identity(2, 2), q3));

  Lattice fitted = mle({tu::vec({"3", "0"}), tu::vec({"0", "3"}), tu::vec({"1", "1"})}, q3);
  CHECK(mat_equal(fitted.form.matrix, tu::mat(2, 2, {"1", "0", "1", "3"})));
  CHECK(measure_log(fitted) == 1);

  CHECK_THROWS_AS(mle({}, q3), Error);
  CHECK_THROWS_AS(mle({tu::vec({"0", "0"})}, q3), Error);
}

TEST_CASE("mle maximizes the likelihood") {
  CounterRng rng(404);
  FieldConfig q2(2);
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::Index d = tu::rand_range(rng, 2, 3);
    std::vector<VectorQ> data;
    long npts = tu::rand_range(rng, d, d + 3);
    for (long i = 0; i < npts; ++i)
      data.push_back(tu::rand_matrix(rng, q2, d, 1).col(0));
    Lattice best = mle(data, q2);
    if (!best.full_rank()) continue;
    GaussianDist gbest{best};
    auto ll_best = log_likelihood(gbest, data);
    REQUIRE(ll_best.has_value());

    // Random containing competitors: span of the data plus extra points.
    for (int c = 0; c < 10; ++c) {
      MatrixQ wide(d, best.rank + 1);
      wide.leftCols(best.rank) = best.form.matrix;
      wide.col(best.rank) = tu::rand_matrix(rng, q2, d, 1).col(0);
      Lattice comp = hnf(wide, q2);
      auto ll_comp = log_likelihood(GaussianDist{comp}, data);
      REQUIRE(ll_comp.has_value());
      CHECK(*ll_comp <= *ll_best);
      if (comp != best) CHECK(*ll_comp < *ll_best);
    }
  }
}

TEST_CASE("ci matroid of the worked example") {
  for (long p : {3L, 7L}) {
    FieldConfig cfg(p);
    GaussianDist g = ci_example(cfg);
    MatroidRep m = ci_matroid(g, {1});
    CHECK(m.ground == std::vector<int>{2, 3, 4});
    FpMat expect(3, 3);
    expect << 1, 0, 0,
              0, 1, 0,
              1, 1, 0;
    CHECK(m.matrix == expect);

    auto bases = matroid_bases(m);
    CHECK(bases == std::vector<std::vector<int>>{{2, 3}, {2, 4}, {3, 4}});

    CHECK(is_ci(g, {1}, {2, 4}));
    CHECK(is_ci(g, {1}, {3, 4}));
    CHECK_FALSE(is_ci(g, {1}, {2, 3, 4}));
    CHECK(is_ci(g, {1}, {2}));  // singletons are always independent
  }
}

TEST_CASE("ci matroid edge cases") {
  FieldConfig q5(5);
  GaussianDist diag{diagonal_lattice(q5, {1, 0, 2})};
  MatroidRep free = ci_matroid(diag, {});
  CHECK(matroid_rank(free, {1, 2, 3}) == 3);
  CHECK(matroid_bases(free) == std::vector<std::vector<int>>{{1, 2, 3}});

  GaussianDist skew{hnf(tu::mat(2, 2, {"1", "0", "1", "5"}), q5)};
  MatroidRep dep = ci_matroid(skew, {});
  CHECK(fp_rank(dep.matrix, 5) == 1);
  CHECK_FALSE(is_ci(skew, {}, {1, 2}));

  CHECK_THROWS_AS(ci_matroid(diag, {1, 2, 3}), Error);
  CHECK_THROWS_AS(is_ci(diag, {1}, {}), Error);
  CHECK_THROWS_AS(is_ci(diag, {1}, {1, 2}), Error);
  CHECK_THROWS_AS(ci_matroid(diag, {0}), Error);
}

TEST_CASE("ci matroid is base and scale invariant") {
  CounterRng rng(505);
  FieldConfig q3(3);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Index d = tu::rand_range(rng, 2, 4);
    Lattice l = tu::rand_lattice(rng, q3, d);
    std::vector<int> given;
    for (int i = 1; i <= static_cast<int>(d); ++i)
      if (rng.next() % 3 == 0 && given.size() + 1 < static_cast<std::size_t>(d))
        given.push_back(i);

    MatroidRep base = ci_matroid(GaussianDist{l}, given);

    MatrixQ u = tu::rand_unimodular(rng, q3, d);
    MatroidRep changed = ci_matroid(GaussianDist{hnf(l.form.matrix * u, q3)}, given);
    CHECK(base.ground == changed.ground);
    CHECK(base.matrix == changed.matrix);

    Rat c = tu::rand_scalar(rng, q3);
    if (sgn(c) == 0) c = 1;
    MatroidRep scaled = ci_matroid(GaussianDist{hnf(c * l.form.matrix, q3)}, given);
    CHECK(base.matrix == scaled.matrix);
  }
}

TEST_CASE("matroid exchange property") {
  CounterRng rng(606);
  FieldConfig q2(2);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Index d = tu::rand_range(rng, 2, 5);
    Lattice l = tu::rand_lattice(rng, q2, d);
    MatroidRep m = ci_matroid(GaussianDist{l}, {});
    auto bases = matroid_bases(m);
    REQUIRE(!bases.empty());
    for (const auto& b1 : bases)
      for (const auto& b2 : bases) {
        if (b1 == b2) continue;
        for (int x : b1) {
          if (std::find(b2.begin(), b2.end(), x) != b2.end()) continue;
          bool exchanged = false;
          for (int y : b2) {
            if (std::find(b1.begin(), b1.end(), y) != b1.end()) continue;
            std::vector<int> candidate;
            for (int z : b1)
              if (z != x) candidate.push_back(z);
            candidate.push_back(y);
            if (matroid_rank(m, candidate) == static_cast<long>(candidate.size())) {
              exchanged = true;
              break;
            }
          }
          CHECK(exchanged);
        }
      }
  }
}

TEST_CASE("matroid guards") {
  FpMat zero_row(2, 2);
  zero_row << 1, 0, 0, 0;
  MatroidRep m{{1, 2}, zero_row, 3};
  auto bases = matroid_bases(m);
  CHECK(bases == std::vector<std::vector<int>>{{1}});  // 2 is a loop

  std::vector<int> big_ground;
  for (int i = 1; i <= 21; ++i) big_ground.push_back(i);
  MatroidRep too_big{big_ground, FpMat::Zero(21, 21), 2};
  CHECK_THROWS_AS(matroid_bases(too_big), Error);
}
