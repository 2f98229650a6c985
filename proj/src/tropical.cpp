#include "padic/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "padic/parallel.hpp"
#include "padic/rng.hpp"

namespace padic {

namespace {

constexpr std::uint64_t kGridSeed = 0x9E3779B97F4A7C15ULL;

std::vector<long> negated(const std::vector<long>& v) {
  std::vector<long> out = v;
  for (long& x : out) x = -x;
  return out;
}

void check_dim(const Lattice& l, const std::vector<long>& v) {
  if (static_cast<Eigen::Index>(v.size()) != l.dim)
    fail(Err::DimensionMismatch, "exponent vector length != lattice dimension");
}

}  // namespace

bool operator==(const TropPoly& a, const TropPoly& b) {
  return a.dim == b.dim && a.coeffs == b.coeffs;
}

std::vector<std::uint32_t> subsets_by_size(int dim) {
  std::vector<std::uint32_t> out;
  out.reserve(1u << dim);
  for (std::uint32_t mask = 0; mask < (1u << dim); ++mask) out.push_back(mask);
  std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });
  return out;
}

long eval_trop(const TropPoly& poly, const std::vector<long>& v) {
  if (static_cast<int>(v.size()) != poly.dim)
    fail(Err::DimensionMismatch, "point dimension != polynomial dimension");
  bool first = true;
  long best = 0;
  for (const auto& [mask, c] : poly.coeffs) {
    long term = -c;
    for (int i = 0; i < poly.dim; ++i)
      if (mask & (1u << i)) term += v[static_cast<std::size_t>(i)];
    if (first || term > best) best = term;
    first = false;
  }
  return best;
}

bool is_supermodular(const TropPoly& poly) {
  auto at = [&](std::uint32_t m) { return poly.coeffs.at(m); };
  auto empty_it = poly.coeffs.find(0);
  if (empty_it == poly.coeffs.end() || empty_it->second != 0) return false;
  const std::uint32_t full = (1u << poly.dim) - 1;
  if (poly.dim <= 10) {
    for (std::uint32_t a = 0; a <= full; ++a)
      for (std::uint32_t b = a + 1; b <= full; ++b)
        if (at(a | b) + at(a & b) < at(a) + at(b)) return false;
    return true;
  }
  // Equivalent local criterion: pairs differing by single elements.
  for (std::uint32_t s = 0; s <= full; ++s)
    for (int i = 0; i < poly.dim; ++i)
      for (int j = i + 1; j < poly.dim; ++j) {
        if (s & (1u << i) || s & (1u << j)) continue;
        if (at(s | (1u << i) | (1u << j)) + at(s) < at(s | (1u << i)) + at(s | (1u << j)))
          return false;
      }
  return true;
}

long phi_exact(const Lattice& l, const std::vector<long>& v) {
  check_dim(l, v);
  Lattice box = diagonal_lattice(l.field, v);
  long out = measure_log(intersect(l, box)) - measure_log(l);
  if (out < 0) throw std::logic_error("phi_exact: negative exponent");
  return out;
}

TailOracle::TailOracle(const Lattice& l)
    : lattice_(l), dual_(dual(l)), mlog_(measure_log(l)) {}

long TailOracle::phi(const std::vector<long>& v) const {
  check_dim(lattice_, v);
  // dual(pi^v) = pi^{-v}, and measure_log(dual(S)) = -measure_log(S), so
  // phi = -measure_log(dual_ + pi^{-v}) - measure_log(L).
  const Eigen::Index d = lattice_.dim;
  MatrixQ joint(d, 2 * d);
  joint.leftCols(d) = dual_.form.matrix;
  joint.rightCols(d) = diagonal_powers(lattice_.field, negated(v));
  long out = -diag_exponent_sum(hnf(joint, lattice_.field)) - mlog_;
  if (out < 0) throw std::logic_error("tail exponent: negative value");
  return out;
}

TropPoly trop2d(const Lattice& l) {
  if (l.dim != 2) fail(Err::WrongDimension, "trop2d needs dimension 2");
  if (!l.full_rank()) fail(Err::NotFullRank, "trop2d needs a full-rank lattice");
  const long a = l.form.diag_exponents[0];
  const long b = l.form.diag_exponents[1];
  const Rat& x = l.form.matrix(1, 0);
  const long c = sgn(x) == 0 ? b : valuation(x, l.field).value();
  TropPoly poly;
  poly.dim = 2;
  poly.coeffs = {{0u, 0}, {1u, a}, {2u, c}, {3u, a + b}};
  return poly;
}

TropPoly fit_tropical(const Lattice& l) {
  if (!l.full_rank()) fail(Err::NotFullRank, "fit_tropical needs a full-rank lattice");
  if (l.dim > 16) fail(Err::TooLarge, "coefficient fitting guarded to dimension <= 16");
  const int d = static_cast<int>(l.dim);
  TailOracle oracle(l);

  long m0 = 1 + std::abs(measure_log(l));
  for (long e : l.form.diag_exponents) m0 = std::max(m0, 1 + std::abs(e) + std::abs(measure_log(l)));

  auto corner_fit = [&](long m) {
    std::map<std::uint32_t, long> c;
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      std::vector<long> v(static_cast<std::size_t>(d), -m);
      long size = 0;
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) {
          v[static_cast<std::size_t>(i)] = m;
          ++size;
        }
      c[mask] = size * m - oracle.phi(v);
    }
    return c;
  };

  std::map<std::uint32_t, long> prev = corner_fit(m0);
  long m = m0;
  for (int round = 0; round < 10; ++round) {
    m *= 2;
    std::map<std::uint32_t, long> cur = corner_fit(m);
    if (cur == prev) {
      if (cur.at(0) != 0)
        throw std::logic_error("fit_tropical: nonzero constant coefficient");
      return TropPoly{d, std::move(cur)};
    }
    prev = std::move(cur);
  }
  fail(Err::NonStabilizing,
       "corner coefficients did not stabilize within 10 doublings (reached M = " +
           std::to_string(m) + "); possible conjecture anomaly");
}

ConjectureReport verify_conjecture(const Lattice& l, long box_radius, int threads) {
  ConjectureReport report{l, fit_tropical(l), box_radius, 0, {}, false};
  report.supermodular = is_supermodular(report.fitted);

  TailOracle oracle(l);
  const int d = static_cast<int>(l.dim);
  const long side = 2 * box_radius + 1;

  auto check_point = [&](const std::vector<long>& v, std::vector<TropMismatch>& sink) {
    long phi = oracle.phi(v);
    long poly = eval_trop(report.fitted, v);
    if (phi != poly) sink.push_back(TropMismatch{v, phi, poly});
  };

  if (d <= 3) {
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= side;
    const long long block = 4096;
    const long shards = static_cast<long>((total + block - 1) / block);
    std::vector<std::vector<TropMismatch>> found(static_cast<std::size_t>(shards));
    run_sharded(shards, threads, [&](long shard) {
      TailOracle local(l);
      for (long long t = shard * block; t < std::min<long long>((shard + 1) * block, total); ++t) {
        long long rest = t;
        std::vector<long> v(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
          v[static_cast<std::size_t>(i)] = static_cast<long>(rest % side) - box_radius;
          rest /= side;
        }
        long phi = local.phi(v);
        long poly = eval_trop(report.fitted, v);
        if (phi != poly)
          found[static_cast<std::size_t>(shard)].push_back(TropMismatch{v, phi, poly});
      }
    });
    report.points_checked = total;
    for (auto& part : found)
      report.mismatches.insert(report.mismatches.end(), part.begin(), part.end());
  } else {
    // Deterministic subsample: coordinates drawn from the counter stream
    // under the fixed seed kGridSeed.
    const long long total = 10000;
    CounterRng rng(kGridSeed);
    for (long long t = 0; t < total; ++t) {
      std::vector<long> v(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        v[static_cast<std::size_t>(i)] =
            static_cast<long>(rng.next() % static_cast<std::uint64_t>(side)) - box_radius;
      check_point(v, report.mismatches);
    }
    report.points_checked = total;
  }
  return report;
}

TailEstimate mc_tail(const GaussianDist& g, const std::vector<long>& v, long long n,
                     std::uint64_t seed, long precision, int threads) {
  check_dim(g.lattice, v);
  if (!g.lattice.full_rank()) fail(Err::NotFullRank, "mc_tail needs a full-rank lattice");
  if (n <= 0) fail(Err::EmptyData, "sample count must be positive");

  const long vmax = *std::max_element(v.begin(), v.end());
  const long min_val_a = min_valuation(g.lattice.form.matrix, g.field()).value();
  if (precision == 0) precision = std::max({vmax + 8, vmax - min_val_a, 1L});
  if (precision < vmax + 8)
    fail(Err::PrecisionTooLow, "need precision >= max(v) + 8 = " + std::to_string(vmax + 8));
  if (precision + min_val_a < vmax)
    fail(Err::PrecisionTooLow, "censor bound " + std::to_string(precision + min_val_a) +
                                   " does not cover max(v) = " + std::to_string(vmax));

  const long shards = static_cast<long>((n + kSampleShard - 1) / kSampleShard);
  std::vector<long long> hits(static_cast<std::size_t>(shards), 0);
  run_sharded(shards, threads, [&](long shard) {
    CounterRng rng(derive_shard_seed(seed, static_cast<std::uint64_t>(shard)));
    const long long lo = static_cast<long long>(shard) * kSampleShard;
    const long long hi = std::min<long long>(lo + kSampleShard, n);
    for (long long i = lo; i < hi; ++i) {
      SampleResult s = sample_stream(g, precision, rng, precision + min_val_a);
      bool ok = true;
      for (Eigen::Index j = 0; j < g.lattice.dim; ++j) {
        // Censored coordinates already satisfy val >= censor_bound >= v_j.
        if (s.censored[static_cast<std::size_t>(j)]) continue;
        if (s.valuations[static_cast<std::size_t>(j)] <
            ValInt::of(v[static_cast<std::size_t>(j)])) {
          ok = false;
          break;
        }
      }
      if (ok) ++hits[static_cast<std::size_t>(shard)];
    }
  });

  TailEstimate out;
  out.samples = n;
  out.hits = std::accumulate(hits.begin(), hits.end(), 0LL);
  out.precision = precision;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(n);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(n));
  return out;
}

}  // namespace padic
