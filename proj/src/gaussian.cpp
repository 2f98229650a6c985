#include "padic/gaussian.hpp"

#include <algorithm>

#include "padic/parallel.hpp"
#include "padic/rng.hpp"

namespace padic {

namespace {

void require_full_rank(const Lattice& l, const char* what) {
  if (!l.full_rank())
    fail(Err::NotFullRank, std::string(what) + " needs a full-rank lattice");
}

// Validates a 1-based coordinate subset; returns it sorted and deduplicated.
std::vector<int> checked_subset(const std::vector<int>& s, Eigen::Index d, const char* name) {
  std::vector<int> out = s;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != s.size())
    fail(Err::BadSubset, std::string(name) + " has repeated indices");
  for (int i : out)
    if (i < 1 || i > static_cast<int>(d))
      fail(Err::BadSubset, std::string(name) + " index " + std::to_string(i) +
                               " outside {1.." + std::to_string(d) + "}");
  return out;
}

}  // namespace

SampleResult sample_stream(const GaussianDist& g, long precision, CounterRng& rng,
                           long censor_bound) {
  const Lattice& l = g.lattice;
  const Eigen::Index d = l.dim;
  const FieldConfig& cfg = l.field;

  VectorQ z(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Int acc = 0;
    Int pw = 1;
    for (long t = 0; t < precision; ++t) {
      long digit = draw_digit(rng, cfg.p);
      if (digit != 0) acc += digit * pw;
      pw *= cfg.p;
    }
    z[i] = Rat(acc);
  }

  SampleResult out;
  out.point = l.form.matrix * z;
  out.precision = precision;
  out.censor_bound = censor_bound;
  out.valuations.reserve(static_cast<std::size_t>(d));
  out.censored.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    ValInt v = valuation(out.point[i], cfg);
    bool cens = !(v < ValInt::of(censor_bound));
    out.censored.push_back(cens);
    out.valuations.push_back(cens ? ValInt::of(censor_bound) : v);
  }
  return out;
}

SampleResult sample(const GaussianDist& g, long precision, std::uint64_t seed) {
  require_full_rank(g.lattice, "sample");
  if (precision < 1) fail(Err::PrecisionTooLow, "sampling precision must be >= 1");
  CounterRng rng(seed);
  long bound = precision + min_valuation(g.lattice.form.matrix, g.field()).value();
  SampleResult out = sample_stream(g, precision, rng, bound);
  out.seed = seed;
  return out;
}

std::vector<SampleResult> sample_many(const GaussianDist& g, long long n, long precision,
                                      std::uint64_t seed, int threads) {
  require_full_rank(g.lattice, "sample");
  if (precision < 1) fail(Err::PrecisionTooLow, "sampling precision must be >= 1");
  if (n < 0) fail(Err::EmptyData, "negative sample count");
  long min_val_a = min_valuation(g.lattice.form.matrix, g.field()).value();

  std::vector<SampleResult> out(static_cast<std::size_t>(n));
  const long bound = precision + min_val_a;
  const long shards = static_cast<long>((n + kSampleShard - 1) / kSampleShard);
  run_sharded(shards, threads, [&](long shard) {
    std::uint64_t shard_seed = derive_shard_seed(seed, static_cast<std::uint64_t>(shard));
    CounterRng rng(shard_seed);
    const long long lo = static_cast<long long>(shard) * kSampleShard;
    const long long hi = std::min<long long>(lo + kSampleShard, n);
    for (long long i = lo; i < hi; ++i) {
      out[static_cast<std::size_t>(i)] = sample_stream(g, precision, rng, bound);
      out[static_cast<std::size_t>(i)].seed = shard_seed;
    }
  });
  return out;
}

std::optional<long long> log_likelihood(const GaussianDist& g,
                                        const std::vector<VectorQ>& data) {
  for (const VectorQ& x : data) {
    if (x.size() != g.lattice.dim)
      fail(Err::DimensionMismatch, "data point dimension != lattice dimension");
    if (!contains(g.lattice, x)) return std::nullopt;
  }
  return static_cast<long long>(data.size()) * diag_exponent_sum(g.lattice);
}

Lattice mle(const std::vector<VectorQ>& data, const FieldConfig& cfg) {
  if (data.empty()) fail(Err::EmptyData, "no data points");
  const Eigen::Index d = data.front().size();
  MatrixQ a(d, static_cast<Eigen::Index>(data.size()));
  for (std::size_t j = 0; j < data.size(); ++j) {
    if (data[j].size() != d) fail(Err::DimensionMismatch, "mixed data point dimensions");
    a.col(static_cast<Eigen::Index>(j)) = data[j];
  }
  Lattice l = hnf(a, cfg);
  if (l.rank == 0) fail(Err::EmptyData, "all data points are zero");
  return l;
}

MatroidRep ci_matroid(const GaussianDist& g, const std::vector<int>& given) {
  const Lattice& l = g.lattice;
  require_full_rank(l, "ci_matroid");
  const Eigen::Index d = l.dim;
  std::vector<int> cond = checked_subset(given, d, "I");
  if (cond.size() == static_cast<std::size_t>(d))
    fail(Err::BadSubset, "I must be a proper subset of {1..d}");

  std::vector<int> ground;
  for (int i = 1; i <= static_cast<int>(d); ++i)
    if (!std::binary_search(cond.begin(), cond.end(), i)) ground.push_back(i);

  // Coordinates reordered to (I ascending, complement ascending).
  std::vector<int> order = cond;
  order.insert(order.end(), ground.begin(), ground.end());
  MatrixQ permuted(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    permuted.row(r) = l.form.matrix.row(order[static_cast<std::size_t>(r)] - 1);

  Lattice reordered = hnf(permuted, l.field);
  const auto ell = static_cast<Eigen::Index>(cond.size());
  const Eigen::Index k = d - ell;
  MatrixQ block = reordered.form.matrix.block(ell, ell, k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    QPower norm = vec_norm(VectorQ(block.row(i).transpose()), l.field);
    block.row(i) *= pow_pi(l.field, norm.exponent);
  }
  return MatroidRep{std::move(ground), residue_matrix(block, l.field), l.field.p};
}

bool is_ci(const GaussianDist& g, const std::vector<int>& given,
           const std::vector<int>& js) {
  MatroidRep m = ci_matroid(g, given);
  std::vector<int> j = checked_subset(js, g.lattice.dim, "J");
  if (j.empty()) fail(Err::BadSubset, "J must be nonempty");
  for (int x : j)
    if (!std::binary_search(m.ground.begin(), m.ground.end(), x))
      fail(Err::BadSubset, "J must avoid the conditioning set I");
  return matroid_rank(m, j) == static_cast<long>(j.size());
}

long matroid_rank(const MatroidRep& m, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    fail(Err::BadSubset, "subset has repeated indices");
  FpMat rows(static_cast<Eigen::Index>(s.size()), m.matrix.cols());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto it = std::lower_bound(m.ground.begin(), m.ground.end(), s[i]);
    if (it == m.ground.end() || *it != s[i])
      fail(Err::BadSubset, "element " + std::to_string(s[i]) + " outside the ground set");
    rows.row(static_cast<Eigen::Index>(i)) =
        m.matrix.row(static_cast<Eigen::Index>(it - m.ground.begin()));
  }
  return fp_rank(std::move(rows), m.p);
}

std::vector<std::vector<int>> matroid_bases(const MatroidRep& m) {
  const std::size_t n = m.ground.size();
  if (n > 20) fail(Err::TooLarge, "basis enumeration guarded to ground sets of size <= 20");
  const long r = fp_rank(m.matrix, m.p);

  std::vector<std::vector<int>> bases;
  // Lexicographic combinations of size r.
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (long i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
  if (r == 0) return {std::vector<int>{}};
  while (true) {
    std::vector<int> subset;
    subset.reserve(static_cast<std::size_t>(r));
    for (int i : idx) subset.push_back(m.ground[static_cast<std::size_t>(i)]);
    if (matroid_rank(m, subset) == r) bases.push_back(std::move(subset));

    long pos = r - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                           static_cast<int>(n) - (r - static_cast<int>(pos)))
      --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (long i = pos + 1; i < r; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return bases;
}

}  // namespace padic
