#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padic/lattice.hpp"
#include "padic/rng.hpp"

namespace padic {

/// A K-Gaussian: the normalized Haar measure on its lattice.
struct GaussianDist {
  Lattice lattice;

  const FieldConfig& field() const { return lattice.field; }
};

/// One draw X = A Z with Z truncated to `precision` uniform digits per
/// coordinate. valuations[i] is exact when censored[i] is false; when true
/// it holds censor_bound = precision + min entry valuation of A, a lower
/// bound for the untruncated valuation.
struct SampleResult {
  VectorQ point;
  std::vector<ValInt> valuations;
  std::vector<bool> censored;
  long precision = 0;
  std::uint64_t seed = 0;
  long censor_bound = 0;
};

/// Deterministic given (seed, precision): digits are drawn coordinate-major
/// from the counter stream. Requires a full-rank Gaussian and precision >= 1.
SampleResult sample(const GaussianDist& g, long precision, std::uint64_t seed);

/// i.i.d. draws under the sharding contract: samples come in fixed blocks of
/// kSampleShard, block k seeded by derive_shard_seed(seed, k).
inline constexpr long kSampleShard = 1024;
std::vector<SampleResult> sample_many(const GaussianDist& g, long long n, long precision,
                                      std::uint64_t seed, int threads = 1);

/// One draw from an already-positioned stream; the building block the
/// sharded consumers (sample_many, mc_tail) iterate.
SampleResult sample_stream(const GaussianDist& g, long precision, CounterRng& rng,
                           long censor_bound);

/// log_q of the likelihood of the dataset: N * measure_log(L) when every
/// point lies in L, and -inf (nullopt) otherwise.
std::optional<long long> log_likelihood(const GaussianDist& g,
                                        const std::vector<VectorQ>& data);

/// The maximum-likelihood lattice: the O_K-span of the data. Full-rank data
/// gives the unique maximizer; rank-deficient data the inclusion-minimal
/// maximizer on its span.
Lattice mle(const std::vector<VectorQ>& data, const FieldConfig& cfg);

/// Row matroid over F_p on ground set {1..d} \ I encoding which coordinate
/// families are mutually independent given X_I. Rows are listed in ascending
/// ground order.
struct MatroidRep {
  std::vector<int> ground;
  FpMat matrix;
  long p = 2;
};

/// Theorem-2 construction: permute I (ascending) to the front followed by
/// its complement (ascending), recompute the Hermite form, take the
/// lower-right block, scale rows to norm 1, reduce mod p.
MatroidRep ci_matroid(const GaussianDist& g, const std::vector<int>& given);

/// X_J mutually independent given X_I, i.e. J independent in ci_matroid.
bool is_ci(const GaussianDist& g, const std::vector<int>& given,
           const std::vector<int>& js);

long matroid_rank(const MatroidRep& m, const std::vector<int>& subset);

/// All maximal independent subsets, in lexicographic order. Guarded to
/// ground sets of at most 20 elements.
std::vector<std::vector<int>> matroid_bases(const MatroidRep& m);

}  // namespace padic
