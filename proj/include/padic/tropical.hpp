#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "padic/gaussian.hpp"
#include "padic/lattice.hpp"

namespace padic {

/// Max-plus polynomial supported on the cube: P(v) = max_I (sum_{i in I} v_i
/// - c_I). Keys are bitmasks over coordinates (bit i-1 <-> coordinate i);
/// c_empty is always present and zero.
struct TropPoly {
  int dim = 0;
  std::map<std::uint32_t, long> coeffs;
};

bool operator==(const TropPoly& a, const TropPoly& b);

/// Subsets of {1..d} as bitmasks, ordered by (cardinality, lexicographic).
std::vector<std::uint32_t> subsets_by_size(int dim);

long eval_trop(const TropPoly& poly, const std::vector<long>& v);

/// c_empty = 0 and c_{I u J} + c_{I n J} >= c_I + c_J. Checked over all
/// pairs for dim <= 10, via the equivalent local criterion above that.
bool is_supermodular(const TropPoly& poly);

/// The tail exponent: phi_L(v) = -log_q P(val(X) >= v) for X uniform on L,
/// computed exactly as measure_log(L n pi^v) - measure_log(L).
long phi_exact(const Lattice& l, const std::vector<long>& v);

/// phi evaluator caching dual(L); each call costs one Hermite reduction of a
/// d x 2d block.
class TailOracle {
 public:
  explicit TailOracle(const Lattice& l);

  long phi(const std::vector<long>& v) const;
  const Lattice& lattice() const { return lattice_; }

 private:
  Lattice lattice_;
  Lattice dual_;
  long mlog_;
};

/// Closed form in dimension 2: Hermite form [[p^a, 0], [p^c x, p^b]] gives
/// coefficients (0, a, c, a+b); a zero off-diagonal entry means c = b.
TropPoly trop2d(const Lattice& l);

/// Fits c_I from corner evaluations v_i = M (i in I), -M otherwise, doubling
/// M until the coefficients agree on two consecutive rounds. Raises
/// NonStabilizing after 10 doublings instead of guessing.
TropPoly fit_tropical(const Lattice& l);

struct TropMismatch {
  std::vector<long> v;
  long phi = 0;
  long poly = 0;
};

struct ConjectureReport {
  Lattice lattice;
  TropPoly fitted;
  long box_radius = 0;
  long long points_checked = 0;
  std::vector<TropMismatch> mismatches;
  bool supermodular = false;

  bool holds() const { return mismatches.empty() && supermodular; }
};

/// Compares phi with the fitted polynomial over the integer box
/// [-radius, radius]^d: exhaustively for d <= 3, and on 10^4 points drawn
/// coordinatewise from the counter stream under a fixed seed for d >= 4.
ConjectureReport verify_conjecture(const Lattice& l, long box_radius, int threads = 1);

struct TailEstimate {
  long long hits = 0;
  long long samples = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  long precision = 0;
};

/// Monte-Carlo estimate of P(val(X) >= v) with binomial standard error.
/// precision 0 picks max(v) + 8 (raised until the censor bound covers v);
/// explicit precisions below that raise PrecisionTooLow.
TailEstimate mc_tail(const GaussianDist& g, const std::vector<long>& v, long long n,
                     std::uint64_t seed, long precision = 0, int threads = 1);

}  // namespace padic
