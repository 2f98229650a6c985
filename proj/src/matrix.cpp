#include "padic/matrix.hpp"

namespace padic {

QPower vec_norm(const VectorQ& x, const FieldConfig& cfg) {
  ValInt best = ValInt::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    best = ValInt::min(best, valuation(x[i], cfg));
  if (best.is_infinite()) return QPower::zero_value();
  return QPower::of(-best.value());
}

ValInt min_valuation(const MatrixQ& a, const FieldConfig& cfg) {
  ValInt best = ValInt::infinity();
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      best = ValInt::min(best, valuation(a(i, j), cfg));
  return best;
}

FpMat residue_matrix(const MatrixQ& a, const FieldConfig& cfg) {
  FpMat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(i, j) = residue(a(i, j), cfg);
  return out;
}

long fp_rank(FpMat m, long p) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  long rank = 0;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = row; i < rows; ++i)
      if (m(i, col) % p != 0) { piv = i; break; }
    if (piv < 0) continue;
    m.row(row).swap(m.row(piv));
    long inv = mod_inverse(m(row, col) % p, p);
    for (Eigen::Index i = row + 1; i < rows; ++i) {
      long f = (m(i, col) % p) * inv % p;
      if (f == 0) continue;
      for (Eigen::Index j = col; j < cols; ++j)
        m(i, j) = ((m(i, j) - f * m(row, j)) % p + p) % p;
    }
    ++row;
    ++rank;
  }
  return rank;
}

bool fp_express(const FpMat& rows, const std::vector<long>& target, long p,
                std::vector<long>& coeffs) {
  const Eigen::Index k = rows.rows(), d = rows.cols();
  // Solve c * rows = target by eliminating the transposed augmented system.
  FpMat aug(d, k + 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) aug(i, j) = rows(j, i) % p;
    aug(i, k) = target[static_cast<std::size_t>(i)] % p;
  }
  std::vector<Eigen::Index> pivot_col(static_cast<std::size_t>(d), -1);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < k && row < d; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = row; i < d; ++i)
      if (aug(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    aug.row(row).swap(aug.row(piv));
    long inv = mod_inverse(aug(row, col), p);
    for (Eigen::Index j = col; j <= k; ++j) aug(row, j) = aug(row, j) * inv % p;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == row || aug(i, col) == 0) continue;
      long f = aug(i, col);
      for (Eigen::Index j = col; j <= k; ++j)
        aug(i, j) = ((aug(i, j) - f * aug(row, j)) % p + p) % p;
    }
    pivot_col[static_cast<std::size_t>(row)] = col;
    ++row;
  }
  // Inconsistent iff a zero row has nonzero rhs.
  for (Eigen::Index i = row; i < d; ++i)
    if (aug(i, k) != 0) return false;
  coeffs.assign(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < row; ++i)
    coeffs[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = aug(i, k);
  return true;
}

bool mat_equal(const MatrixQ& a, const MatrixQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

MatrixQ diagonal_powers(const FieldConfig& cfg, const std::vector<long>& exps) {
  const auto d = static_cast<Eigen::Index>(exps.size());
  MatrixQ m = MatrixQ::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    m(i, i) = pow_pi(cfg, exps[static_cast<std::size_t>(i)]);
  return m;
}

}  // namespace padic
