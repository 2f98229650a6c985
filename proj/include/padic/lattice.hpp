#pragma once

#include <string>
#include <vector>

#include "padic/matrix.hpp"

namespace padic {

/// Canonical generator matrix of a lattice. Column k has its pivot p^{n_k}
/// in row pivot_rows[k]; entries above the pivot (in pivot-row order) are
/// zero, entries below it on pivot rows are digit-reduced to degree < n_k.
/// For a full-rank lattice this is the unique lower-triangular Hermite
/// normal form; for rank r < d it is the d×r matrix that is in Hermite form
/// after deleting the non-pivot rows.
struct HermiteForm {
  MatrixQ matrix;
  std::vector<long> diag_exponents;
  std::vector<Eigen::Index> pivot_rows;
};

/// An O_K-module in K^d, canonically represented; two lattices are equal
/// iff their Hermite forms match entrywise.
struct Lattice {
  FieldConfig field;
  Eigen::Index dim = 0;
  Eigen::Index rank = 0;
  HermiteForm form;

  bool full_rank() const { return rank == dim && dim > 0; }
};

bool operator==(const Lattice& a, const Lattice& b);
inline bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

/// Stable text key (p + dimensions + entries); used for dedup and sorting.
std::string lattice_key(const Lattice& l);

/// Exact factorization A = U D V with U, V in GL(O_K) and D diagonal with
/// pure powers p^{n_i}, exponents nondecreasing, zeros last. Smith form and
/// singular value decomposition coincide over K.
struct SvdDecomposition {
  MatrixQ U, D, V;
  std::vector<long> diag_exponents;  // exponents of the nonzero diagonal
};

/// The lattice generated over O_K by the columns of A (any shape, any rank).
Lattice hnf(const MatrixQ& a, const FieldConfig& cfg);

SvdDecomposition svd(const MatrixQ& a, const FieldConfig& cfg);

/// Norm-1 vectors are orthonormal iff their residues are independent over
/// F_p. Throws NormNotOne when some vector has norm != 1.
bool is_orthonormal(const std::vector<VectorQ>& vectors, const FieldConfig& cfg);

/// Scale-invariant orthogonality of nonzero vectors.
bool is_orthogonal(const std::vector<VectorQ>& vectors, const FieldConfig& cfg);

/// Orthonormal v_1..v_n with span(e_1..e_k) = span(v_1..v_k) for every k.
std::vector<VectorQ> orthonormalize(const std::vector<VectorQ>& vectors,
                                    const FieldConfig& cfg);

/// val(det A) = sum of diagonal exponents, so the Haar measure of the
/// lattice is q^{-measure_log}. Full rank only.
long measure_log(const Lattice& l);

/// Sum of pivot exponents for any rank; equals measure_log when full rank.
long diag_exponent_sum(const Lattice& l);

bool contains(const Lattice& l, const VectorQ& x);

/// Inverse of the Hermite form generator matrix (full rank).
MatrixQ hnf_inverse(const Lattice& l);

/// {y : <y, x> in O_K for all x in L} = hnf of the inverse transpose.
Lattice dual(const Lattice& l);

Lattice sum(const Lattice& a, const Lattice& b);

/// Computed through duality: dual(sum(dual(a), dual(b))).
Lattice intersect(const Lattice& a, const Lattice& b);

/// The unique maximal diagonal sublattice diag(p^{m_i}) O_K^d of L,
/// with m_i = -min_j val((A^{-1})_{ji}).
Lattice independence_lattice(const Lattice& l);

/// Lattice spanned by diag(p^{exps[i]}); pi^v in the tail-function sense.
Lattice diagonal_lattice(const FieldConfig& cfg, const std::vector<long>& exps);

}  // namespace padic
