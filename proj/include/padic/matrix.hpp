#pragma once

#include <Eigen/Core>
#include <vector>

#include "padic/scalar.hpp"

namespace Eigen {

/// Exact rationals as an Eigen scalar: no epsilon, no rounding.
template <>
struct NumTraits<padic::Rat> : GenericNumTraits<padic::Rat> {
  typedef padic::Rat Real;
  typedef padic::Rat NonInteger;
  typedef padic::Rat Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace padic {

using MatrixQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// Dense matrix over the residue field F_p; entries normalized to {0..p-1}.
using FpMat = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;

/// Sup norm max |x_i|; zero vector gives 0.
QPower vec_norm(const VectorQ& x, const FieldConfig& cfg);

/// Minimum entry valuation; +inf for an all-zero (or empty) matrix.
ValInt min_valuation(const MatrixQ& a, const FieldConfig& cfg);

/// Entrywise residue; every entry must have val >= 0.
FpMat residue_matrix(const MatrixQ& a, const FieldConfig& cfg);

long fp_rank(FpMat m, long p);

/// Expresses `target` as a row-combination of the rows of `rows` over F_p.
/// Returns false if target is outside the row span (coeffs untouched).
bool fp_express(const FpMat& rows, const std::vector<long>& target, long p,
                std::vector<long>& coeffs);

bool mat_equal(const MatrixQ& a, const MatrixQ& b);

MatrixQ diagonal_powers(const FieldConfig& cfg, const std::vector<long>& exps);

}  // namespace padic
