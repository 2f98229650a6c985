#include "padic/lattice.hpp"

#include <sstream>

namespace padic {

namespace {

// Forward substitution for the (possibly low-rank) Hermite form: solves for
// y with H y agreeing with x on the pivot rows. H's pivot submatrix is lower
// triangular by construction.
VectorQ solve_on_pivots(const HermiteForm& h, const VectorQ& x) {
  const auto r = static_cast<Eigen::Index>(h.pivot_rows.size());
  VectorQ y(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    Rat acc = x[h.pivot_rows[static_cast<std::size_t>(k)]];
    for (Eigen::Index l = 0; l < k; ++l)
      acc -= h.matrix(h.pivot_rows[static_cast<std::size_t>(k)], l) * y[l];
    y[k] = acc / h.matrix(h.pivot_rows[static_cast<std::size_t>(k)], k);
  }
  return y;
}

}  // namespace

bool operator==(const Lattice& a, const Lattice& b) {
  return a.field == b.field && a.dim == b.dim && a.rank == b.rank &&
         a.form.pivot_rows == b.form.pivot_rows && mat_equal(a.form.matrix, b.form.matrix);
}

std::string lattice_key(const Lattice& l) {
  std::ostringstream os;
  os << l.field.p << ';' << l.dim << 'x' << l.rank << ';';
  for (Eigen::Index k = 0; k < l.rank; ++k)
    os << l.form.pivot_rows[static_cast<std::size_t>(k)] << (k + 1 < l.rank ? "," : ";");
  for (Eigen::Index i = 0; i < l.dim; ++i)
    for (Eigen::Index k = 0; k < l.rank; ++k)
      os << format_scalar(l.form.matrix(i, k)) << ' ';
  return os.str();
}

Lattice hnf(const MatrixQ& a, const FieldConfig& cfg) {
  const Eigen::Index d = a.rows(), m = a.cols();
  MatrixQ w = a;
  std::vector<Eigen::Index> pivot_rows;
  std::vector<long> exps;

  // Triangularize by column operations: in each row pick the
  // valuation-minimal entry (ties to the lowest column index) and clear the
  // rest of the row with multipliers in O_K.
  Eigen::Index pc = 0;
  for (Eigen::Index i = 0; i < d && pc < m; ++i) {
    Eigen::Index best = -1;
    long best_val = 0;
    for (Eigen::Index j = pc; j < m; ++j) {
      if (sgn(w(i, j)) == 0) continue;
      long v = valuation(w(i, j), cfg).value();
      if (best < 0 || v < best_val) {
        best = j;
        best_val = v;
      }
    }
    if (best < 0) continue;  // row carries no pivot
    if (best != pc) w.col(pc).swap(w.col(best));
    for (Eigen::Index j = pc + 1; j < m; ++j) {
      if (sgn(w(i, j)) == 0) continue;
      Rat f = w(i, j) / w(i, pc);
      w.col(j) -= f * w.col(pc);
    }
    pivot_rows.push_back(i);
    exps.push_back(best_val);
    ++pc;
  }

  const Eigen::Index r = pc;
  MatrixQ h = w.leftCols(r);

  // Scale each pivot to the pure power p^{n_k}.
  for (Eigen::Index k = 0; k < r; ++k) {
    Rat scale = pow_pi(cfg, exps[static_cast<std::size_t>(k)]) /
                h(pivot_rows[static_cast<std::size_t>(k)], k);
    h.col(k) *= scale;
  }

  // Digit-reduce pivot-row entries left of each pivot to degree < n_k.
  // Column k is zero on earlier pivot rows, so those stay reduced.
  for (Eigen::Index k = 1; k < r; ++k) {
    const Eigen::Index i = pivot_rows[static_cast<std::size_t>(k)];
    const long n = exps[static_cast<std::size_t>(k)];
    for (Eigen::Index j = 0; j < k; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      Rat kept = truncate_below(h(i, j), n, cfg);
      Rat alpha = (h(i, j) - kept) / pow_pi(cfg, n);
      if (sgn(alpha) != 0) h.col(j) -= alpha * h.col(k);
    }
  }

  return Lattice{cfg, d, r, HermiteForm{std::move(h), std::move(exps), std::move(pivot_rows)}};
}

SvdDecomposition svd(const MatrixQ& a, const FieldConfig& cfg) {
  const Eigen::Index d = a.rows(), n = a.cols();
  MatrixQ m = a;
  MatrixQ u = MatrixQ::Identity(d, d);
  MatrixQ v = MatrixQ::Identity(n, n);
  std::vector<long> exps;

  const Eigen::Index steps = std::min(d, n);
  for (Eigen::Index s = 0; s < steps; ++s) {
    // Global valuation-minimal pivot in the remaining minor keeps every
    // multiplier in O_K and the diagonal exponents nondecreasing.
    Eigen::Index pi = -1, pj = -1;
    long best = 0;
    for (Eigen::Index i = s; i < d; ++i)
      for (Eigen::Index j = s; j < n; ++j) {
        if (sgn(m(i, j)) == 0) continue;
        long val = valuation(m(i, j), cfg).value();
        if (pi < 0 || val < best) {
          pi = i;
          pj = j;
          best = val;
        }
      }
    if (pi < 0) break;
    if (pi != s) {
      m.row(s).swap(m.row(pi));
      u.col(s).swap(u.col(pi));
    }
    if (pj != s) {
      m.col(s).swap(m.col(pj));
      v.row(s).swap(v.row(pj));
    }
    for (Eigen::Index i = s + 1; i < d; ++i) {
      if (sgn(m(i, s)) == 0) continue;
      Rat f = m(i, s) / m(s, s);
      m.row(i) -= f * m.row(s);
      u.col(s) += f * u.col(i);
    }
    for (Eigen::Index j = s + 1; j < n; ++j) {
      if (sgn(m(s, j)) == 0) continue;
      Rat g = m(s, j) / m(s, s);
      m.col(j) -= g * m.col(s);
      v.row(s) += g * v.row(j);
    }
    Rat unit = m(s, s) / pow_pi(cfg, best);
    m(s, s) = pow_pi(cfg, best);
    u.col(s) *= unit;
    exps.push_back(best);
  }

  return SvdDecomposition{std::move(u), std::move(m), std::move(v), std::move(exps)};
}

bool is_orthonormal(const std::vector<VectorQ>& vectors, const FieldConfig& cfg) {
  if (vectors.empty()) return true;
  const Eigen::Index d = vectors.front().size();
  FpMat residues(static_cast<Eigen::Index>(vectors.size()), d);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const VectorQ& x = vectors[i];
    if (x.size() != d) fail(Err::DimensionMismatch, "mixed vector lengths");
    QPower norm = vec_norm(x, cfg);
    if (norm != QPower::of(0))
      fail(Err::NormNotOne,
           "vector " + std::to_string(i + 1) + " has norm " + norm.str(cfg));
    for (Eigen::Index j = 0; j < d; ++j)
      residues(static_cast<Eigen::Index>(i), j) = residue(x[j], cfg);
  }
  return fp_rank(residues, cfg.p) == static_cast<long>(vectors.size());
}

bool is_orthogonal(const std::vector<VectorQ>& vectors, const FieldConfig& cfg) {
  std::vector<VectorQ> scaled;
  scaled.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    QPower norm = vec_norm(vectors[i], cfg);
    if (norm.zero)
      fail(Err::ZeroVector, "vector " + std::to_string(i + 1) + " is zero");
    scaled.push_back(pow_pi(cfg, norm.exponent) * vectors[i]);
  }
  return is_orthonormal(scaled, cfg);
}

std::vector<VectorQ> orthonormalize(const std::vector<VectorQ>& vectors,
                                    const FieldConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (n == 0) return {};
  const Eigen::Index d = vectors.front().size();

  std::vector<VectorQ> out;
  FpMat residues(0, d);
  MatrixQ flag(d, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (vectors[static_cast<std::size_t>(k)].size() != d)
      fail(Err::DimensionMismatch, "mixed vector lengths");
    flag.col(k) = vectors[static_cast<std::size_t>(k)];

    // K-independence of e_1..e_{k+1}, plus a certified cap on the reduction
    // loop: any unit-norm vector in e_{k+1} + span(e_1..e_k) keeps valuation
    // >= -n_max of the flag's singular exponents.
    SvdDecomposition flag_svd = svd(flag.leftCols(k + 1), cfg);
    if (static_cast<Eigen::Index>(flag_svd.diag_exponents.size()) != k + 1)
      fail(Err::DependentInput,
           "input vector " + std::to_string(k + 1) + " is in the span of its predecessors");
    long n_max = flag_svd.diag_exponents.front();
    for (long e : flag_svd.diag_exponents) n_max = std::max(n_max, e);

    // `drift` tracks the valuation of w's class in span_k / span_{k-1}; each
    // residue-kill lowers it by at least 1, and it can never drop below
    // -n_max while w has norm 1, so the loop terminates.
    VectorQ w = vectors[static_cast<std::size_t>(k)];
    long drift = 0;
    while (true) {
      QPower norm = vec_norm(w, cfg);
      w *= pow_pi(cfg, norm.exponent);
      drift += norm.exponent;
      if (drift < -n_max)
        throw std::logic_error("orthonormalize: reduction exceeded its certified bound");

      std::vector<long> wbar(static_cast<std::size_t>(d));
      for (Eigen::Index j = 0; j < d; ++j)
        wbar[static_cast<std::size_t>(j)] = residue(w[j], cfg);
      std::vector<long> coeffs;
      if (!fp_express(residues, wbar, cfg.p, coeffs)) break;
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(out.size()); ++i)
        if (coeffs[static_cast<std::size_t>(i)] != 0)
          w -= Rat(coeffs[static_cast<std::size_t>(i)]) * out[static_cast<std::size_t>(i)];
    }

    residues.conservativeResize(residues.rows() + 1, d);
    for (Eigen::Index j = 0; j < d; ++j) residues(residues.rows() - 1, j) = residue(w[j], cfg);
    out.push_back(std::move(w));
  }
  return out;
}

long measure_log(const Lattice& l) {
  if (!l.full_rank())
    fail(Err::NotFullRank, "measure needs a full-rank lattice (rank " +
                               std::to_string(l.rank) + " in dim " + std::to_string(l.dim) + ")");
  return diag_exponent_sum(l);
}

long diag_exponent_sum(const Lattice& l) {
  long s = 0;
  for (long e : l.form.diag_exponents) s += e;
  return s;
}

bool contains(const Lattice& l, const VectorQ& x) {
  if (x.size() != l.dim) fail(Err::DimensionMismatch, "point dimension != lattice dimension");
  if (l.rank == 0) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (sgn(x[i]) != 0) return false;
    return true;
  }
  VectorQ y = solve_on_pivots(l.form, x);
  // Off the column span the pivot solution cannot reproduce x.
  VectorQ back = l.form.matrix * y;
  for (Eigen::Index i = 0; i < l.dim; ++i)
    if (back[i] != x[i]) return false;
  for (Eigen::Index k = 0; k < l.rank; ++k)
    if (valuation(y[k], l.field) < ValInt::of(0)) return false;
  return true;
}

MatrixQ hnf_inverse(const Lattice& l) {
  if (!l.full_rank()) fail(Err::NotFullRank, "inverse needs a full-rank lattice");
  const Eigen::Index d = l.dim;
  const MatrixQ& h = l.form.matrix;
  MatrixQ inv = MatrixQ::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    inv(j, j) = Rat(1) / h(j, j);
    for (Eigen::Index i = j + 1; i < d; ++i) {
      Rat acc(0);
      for (Eigen::Index k = j; k < i; ++k) acc += h(i, k) * inv(k, j);
      inv(i, j) = -acc / h(i, i);
    }
  }
  return inv;
}

Lattice dual(const Lattice& l) {
  if (!l.full_rank()) fail(Err::NotFullRank, "dual needs a full-rank lattice");
  return hnf(hnf_inverse(l).transpose(), l.field);
}

Lattice sum(const Lattice& a, const Lattice& b) {
  if (a.dim != b.dim || !(a.field == b.field))
    fail(Err::DimensionMismatch, "lattice sum needs matching dimension and prime");
  MatrixQ joint(a.dim, a.rank + b.rank);
  joint << a.form.matrix, b.form.matrix;
  return hnf(joint, a.field);
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.dim != b.dim || !(a.field == b.field))
    fail(Err::DimensionMismatch, "lattice intersection needs matching dimension and prime");
  if (!a.full_rank() || !b.full_rank())
    fail(Err::NotFullRank, "intersection needs full-rank lattices");
  return dual(sum(dual(a), dual(b)));
}

Lattice independence_lattice(const Lattice& l) {
  MatrixQ inv = hnf_inverse(l);  // checks full rank
  std::vector<long> exps(static_cast<std::size_t>(l.dim));
  for (Eigen::Index i = 0; i < l.dim; ++i) {
    ValInt lo = ValInt::infinity();
    for (Eigen::Index j = 0; j < l.dim; ++j)
      lo = ValInt::min(lo, valuation(inv(j, i), l.field));
    exps[static_cast<std::size_t>(i)] = -lo.value();
  }
  return diagonal_lattice(l.field, exps);
}

Lattice diagonal_lattice(const FieldConfig& cfg, const std::vector<long>& exps) {
  return hnf(diagonal_powers(cfg, exps), cfg);
}

}  // namespace padic
