#include "padic/building.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace padic {

namespace {

// Solves A X = B column by column; A is a full-rank Hermite form.
MatrixQ transition(const Lattice& a, const Lattice& b) {
  const Eigen::Index d = a.dim;
  const MatrixQ& h = a.form.matrix;
  MatrixQ x(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index i = 0; i < d; ++i) {
      Rat acc = b.form.matrix(i, c);
      for (Eigen::Index k = 0; k < i; ++k) acc -= h(i, k) * x(k, c);
      x(i, c) = acc / h(i, i);
    }
  return x;
}

}  // namespace

bool operator==(const LatticeClass& a, const LatticeClass& b) { return a.rep == b.rep; }

LatticeClass canonicalize(const Lattice& l) {
  if (!l.full_rank()) fail(Err::NotFullRank, "lattice classes need full rank");
  const long d = static_cast<long>(l.dim);
  const long mlog = measure_log(l);
  const long target = ((mlog % d) + d) % d;
  const long k = (target - mlog) / d;
  if (k == 0) return LatticeClass{l};

  // Scaling by p^k preserves the Hermite conditions verbatim: the diagonal
  // exponents shift by k and the digit windows shift with them.
  Lattice scaled = l;
  scaled.form.matrix *= pow_pi(l.field, k);
  for (long& e : scaled.form.diag_exponents) e += k;
  return LatticeClass{std::move(scaled)};
}

bool is_equivalent(const Lattice& a, const Lattice& b) {
  if (a.dim != b.dim || !(a.field == b.field))
    fail(Err::DimensionMismatch, "class comparison needs matching dimension and prime");
  return canonicalize(a) == canonicalize(b);
}

bool is_adjacent(const LatticeClass& a, const LatticeClass& b) {
  if (a.rep.dim != b.rep.dim || !(a.rep.field == b.rep.field))
    fail(Err::DimensionMismatch, "adjacency needs matching dimension and prime");
  if (a == b) return false;
  const FieldConfig& cfg = a.rep.field;
  MatrixQ m = transition(a.rep, b.rep);
  MatrixQ minv = transition(b.rep, a.rep);
  const long k_lo = -min_valuation(m, cfg).value();
  const long k_hi = 1 + min_valuation(minv, cfg).value();
  return k_lo <= k_hi;
}

std::vector<LatticeClass> neighbors(const LatticeClass& c) {
  const Eigen::Index d = c.rep.dim;
  if (d < 2) fail(Err::WrongDimension, "the building needs dimension >= 2");
  const FieldConfig& cfg = c.rep.field;
  const MatrixQ& a = c.rep.form.matrix;

  std::map<std::string, LatticeClass> found;
  for (std::uint32_t eps = 1; eps + 1 < (1u << d); ++eps) {
    // Below-diagonal slot (i,j) is free over T exactly when eps_i = 1 and
    // eps_j = 0; everything else is pinned to zero.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> slots;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < i; ++j)
        if ((eps & (1u << i)) && !(eps & (1u << j))) slots.emplace_back(i, j);

    std::vector<long> digit(slots.size(), 0);
    while (true) {
      MatrixQ n = MatrixQ::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        n(i, i) = (eps & (1u << i)) ? Rat(cfg.p) : Rat(1);
      for (std::size_t s = 0; s < slots.size(); ++s)
        n(slots[s].first, slots[s].second) = Rat(digit[s]);

      LatticeClass neighbor = canonicalize(hnf(a * n, cfg));
      found.emplace(lattice_key(neighbor.rep), std::move(neighbor));

      std::size_t pos = 0;
      while (pos < digit.size() && ++digit[pos] == cfg.p) digit[pos++] = 0;
      if (pos == digit.size()) break;
    }
  }

  std::vector<LatticeClass> out;
  out.reserve(found.size());
  for (auto& [key, cls] : found) out.push_back(std::move(cls));
  return out;
}

Int gaussian_binomial(int n, int k, long q) {
  if (k < 0 || k > n) return 0;
  // Pascal recursion [n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q.
  std::vector<Int> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    std::vector<Int> next(static_cast<std::size_t>(n) + 1);
    next[0] = 1;
    Int qk = 1;
    for (int j = 1; j <= i; ++j) {
      qk *= q;
      next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] +
                                          qk * row[static_cast<std::size_t>(j)];
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

Int degree(int d, long p) {
  if (d < 2) fail(Err::WrongDimension, "the building needs dimension >= 2");
  FieldConfig check(p);  // validates primality
  Int total = 0;
  for (int l = 1; l < d; ++l) total += gaussian_binomial(d, l, check.p);
  return total;
}

BallGraph ball(const LatticeClass& c, long radius, std::size_t max_vertices) {
  if (radius < 0) fail(Err::TooLarge, "negative radius");
  BallGraph g{c, radius, {}, {}};

  std::map<std::string, std::int64_t> index;
  g.vertices.push_back(c);
  index.emplace(lattice_key(c.rep), 0);
  std::vector<long> depth{0};

  std::set<std::pair<std::int64_t, std::int64_t>> edges;
  for (std::size_t head = 0; head < g.vertices.size(); ++head) {
    for (const LatticeClass& nb : neighbors(g.vertices[head])) {
      std::string key = lattice_key(nb.rep);
      auto it = index.find(key);
      if (it == index.end()) {
        if (depth[head] >= radius) continue;  // outside the ball
        if (g.vertices.size() >= max_vertices)
          fail(Err::TooLarge, "ball exceeds " + std::to_string(max_vertices) + " vertices");
        it = index.emplace(key, static_cast<std::int64_t>(g.vertices.size())).first;
        g.vertices.push_back(nb);
        depth.push_back(depth[head] + 1);
      }
      const auto u = static_cast<std::int64_t>(head);
      const auto v = it->second;
      if (u != v) edges.emplace(std::min(u, v), std::max(u, v));
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

}  // namespace padic
