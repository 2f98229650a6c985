#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "padic/lattice.hpp"

namespace padic {

/// Homothety class of a full-rank lattice; a vertex of the building
/// B_d(Q_p). The representative is the unique scaling with measure_log in
/// {0, ..., d-1}.
struct LatticeClass {
  Lattice rep;
};

bool operator==(const LatticeClass& a, const LatticeClass& b);
inline bool operator!=(const LatticeClass& a, const LatticeClass& b) { return !(a == b); }

LatticeClass canonicalize(const Lattice& l);

/// [L1] = [L2], i.e. L1 = c L2 for some scalar c.
bool is_equivalent(const Lattice& a, const Lattice& b);

/// Distinct classes with pi^{n+1} L1 c L2 c pi^n L1 for some n. Reduces to
/// the existence of an integer k in [-minval(A^{-1}B), 1 + minval(B^{-1}A)].
bool is_adjacent(const LatticeClass& a, const LatticeClass& b);

/// All classes adjacent to c, via the Hermite enumeration of the modules
/// between pi O^d and O^d translated by the representative. Sorted by key.
std::vector<LatticeClass> neighbors(const LatticeClass& c);

/// Number of k-dimensional subspaces of F_q^n.
Int gaussian_binomial(int n, int k, long q);

/// Vertex degree of B_d(Q_p): nontrivial F_p-subspaces of F_p^d.
Int degree(int d, long p);

struct BallGraph {
  LatticeClass center;
  long radius = 0;
  std::vector<LatticeClass> vertices;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
};

/// Breadth-first ball of the given radius; edges are all adjacent pairs
/// among the discovered vertices. Guarded by max_vertices.
BallGraph ball(const LatticeClass& c, long radius, std::size_t max_vertices = 100000);

}  // namespace padic
