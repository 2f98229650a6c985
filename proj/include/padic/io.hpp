#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "padic/building.hpp"
#include "padic/gaussian.hpp"
#include "padic/tropical.hpp"

namespace padic {

/// Insertion-ordered JSON keeps emitted documents byte-stable.
using Json = nlohmann::ordered_json;

Json matrix_to_json(const MatrixQ& m);
MatrixQ matrix_from_json(const Json& j);

/// Whitespace/newline matrix text; ParseError carries line and column.
MatrixQ parse_matrix_text(const std::string& text);

/// Auto-detects JSON (array or {"p", "matrix"} object) vs plain text.
MatrixQ parse_matrix(const std::string& content);

std::string matrix_to_text(const MatrixQ& m);

/// Lattices travel as their Hermite form plus the prime.
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

/// File may be a {"p", "matrix"} object, a bare JSON matrix, or plain text;
/// the bare forms require an explicit prime. The generator matrix is reduced
/// to Hermite form on load.
Lattice read_lattice_file(const std::string& path, std::optional<long> prime);
MatrixQ read_matrix_file(const std::string& path);

/// Dataset: JSON list of vectors of scalar strings (or plain text, one point
/// per row).
std::vector<VectorQ> read_dataset_file(const std::string& path);

std::string read_text_file(const std::string& path);

Json sample_to_json(const SampleResult& s);
Json matroid_to_json(const MatroidRep& m);

/// {ground, C-matrix, bases, statements} for a conditional-independence
/// query.
Json ci_report_json(const MatroidRep& m, const std::vector<int>& given);

Json trop_poly_to_json(const TropPoly& poly);

/// Max-plus display, e.g. "max(0, v1, v1 + v2 - 1)".
std::string trop_poly_to_text(const TropPoly& poly);

Json conjecture_report_to_json(const ConjectureReport& r);

Json ball_to_json(const BallGraph& g);
std::string ball_to_dot(const BallGraph& g);

}  // namespace padic
