#include "padic/io.hpp"

#include <fstream>
#include <sstream>

namespace padic {

namespace {

Rat scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  fail(Err::ParseError, "scalar entries must be strings like \"-9/2\" or integers");
}

}  // namespace

Json matrix_to_json(const MatrixQ& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixQ matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    fail(Err::ParseError, "matrix JSON must be a nonempty array of arrays");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  MatrixQ m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      fail(Err::ParseError, "matrix row " + std::to_string(i + 1) + " has inconsistent length");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(i, c) = scalar_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

MatrixQ parse_matrix_text(const std::string& text) {
  std::vector<std::vector<Rat>> rows;
  std::istringstream lines(text);
  std::string line;
  long lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::vector<Rat> row;
    std::istringstream toks(line);
    std::string tok;
    long col = 0;
    while (toks >> tok) {
      ++col;
      if (tok[0] == '#') break;  // comment to end of line
      try {
        row.push_back(parse_scalar(tok));
      } catch (const Error&) {
        fail(Err::ParseError, "line " + std::to_string(lineno) + ", column " +
                                  std::to_string(col) + ": bad scalar '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(Err::ParseError, "empty matrix");
  const auto cols = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols)
      fail(Err::ParseError, "line " + std::to_string(i + 1) + ": expected " +
                                std::to_string(cols) + " entries, got " +
                                std::to_string(rows[i].size()));
  MatrixQ m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

MatrixQ parse_matrix(const std::string& content) {
  const auto start = content.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && (content[start] == '[' || content[start] == '{')) {
    Json j;
    try {
      j = Json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      fail(Err::ParseError, e.what());
    }
    if (j.is_object()) {
      if (!j.contains("matrix")) fail(Err::ParseError, "object form needs a \"matrix\" key");
      return matrix_from_json(j["matrix"]);
    }
    return matrix_from_json(j);
  }
  return parse_matrix_text(content);
}

std::string matrix_to_text(const MatrixQ& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_scalar(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

Json lattice_to_json(const Lattice& l) {
  Json j;
  j["p"] = l.field.p;
  j["dim"] = l.dim;
  j["rank"] = l.rank;
  j["matrix"] = matrix_to_json(l.form.matrix);
  return j;
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("matrix"))
    fail(Err::ParseError, "lattice JSON needs \"p\" and \"matrix\"");
  FieldConfig cfg(j["p"].get<long>());
  return hnf(matrix_from_json(j["matrix"]), cfg);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Lattice read_lattice_file(const std::string& path, std::optional<long> prime) {
  const std::string content = read_text_file(path);
  const auto start = content.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && content[start] == '{') {
    Json j;
    try {
      j = Json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      fail(Err::ParseError, std::string(e.what()) + " in '" + path + "'");
    }
    if (prime && j.contains("p") && j["p"].get<long>() != *prime)
      fail(Err::ParseError, "--prime disagrees with the \"p\" stored in '" + path + "'");
    return lattice_from_json(j);
  }
  if (!prime)
    fail(Err::ParseError, "'" + path + "' has no stored prime; pass --prime");
  return hnf(parse_matrix(content), FieldConfig(*prime));
}

MatrixQ read_matrix_file(const std::string& path) { return parse_matrix(read_text_file(path)); }

std::vector<VectorQ> read_dataset_file(const std::string& path) {
  const std::string content = read_text_file(path);
  MatrixQ rows = parse_matrix(content);  // one point per row
  std::vector<VectorQ> out;
  out.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    out.push_back(rows.row(i).transpose());
  return out;
}

Json sample_to_json(const SampleResult& s) {
  Json j;
  Json point = Json::array(), vals = Json::array(), cens = Json::array();
  for (Eigen::Index i = 0; i < s.point.size(); ++i) {
    point.push_back(format_scalar(s.point[i]));
    vals.push_back(s.valuations[static_cast<std::size_t>(i)].value());
    cens.push_back(static_cast<bool>(s.censored[static_cast<std::size_t>(i)]));
  }
  j["point"] = std::move(point);
  j["valuations"] = std::move(vals);
  j["censored"] = std::move(cens);
  return j;
}

Json matroid_to_json(const MatroidRep& m) {
  Json j;
  j["p"] = m.p;
  j["ground"] = m.ground;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.matrix.cols(); ++c) row.push_back(m.matrix(i, c));
    rows.push_back(std::move(row));
  }
  j["C"] = std::move(rows);
  return j;
}

Json ci_report_json(const MatroidRep& m, const std::vector<int>& given) {
  Json j = matroid_to_json(m);
  j["given"] = given;
  Json bases = Json::array();
  Json statements = Json::array();
  for (const std::vector<int>& basis : matroid_bases(m)) {
    bases.push_back(basis);
    std::string stmt;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i) stmt += " _||_ ";
      stmt += "X" + std::to_string(basis[static_cast<std::size_t>(i)]);
    }
    if (!given.empty()) {
      stmt += " | ";
      for (std::size_t i = 0; i < given.size(); ++i) {
        if (i) stmt += ", ";
        stmt += "X" + std::to_string(given[i]);
      }
    }
    statements.push_back(std::move(stmt));
  }
  j["bases"] = std::move(bases);
  j["statements"] = std::move(statements);
  return j;
}

Json trop_poly_to_json(const TropPoly& poly) {
  Json terms = Json::array();
  for (std::uint32_t mask : subsets_by_size(poly.dim)) {
    Json term;
    Json subset = Json::array();
    for (int i = 0; i < poly.dim; ++i)
      if (mask & (1u << i)) subset.push_back(i + 1);
    term["subset"] = std::move(subset);
    term["c"] = poly.coeffs.at(mask);
    terms.push_back(std::move(term));
  }
  Json j;
  j["dim"] = poly.dim;
  j["coefficients"] = std::move(terms);
  return j;
}

std::string trop_poly_to_text(const TropPoly& poly) {
  std::string out = "max(";
  bool first = true;
  for (std::uint32_t mask : subsets_by_size(poly.dim)) {
    if (!first) out += ", ";
    first = false;
    std::string term;
    for (int i = 0; i < poly.dim; ++i)
      if (mask & (1u << i)) {
        if (!term.empty()) term += " + ";
        term += "v" + std::to_string(i + 1);
      }
    const long c = poly.coeffs.at(mask);
    if (term.empty())
      term = std::to_string(-c);
    else if (c > 0)
      term += " - " + std::to_string(c);
    else if (c < 0)
      term += " + " + std::to_string(-c);
    out += term;
  }
  return out + ")";
}

Json conjecture_report_to_json(const ConjectureReport& r) {
  Json j;
  j["lattice"] = lattice_to_json(r.lattice);
  j["polynomial"] = trop_poly_to_json(r.fitted);
  j["polynomial_text"] = trop_poly_to_text(r.fitted);
  j["box_radius"] = r.box_radius;
  j["points_checked"] = r.points_checked;
  j["supermodular"] = r.supermodular;
  Json mm = Json::array();
  for (const TropMismatch& m : r.mismatches) {
    Json one;
    one["v"] = m.v;
    one["phi"] = m.phi;
    one["poly"] = m.poly;
    mm.push_back(std::move(one));
  }
  j["mismatches"] = std::move(mm);
  j["holds"] = r.holds();
  return j;
}

Json ball_to_json(const BallGraph& g) {
  Json j;
  j["p"] = g.center.rep.field.p;
  j["dim"] = g.center.rep.dim;
  j["radius"] = g.radius;
  Json verts = Json::array();
  for (const LatticeClass& v : g.vertices) verts.push_back(matrix_to_json(v.rep.form.matrix));
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  return j;
}

std::string ball_to_dot(const BallGraph& g) {
  std::ostringstream os;
  os << "graph ball {\n  node [shape=box fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const MatrixQ& m = g.vertices[i].rep.form.matrix;
    os << "  v" << i << " [label=\"";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c) os << ' ';
        os << format_scalar(m(r, c));
      }
      os << "\\n";
    }
    os << "\"];\n";
  }
  for (const auto& [u, v] : g.edges) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace padic
