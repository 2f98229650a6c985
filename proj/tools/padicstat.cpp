// Command-line front end: exact statistics of Gaussian measures over Q_p.
//
// Exit codes: 0 success, 1 parse/usage errors, 2 domain errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "padic/io.hpp"

namespace {

using padic::Json;

struct Options {
  std::optional<long> prime;
  long precision = 64;
  std::uint64_t seed = 0;
  std::string format = "text";
  int threads = 1;
  long box_radius = 6;
  std::string output;
};

// Offending inputs are echoed alongside domain errors.
std::string g_input_echo;

padic::Lattice load_lattice(const std::string& path, const Options& opt) {
  padic::Lattice l = padic::read_lattice_file(path, opt.prime);
  g_input_echo += "input lattice (" + path + "):\n" + padic::matrix_to_text(l.form.matrix);
  return l;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) padic::fail(padic::Err::ParseError, "cannot write '" + opt.output + "'");
  out << text;
}

std::string lattice_text(const padic::Lattice& l) {
  std::string s = "p: " + std::to_string(l.field.p) + "\n";
  s += "dim: " + std::to_string(l.dim) + "  rank: " + std::to_string(l.rank) + "\n";
  s += "hnf:\n" + padic::matrix_to_text(l.form.matrix);
  if (l.full_rank())
    s += "measure_log: " + std::to_string(padic::measure_log(l)) + "\n";
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"exact statistics of Gaussian measures over Q_p"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--prime,-p", opt.prime, "prime p (needed when the input file stores none)");
  app.add_option("--precision,-N", opt.precision, "sampling digits per coordinate")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "RNG seed");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--threads", opt.threads, "worker threads for sample/trop shards")
      ->check(CLI::PositiveNumber);
  app.add_option("--box-radius", opt.box_radius, "verification box radius")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output,-o", opt.output, "write output to a file instead of stdout");

  std::string matrix_path, lattice_path, other_path, data_path;
  std::vector<int> given, js;
  long long nsamples = 1;
  long ball_radius = 1;

  auto* cmd_hnf = app.add_subcommand("hnf", "Hermite normal form of a generator matrix");
  cmd_hnf->add_option("matrix", matrix_path, "matrix file")->required();

  auto* cmd_mle = app.add_subcommand("mle", "maximum-likelihood lattice of a dataset");
  cmd_mle->add_option("data", data_path, "dataset file")->required();

  auto* cmd_ci = app.add_subcommand("ci", "conditional-independence matroid");
  cmd_ci->add_option("lattice", lattice_path, "lattice file")->required();
  cmd_ci->add_option("--given,-I", given, "conditioning coordinates (1-based)")
      ->delimiter(',');
  cmd_ci->add_option("--set,-J", js, "coordinates to test (1-based); omit to report the matroid")
      ->delimiter(',');

  auto* cmd_sample = app.add_subcommand("sample", "draw from the Gaussian of a lattice");
  cmd_sample->add_option("lattice", lattice_path, "lattice file")->required();
  cmd_sample->add_option("-n", nsamples, "number of samples")->check(CLI::PositiveNumber);

  auto* cmd_trop = app.add_subcommand("trop", "tropical tail polynomial and conjecture report");
  cmd_trop->add_option("lattice", lattice_path, "lattice file")->required();

  auto* cmd_building = app.add_subcommand("building", "Bruhat-Tits building queries");
  cmd_building->require_subcommand(1);
  auto* cmd_nb = cmd_building->add_subcommand("neighbors", "classes adjacent to [L]");
  cmd_nb->add_option("lattice", lattice_path, "lattice file")->required();
  auto* cmd_adj = cmd_building->add_subcommand("adjacent", "test adjacency of two classes");
  cmd_adj->add_option("first", lattice_path, "lattice file")->required();
  cmd_adj->add_option("second", other_path, "lattice file")->required();
  auto* cmd_ball = cmd_building->add_subcommand("ball", "breadth-first ball around [L]");
  cmd_ball->add_option("lattice", lattice_path, "lattice file")->required();
  cmd_ball->add_option("--radius,-r", ball_radius, "ball radius")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);
  const bool json = opt.format == "json";

  if (*cmd_hnf) {
    if (!opt.prime) padic::fail(padic::Err::ParseError, "hnf needs --prime");
    padic::Lattice l = padic::hnf(padic::read_matrix_file(matrix_path),
                                  padic::FieldConfig(*opt.prime));
    emit(opt, json ? padic::lattice_to_json(l).dump(2) + "\n" : lattice_text(l));
    return 0;
  }

  if (*cmd_mle) {
    if (!opt.prime) padic::fail(padic::Err::ParseError, "mle needs --prime");
    padic::Lattice l =
        padic::mle(padic::read_dataset_file(data_path), padic::FieldConfig(*opt.prime));
    emit(opt, json ? padic::lattice_to_json(l).dump(2) + "\n" : lattice_text(l));
    return 0;
  }

  if (*cmd_ci) {
    padic::GaussianDist g{load_lattice(lattice_path, opt)};
    padic::MatroidRep m = padic::ci_matroid(g, given);
    Json report = padic::ci_report_json(m, given);
    if (!js.empty()) report["is_ci"] = padic::is_ci(g, given, js);
    if (json) {
      emit(opt, report.dump(2) + "\n");
    } else {
      std::string s = "ground: " + Json(report["ground"]).dump() + "\n";
      s += "C (mod " + std::to_string(m.p) + "):\n";
      for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
        for (Eigen::Index c = 0; c < m.matrix.cols(); ++c)
          s += (c ? " " : "") + std::to_string(m.matrix(i, c));
        s += "\n";
      }
      s += "bases: " + Json(report["bases"]).dump() + "\n";
      for (const auto& stmt : report["statements"])
        s += "  " + stmt.get<std::string>() + "\n";
      if (report.contains("is_ci"))
        s += "is_ci: " + std::string(report["is_ci"].get<bool>() ? "true" : "false") + "\n";
      emit(opt, s);
    }
    return 0;
  }

  if (*cmd_sample) {
    padic::GaussianDist g{load_lattice(lattice_path, opt)};
    auto samples = padic::sample_many(g, nsamples, opt.precision, opt.seed, opt.threads);
    if (json) {
      Json j;
      j["lattice"] = padic::lattice_to_json(g.lattice);
      j["precision"] = opt.precision;
      j["seed"] = opt.seed;
      j["censor_bound"] = samples.empty() ? 0 : samples.front().censor_bound;
      Json arr = Json::array();
      for (const auto& s : samples) arr.push_back(padic::sample_to_json(s));
      j["samples"] = std::move(arr);
      emit(opt, j.dump(2) + "\n");
    } else {
      std::string s;
      for (const auto& smp : samples) {
        for (Eigen::Index i = 0; i < smp.point.size(); ++i)
          s += (i ? " " : "") + padic::format_scalar(smp.point[i]);
        s += "   val:";
        for (std::size_t i = 0; i < smp.valuations.size(); ++i) {
          s += " " + smp.valuations[i].str();
          if (smp.censored[i]) s += "+";
        }
        s += "\n";
      }
      emit(opt, s);
    }
    return 0;
  }

  if (*cmd_trop) {
    padic::Lattice l = load_lattice(lattice_path, opt);
    padic::ConjectureReport report =
        padic::verify_conjecture(l, opt.box_radius, opt.threads);
    if (json) {
      emit(opt, padic::conjecture_report_to_json(report).dump(2) + "\n");
    } else {
      std::string s = "phi(v) = " + padic::trop_poly_to_text(report.fitted) + "\n";
      s += "supermodular: " + std::string(report.supermodular ? "true" : "false") + "\n";
      s += "box radius " + std::to_string(report.box_radius) + ": " +
           std::to_string(report.points_checked) + " points, " +
           std::to_string(report.mismatches.size()) + " mismatches\n";
      for (const auto& m : report.mismatches) {
        s += "  mismatch at (";
        for (std::size_t i = 0; i < m.v.size(); ++i)
          s += (i ? "," : "") + std::to_string(m.v[i]);
        s += "): phi=" + std::to_string(m.phi) + " poly=" + std::to_string(m.poly) + "\n";
      }
      emit(opt, s);
    }
    return 0;
  }

  if (*cmd_nb) {
    padic::LatticeClass c =
        padic::canonicalize(load_lattice(lattice_path, opt));
    auto nbs = padic::neighbors(c);
    if (json) {
      Json j;
      j["center"] = padic::lattice_to_json(c.rep);
      j["degree"] = padic::degree(static_cast<int>(c.rep.dim), c.rep.field.p).get_str();
      Json arr = Json::array();
      for (const auto& nb : nbs) arr.push_back(padic::matrix_to_json(nb.rep.form.matrix));
      j["neighbors"] = std::move(arr);
      emit(opt, j.dump(2) + "\n");
    } else {
      std::string s = std::to_string(nbs.size()) + " neighbors\n";
      for (const auto& nb : nbs) s += padic::matrix_to_text(nb.rep.form.matrix) + "\n";
      emit(opt, s);
    }
    return 0;
  }

  if (*cmd_adj) {
    padic::LatticeClass a =
        padic::canonicalize(load_lattice(lattice_path, opt));
    padic::LatticeClass b =
        padic::canonicalize(load_lattice(other_path, opt));
    bool adj = padic::is_adjacent(a, b);
    if (json) {
      Json j;
      j["adjacent"] = adj;
      j["equivalent"] = a == b;
      emit(opt, j.dump(2) + "\n");
    } else {
      emit(opt, std::string(adj ? "adjacent" : (a == b ? "equivalent" : "not adjacent")) + "\n");
    }
    return 0;
  }

  if (*cmd_ball) {
    padic::LatticeClass c =
        padic::canonicalize(load_lattice(lattice_path, opt));
    padic::BallGraph g = padic::ball(c, ball_radius);
    if (opt.format == "dot")
      emit(opt, padic::ball_to_dot(g));
    else if (json)
      emit(opt, padic::ball_to_json(g).dump(2) + "\n");
    else
      emit(opt, std::to_string(g.vertices.size()) + " vertices, " +
                    std::to_string(g.edges.size()) + " edges\n");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const padic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() != padic::Err::ParseError && !g_input_echo.empty())
      std::cerr << g_input_echo;
    return e.kind() == padic::Err::ParseError ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
