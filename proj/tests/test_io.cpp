#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "padic/io.hpp"
#include "testutil.hpp"

using namespace padic;
namespace tu = padic::testutil;

namespace {

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
  std::string cmd = std::string(PADICSTAT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe.get()))
    out.append(buf.data(), n);
  int status = pclose(pipe.release());
  if (exit_code) *exit_code = WEXITSTATUS(status);
  return out;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/padicstat_test_") + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("matrix parsing: json and plain text") {
  MatrixQ a = parse_matrix("[[\"1\",\"0\"],[\"1/2\",\"2\"]]");
  CHECK(a(1, 0) == Rat(1) / 2);

  MatrixQ b = parse_matrix("1 0\n1/2 2\n");
  CHECK(mat_equal(a, b));

  MatrixQ c = matrix_from_json(matrix_to_json(a));
  CHECK(mat_equal(a, c));

  CHECK_THROWS_AS(parse_matrix("1 0\n1\n"), Error);
  CHECK_THROWS_AS(parse_matrix("1 x\n"), Error);
  CHECK_THROWS_AS(parse_matrix(""), Error);
  try {
    parse_matrix("1 0\n1 z\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("column 2") != std::string::npos);
  }
}

TEST_CASE("lattice round trip") {
  FieldConfig q2(2);
  Lattice l = hnf(tu::mat(3, 3, {"1", "0", "0", "9/2", "2", "0", "4", "2", "1"}), q2);
  Lattice back = lattice_from_json(lattice_to_json(l));
  CHECK(back == l);

  CounterRng rng(1717);
  for (int trial = 0; trial < 20; ++trial) {
    Lattice r = tu::rand_lattice(rng, q2, tu::rand_range(rng, 1, 4));
    CHECK(lattice_from_json(lattice_to_json(r)) == r);
  }
}

TEST_CASE("tropical text form") {
  TropPoly skew;
  skew.dim = 2;
  skew.coeffs = {{0u, 0}, {1u, 0}, {2u, 0}, {3u, 1}};
  CHECK(trop_poly_to_text(skew) == "max(0, v1, v2, v1 + v2 - 1)");
}

TEST_CASE("cli: hnf of the worked example") {
  std::string path = write_temp("hnf.txt", "1 0 0\n9/2 2 0\n4 2 1\n");
  int code = -1;
  std::string out = run_cli("--prime 2 hnf " + path, &code);
  CHECK(code == 0);
  CHECK(out.find("1 0 0\n1/2 2 0\n0 0 1\n") != std::string::npos);
  CHECK(out.find("measure_log: 1") != std::string::npos);
}

TEST_CASE("cli: emitted lattices re-parse to equal values") {
  std::string path = write_temp("roundtrip.txt", "0 1\n2 0\n");
  std::string json_out = run_cli("--prime 2 --format json hnf " + path);
  std::string json_path = write_temp("roundtrip.json", json_out);

  FieldConfig q2(2);
  Lattice expect = hnf(tu::mat(2, 2, {"0", "1", "2", "0"}), q2);
  CHECK(lattice_from_json(Json::parse(json_out)) == expect);

  // The emitted object is accepted back as a lattice file.
  std::string neighbors_out = run_cli("building neighbors " + json_path);
  CHECK(neighbors_out.find("3 neighbors") != std::string::npos);
}

TEST_CASE("cli: determinism and exit codes") {
  std::string path = write_temp("det.txt", "1 0\n1 3\n");
  std::string a = run_cli("--prime 3 --seed 5 -n 4 --format json sample " + path);
  std::string b = run_cli("--prime 3 --seed 5 -n 4 --format json sample " + path);
  CHECK(a == b);
  std::string c = run_cli("--prime 3 --seed 5 -n 4 --threads 3 --format json sample " + path);
  CHECK(a == c);

  int code = -1;
  run_cli("--prime 4 hnf " + path, &code);
  CHECK(code == 2);  // 4 is not prime: domain error

  std::string bad = write_temp("bad.txt", "1 x\n");
  run_cli("--prime 3 hnf " + bad, &code);
  CHECK(code == 1);  // parse error

  run_cli("hnf " + path, &code);
  CHECK(code == 1);  // missing --prime

  std::string lowrank = write_temp("lowrank.txt", "1 1\n1 1\n");
  run_cli("--prime 3 building neighbors " + lowrank, &code);
  CHECK(code == 2);  // NotFullRank is a domain error
}

TEST_CASE("cli: ci report") {
  std::string path = write_temp(
      "ci.json", "{\"p\": 5, \"matrix\": [[\"1\",\"0\",\"0\",\"0\"],[\"1\",\"1\",\"0\",\"0\"],"
                 "[\"1\",\"0\",\"5\",\"0\"],[\"1\",\"1/5\",\"1/5\",\"25\"]]}");
  std::string out = run_cli("--format json ci " + path + " --given 1");
  Json j = Json::parse(out);
  CHECK(j["ground"] == Json::array({2, 3, 4}));
  CHECK(j["bases"].size() == 3);
  CHECK(j["statements"].size() == 3);

  std::string tested = run_cli("--format json ci " + path + " --given 1 --set 2,4");
  CHECK(Json::parse(tested)["is_ci"] == true);
}

TEST_CASE("cli: building ball formats") {
  std::string path = write_temp("ball.txt", "1 0\n0 1\n");
  std::string dot = run_cli("--prime 2 --format dot building ball " + path + " --radius 1");
  CHECK(dot.find("graph ball {") != std::string::npos);
  CHECK(dot.find("v0 -- ") != std::string::npos);

  std::string js = run_cli("--prime 2 --format json building ball " + path + " --radius 2");
  Json j = Json::parse(js);
  CHECK(j["vertices"].size() == 10);
  CHECK(j["edges"].size() == 9);
}

TEST_CASE("cli: trop reproduces the d3 example") {
  std::string path = write_temp("trop.txt", "1 0 0\n1 4 0\n1 2 4\n");
  std::string out = run_cli("--prime 2 --format json --box-radius 4 trop " + path);
  Json j = Json::parse(out);
  CHECK(j["supermodular"] == true);
  CHECK(j["holds"] == true);
  std::vector<long> cs;
  for (const auto& t : j["polynomial"]["coefficients"]) cs.push_back(t["c"].get<long>());
  CHECK(cs == std::vector<long>{0, 0, 0, 0, 2, 1, 1, 4});
}
