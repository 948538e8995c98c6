#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using gsieve::cli::run;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }
}  // namespace

TEST_SUITE("cli") {

TEST_CASE("kloosterman example") {
  const auto r = call({"kloosterman", "--m", "1", "--n", "1", "--c", "2+i"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "2.618034"));
  CHECK(has(r.out, "# gsieve 0.1.0"));
  CHECK(has(r.out, "# c = 2+i"));
  CHECK(has(r.out, "# quadrature.gl_order = 16"));
}

TEST_CASE("verify charsum") {
  const auto r = call({"verify", "charsum", "--max-norm", "200"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "mellin"));
  CHECK(has(r.out, "parseval"));
  CHECK(has(r.out, "twisted"));
  CHECK_FALSE(has(r.out, "FAIL"));
}

TEST_CASE("verify exit codes") {
  CHECK(call({"verify", "--max-norm", "2"}).code == 0);
  const auto z = call({"verify", "--max-norm", "2", "--tolerance", "0"});
  CHECK(z.code == 1);
  CHECK(has(z.err, "FAIL"));
  CHECK(call({"verify", "--max-norm", "1"}).code == 2);
  CHECK(call({"verify", "bogus"}).code == 2);
}

TEST_CASE("bessel compare") {
  const auto r = call({"bessel", "--z", "1", "--T", "1", "--P", "1", "--compare"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "spectral"));
  CHECK(has(r.out, "geometric0"));
  CHECK(has(r.out, "geometric2"));
  CHECK(has(r.out, "max_pairwise_relative_deviation"));
  CHECK(has(r.out, "-8.291724"));
}

TEST_CASE("usage and domain errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  const auto unknown = call({"kloosterman", "--m", "1", "--n", "1", "--c", "3", "--bogus", "2"});
  CHECK(unknown.code == 2);
  CHECK(has(unknown.err, "bogus"));
  CHECK(call({"kloosterman", "--m", "1", "--n", "1", "--c", "0"}).code == 2);
  CHECK(call({"kloosterman", "--m", "1", "--n", "1", "--c", "2 + i"}).code == 2);
  CHECK(call({"--format", "xml", "fsum", "--w", "1", "--c", "3"}).code == 2);
  CHECK(call({"fsum", "--w", "1+i", "--c", "2"}).code == 2);
  const auto pole = call({"zeta", "--s", "1"});
  CHECK(pole.code == 2);
  CHECK(has(pole.err, "pole"));
  const auto ov = call({"kloosterman", "--m", "1", "--n", "1", "--c", "4000000000+i"});
  CHECK(ov.code == 2);
  CHECK(has(ov.err, "overflow in norm"));
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("lemma-check") {
  CHECK(call({"lemma-check", "--c", "2+i"}).code == 0);
  CHECK(call({"lemma-check", "--c", "15"}).code == 2);
  const auto r = call({"lemma-check", "--c", "8"});
  CHECK(r.code == 1);
  CHECK(has(r.out, "failed 2"));
  CHECK(call({"lemma-check"}).code == 2);
}

TEST_CASE("formats") {
  const auto csv = call({"--format", "csv", "zeta", "--s", "2", "--cutoff", "1000"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("# gsieve-report v1\n# version = 0.1.0\n", 0) == 0);
  CHECK(has(csv.out, "s_re,s_im,p,cutoff,mode,value_re,value_im,tail_estimate"));
  const auto js = call({"charsum", "--c", "2+i", "--format", "json"});
  CHECK(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["version"] == "0.1.0");
  CHECK(doc["config"]["command"] == "charsum");
  CHECK(doc["tables"]["charsum"].size() == 4);
  const auto ex = call({"--format", "json", "hybrid", "--trials", "3"});
  const auto exdoc = nlohmann::json::parse(ex.out);
  CHECK(exdoc["reports"].size() == 3);
  CHECK(exdoc["config"]["trials"] == "3");
}

TEST_CASE("determinism") {
  const std::vector<std::string> args{"--format", "csv", "--seed", "11", "quadform", "--trials", "6"};
  CHECK(call(args).out == call(args).out);
  const auto other = call({"--format", "csv", "--seed", "12", "quadform", "--trials", "6"});
  CHECK(other.out != call(args).out);
  const std::vector<std::string> e{"eisenstein", "--trials", "4", "--T", "2", "--P", "1"};
  CHECK(call(e).out == call(e).out);
}

TEST_CASE("--out and --quadrature") {
  const std::string path = "gsieve_cli_test_out.txt";
  CHECK(call({"--out", path, "plancherel", "--T", "1", "--P", "1"}).code == 0);
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(has(body.str(), "3.138710"));
  std::remove(path.c_str());

  const std::string qpath = "gsieve_cli_test_quad.cfg";
  {
    std::ofstream q(qpath);
    q << "# finer\ngl_order = 20\n";
  }
  const auto r = call({"--quadrature", qpath, "plancherel"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "# quadrature.gl_order = 20"));
  {
    std::ofstream q(qpath);
    q << "gl_ordr = 20\n";
  }
  CHECK(call({"--quadrature", qpath, "plancherel"}).code == 2);
  std::remove(qpath.c_str());
}

TEST_CASE("kuznetsov-geom and experiments") {
  const auto k = call({"kuznetsov-geom", "--m", "1", "--n", "2+i", "--T", "2", "--P", "2", "--cutoff", "100"});
  CHECK(k.code == 0);
  CHECK(has(k.out, "0.435958"));
  const auto h = call({"hybrid", "--trials", "2"});
  CHECK(h.code == 0);
  CHECK(has(h.out, "max_ratio"));
  CHECK(call({"hybrid", "--C", "0.5"}).code == 2);
}

}
