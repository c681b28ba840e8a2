#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gkz/cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = gkz::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("exponents") {
  auto j = run_json({"exponents", "--matrix", "1,2,3", "--beta", "1/2"});
  CHECK(j == json::parse(R"([[0,"1/4",0],[1,"-1/4",0]])"));
  auto g = run_json({"exponents", "--matrix", "3,5,7", "--beta", "1/2"});
  CHECK(g["auxiliary_matrix"] == json::parse("[1,3,5,7]"));
  CHECK(g["exponents"].size() == 5);
  CHECK(run_json({"exponents", "--matrix", "1,2,3", "--point", "generic"}).size() == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"exponents", "--matrix", "1,3,2"}).code == 1);
  CHECK(run({"exponents", "--matrix", "1,3,2"}).err.find("NotIncreasing") != std::string::npos);
  CHECK(run({"exponents", "--matrix", "2,4"}).code == 1);
  CHECK(run({"exponents"}).code == 2);
  CHECK(run({"exponents", "--matrix", "1,2,3", "--beta", "x"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"solve", "--matrix", "1,2,3", "--point", "nowhere"}).code == 2);
  CHECK(run({"solve", "--matrix", "1,2,3", "--beta", "1/2", "--s", "5/4"}).code == 1);
  CHECK(run({"figure1", "--matrix", "1,2,3", "--beta-special", "4", "--beta-generic", "1/2", "--s", "5/4"}).code == 1);
  CHECK(run({"verify", "--matrix", "1,2,3", "--series", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("solve and verify") {
  auto s = run_json({"solve", "--matrix", "1,2,3", "--beta", "4", "--truncation", "10"});
  CHECK(s["sheaf"] == "Q(inf)");
  CHECK(s["basis"].size() == 2);
  auto v = run_json({"verify", "--matrix", "1,2,3", "--beta", "4", "--truncation", "20"});
  CHECK(v["max_violation"] == "0");
  CHECK(v["series"].size() == 2);
  CHECK(v["series"][0]["p_n1_residual"] == "0");

  const std::string path = "test_cli_series.json";
  {
    std::ofstream f(path);
    f << run({"solve", "--matrix", "1,2,5", "--beta", "1/2", "--truncation", "8"}).out;
  }
  auto fv = run_json({"verify", "--matrix", "1,2,5", "--beta", "1/2", "--series", path});
  CHECK(fv["max_violation"] == "0");
  CHECK(fv["series"].size() == 2);

  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(run({"verify", "--matrix", "1,2,5", "--series", path}).code == 1);
  {
    std::ofstream f(path);
    f << R"({"base_exponent":[0,0,0],"terms":[{"offset":[0,0,0],"coeff":"1"}],"descriptor":"opaque"})";
  }
  CHECK(run({"verify", "--matrix", "1,2,5", "--series", path}).code == 1);
  std::remove(path.c_str());

  auto g = run_json({"solve", "--matrix", "3,5,7", "--beta", "4", "--point", "generic", "--truncation", "6"});
  CHECK(g["parameter"] == "-2");
  CHECK(g["contiguity"] == json::parse("[2,0,0]"));
}

TEST_CASE("other subcommands") {
  auto t = run_json({"irregularity-table", "--matrix", "1,2,3", "--beta", "4", "--s", "2"});
  CHECK(t["slope"] == "3/2");
  CHECK(t["beta_class"].get<std::string>().find("InSemigroup") != std::string::npos);

  auto f = run_json({"figure1", "--matrix", "1,2,3", "--beta-special", "4", "--beta-generic", "1/2", "--s", "2"});
  CHECK(f["matches"] == true);
  CHECK(f["computed"].size() == 6);

  auto r = run({"restrict", "--matrix", "1,4,6", "--beta", "5", "--kind", "x1-split"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["summands"].size() == 2);
  CHECK(r.err.find("caveat") != std::string::npos);

  auto h = run_json({"restrict", "--matrix", "1,2,3", "--beta", "5", "--kind", "hyperplane", "--column", "2"});
  CHECK(h["summands"][0]["matrix"] == json::parse("[1,3]"));
  auto aux = run_json({"restrict", "--matrix", "3,5,7", "--kind", "aux"});
  CHECK(aux["q"].size() == 3);

  auto b = run_json({"b-function", "--matrix", "1,4,6"});
  CHECK(b["roots"].size() == 2);
  CHECK(run_json({"b-function", "--matrix", "1,2,3", "--weight", "e3"})["roots"].size() == 1);

  auto m = run_json({"monodromy", "--matrix", "1,2,3", "--beta", "1/2"});
  CHECK(m["rotations"] == json::parse(R"(["1/4","3/4"])"));

  auto sg = run_json({"semigroup", "--matrix", "3,5,7", "--beta", "4"});
  CHECK(sg["frobenius"] == 4);

  auto gi = run_json({"gevrey-index", "--matrix", "1,2,3", "--which", "tilde", "--terms", "60"});
  CHECK(gi["expected"] == "3/2");
  CHECK(std::stod(gi["estimate"].get<std::string>()) == doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("output is deterministic and the table format renders") {
  std::vector<std::string> args{"solve", "--matrix", "1,3,4,5", "--beta", "1/3", "--truncation", "6"};
  CHECK(run(args).out == run(args).out);
  auto tab = run({"semigroup", "--matrix", "3,5,7", "--beta", "4", "--format", "table"});
  CHECK(tab.code == 0);
  CHECK(tab.out.find("frobenius") != std::string::npos);
  CHECK(tab.out.find('{') == std::string::npos);
}
