#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult result;
  result.status = kabelian::cli::run(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eq reports equivalence with exit code 0") {
  const auto result = invoke({"eq", "--k", "3", "010110", "011010"});
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j.at("equivalent") == true);
  CHECK(j.at("k") == "3");
}

TEST_CASE("eq reports a witness with exit code 1") {
  const auto result = invoke({"eq", "--k", "4", "010110", "011010"});
  CHECK(result.status == 1);
  const json j = json::parse(result.out);
  CHECK(j.at("equivalent") == false);
  CHECK(j.at("witness_x").get<std::string>().size() == 4);
}

TEST_CASE("census emits the golden CSV rows") {
  const auto result = invoke({"census", "--m", "2", "--k", "2", "--n-range", "3..4"});
  CHECK(result.status == 0);
  CHECK(result.out ==
        "m,k,n,count,method\n"
        "2,2,3,8,flow-enumeration\n"
        "2,2,3,8,bruteforce\n"
        "2,2,4,14,flow-enumeration\n"
        "2,2,4,14,bruteforce\n");
}

TEST_CASE("census json mode mirrors the rows and can fit") {
  const auto result = invoke({"census", "--m", "2", "--k", "1", "--n-range", "10..20",
                              "--format", "json", "--fit"});
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j.at("rows").size() == 22);
  CHECK(j.at("rows")[0].at("count") == 11);
  CHECK(j.at("fit").at("theoretical_exponent") == 1.0);
}

TEST_CASE("complexity profile of 01^inf is constant 2") {
  const auto result = invoke({"complexity", "--word", "up:U=0,V=1", "--k", "1", "--n-max", "5"});
  CHECK(result.status == 0);
  CHECK(result.out ==
        "n,value,q,valid\n"
        "1,2,2,1\n"
        "2,2,2,1\n"
        "3,2,2,1\n"
        "4,2,2,1\n"
        "5,2,2,1\n");
}

TEST_CASE("complexity json mode reports the alarm") {
  const auto result = invoke({"complexity", "--word", "up:U=,V=01", "--k", "2", "--n-max", "6",
                              "--format", "json"});
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j.at("alarm_n0") == 2);
  CHECK(j.at("rows").size() == 6);
}

TEST_CASE("plot data is a bare two-column series") {
  const auto result = invoke({"complexity", "--word", "up:U=0,V=1", "--k", "1", "--n-max", "3",
                              "--plot-data"});
  CHECK(result.status == 0);
  CHECK(result.out == "1 2\n2 2\n3 2\n");
}

TEST_CASE("sturmian chain matches the worked example") {
  const auto result = invoke({"sturmian", "chain", "--word", "fib", "--n", "6"});
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j.at("sigma") == json({5, 2, 4, 1, 6, 3}));
  CHECK(j.at("factors")[0] == "001001");
}

TEST_CASE("sturmian check signals violations through the exit code") {
  CHECK(invoke({"sturmian", "check", "--word", "fib", "--k-max", "2", "--n-max", "15"}).status ==
        0);
  const auto result = invoke({"sturmian", "check", "--word", "tm", "--k-max", "2", "--n-max",
                              "15"});
  CHECK(result.status == 1);
  CHECK(json::parse(result.out).at("all_match") == false);
}

TEST_CASE("pairs2k lists the base pair") {
  const auto result = invoke({"pairs2k", "--k", "1", "--m", "2"});
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j.at("pairs") == json::array({{{"u", "01"}, {"v", "10"}, {"x", ""}}}));
}

TEST_CASE("power search exit codes distinguish found from exhausted") {
  const auto found = invoke({"power", "--word", "fib", "--k", "2", "--N", "2", "--lmax", "10"});
  CHECK(found.status == 0);
  CHECK(json::parse(found.out).at("found") == true);

  const auto none = invoke({"power", "--word", "fib", "--k", "inf", "--N", "4", "--lmax", "40",
                            "--window", "500"});
  CHECK(none.status == 1);
  CHECK(json::parse(none.out).at("found") == false);
}

TEST_CASE("balance reports the bound and witness") {
  const auto result = invoke({"balance", "--word", "fib", "--k", "1", "--window", "500",
                              "--check-link"});
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j.at("bound") == 1);
  CHECK(j.at("link").at("holds") == true);
  CHECK(j.at("witness").contains("x"));
}

TEST_CASE("malformed input yields exit code 2 and a message") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eq", "--k", "0", "01", "10"},
           {"eq", "--k", "2", "01"},
           {"complexity", "--word", "nonsense:spec", "--k", "1", "--n-max", "5"},
           {"census", "--m", "2", "--k", "2", "--n-range", "nonsense"},
           {"power", "--word", "fib", "--k", "2", "--N", "2", "--D", "weird:1"},
           {"census", "--m", "2", "--k", "3", "--n-range", "30..30", "--budget", "10"}}) {
    const auto result = invoke(args);
    CAPTURE(args[0]);
    CHECK(result.status == 2);
    CHECK(!result.err.empty());
    CHECK(result.err.starts_with("error:"));
  }
}

TEST_CASE("identical invocations produce byte-identical output") {
  const std::vector<std::string> args = {"census", "--m", "2", "--k", "2", "--n-range",
                                         "4..12", "--format", "json"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> parallel = {"census", "--m",   "2",     "--k",  "2",
                                             "--n-range", "4..12", "--format", "json", "--jobs",
                                             "4"};
  CHECK(invoke(parallel).out == invoke(args).out);
}

TEST_CASE("--out writes exactly the stdout bytes") {
  const std::string path = "cli_test_census.csv";
  const auto to_stdout = invoke({"census", "--m", "2", "--k", "2", "--n-range", "3..6"});
  const auto to_file =
      invoke({"census", "--m", "2", "--k", "2", "--n-range", "3..6", "--out", path});
  CHECK(to_file.status == 0);
  CHECK(to_file.out.empty());
  std::ifstream file(path, std::ios::binary);
  std::stringstream content;
  content << file.rdbuf();
  std::remove(path.c_str());
  CHECK(content.str() == to_stdout.out);
}

TEST_CASE("json outputs parse and round-trip") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eq", "--k", "3", "010110", "011010"},
           {"sig", "--k", "2", "0101"},
           {"census", "--m", "2", "--k", "1", "--n-range", "2..6", "--format", "json"},
           {"complexity", "--word", "fib", "--k", "2", "--n-max", "10", "--format", "json"},
           {"sturmian", "special", "--word", "fib", "--n", "3"},
           {"pairs2k", "--k", "2", "--m", "2"},
           {"power", "--word", "fib", "--k", "1", "--N", "2", "--lmax", "5"},
           {"balance", "--word", "tm", "--k", "2", "--window", "200"}}) {
    const auto result = invoke(args);
    CAPTURE(args[0]);
    REQUIRE(result.status == 0);
    const json j = json::parse(result.out);
    CHECK(json::parse(j.dump(2)) == j);
  }
}

TEST_CASE("sig reads word files, one word per line") {
  const std::string path = "cli_test_words.txt";
  {
    std::ofstream file(path);
    file << "010110\n\n011010\n";
  }
  const auto result = invoke({"sig", "--k", "3", "--file", path});
  std::remove(path.c_str());
  CHECK(result.status == 0);
  const json j = json::parse(result.out);
  REQUIRE(j.at("signatures").size() == 2);
  CHECK(j.at("signatures")[0].at("counts") == j.at("signatures")[1].at("counts"));
  CHECK(j.at("signatures")[0].at("prefix") == "01");

  CHECK(invoke({"sig", "--k", "3"}).status == 2);
  CHECK(invoke({"sig", "--k", "3", "--file", "does-not-exist.txt"}).status == 2);
}

TEST_CASE("help is available") {
  const auto result = invoke({"--help"});
  CHECK(result.status == 0);
  CHECK(result.out.find("census") != std::string::npos);
}

}  // TEST_SUITE
