#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"

using namespace liftgap;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kGame{"--n", "3", "--m", "3", "--K", "2", "--q", "3", "--D", "1", "--seed", "7"};

std::vector<std::string> with(std::vector<std::string> head, std::vector<std::string> tail = {}) {
  head.insert(head.end(), kGame.begin(), kGame.end());
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("validation errors exit with code 2", "[cli]") {
  CHECK(run({"gen", "--n", "3", "--m", "3", "--K", "2", "--q", "3", "--D", "1"}).code == 2);
  CHECK(run(with({"reduce", "--kind", "tree"})).code == 2);
  CHECK(run({"gen", "--n", "3", "--m", "3", "--K", "2", "--q", "4", "--D", "1", "--seed", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"lp-check", "--trials", "3"}).code == 2);
  CHECK(run(with({"certify"}, {"--negative-control", "shuffle"})).code == 2);
}

TEST_CASE("generated games round-trip through files", "[cli]") {
  const auto path = (std::filesystem::temp_directory_path() / "liftgap_cli_test.game").string();
  REQUIRE(run(with({"gen", "--planted"}, {"--prune", "--k", "2", "--out", path})).code == 0);
  const auto text = cli::read_file(path);
  const auto g = game_from_string(text);
  const auto gi = girth(g);
  CHECK((!gi || *gi >= 6));
  CHECK(game_to_string(g) == text);
  const auto direct = run({"reduce", "--game", path, "--kind", "directed", "--k", "2"});
  const auto generated = run(with({"reduce", "--kind", "directed", "--k", "2"}, {"--prune"}));
  CHECK(direct.code == 0);
  CHECK(direct.out == generated.out);
  CHECK(instance_to_string(instance_from_string(direct.out)) == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("slsn instances record the distance bound", "[cli]") {
  const auto r = run(with({"reduce", "--kind", "slsn"}));
  REQUIRE(r.code == 0);
  CHECK(r.out.find(" L=3 ") != std::string::npos);
}

TEST_CASE("certify passes and the perturbed control fails", "[cli]") {
  const auto ok = run(with({"certify", "--kind", "directed", "--k", "2", "--assert-pass"}));
  REQUIRE(ok.code == 0);
  CHECK(Json::parse(ok.out)["pass"].get<bool>());
  const auto bad = run(with({"certify", "--kind", "directed", "--k", "2", "--negative-control", "perturb"}));
  REQUIRE(bad.code == 0);
  const auto j = Json::parse(bad.out);
  CHECK_FALSE(j["pass"].get<bool>());
  CHECK_FALSE(j["spanner_sdp"]["failures"].empty());
  CHECK(run(with({"certify", "--kind", "directed", "--k", "2", "--negative-control", "perturb", "--assert-pass"})).code ==
        3);
}

TEST_CASE("gap falls back to bounds with a warning", "[cli]") {
  const auto r = run(with({"gap", "--kind", "directed", "--k", "2", "--no-certify"}));
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto j = Json::parse(r.out);
  CHECK(j["integral"]["exact"].is_null());
  CHECK(j["integral"]["lower"].get<std::size_t>() <= j["integral"]["upper"].get<std::size_t>());
}
