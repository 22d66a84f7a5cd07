#include "doctest.h"
#include "support.hpp"

#include "gcm/cli.hpp"
#include "json.hpp"

using namespace gcm;
using namespace gcm::test;

TEST_CASE("report schema") {
  RunResult r = run_command("check", corpus_path("kt.gcm"));
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.json);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "check");
  CHECK(j["file"] == "kt.gcm");
  CHECK(j["status"] == "pass");
  CHECK(j["error"].is_null());
  CHECK(j["checks"].size() >= 2);
}

TEST_CASE("exit codes") {
  CHECK(run_command("ddbar", corpus_path("kt-symplectic.gcm")).exit_code == 1);
  CHECK(run_command("hodge", corpus_path("torus4-symplectic.gcm")).exit_code == 0);
  CHECK(run_command("check", corpus_path("faults/odd-dimension.gcm")).exit_code == 2);
  CHECK(run_command("check", corpus_path("missing.gcm")).exit_code == 2);
  CHECK(run_command("frobnicate", corpus_path("kt.gcm")).exit_code == 2);
  RunOptions bad_point;
  bad_point.at = "s=1";
  CHECK(run_command("family", corpus_path("family-scale.gcm"), bad_point).exit_code == 2);
}

TEST_CASE("hodge report lists the symplectic filtration") {
  RunOptions opts;
  opts.json = true;
  auto j = nlohmann::json::parse(run_command("hodge", corpus_path("torus4-symplectic.gcm"), opts).json);
  auto dims = j["checks"][0]["details"]["dims"];
  CHECK(dims["F^-2"]["dim"] == 1);
  CHECK(dims["F^0"]["dim"] == 7);
  CHECK(dims["F^2"]["dim"] == 8);
}

TEST_CASE("quiet mode prints verdicts only") {
  RunOptions q;
  q.quiet = true;
  std::string text = run_command("ddbar", corpus_path("kt-symplectic.gcm"), q).text;
  CHECK(text.find("FAIL ddbar:kt\n") != std::string::npos);
  CHECK(text.find("witness") == std::string::npos);
}

TEST_CASE("family evaluated at a point") {
  RunOptions opts;
  opts.json = true;
  opts.at = "t1=1/2";
  RunResult r = run_command("family", corpus_path("family-symplectic.gcm"), opts);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.json);
  CHECK(j["checks"][0]["name"] == "at:shift");
  CHECK(j["checks"][0]["details"]["ddbar"] == true);
}
