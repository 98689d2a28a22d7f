#include <cmath>
#include <regex>

#include "doctest.h"
#include "errors.hpp"
#include "runner.hpp"

using namespace orlicz;
using nlohmann::json;

namespace {

double result_number(const RunResult& r, const char* key) { return r.report.at("result").at(key).get<double>(); }

ErrorCode code_of(const std::string& cmd, const std::string& cfg) {
  try {
    run_command(cmd, cfg);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BoundViolation;
}

}  // namespace

TEST_CASE("norm command") {
  const RunResult a = run_command("norm", R"({"phi":{"type":"power","q":2},"measure":{"type":"lebesgue"},
      "function":{"type":"piecewise_linear","knots":[0,1],"values":[0,1]}})");
  CHECK(result_number(a, "norm") == doctest::Approx(0.5773502691896258).epsilon(1e-10));
  const RunResult b = run_command("norm", R"({"phi":{"type":"power","q":2},"measure":{"type":"lebesgue"},
      "function":{"type":"indicator","lo":0,"hi":0.25}})");
  CHECK(result_number(b, "norm") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(result_number(b, "modular_at_norm") <= 1.0 + 1e-9);
  CHECK(b.report.at("config").at("phi").at("scale") == 1.0);
}

TEST_CASE("constant command writes traces and flags divergence") {
  const RunResult k1 = run_command("constant", R"({"constant":"k1","phi":{"type":"power","q":1},
      "measure":{"type":"lebesgue"}})");
  CHECK(result_number(k1, "value") == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(k1.finding == Finding::None);
  REQUIRE(k1.artifacts.size() == 2);
  CHECK(k1.artifacts[0].content.rfind("x,supremand\n", 0) == 0);

  const RunResult div = run_command("constant", R"({"constant":"classical","measure":{"type":"expdeg"},
      "p":2,"q":2.5})");
  CHECK(div.finding == Finding::Divergence);
  CHECK(div.report.at("finding") == "divergence");
}

TEST_CASE("complementary command") {
  const RunResult r = run_command("complementary", R"({"phi":{"type":"power","q":2,"scale":0.5},"s":[1,2,4]})");
  const json& t = r.report.at("result").at("table");
  CHECK(t[0].at("psi").get<double>() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(t[1].at("psi").get<double>() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(t[2].at("psi").get<double>() == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("check-young command") {
  const RunResult r = run_command("check-young", R"({"phi":{"type":"logbump","p":2,"alpha":1},"p":2})");
  CHECK(r.report.at("result").at("pass") == true);
  CHECK(r.finding == Finding::None);
  const RunResult bad = run_command("check-young", R"({"phi":{"type":"exp"}})");
  CHECK(bad.finding == Finding::BoundViolation);
}

TEST_CASE("verify command") {
  const RunResult r = run_command("verify", R"({"phi":{"type":"power","q":1},"measure":{"type":"lebesgue"},
      "p":1,"family":{"count":30}})");
  CHECK(r.report.at("result").at("pass") == true);
  CHECK(r.report.at("result").at("records").size() == 33);
  CHECK(r.finding == Finding::None);
}

TEST_CASE("config errors name the field") {
  CHECK(code_of("norm", R"({"phi":{"type":"power","q":2},"measure":{"type":"lebesgue"},
      "function":{"type":"indicator","lo":0,"hi":0.25},"colour":1})") == ErrorCode::Config);
  CHECK(code_of("norm", "{not json") == ErrorCode::Config);
  CHECK(code_of("dance", "{}") == ErrorCode::Config);
  CHECK(code_of("example", R"({"alpha":2})") == ErrorCode::Config);
  try {
    run_command("constant", R"({"constant":"k1","phi":{"type":"power","q":0.5},"measure":{"type":"lebesgue"}})");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("phi") != std::string::npos);
  }
}

TEST_CASE("reports are identical for any worker count") {
  const std::string cfg = R"({"phi":{"type":"logbump","p":2,"alpha":1},"measure":{"type":"power","exponent":2},
      "p":2,"family":{"count":12},"seed":9})";
  RunOptions one;
  one.workers = 1;
  RunOptions many;
  many.workers = 4;
  json a = run_command("verify", cfg, one).report;
  json b = run_command("verify", cfg, many).report;
  a["config"].erase("workers");
  b["config"].erase("workers");
  CHECK(dump_report(a) == dump_report(b));
}

TEST_CASE("flag overrides are echoed") {
  RunOptions opt;
  opt.seed = 77;
  opt.grid_policy = "uniform";
  const RunResult r = run_command("constant", R"({"constant":"k1","phi":{"type":"power","q":1},
      "measure":{"type":"lebesgue"}})", opt);
  CHECK(r.report.at("config").at("seed") == 77);
  CHECK(r.report.at("config").at("grid").at("policy") == "uniform");
}
