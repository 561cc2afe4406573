#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "pellforms/cli.hpp"

using namespace pellforms;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  return {code, o.str(), e.str()};
}

const std::string kPoint = "(sqrt(-1)/5 ; -2*sqrt(-1)/15)";

}  // namespace

TEST_CASE("point analyze") {
  const Out r = call({"--delta", "229", "point", "analyze", kPoint});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("A=15") != std::string::npos);
  CHECK(r.out.find("beta=111") != std::string::npos);
  CHECK(r.out.find("form=(225,223,55)") != std::string::npos);
  const Out j = call({"--delta", "229", "--json", "point", "analyze", kPoint});
  REQUIRE(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["A"] == 15);
  CHECK(doc["beta"] == 111);
  CHECK(doc["form"] == nlohmann::json::array({225, 223, 55}));
}

TEST_CASE("phi and its inverse") {
  const Out r = call({"--delta", "229", "point", "phi", kPoint});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("sqrt(-1)") != std::string::npos);
  const Out d = call({"--delta", "229", "point", "decompose", kPoint});
  CHECK(d.code == kExitOk);
  CHECK(d.out.find("-31/5") != std::string::npos);
}

TEST_CASE("census") {
  const Out j = call({"--delta", "229", "--json", "sha", "census"});
  REQUIRE(j.code == kExitOk);
  std::istringstream lines(j.out);
  std::string line;
  std::vector<nlohmann::json> recs;
  while (std::getline(lines, line)) recs.push_back(nlohmann::json::parse(line));
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]["form"] == nlohmann::json::array({9, 7, -5}));
  CHECK(recs[0]["rational_point"] == "(1/3 ; 0)");
  CHECK(recs[0]["integral"] == false);
  CHECK(recs[1]["class_order"] == 3);
  CHECK(call({"--delta", "5", "sha", "census"}).out.empty());
  const Out range = call({"--json", "sha", "census", "--from", "220", "--to", "232"});
  CHECK(range.code == kExitOk);
  CHECK(range.out.find("\"delta\":229") != std::string::npos);
}

TEST_CASE("classgroup") {
  const Out j = call({"--delta", "229", "--json", "classgroup"});
  REQUIRE(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["order"] == 3);
  CHECK(doc["table"].size() == 3);
  CHECK(call({"--delta", "-23", "classgroup", "--squares"}).code == kExitOk);
}

TEST_CASE("forms and conic") {
  const Out r = call({"--delta", "229", "form", "compose", "(3,13,-5)", "(3,13,-5)"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("(9,7,-5)") != std::string::npos);
  CHECK(call({"--delta", "229", "form", "equiv", "(1,1,-57)", "(3,13,-5)"}).code == kExitOk);
  const Out a = call({"--delta", "5", "conic", "add", "(1;1)", "(1;1)"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("(2 ; 3)") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(call({"--delta", "20", "classgroup"}).code == kExitDomainError);
  const Out e = call({"--delta", "20", "classgroup"});
  CHECK(e.err.find("NotFundamental") != std::string::npos);
  CHECK(call({"--delta", "5", "conic", "add", "(2;2)", "(1;1)"}).code == kExitDomainError);
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"--delta", "229", "form", "compose", "(1,2"}).code == kExitUsage);
  CHECK(call({"--delta", "229", "nosuch"}).code == kExitUsage);
  CHECK(call({"--delta", "229", "point", "analyze", "(1;"}).code == kExitUsage);
}

TEST_CASE("seeded output is stable") {
  const Out a = call({"--seed", "3", "verify", "--trials", "20"});
  const Out b = call({"--seed", "3", "verify", "--trials", "20"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}
