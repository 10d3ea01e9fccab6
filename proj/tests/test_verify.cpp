#include "absord/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace absord;

namespace {

VerifyOptions opts(int n, std::uint32_t p, std::uint32_t e, std::uint64_t exhaustive_limit,
                   std::size_t samples) {
  VerifyOptions o;
  o.n = n;
  o.field = Field::create(p, e);
  o.exhaustive_limit = exhaustive_limit;
  o.samples = samples;
  o.threads = 2;
  return o;
}

void require_all_pass(const std::vector<SuiteReport>& reports) {
  for (const auto& rep : reports)
    for (const auto& r : rep.results) {
      INFO(rep.suite << " / " << r.name << ": " << r.detail);
      CHECK(r.passed);
      CHECK(r.checked > 0);
    }
}

}  // namespace

TEST_CASE("all suites pass exhaustively on GL_2(F_2) and GL_2(F_3)", "[verify]") {
  require_all_pass(run_suite("all", opts(2, 2, 1, 1000, 100)));
  require_all_pass(run_suite("all", opts(2, 3, 1, 1000, 100)));
}

TEST_CASE("all suites pass sampled on GL_3(F_2) and GL_2(F_4)", "[verify]") {
  require_all_pass(run_suite("all", opts(3, 2, 1, 100, 150)));
  require_all_pass(run_suite("all", opts(2, 2, 2, 100, 150)));
}

TEST_CASE("order axioms and duality sampled on GL_3(F_3)", "[verify]") {
  require_all_pass(run_suite("order-axioms", opts(3, 3, 1, 100, 60)));
  require_all_pass(run_suite("duality", opts(3, 3, 1, 100, 60)));
}

TEST_CASE("bijection and mobius on GL_4(F_2)", "[verify]") {
  const auto o = opts(4, 2, 1, 100, 200);
  require_all_pass(run_suite("bijection", o));
  const auto mob = run_suite("mobius", o);
  require_all_pass(mob);
  bool found = false;
  for (const auto& r : mob.front().results)
    found |= r.detail.find("1034") != std::string::npos;
  CHECK(found);
}

TEST_CASE("reports are deterministic for a fixed seed", "[verify]") {
  auto o = opts(3, 2, 1, 100, 80);
  o.seed = 42;
  const auto a = run_suite("order-axioms", o);
  o.threads = 1;
  const auto b = run_suite("order-axioms", o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.front().results.size(); ++i) {
    CHECK(a.front().results[i].name == b.front().results[i].name);
    CHECK(a.front().results[i].checked == b.front().results[i].checked);
    CHECK(a.front().results[i].detail == b.front().results[i].detail);
  }
}

TEST_CASE("suite names", "[verify]") {
  CHECK(suite_names().size() == 6);
  CHECK(run_suite("all", opts(2, 2, 1, 1000, 20)).size() == 6);
  CHECK_THROWS_AS(run_suite("nope", opts(2, 2, 1, 100, 10)), std::invalid_argument);
}
