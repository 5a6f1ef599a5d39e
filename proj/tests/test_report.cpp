#include <doctest.h>

#include <cmath>

#include "povmq/report.hpp"
#include "povmq/suites.hpp"

using namespace povmq;

TEST_SUITE("report") {
  TEST_CASE("checks and serialization") {
    SuiteReport r;
    r.suite = "demo";
    r.params = {{"r", 0.5}};
    r.scalar("a", "anchor-a", 1.0, 1.0 + 1e-12, 1e-10);
    r.scalar("b", "anchor-b", std::nan(""), 0.0, 1.0);
    r.vector("c", "anchor-c", {1.0, 2.0}, {1.0, 2.5}, 0.1);
    r.defect("d", "anchor-d", 1e-3, 1e-2);
    CHECK(r.checks[0].pass);
    CHECK_FALSE(r.checks[1].pass);
    CHECK(r.checks[1].computed.is_null());
    CHECK_FALSE(r.checks[2].pass);
    CHECK(r.checks[3].pass);
    CHECK(r.failures() == 2);

    const auto j = to_json(r);
    CHECK(j["suite"] == "demo");
    CHECK(j["checks"].size() == 4);
    for (const char* key : {"id", "paper_anchor", "computed", "expected", "tol", "pass"})
      CHECK(j["checks"][0].contains(key));

    const std::string csv = to_csv({r});
    CHECK(csv.rfind("suite,id,paper_anchor,computed,expected,tol,pass\n", 0) == 0);
    CHECK(csv.find("demo,c,anchor-c,1;2,1;2.5,0.1,false") != std::string::npos);
  }

  TEST_CASE("configuration validation") {
    SuiteConfig cfg;
    cfg.r = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.r.reset();
    cfg.t = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.t.reset();
    cfg.alpha = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.alpha.reset();
    CHECK_NOTHROW(cfg.validate());
    CHECK_THROWS_AS(run_suites("torus", cfg), std::invalid_argument);
    CHECK(suite_names().size() == 6);
  }

  TEST_CASE("reports are deterministic for a fixed seed") {
    SuiteConfig cfg;
    cfg.seed = 12;
    const auto a = to_json(run_suites("circle", cfg)).dump();
    const auto b = to_json(run_suites("circle", cfg)).dump();
    CHECK(a == b);
    const auto c = to_csv(run_suites("finite", cfg));
    CHECK(c == to_csv(run_suites("finite", cfg)));
  }

  TEST_CASE("uniform sphere at r = 0") {
    SuiteConfig cfg;
    cfg.r = 0.0;
    const auto rep = sphere_suite(cfg);
    for (const auto& c : rep.checks)
      if (c.id == "kernel.probability" || c.id == "distance.pseudo" || c.id == "distance.hilbert_schmidt")
        CHECK(c.pass);
  }
}
