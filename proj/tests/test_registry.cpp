#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "mahlerlab/error.hpp"
#include "mahlerlab/registry.hpp"

using namespace mahlerlab;

namespace {

// Every numbered or labelled formula, mapped to the check covering it or to
// the reason it has none.
const std::map<std::string, std::string> kManifest = {
    {"1.1", "eq-1.1"},
    {"1.2", "eq-1.2"},
    {"1.3", "out of scope: general shape of m(Q_k), no constants given"},
    {"1.4", "thm-1.1"},
    {"1.5", "eq-1.5"},
    {"thm-1.2", "m-r32"},
    {"2.4", "eq-2.4"},
    {"2.5", "eq-2.5"},
    {"wan", "e-wan"},
    {"2.6", "eq-2.6"},
    {"2.7", "eq-2.7"},
    {"2.8-analytic", "eq-2.8-analytic"},
    {"2.8", "wz-2.8-2.9"},
    {"2.9", "wz-2.8-2.9"},
    {"wz-pairs", "wz-pair-1"},
    {"wz-pairs-2", "wz-pair-2"},
    {"2.12", "wz-telescope"},
    {"2.10", "eq-2.10"},
    {"2.11", "eq-2.11"},
    {"2.13", "out of scope: elementary rearrangement of a square of a series"},
    {"wan-moments", "wan-moment-0"},
    {"kk2", "e-kk2"},
    {"3.2", "eq-3.2"},
    {"3.3", "out of scope: definition of m(a)"},
    {"3.4", "out of scope: definition of R(a)"},
    {"3.5", "eq-3.5"},
    {"3.5-3.6", "eq-3.5-vs-3.6"},
    {"3.6", "out of scope: intermediate double integral, covered through 3.5-3.6"},
    {"3.7", "eq-3.7"},
    {"3.8", "fourier-3.8"},
    {"3.9", "fourier-3.9"},
    {"3.10", "fourier-3.10"},
    {"4.1", "ff-4.1"},
    {"ahlgren-ono", "ff-ahlgren-ono"},
    {"4.2", "out of scope: tensor-product L-function"},
    {"4.3", "eq-4.3"},
    {"4.4", "eq-4.4"},
    {"fe-f", "lambda-symmetry-f"},
    {"fe-h", "lambda-symmetry-h"},
    {"q-expansion", "qexp-ramanujan"},
    {"hecke", "qexp-f-coeffs"},
    {"torus-main", "thm-1.1-torus"},
};

}  // namespace

TEST_SUITE("identity-registry") {
  TEST_CASE("ids and aliases are unique") {
    std::set<std::string> seen;
    for (const IdentityCheck& c : all_checks()) {
      CHECK(seen.insert(c.id).second);
      for (const auto& a : c.aliases) CHECK(seen.insert(a).second);
      CHECK_FALSE(c.description.empty());
      CHECK(c.run);
    }
  }

  TEST_CASE("every manifest entry is covered or explained") {
    for (const auto& [eq, target] : kManifest) {
      CAPTURE(eq);
      if (target.rfind("out of scope", 0) == 0) continue;
      CHECK_NOTHROW(find_check(target));
    }
    // and every check is referenced by the manifest or is a family member
    std::set<std::string> referenced;
    for (const auto& [eq, target] : kManifest) referenced.insert(target);
    for (const IdentityCheck& c : all_checks()) {
      CAPTURE(c.id);
      const bool family = c.id.rfind("wan-moment-", 0) == 0 || c.id == "ff-4.1-extended" || c.id == "thm-1.1-lprime";
      CHECK((family || referenced.count(c.id) > 0));
    }
  }

  TEST_CASE("the catalogue contains the required checks") {
    for (const char* id :
         {"wz-pair-1", "wz-pair-2", "wz-telescope", "wz-2.8-2.9", "ff-4.1", "ff-ahlgren-ono", "qexp-ramanujan",
          "qexp-f-coeffs", "thm-1.1", "eq-1.4", "eq-1.5", "eq-2.4", "eq-2.5", "e-wan", "eq-2.6", "eq-2.7",
          "eq-2.8-analytic", "eq-2.10", "eq-2.11", "wan-moment-0", "wan-moment-6", "eq-3.2", "eq-3.5-vs-3.6", "eq-3.7",
          "fourier-3.8", "fourier-3.9", "fourier-3.10", "eq-4.3", "lambda-symmetry-f", "lambda-symmetry-h", "eq-1.1",
          "eq-1.2", "thm-1.1-torus", "eq-4.4", "m-r32"}) {
      CAPTURE(id);
      CHECK_NOTHROW(find_check(id));
    }
  }

  TEST_CASE("lookup by alias and near-miss suggestions") {
    CHECK(find_check("eq-1.4").id == "thm-1.1");
    try {
      find_check("eq-2.44");
      FAIL("expected NotFound");
    } catch (const NotFound& e) {
      const auto& s = e.suggestions();
      CHECK(std::find(s.begin(), s.end(), "eq-2.4") != s.end());
      CHECK(s.size() <= 5);
    }
    CHECK(suggest_ids("wz-pair").size() >= 2);
    CHECK(suggest_ids("completely-unrelated-name").empty());
  }

  TEST_CASE("tolerances by kind") {
    const Precision p(128);
    for (const IdentityCheck& c : all_checks()) {
      const Real t = default_tolerance(c, p, Real(1e-4, p));
      switch (c.kind) {
        case CheckKind::exact: CHECK(t.is_zero()); break;
        case CheckKind::statistical: CHECK(t >= Real(6e-4, p)); break;
        case CheckKind::high_precision: CHECK(t >= Real(c.tolerance_floor, p)); break;
      }
    }
    const IdentityCheck& st = find_check("eq-1.1");
    CHECK(abs(default_tolerance(st, p, Real(1e-2, p)) - Real(6e-2, p)) < Real(1e-15, p));
    CHECK(abs(default_tolerance(st, p, Real(1e-6, p)) - Real(5e-3, p)) < Real(1e-15, p));
  }

  TEST_CASE("high-precision tolerances never grow with precision") {
    for (const IdentityCheck& c : all_checks()) {
      if (c.kind != CheckKind::high_precision) continue;
      Real prev = default_tolerance(c, Precision(32), Real(0L, Precision(32)));
      for (long bits = 48; bits <= 1024; bits += 16) {
        const Real t = default_tolerance(c, Precision(bits), Real(0L, Precision(bits)));
        CHECK(t <= prev);
        prev = t;
      }
    }
  }

  TEST_CASE("documented examples") {
    const CheckResult a = run_check("thm-1.1", RunOptions{Precision(128)});
    CHECK(a.pass);
    CHECK(*a.deviation < Real(1e-20, Precision(128)));
    const CheckResult b = run_check("eq-2.5", RunOptions{Precision(96)});
    CHECK(b.pass);
    CHECK(*b.deviation < Real(1e-15, Precision(96)));
    CHECK_THROWS_AS(run_check("nonexistent"), NotFound);
  }

  TEST_CASE("raising precision keeps passing checks passing") {
    for (const char* id : {"thm-1.1", "eq-1.5", "eq-2.7", "eq-3.2", "eq-4.3", "eq-3.5", "wan-moment-2"}) {
      for (long bits : {64L, 96L, 160L, 256L}) {
        CAPTURE(id);
        CAPTURE(bits);
        CHECK(run_check(id, RunOptions{Precision(bits)}).pass);
      }
    }
  }

  TEST_CASE("plan failures become failed results") {
    RunOptions o;
    o.samples = 1000;  // not a power of two
    const CheckResult r = run_check("eq-1.1", o);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.deviation.has_value());
    CHECK_FALSE(r.note.empty());
  }

  TEST_CASE("runs are reproducible and independent of the thread count") {
    RunOptions o;
    o.samples = 1 << 12;
    const CheckResult a = run_check("eq-1.2", o);
    const CheckResult b = run_check("eq-1.2", o);
    CHECK(a.lhs == b.lhs);
    CHECK(*a.deviation == *b.deviation);
    CHECK(a.seed == kDefaultSeed);

    const std::set<std::string> filter{"finite-field"};
    o.threads = 1;
    const auto serial = run_all(filter, o);
    o.threads = 3;
    const auto parallel = run_all(filter, o);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].id == parallel[i].id);
      CHECK(serial[i].lhs == parallel[i].lhs);
      CHECK(serial[i].pass == parallel[i].pass);
    }
  }

  TEST_CASE("exact checks pass with zero deviation") {
    const auto results = run_all({"exact"});
    CHECK(results.size() >= 9);
    for (const CheckResult& r : results) {
      CAPTURE(r.id);
      CHECK(r.pass);
      CHECK(r.deviation->is_zero());
      CHECK(r.tolerance.is_zero());
    }
  }

  TEST_CASE("filters match tags, kinds and ids") {
    const IdentityCheck& c = find_check("ff-4.1");
    CHECK(matches_filter(c, {}));
    CHECK(matches_filter(c, {"exact"}));
    CHECK(matches_filter(c, {"finite-field"}));
    CHECK(matches_filter(c, {"ff-4.1"}));
    CHECK_FALSE(matches_filter(c, {"statistical"}));
  }
}
