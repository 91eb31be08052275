#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mahlerlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mahlerlab_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify one check") {
    const Outcome r = run({"verify", "thm-1.1", "--precision", "128"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS  thm-1.1") != std::string::npos);
  }

  TEST_CASE("unknown ids exit 2 with suggestions") {
    const Outcome r = run({"verify", "eq-9.9"});
    CHECK(r.code == 2);
    CHECK(r.err.find("did you mean") != std::string::npos);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "thm-1.1", "--bogus"}).code == 2);
    CHECK(run({"verify", "thm-1.1", "--precision", "16"}).code == 2);
    CHECK(run({"verify", "thm-1.1", "--precision", "5000"}).code == 2);
    CHECK(run({"verify", "thm-1.1", "--precision", "abc"}).code == 2);
    CHECK(run({"verify", "eq-1.1", "--samples", "1000"}).code == 2);
    CHECK(run({"verify", "thm-1.1", "--format", "xml"}).code == 2);
    CHECK(run({"verify", "--all", "--filter", "no-such-tag"}).code == 2);
    CHECK(run({"verify", "thm-1.1", "--config", "/nonexistent/config"}).code == 2);
    CHECK(run({"compute", "nonsense"}).code == 2);
    CHECK(run({"compute"}).code == 2);
    CHECK(run({"compute", "zeta"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("non-usage failures in compute exit 1") {
    CHECK(run({"compute", "points", "211", "1"}).code == 1);
  }

  TEST_CASE("json report schema") {
    const Outcome r = run({"verify", "--all", "--filter", "exact", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() >= 9);
    for (const auto& e : j) {
      for (const char* key : {"schema", "id", "lhs", "rhs", "deviation", "tolerance", "pass", "wall_ms", "evals", "seed"}) {
        CAPTURE(key);
        CHECK(e.contains(key));
      }
      CHECK(e["schema"] == "v1");
      CHECK(e["pass"] == true);
      CHECK(e["deviation"] == 0.0);
      CHECK(e["wall_ms"].is_null());
    }
  }

  TEST_CASE("timing adds wall-clock times") {
    const Outcome r = run({"verify", "ff-4.1", "--format", "json", "--timing"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j[0]["wall_ms"].is_number());
  }

  TEST_CASE("csv report") {
    const Outcome r = run({"verify", "ff-4.1", "qexp-ramanujan", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header, line;
    std::getline(in, header);
    CHECK(header.rfind("id,kind,pass,deviation,tolerance", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
  }

  TEST_CASE("compute examples") {
    const Outcome z = run({"compute", "zeta", "3", "--digits", "30"});
    CHECK(z.code == 0);
    CHECK(z.out.rfind("1.202056903159594285399738161511\n", 0) == 0);
    CHECK(z.out.find("route:") != std::string::npos);
    CHECK(z.out.find("error estimate:") != std::string::npos);

    const Outcome a = run({"compute", "ap", "7"});
    CHECK(a.out.rfind("24\n", 0) == 0);

    const Outcome m = run({"compute", "mRk", "1e6", "--digits", "12"});
    CHECK(m.code == 0);
    CHECK(std::abs(std::stod(m.out) - std::log(1e6)) < 1e-11);

    const Outcome k = run({"compute", "K", "0", "--digits", "20", "--format", "json"});
    const auto j = nlohmann::json::parse(k.out);
    CHECK(j["value"] == "1.57079632679489661923");
  }

  TEST_CASE("config file: flags override file values, file overrides defaults") {
    const fs::path dir = scratch("config");
    const fs::path cfg = dir / "run.conf";
    {
      std::ofstream out(cfg);
      out << "# test config\nprecision = 64\nformat=json\n";
    }
    auto precision_of = [](const Outcome& r) { return nlohmann::json::parse(r.out)[0]["precision"].get<int>(); };
    CHECK(precision_of(run({"verify", "eq-3.5", "--config", cfg.string()})) == 64);
    CHECK(precision_of(run({"verify", "eq-3.5", "--config", cfg.string(), "--precision", "96"})) == 96);
    {
      std::ofstream out(cfg);
      out << "colour = blue\n";
    }
    CHECK(run({"verify", "eq-3.5", "--config", cfg.string()}).code == 2);
  }

  TEST_CASE("coefficient cache: flag beats environment beats config") {
    const fs::path env_dir = scratch("env");
    const fs::path flag_dir = scratch("flag");
    const fs::path cfg_dir = scratch("cfg");
    const fs::path cfg = cfg_dir / "run.conf";
    {
      std::ofstream out(cfg);
      out << "cache=" << (cfg_dir / "cache").string() << '\n';
    }
    ::setenv("MAHLERLAB_CACHE", env_dir.string().c_str(), 1);
    CHECK(run({"verify", "qexp-ramanujan", "--config", cfg.string()}).code == 0);
    CHECK(fs::exists(env_dir / "f.coeffs"));
    CHECK_FALSE(fs::exists(cfg_dir / "cache" / "f.coeffs"));
    CHECK(run({"verify", "qexp-ramanujan", "--cache", flag_dir.string()}).code == 0);
    CHECK(fs::exists(flag_dir / "f.coeffs"));
    ::unsetenv("MAHLERLAB_CACHE");
    CHECK(run({"verify", "qexp-ramanujan", "--config", cfg.string()}).code == 0);
    CHECK(fs::exists(cfg_dir / "cache" / "f.coeffs"));
    // a cache written by one run is read back by the next
    CHECK(run({"compute", "ap", "97", "--cache", flag_dir.string()}).code == 0);
    {
      std::ofstream out(flag_dir / "f.coeffs");
      out << "1 2\n";
    }
    CHECK(run({"compute", "ap", "3", "--cache", flag_dir.string()}).code == 2);
  }

  TEST_CASE("list") {
    const Outcome r = run({"list", "--filter", "wz"});
    CHECK(r.code == 0);
    CHECK(r.out.find("wz-pair-1") != std::string::npos);
    CHECK(r.out.find("thm-1.1") == std::string::npos);
  }
}
