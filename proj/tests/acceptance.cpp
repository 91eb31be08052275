// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any fail. Tolerances and time limits are fixed here, independent of the
// registry defaults.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "mahlerlab/error.hpp"
#include "mahlerlab/mahler.hpp"
#include "mahlerlab/modular.hpp"
#include "mahlerlab/registry.hpp"

using namespace mahlerlab;

namespace {

constexpr double kMainTheoremTol = 1e-20;
constexpr double kSixFiveTol = 1e-10;
constexpr double kIntegralTol = 1e-15;
constexpr double kMomentTol = 1e-8;
constexpr double kDoubleSumTol = 1e-10;
constexpr double kPolylogTol = 1e-25;
constexpr double kRouteTol = 1e-8;
constexpr double kDensityTol = 1e-8;
constexpr double kFourierTol = 1e-3;
constexpr double kDecayRatioMax = 0.6;  // 1/N decay gives 0.5
constexpr double kStatFloor = 5e-3;
constexpr double kLambdaTol = 1e-12;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double dev(const CheckResult& r) { return r.deviation ? r.deviation->to_double() : 1e300; }

// Runs the ids at precision p; each deviation must be below tol.
Verdict deviations_below(const std::vector<std::string>& ids, Precision p, double tol, double each_limit_s,
                         double total_limit_s, bool exact = false) {
  Verdict v;
  double worst = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& id : ids) {
    const auto t1 = std::chrono::steady_clock::now();
    RunOptions o;
    o.precision = p;
    const CheckResult r = run_check(id, o);
    const double s = seconds_since(t1);
    const double d = dev(r);
    worst = std::max(worst, d);
    if (exact) {
      v.require(r.deviation && r.deviation->is_zero(), id + " residual " + r.lhs + " " + r.note);
    } else {
      v.require(d < tol, id + " deviation " + sci(d) + " " + r.note);
    }
    v.require(s < each_limit_s, id + " took " + std::to_string(s) + " s");
  }
  const double total = seconds_since(t0);
  v.require(total < total_limit_s, "total " + std::to_string(total) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "max deviation %.2e, %.1f s", worst, total);
  v.detail = v.pass ? std::string(buf) : v.detail;
  return v;
}

Verdict criterion_7() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  RunOptions o;
  o.precision = Precision(128);
  const CheckResult polylog = run_check("eq-3.5", o);
  v.require(dev(polylog) < kPolylogTol, "R(1) deviation " + sci(dev(polylog)));
  const CheckResult routes = run_check("eq-3.5-vs-3.6", o);
  v.require(dev(routes) < kRouteTol, "route deviation " + sci(dev(routes)));
  const CheckResult density = run_check("eq-3.7", o);
  v.require(dev(density) < kDensityTol, "density deviation " + sci(dev(density)));
  const Precision p(128);
  const Real pi = const_pi(p);
  struct F {
    const char* id;
    FourierSeries which;
    long denom;
  };
  std::string ratios;
  for (const F& f : {F{"fourier-3.8", FourierSeries::ksin, 6}, F{"fourier-3.9", FourierSeries::kcos, 4},
                     F{"fourier-3.10", FourierSeries::m4sin, 3}}) {
    const CheckResult r = run_check(f.id, o);
    v.require(dev(r) < kFourierTol, std::string(f.id) + " deviation " + sci(dev(r)));
    const double ratio = fourier_decay_ratio(f.which, pi / f.denom, 400, Precision(64));
    v.require(ratio > 0 && ratio <= kDecayRatioMax, std::string(f.id) + " decay ratio " + std::to_string(ratio));
    ratios += (ratios.empty() ? "" : ", ") + std::to_string(ratio).substr(0, 5);
  }
  if (v.pass) {
    v.detail = "R(1) " + sci(dev(polylog)) + ", routes " + sci(dev(routes)) + ", density " + sci(dev(density)) +
               ", decay ratios " + ratios + ", " + std::to_string(seconds_since(t0)).substr(0, 5) + " s";
  }
  return v;
}

Verdict criterion_8() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  RunOptions o;
  o.samples = 1u << 20;
  o.shifts = 16;
  o.seed = 0x5EED;
  std::string worst;
  double worst_ratio = 0;
  for (const char* id : {"eq-1.1", "eq-1.2", "thm-1.1-torus", "eq-4.4", "m-r32"}) {
    const CheckResult r = run_check(id, o);
    const double tol = r.tolerance.to_double();
    v.require(tol >= kStatFloor, std::string(id) + " tolerance below the floor");
    v.require(dev(r) <= tol, std::string(id) + " deviation " + sci(dev(r)) + " > " + sci(tol));
    if (dev(r) / tol > worst_ratio) {
      worst_ratio = dev(r) / tol;
      worst = id;
    }
  }
  const double total = seconds_since(t0);
  v.require(total < 600, "suite took " + std::to_string(total) + " s");
  if (v.pass) v.detail = "largest deviation/tolerance " + sci(worst_ratio) + " (" + worst + "), " + std::to_string(total).substr(0, 5) + " s";
  return v;
}

Verdict criterion_10() {
  Verdict v;
  const Precision p(64);
  for (const Newform* form : {&newform_f(), &newform_h()}) {
    try {
      const double a = fricke_check(*form, p).to_double();
      v.require(a < kLambdaTol, form->spec().name + " asymmetry " + sci(a));
    } catch (const FunctionalEquationViolation& e) {
      v.require(false, form->spec().name + ": " + e.what());
    }
  }
  NewformSpec flipped = newform_f_spec();
  flipped.fricke_sign = -flipped.fricke_sign;
  const Newform bad(flipped);
  bool loud = false;
  double asym = 0;
  try {
    fricke_check(bad, p);
  } catch (const FunctionalEquationViolation& e) {
    loud = true;
    asym = e.asymmetry();
  }
  v.require(loud, "flipped sign was accepted");
  if (v.pass) v.detail = "f and h symmetric below " + sci(kLambdaTol) + "; flipped sign rejected (asymmetry " + sci(asym) + ")";
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Verdict criterion_11() {
  Verdict v;
  const std::string tool = MAHLERLAB_TOOL_PATH;
  std::string reports[2];
  for (int i = 0; i < 2; ++i) {
    const std::string path = "acceptance_run_" + std::to_string(i) + ".json";
    const std::string cmd = "\"" + tool + "\" verify --all --format json > \"" + path + "\"";
    const int rc = std::system(cmd.c_str());
    v.require(rc != -1, "could not start " + tool);
    reports[i] = slurp(path);
  }
  v.require(!reports[0].empty(), "empty report");
  v.require(reports[0] == reports[1], "reports differ");
  if (v.pass) v.detail = "two reports of " + std::to_string(reports[0].size()) + " bytes are identical";
  return v;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  struct Criterion {
    int number;
    const char* title;
    std::function<Verdict()> run;
  };
  const Precision p96(96), p128(128);
  const std::vector<Criterion> criteria = {
      {1, "main theorem, series vs L-value", [&] { return deviations_below({"thm-1.1"}, p128, kMainTheoremTol, 60, 60); }},
      {2, "6F5 at 1", [&] { return deviations_below({"eq-1.5"}, p128, kSixFiveTol, 60, 60); }},
      {3, "K K' integrals at 96 bits",
       [&] {
         return deviations_below({"eq-2.4", "eq-2.5", "e-wan", "eq-2.6", "eq-2.7", "eq-2.8-analytic"}, p96, kIntegralTol,
                                 120, 720);
       }},
      {4, "moments of K K'",
       [&] {
         return deviations_below({"wan-moment-0", "wan-moment-1", "wan-moment-2", "wan-moment-3", "wan-moment-4",
                                  "wan-moment-5", "wan-moment-6"},
                                 p128, kMomentTol, 120, 120);
       }},
      {5, "double sums and series",
       [&] { return deviations_below({"eq-2.10", "eq-2.11", "eq-3.2", "eq-4.3"}, p128, kDoubleSumTol, 120, 120); }},
      {6, "WZ suite, n <= 500",
       [&] { return deviations_below({"wz-pair-1", "wz-pair-2", "wz-telescope", "wz-2.8-2.9"}, p128, 0, 60, 60, true); }},
      {7, "R(a), density and Fourier checks", criterion_7},
      {8, "statistical suite", criterion_8},
      {9, "finite-field suite", [&] { return deviations_below({"ff-4.1", "ff-ahlgren-ono"}, p128, 0, 120, 120, true); }},
      {10, "functional equations and sign-flip control", criterion_10},
      {11, "determinism of verify --all", criterion_11},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += v.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s\n", c.number, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
