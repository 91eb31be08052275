#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mahlerlab/error.hpp"
#include "mahlerlab/finite_field.hpp"
#include "mahlerlab/mahler.hpp"
#include "mahlerlab/modular.hpp"
#include "mahlerlab/registry.hpp"
#include "mahlerlab/special.hpp"

namespace mahlerlab::cli {

namespace {

const std::set<std::string> kConfigKeys = {"precision", "seed",  "samples", "shifts", "threads",
                                           "filter",    "format", "cache",   "digits", "timing"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::set<std::string> split_tags(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.insert(item);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("bad " + what + " '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  const std::uint64_t v = parse_u64(s, what);
  if (v > 1'000'000'000) throw InvalidArgument(what + " out of range");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InvalidArgument("bad boolean '" + s + "'");
}

// Raw option strings as given on the command line. Values from the config
// file fill in whatever the command line left empty.
struct RawOptions {
  std::string precision, seed, samples, shifts, threads, filter, format, cache, digits, config;
  bool timing = false;
};

struct Resolved {
  RunConfig config;
  bool precision_given = false;
};

Resolved resolve(const RawOptions& raw, const CLI::App& app) {
  std::map<std::string, std::string> file;
  if (!raw.config.empty()) file = read_config_file(raw.config);
  auto pick = [&](const std::string& key, const std::string& flag_value) -> std::optional<std::string> {
    if (app.count("--" + key) > 0) return flag_value;
    if (auto it = file.find(key); it != file.end()) return it->second;
    return std::nullopt;
  };

  Resolved r;
  RunConfig& c = r.config;
  if (auto v = pick("precision", raw.precision)) {
    c.precision = Precision(parse_int(*v, "precision"));
    r.precision_given = true;
  }
  if (c.precision.bits < kMinPrecisionBits || c.precision.bits > kCliMaxPrecision) {
    throw InvalidArgument("precision must lie in [32, 4096] bits");
  }
  if (auto v = pick("seed", raw.seed)) c.seed = parse_u64(*v, "seed");
  if (auto v = pick("samples", raw.samples)) c.samples = parse_u64(*v, "sample count");
  if (c.samples < 1024 || (c.samples & (c.samples - 1)) != 0) {
    throw InvalidArgument("samples must be a power of two, at least 1024");
  }
  if (auto v = pick("shifts", raw.shifts)) c.shifts = parse_int(*v, "shift count");
  if (c.shifts < 8) throw InvalidArgument("shifts must be at least 8");
  if (auto v = pick("threads", raw.threads)) c.threads = std::max(1, parse_int(*v, "thread count"));
  if (auto v = pick("filter", raw.filter)) c.filter = split_tags(*v);
  if (auto v = pick("format", raw.format)) c.format = parse_report_format(*v);
  if (auto v = pick("digits", raw.digits)) {
    c.digits = parse_int(*v, "digit count");
    if (*c.digits < 1 || *c.digits > 1200) throw InvalidArgument("digits must lie in [1, 1200]");
  }
  if (app.count("--timing") > 0) {
    c.timing = raw.timing;
  } else if (auto it = file.find("timing"); it != file.end()) {
    c.timing = parse_bool(it->second);
  }
  // Cache path: flag, then environment, then config file.
  if (app.count("--cache") > 0) {
    c.cache = raw.cache;
  } else if (const char* env = std::getenv("MAHLERLAB_CACHE"); env != nullptr && *env != '\0') {
    c.cache = env;
  } else if (auto it = file.find("cache"); it != file.end()) {
    c.cache = it->second;
  }
  return r;
}

std::string cache_file(const std::string& dir, const Newform& form) {
  return (std::filesystem::path(dir) / (form.spec().name + ".coeffs")).string();
}

void load_caches(const RunConfig& c) {
  if (!c.cache) return;
  std::filesystem::create_directories(*c.cache);
  for (const Newform* form : {&newform_f(), &newform_h()}) {
    const std::string path = cache_file(*c.cache, *form);
    if (std::filesystem::exists(path)) form->load_cache(path);
  }
}

void save_caches(const RunConfig& c) {
  if (!c.cache) return;
  for (const Newform* form : {&newform_f(), &newform_h()}) {
    if (form->cached_order() > 0) form->save_cache(cache_file(*c.cache, *form));
  }
}

RunOptions run_options(const RunConfig& c) {
  RunOptions o;
  o.precision = c.precision;
  o.seed = c.seed;
  o.samples = c.samples;
  o.shifts = c.shifts;
  o.threads = c.threads;
  return o;
}

int cmd_verify(const RunConfig& c, const std::vector<std::string>& ids, bool all, std::ostream& out,
               std::ostream& err) {
  if (ids.empty() && !all) {
    err << "verify: give one or more check ids or --all\n";
    return kUsageError;
  }
  std::vector<std::string> selected;
  for (const std::string& id : ids) {
    try {
      selected.push_back(find_check(id).id);
    } catch (const NotFound& e) {
      err << "verify: " << e.what() << '\n';
      if (!e.suggestions().empty()) {
        err << "did you mean:";
        for (const auto& s : e.suggestions()) err << ' ' << s;
        err << '\n';
      }
      return kUsageError;
    }
  }
  if (all) {
    bool any = false;
    for (const IdentityCheck& check : all_checks()) any = any || matches_filter(check, c.filter);
    if (!any) {
      err << "verify: the filter matches no checks\n";
      return kUsageError;
    }
  }

  load_caches(c);
  const RunOptions options = run_options(c);
  std::vector<CheckResult> results;
  if (all) {
    results = run_all(c.filter, options);
  } else {
    for (const std::string& id : selected) results.push_back(run_check(id, options));
  }
  save_caches(c);

  write_report(out, results, ReportOptions{c.format, c.timing});
  const bool ok = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
  return ok ? kAllPassed : kSomeFailed;
}

int cmd_list(const RunConfig& c, std::ostream& out) {
  if (c.format == ReportFormat::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const IdentityCheck& check : all_checks()) {
      if (!matches_filter(check, c.filter)) continue;
      nlohmann::ordered_json j;
      j["id"] = check.id;
      j["kind"] = to_string(check.kind);
      j["tags"] = check.tags;
      j["aliases"] = check.aliases;
      j["description"] = check.description;
      arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
    return kAllPassed;
  }
  for (const IdentityCheck& check : all_checks()) {
    if (!matches_filter(check, c.filter)) continue;
    out << check.id;
    for (const auto& a : check.aliases) out << " (" << a << ")";
    out << "  [" << to_string(check.kind) << "]  " << check.description << '\n';
  }
  return kAllPassed;
}

// ---- compute ----

struct Computed {
  std::string value;
  std::string route;
  std::string error;
};

std::string fixed(const Real& x, int decimals) {
  char* buf = nullptr;
  const int n = mpfr_asprintf(&buf, "%.*RNf", decimals, x.get());
  if (n < 0) throw ResourceError("formatting failed");
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

const Newform& form_named(const std::string& name) {
  if (name == "f") return newform_f();
  if (name == "h") return newform_h();
  throw InvalidArgument("unknown newform '" + name + "' (expected f or h)");
}

void need(const std::vector<std::string>& a, std::size_t n, const std::string& usage) {
  if (a.size() != n) throw InvalidArgument("usage: compute " + usage);
}

std::string join_from(const std::vector<std::string>& a, std::size_t first) {
  std::string s;
  for (std::size_t i = first; i < a.size(); ++i) s += (s.empty() ? "" : " ") + a[i];
  return s;
}

Computed compute(const std::vector<std::string>& a, const RunConfig& c, int digits) {
  const Precision p = c.precision;
  const std::string& q = a.front();
  const std::string ulp = ldexp(Real(1L, p), 16 - static_cast<long>(p.bits)).to_string(2);
  if (q == "zeta") {
    need(a, 2, "zeta <s>");
    const long s = parse_int(a[1], "argument");
    return {fixed(zeta_int(s, p), digits), "Euler-Maclaurin", ulp};
  }
  if (q == "catalan") {
    need(a, 1, "catalan");
    return {fixed(catalan(p), digits), "accelerated alternating sum", ulp};
  }
  if (q == "L") {
    need(a, 3, "L <f|h> <s>");
    return {fixed(l_value(form_named(a[1]), Real::parse(a[2], p), p), digits), "Mellin split of the completed L-function",
            ulp};
  }
  if (q == "Lprime") {
    need(a, 2, "Lprime <f|h>");
    return {fixed(l_prime_at_0(form_named(a[1]), p), digits), "functional equation at s = weight", ulp};
  }
  if (q == "K") {
    need(a, 2, "K <k>");
    return {fixed(ell_k(Real::parse(a[1], p)), digits), "AGM", ulp};
  }
  if (q == "mRk") {
    need(a, 2, "mRk <k>");
    const Real k = Real::parse(a[1], p);
    return {fixed(m_rk_hypergeometric(k, ldexp(Real(1L, p), 8 - static_cast<long>(p.bits)), p), digits),
            "log k - (8/k^2) 6F5(256/k^2)", ulp};
  }
  if (q == "R") {
    need(a, 2, "R <alpha>");
    return {fixed(r_alpha(Real::parse(a[1], p), RAlphaRoute::polylog, p).value, digits), "(4/pi^2) chi_3(alpha)", ulp};
  }
  if (q == "ap") {
    need(a, 2, "ap <n>");
    const long n = parse_int(a[1], "index");
    if (n < 1) throw InvalidArgument("index must be positive");
    return {newform_f().coefficient(n).get_str(), "eta-product q-expansion", "exact"};
  }
  if (q == "points") {
    need(a, 3, "points <p> <t>");
    const PointCount pc = count_points(parse_int(a[1], "prime"), static_cast<long>(parse_u64(a[2], "parameter")));
    return {std::to_string(pc.count), "discriminant count over F_p", "exact"};
  }
  if (q == "mahler") {
    if (a.size() < 2) throw InvalidArgument("usage: compute mahler <descriptor | file>");
    std::string text = join_from(a, 1);
    if (a.size() == 2 && std::filesystem::is_regular_file(a[1])) {
      std::ifstream in(a[1]);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const QuadratureResult r = mahler_numeric(LaurentDescriptor::parse(text), c.samples, c.shifts, c.seed);
    std::ostringstream route;
    route << "rank-1 lattice, " << c.samples << " points x " << c.shifts << " shifts, seed " << c.seed;
    return {fixed(r.value, std::min(digits, 16)), route.str(), r.error_estimate.to_string(2)};
  }
  throw NotFound("unknown quantity '" + q + "'", {"zeta", "catalan", "L", "Lprime", "K", "mRk", "R", "ap", "points", "mahler"});
}

int cmd_compute(RunConfig c, bool precision_given, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  if (args.empty()) {
    err << "compute: missing quantity\n";
    return kUsageError;
  }
  if (c.digits && !precision_given) {
    c.precision = std::max(Precision(64), Precision::from_digits(*c.digits));
  }
  const int digits = c.digits.value_or(report_digits(c.precision));
  Computed v;
  try {
    load_caches(c);
    v = compute(args, c, digits);
    save_caches(c);
  } catch (const NotFound& e) {
    err << "compute: " << e.what() << "; known quantities:";
    for (const auto& s : e.suggestions()) err << ' ' << s;
    err << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "compute: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "compute: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "compute: " << e.what() << '\n';
    return kSomeFailed;
  }
  if (c.format == ReportFormat::json) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["quantity"] = join_from(args, 0);
    j["value"] = v.value;
    j["route"] = v.route;
    j["error_estimate"] = v.error;
    j["precision"] = c.precision.bits;
    out << j.dump(2) << '\n';
  } else {
    out << v.value << '\n' << "route: " << v.route << '\n' << "error estimate: " << v.error << '\n';
  }
  return kAllPassed;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (kConfigKeys.count(key) == 0) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision checks of Mahler measure and L-value identities", "mahlerlab"};
  app.require_subcommand(1);
  app.fallthrough();

  RawOptions raw;
  app.add_option("--precision", raw.precision, "Working precision in bits, 32..4096 (default 128)");
  app.add_option("--seed", raw.seed, "QMC seed, decimal or 0x hex (default 0x5EED)");
  app.add_option("--samples", raw.samples, "QMC lattice points per shift, a power of two (default 2^20)");
  app.add_option("--shifts", raw.shifts, "QMC random shifts (default 16)");
  app.add_option("--threads", raw.threads, "Worker threads for verify --all (default 1)");
  app.add_option("--filter", raw.filter, "Comma-separated tags or ids");
  app.add_option("--format", raw.format, "text, json or csv");
  app.add_option("--cache", raw.cache, "Directory for newform coefficient caches");
  app.add_option("--digits", raw.digits, "Decimal places printed by compute");
  app.add_option("--config", raw.config, "key=value file; command-line flags take precedence");
  app.add_flag("--timing", raw.timing, "Include wall-clock times in reports");

  auto* verify = app.add_subcommand("verify", "Run identity checks");
  std::vector<std::string> ids;
  bool all = false;
  verify->add_option("ids", ids, "Check ids");
  verify->add_flag("--all", all, "Run every check matching --filter");

  auto* compute_cmd = app.add_subcommand("compute", "Evaluate one quantity");
  std::vector<std::string> quantity;
  compute_cmd->add_option("quantity", quantity, "zeta <s> | catalan | L <f|h> <s> | Lprime <f|h> | K <k> | mRk <k> | "
                                                "R <a> | ap <n> | points <p> <t> | mahler <descriptor>");

  app.add_subcommand("list", "List registered checks");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAllPassed;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAllPassed;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return kUsageError;
  }

  Resolved resolved;
  try {
    resolved = resolve(raw, app);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (verify->parsed()) return cmd_verify(resolved.config, ids, all, out, err);
    if (compute_cmd->parsed()) return cmd_compute(resolved.config, resolved.precision_given, quantity, out, err);
    return cmd_list(resolved.config, out);
  } catch (const InvalidArgument& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSomeFailed;
  }
}

}  // namespace mahlerlab::cli
