#include "dhlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhlab/analytic.hpp"
#include "dhlab/hankel.hpp"
#include "dhlab/measure_io.hpp"
#include "dhlab/operator.hpp"
#include "dhlab/scenarios.hpp"
#include "dhlab/version.hpp"

namespace dhlab::cli {
namespace {

using json = nlohmann::ordered_json;

const std::map<Command, std::set<std::string>>& allowed_params() {
  static const std::map<Command, std::set<std::string>> keys = {
      {Command::moments, {"count", "method"}},
      {Command::carleson, {"s", "alpha", "grid-j"}},
      {Command::apply, {"N", "scheme", "series", "a", "k", "p", "q", "kind"}},
      {Command::norm_profile, {"N", "scheme"}},
      {Command::tail_blocks, {"N", "scheme", "grid-j"}},
      {Command::scenario, {"N", "scheme", "p", "q", "alpha", "grid-j", "trials", "seed"}},
      {Command::report_all, {"seed"}},
  };
  return keys;
}

bool needs_measure(Command c) {
  return c != Command::scenario && c != Command::report_all;
}

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_g(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  std::optional<std::string> text(const std::string& key) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::int64_t> integer(const std::string& key, std::int64_t lo,
                                      std::int64_t hi) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    std::int64_t x = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc{} || ptr != v->data() + v->size()) {
      throw InputError("--" + key + ": expected an integer, got '" + *v + "'");
    }
    if (x < lo || x > hi) {
      throw InputError("--" + key + ": " + *v + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
    }
    return x;
  }

  int integer_or(const std::string& key, std::int64_t lo, std::int64_t hi, int fallback) const {
    return static_cast<int>(integer(key, lo, hi).value_or(fallback));
  }

  /// `ok` is the precondition, `what` its description for the error message.
  template <class Pred>
  std::optional<double> real(const std::string& key, Pred ok, const char* what) const {
    auto v = text(key);
    if (!v) return std::nullopt;
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc{} || ptr != v->data() + v->size() || !std::isfinite(x)) {
      throw InputError("--" + key + ": expected a real number, got '" + *v + "'");
    }
    if (!ok(x)) throw InputError("--" + key + ": " + *v + " violates " + what);
    return x;
  }

  WeightScheme scheme() const {
    auto v = text("scheme");
    if (!v) return WeightScheme::derivative;
    try {
      return parse_scheme(*v);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--scheme: ") + e.what());
    }
  }

 private:
  const std::map<std::string, std::string>& raw_;
};

const RadialMeasure& require_measure(const RunConfig& c) {
  if (!c.measure) throw InputError(std::string(to_string(c.command)) + " requires --measure");
  return *c.measure;
}

Report moments_report(const RunConfig& c, const Params& p) {
  const auto& m = require_measure(c);
  const int count = p.integer_or("count", 1, 100000, 16);
  const auto method_name = p.text("method").value_or("automatic");
  MomentMethod method = MomentMethod::automatic;
  if (method_name == "quadrature") {
    method = MomentMethod::quadrature;
  } else if (method_name != "automatic") {
    throw InputError("--method: expected automatic|quadrature, got '" + method_name + "'");
  }
  const auto mu = moments(m, count, method);
  Report r;
  r.summary = {{"measure", m.describe()}, {"method", method_name}, {"source", mu.source}};
  r.columns = {"n", "moment"};
  for (int n = 0; n < count; ++n) r.rows.push_back({std::int64_t{n}, mu[static_cast<std::size_t>(n)]});
  return r;
}

Report carleson_report(const RunConfig& c, const Params& p) {
  const auto& m = require_measure(c);
  const double s = p.real("s", [](double x) { return x > 0.0; }, "s > 0").value_or(2.0);
  const double alpha =
      p.real("alpha", [](double x) { return x >= 0.0; }, "alpha >= 0").value_or(0.0);
  const int count = p.integer_or("grid-j", 1, 52, 20);
  const auto grid = dyadic_grid(count);
  const auto rep = alpha > 0.0 ? log_carleson_constant(m, s, alpha, grid)
                               : carleson_constant(m, s, grid);
  std::string cls = short_g(s) + "-Carleson";
  if (alpha > 0.0) cls = short_g(alpha) + "-logarithmic " + cls;
  Report r;
  r.summary = {{"measure", m.describe()},
               {"s", s},
               {"log_alpha", alpha},
               {"constant", rep.constant},
               {"exponent_estimate", rep.exponent_estimate},
               {"vanishing", to_string(rep.vanishing)},
               {"verdict", rep.is_carleson() ? cls : "not " + cls}};
  r.columns = {"j", "t", "tail", "ratio"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.rows.push_back({static_cast<std::int64_t>(i + 1), rep.grid[i], rep.tails[i], rep.ratios[i]});
  }
  return r;
}

Report apply_report(const RunConfig& c, const Params& p) {
  const auto& m = require_measure(c);
  const int n = p.integer_or("N", 1, 16384, 16);
  const auto scheme = p.scheme();
  const auto series = p.text("series").value_or("monomial");
  auto param_a = [&] {
    return p.real("a", [](double v) { return v >= 0.0 && v < 1.0; }, "0 <= a < 1").value_or(0.5);
  };
  PowerSeries f;
  if (series == "monomial") {
    f = PowerSeries::monomial(p.integer_or("k", 0, n - 1, 0));
  } else if (series == "geometric") {
    f = PowerSeries::geometric(param_a(), n - 1);
  } else if (series == "kernel-f") {
    const double pp = p.real("p", [](double v) { return v > 0.0; }, "p > 0").value_or(2.0);
    f = test_function_f(pp, param_a(), n - 1);
  } else if (series == "kernel-g") {
    const auto kind = p.text("kind").value_or("log");
    KernelKind k = KernelKind::log;
    if (kind == "cauchy") {
      k = KernelKind::cauchy;
    } else if (kind == "power") {
      k = KernelKind::power;
    } else if (kind != "log") {
      throw InputError("--kind: expected log|cauchy|power, got '" + kind + "'");
    }
    const double qc = p.real("q", [](double v) { return v > 0.0; }, "q' > 0").value_or(2.0);
    f = test_function_g(k, param_a(), qc, n - 1);
  } else {
    throw InputError("--series: expected monomial|geometric|kernel-f|kernel-g, got '" + series +
                     "'");
  }
  std::vector<cdouble> a(static_cast<std::size_t>(n));
  std::copy(f.coeffs().begin(), f.coeffs().end(), a.begin());
  const auto h = WeightedHankelMatrix::build(moments(m, 2 * n - 1), n, scheme);
  const auto fast = h.apply(a);
  const auto naive = h.apply_naive(a);
  double scale = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < fast.size(); ++i) {
    scale = std::max(scale, std::abs(naive[i]));
    diff = std::max(diff, std::abs(fast[i] - naive[i]));
  }
  Report r;
  r.summary = {{"measure", m.describe()},
               {"scheme", to_string(scheme)},
               {"series", series},
               {"max_rel_diff", scale > 0.0 ? diff / scale : diff}};
  r.columns = {"n", "fast_re", "fast_im", "naive_re", "naive_im"};
  for (std::size_t i = 0; i < fast.size(); ++i) {
    r.rows.push_back({static_cast<std::int64_t>(i), fast[i].real(), fast[i].imag(),
                      naive[i].real(), naive[i].imag()});
  }
  return r;
}

Report norm_profile_report(const RunConfig& c, const Params& p) {
  const auto& m = require_measure(c);
  const int max_order = p.integer_or("N", 64, 1 << 16, 4096);
  const auto scheme = p.scheme();
  std::vector<int> orders;
  for (int n = 64; n <= max_order; n *= 2) orders.push_back(n);
  const auto prof = norm_profile(m, scheme, orders);
  Report r;
  r.summary = {{"measure", m.describe()},
               {"scheme", to_string(scheme)},
               {"verdict", to_string(prof.verdict)}};
  r.columns = {"N", "norm", "ratio", "iterations"};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    Cell ratio = i == 0 ? Cell{std::string{}} : Cell{prof.ratios[i - 1]};
    r.rows.push_back({std::int64_t{orders[i]}, prof.norms[i], ratio,
                      std::int64_t{prof.iterations[i]}});
  }
  return r;
}

Report tail_blocks_report(const RunConfig& c, const Params& p) {
  const auto& m = require_measure(c);
  const int n = p.integer_or("N", 1, 1 << 16, 1024);
  const int count = p.integer_or("grid-j", 1, 52, 8);
  const auto scheme = p.scheme();
  const auto rs = dyadic_grid(count);
  const auto blocks = tail_block_norm(m, scheme, n, rs);
  Report r;
  r.summary = {{"measure", m.describe()},
               {"scheme", to_string(scheme)},
               {"signature", to_string(classify_tail_blocks(blocks))}};
  r.columns = {"j", "r", "norm"};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    r.rows.push_back({static_cast<std::int64_t>(i + 1), blocks[i].r, blocks[i].norm});
  }
  return r;
}

ScenarioConfig scenario_config(const Params& p) {
  ScenarioConfig cfg;
  if (auto v = p.integer("N", 1, 1 << 16)) cfg.n = static_cast<int>(*v);
  if (p.text("scheme")) cfg.scheme = p.scheme();
  cfg.p = p.real("p", [](double x) { return x > 0.0; }, "p > 0");
  cfg.q = p.real("q", [](double x) { return x > 0.0; }, "q > 0");
  cfg.alpha = p.real("alpha", [](double x) { return x > 0.0; }, "alpha > 0");
  if (auto v = p.integer("grid-j", 1, 52)) cfg.grid_j = static_cast<int>(*v);
  if (auto v = p.integer("trials", 0, 10'000'000)) cfg.trials = static_cast<int>(*v);
  if (auto v = p.integer("seed", 0, std::numeric_limits<std::int64_t>::max())) {
    cfg.seed = static_cast<std::uint64_t>(*v);
  }
  return cfg;
}

Outcome scenario_report(const RunConfig& c, const Params& p) {
  if (c.target.empty()) throw InputError("scenario requires a scenario id");
  auto cfg = scenario_config(p);
  cfg.measure = c.measure;
  VerificationOutcome o;
  try {
    o = run_scenario(c.target, cfg);
  } catch (const UnknownScenario& e) {
    throw InputError(e.what());
  }
  Outcome out;
  out.status = o.passed() ? 0 : 1;
  auto& r = out.report;
  r.summary = {{"scenario", o.scenario_id},
               {"verdict", to_string(o.verdict)},
               {"tolerance", o.tolerance},
               {"scenario_inputs", o.inputs_digest}};
  r.columns = {"kind", "name", "value"};
  for (const auto& m : o.metrics) r.rows.push_back({std::string("metric"), m.name, m.value});
  for (const auto& l : o.labels) r.rows.push_back({std::string("label"), l.name, l.value});
  return out;
}

Outcome report_all(const RunConfig& c, const Params& p) {
  namespace fs = std::filesystem;
  if (c.target.empty()) throw InputError("report-all requires a corpus directory");
  const fs::path dir(c.target);
  if (!fs::is_directory(dir)) throw InputError("report-all: not a directory: " + c.target);
  ScenarioConfig base = scenario_config(p);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  Outcome out;
  auto& r = out.report;
  r.columns = {"measure", "scenario", "verdict", "metric", "value", "message"};
  bool input_error = false;
  bool failed = false;
  int passed = 0;
  for (const auto& file : files) {
    const std::string name = file.stem().string();
    RadialMeasure m;
    try {
      m = load_measure(file);
    } catch (const std::exception& e) {
      input_error = true;
      r.rows.push_back({name, std::string("*"), std::string("input-error"), std::string{},
                        std::string{}, std::string(e.what())});
      continue;
    }
    for (const auto& id : scenario_catalog()) {
      ScenarioConfig cfg = base;
      cfg.measure = m;
      try {
        const auto o = run_scenario(id, cfg);
        if (o.passed()) {
          ++passed;
        } else {
          failed = true;
        }
        const Metric head = o.metrics.empty() ? Metric{} : o.metrics.front();
        r.rows.push_back({name, id, std::string(to_string(o.verdict)), head.name, head.value,
                          std::string{}});
      } catch (const std::exception& e) {
        failed = true;
        r.rows.push_back({name, id, std::string("error"), std::string{}, std::string{},
                          std::string(e.what())});
      }
    }
  }
  r.summary = {{"corpus", c.target},
               {"measures", static_cast<std::int64_t>(files.size())},
               {"cells", static_cast<std::int64_t>(r.rows.size())},
               {"passed", std::int64_t{passed}}};
  out.status = input_error ? 2 : failed ? 1 : 0;
  return out;
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string cell_csv(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return fmt_g(*d);
  return csv_field(std::get<std::string>(c));
}

std::string param_text(const std::string& key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return v.dump();
  throw InputError("params." + key + ": expected a number or string");
}

RunConfig config_from_object(const json& j, bool from_report) {
  if (!j.is_object()) throw InputError("config must be a json object");
  static const std::set<std::string> keys = {"command", "target", "measure",
                                             "params",  "format", "out"};
  RunConfig c;
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw InputError("config: unknown key '" + k + "'");
  }
  if (!j.contains("command") || !j["command"].is_string()) {
    throw InputError("config: 'command' must be a string");
  }
  c.command = parse_command(j["command"].get<std::string>());
  if (j.contains("target")) {
    if (!j["target"].is_string()) throw InputError("config: 'target' must be a string");
    c.target = j["target"].get<std::string>();
  }
  if (j.contains("measure") && !j["measure"].is_null()) {
    const auto& m = j["measure"];
    if (m.is_string()) {
      c.measure = load_measure(m.get<std::string>());
    } else {
      c.measure = parse_measure(m.dump());
    }
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw InputError("config: 'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) c.params[k] = param_text(k, v);
  }
  if (!from_report && j.contains("format")) {
    const auto f = j["format"].get<std::string>();
    if (f == "csv") {
      c.format = Format::csv;
    } else if (f != "json") {
      throw InputError("config: format must be json|csv");
    }
  }
  if (!from_report && j.contains("out")) c.out = j["out"].get<std::string>();
  return c;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::moments: return "moments";
    case Command::carleson: return "carleson";
    case Command::apply: return "apply";
    case Command::norm_profile: return "norm-profile";
    case Command::tail_blocks: return "tail-blocks";
    case Command::scenario: return "scenario";
    case Command::report_all: return "report-all";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::moments, Command::carleson, Command::apply, Command::norm_profile,
                 Command::tail_blocks, Command::scenario, Command::report_all}) {
    if (name == to_string(c)) return c;
  }
  throw InputError("unknown command '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid json: ") + e.what());
  }
  try {
    if (j.is_object() && j.contains("inputs") && j.contains("tool")) {
      return config_from_object(j["inputs"], true);
    }
    return config_from_object(j, false);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

std::string inputs_digest(const RunConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  j["target"] = c.target;
  j["measure"] = c.measure ? json::parse(dhlab::to_json(*c.measure)) : json(nullptr);
  j["params"] = json::object();
  for (const auto& [k, v] : c.params) j["params"][k] = v;
  return j.dump();
}

std::string to_json(const Report& r) {
  json j;
  j["tool"] = "dhlab";
  j["version"] = kVersion;
  j["command"] = r.command;
  j["status"] = r.status;
  j["inputs"] = json::parse(r.inputs);
  j["summary"] = json::object();
  for (const auto& [k, v] : r.summary) j["summary"][k] = cell_json(v);
  j["columns"] = r.columns;
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    json jr = json::array();
    for (const auto& c : row) jr.push_back(cell_json(c));
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "# tool,dhlab\n";
  os << "# version," << kVersion << "\n";
  os << "# command," << r.command << "\n";
  os << "# status," << r.status << "\n";
  os << "# inputs," << csv_field(r.inputs) << "\n";
  for (const auto& [k, v] : r.summary) os << "# summary." << k << "," << cell_csv(v) << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(r.columns[i]);
  }
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_csv(row[i]);
    os << "\n";
  }
  return os.str();
}

Outcome execute(const RunConfig& config) {
  const auto& allowed = allowed_params().at(config.command);
  for (const auto& [k, v] : config.params) {
    if (!allowed.count(k)) {
      throw InputError("--" + k + " is not accepted by " + std::string(to_string(config.command)));
    }
  }
  if (needs_measure(config.command) && !config.measure) {
    throw InputError(std::string(to_string(config.command)) + " requires --measure");
  }
  const Params p(config.params);
  Outcome out;
  switch (config.command) {
    case Command::moments: out.report = moments_report(config, p); break;
    case Command::carleson: out.report = carleson_report(config, p); break;
    case Command::apply: out.report = apply_report(config, p); break;
    case Command::norm_profile: out.report = norm_profile_report(config, p); break;
    case Command::tail_blocks: out.report = tail_blocks_report(config, p); break;
    case Command::scenario: out = scenario_report(config, p); break;
    case Command::report_all: out = report_all(config, p); break;
  }
  out.report.command = to_string(config.command);
  out.report.inputs = inputs_digest(config);
  out.report.status = out.status == 0 ? "ok" : out.status == 1 ? "fail" : "input-error";
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for the derivative-Hilbert operator DH_mu", "dhlab"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string command;
  std::string target;
  std::string measure_path;
  std::string config_path;
  std::string format = "json";
  std::string out_path;
  app.add_option("command", command,
                 "moments | carleson | apply | norm-profile | tail-blocks | scenario | report-all");
  app.add_option("target", target, "scenario id (scenario) or corpus directory (report-all)");
  app.add_option("--measure", measure_path, "measure spec file (json)");
  app.add_option("--config", config_path, "run config or an earlier json report to re-run");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");

  const std::vector<std::pair<std::string, std::string>> flags = {
      {"N", "truncation order / largest order"},
      {"count", "number of moments"},
      {"method", "automatic | quadrature"},
      {"scheme", "unit | derivative"},
      {"p", "Hardy exponent p"},
      {"q", "target exponent q"},
      {"s", "Carleson exponent s"},
      {"alpha", "logarithmic order / singular exponent"},
      {"grid-j", "number of dyadic grid points 1 - 2^-j"},
      {"trials", "random trials"},
      {"seed", "random seed"},
      {"series", "monomial | geometric | kernel-f | kernel-g (apply)"},
      {"a", "series parameter a (apply)"},
      {"k", "monomial degree (apply)"},
      {"kind", "log | cauchy | power, kernel-g family (apply; power takes q' via --q)"},
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [name, help] : flags) {
    options[name] = app.add_option("--" + name, values[name], help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InputError("cannot open config file " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      config = parse_config(ss.str());
      if (!command.empty()) config.command = parse_command(command);
      if (!target.empty()) config.target = target;
    } else {
      if (command.empty()) throw InputError("missing command (see --help)");
      config.command = parse_command(command);
      config.target = target;
    }
    if (!measure_path.empty()) config.measure = load_measure(measure_path);
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0) config.params[name] = values[name];
    }
    if (app.count("--format")) config.format = format == "csv" ? Format::csv : Format::json;
    if (!out_path.empty()) config.out = out_path;

    const auto result = execute(config);
    const std::string text =
        config.format == Format::csv ? to_csv(result.report) : to_json(result.report);
    if (config.out) {
      std::ofstream f(*config.out);
      if (!f) throw InputError("cannot write " + config.out->string());
      f << text;
    } else {
      out << text;
    }
    if (result.status == 1) err << "dhlab: one or more checks failed\n";
    if (result.status == 2) err << "dhlab: one or more inputs could not be read\n";
    return result.status;
  } catch (const std::invalid_argument& e) {
    err << "dhlab: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "dhlab: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dhlab::cli
