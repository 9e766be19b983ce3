#include "dhlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <json.hpp>

#include "dhlab/analytic.hpp"
#include "dhlab/corpus.hpp"
#include "dhlab/measure_io.hpp"
#include "dhlab/operator.hpp"
#include "dhlab/verify.hpp"

namespace dhlab {
namespace {

using json = nlohmann::ordered_json;

constexpr int kCarlesonGrid = 20;

struct Context {
  std::string id;
  const ScenarioConfig& cfg;
  VerificationOutcome out;
  json params = json::object();

  Context(std::string_view scenario, const ScenarioConfig& c) : id(scenario), cfg(c) {
    out.scenario_id = id;
  }

  template <class T>
  T param(const char* name, const std::optional<T>& value, T fallback) {
    const T v = value.value_or(fallback);
    params[name] = v;
    return v;
  }

  void metric(std::string name, double value) { out.metrics.push_back({std::move(name), value}); }
  void label(std::string name, std::string value) {
    out.labels.push_back({std::move(name), std::move(value)});
  }

  VerificationOutcome finish(Verdict v, double tolerance) {
    out.verdict = v;
    out.tolerance = tolerance;
    json digest;
    digest["scenario"] = id;
    digest["measure"] = cfg.measure ? json::parse(to_json(*cfg.measure)) : json(nullptr);
    digest["seed"] = cfg.seed;
    digest["params"] = params;
    out.inputs_digest = digest.dump();
    return std::move(out);
  }
};

std::vector<NamedMeasure> measures_or(const ScenarioConfig& cfg, std::vector<NamedMeasure> dflt) {
  if (cfg.measure) return {{"input", *cfg.measure}};
  return dflt;
}

std::vector<double> tail_grid(int count) { return dyadic_grid(count); }

cdouble random_coeff(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

PowerSeries random_polynomial(std::mt19937_64& rng, int degree) {
  std::vector<cdouble> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = random_coeff(rng);
  return PowerSeries(std::move(c));
}

CarlesonReport carleson2(const RadialMeasure& m) {
  const auto grid = dyadic_grid(kCarlesonGrid);
  return carleson_constant(m, 2.0, grid);
}

VerificationOutcome repr_identity(Context& ctx) {
  const int n = ctx.param("N", ctx.cfg.n, 400);
  const int max_degree = 8;
  ctx.params["max_degree"] = max_degree;
  if (n < max_degree + 1) throw std::invalid_argument("repr-identity requires N > 8");
  constexpr double tol = 1e-6;
  const auto grid = disk_grid();
  const auto ms = measures_or(ctx.cfg, {{"delta-0.5", RadialMeasure::point_mass(0.5)},
                                        {"beta-2", RadialMeasure::beta_density(2.0)}});
  std::mt19937_64 rng(ctx.cfg.seed);
  std::vector<PowerSeries> polys;
  for (int d = 0; d <= max_degree; ++d) polys.push_back(random_polynomial(rng, d));

  double worst = 0.0;
  for (const auto& nm : ms) {
    double gap = 0.0;
    for (const auto& f : polys) gap = std::max(gap, representation_gap(nm.measure, f, grid, n));
    ctx.metric("gap." + nm.name, gap);
    worst = std::max(worst, gap);
  }
  ctx.metric("max_gap", worst);
  return ctx.finish(worst <= tol ? Verdict::pass : Verdict::fail, tol);
}

VerificationOutcome pairing_identity(Context& ctx) {
  const int pairs = ctx.param("trials", ctx.cfg.trials, 50);
  const int max_degree = 32;
  ctx.params["max_degree"] = max_degree;
  ctx.params["terms"] = kPairingTerms;
  if (pairs < 1) throw std::invalid_argument("pairing-identity requires trials >= 1");
  constexpr double tol = 1e-8;
  const double radii[] = {0.3, 0.6, 0.9};
  const auto ms = measures_or(ctx.cfg, standard_corpus());

  std::mt19937_64 rng(ctx.cfg.seed);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::vector<std::pair<PowerSeries, PowerSeries>> fg;
  for (int i = 0; i < pairs; ++i) {
    auto f = random_polynomial(rng, degree(rng));
    auto g = random_polynomial(rng, degree(rng));
    fg.emplace_back(std::move(f), std::move(g));
  }

  double worst = 0.0;
  for (const auto& nm : ms) {
    const auto mu = moments(nm.measure, 2 * kPairingTerms - 1);
    double local = 0.0;
    for (const auto& [f, g] : fg) {
      for (double r : radii) {
        const cdouble lhs = duality_pairing_lhs(mu, f, g, r);
        const cdouble rhs = duality_pairing_rhs(nm.measure, f, g, r);
        local = std::max(local, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
      }
    }
    ctx.metric("rel_diff." + nm.name, local);
    worst = std::max(worst, local);
  }
  ctx.metric("max_rel_diff", worst);
  return ctx.finish(worst <= tol ? Verdict::pass : Verdict::fail, tol);
}

VerificationOutcome hilbert_ineq(Context& ctx) {
  const int trials = ctx.param("trials", ctx.cfg.trials, 1000);
  const int n = ctx.param("N", ctx.cfg.n, 512);
  const auto sweep = hilbert_sweep(trials, n, ctx.cfg.seed);
  ctx.metric("violations", sweep.violations);
  ctx.metric("trials", sweep.trials);
  ctx.metric("max_ratio", sweep.max_ratio);
  return ctx.finish(sweep.violations == 0 ? Verdict::pass : Verdict::fail, 1e-12);
}

std::vector<int> doubling_orders(int max_order) {
  if (max_order < 64) throw std::invalid_argument("norm profiles need N >= 64");
  std::vector<int> orders;
  for (int n = 64; n <= max_order; n *= 2) orders.push_back(n);
  return orders;
}

VerificationOutcome h2_bounded(Context& ctx) {
  const int max_order = ctx.param("N", ctx.cfg.n, 4096);
  const auto scheme = ctx.cfg.scheme.value_or(WeightScheme::derivative);
  ctx.params["scheme"] = to_string(scheme);
  const auto orders = doubling_orders(max_order);

  auto profile = [&](const std::string& name, const RadialMeasure& m) {
    const auto p = norm_profile(m, scheme, orders);
    ctx.metric("final_norm." + name, p.norms.back());
    ctx.metric("last_ratio." + name, p.ratios.empty() ? 1.0 : p.ratios.back());
    ctx.label("growth." + name, to_string(p.verdict));
    return p.verdict;
  };

  bool ok = false;
  if (ctx.cfg.measure) {
    const auto verdict = profile("input", *ctx.cfg.measure);
    const auto car = carleson2(*ctx.cfg.measure);
    ctx.label("carleson2.input", to_string(car.vanishing));
    ok = (verdict == GrowthVerdict::plateau && car.is_carleson()) ||
         (verdict == GrowthVerdict::growing && !car.is_carleson());
  } else {
    const auto v1 = profile("beta-1", RadialMeasure::lebesgue());
    const auto v2 = profile("beta-2", RadialMeasure::beta_density(2.0));
    ok = v1 == GrowthVerdict::growing && v2 == GrowthVerdict::plateau;
  }
  return ctx.finish(ok ? Verdict::pass : Verdict::fail, kPlateauRatio);
}

VerificationOutcome h2_compact(Context& ctx) {
  const int n = ctx.param("N", ctx.cfg.n, 2048);
  const int count = ctx.param("grid_j", ctx.cfg.grid_j, 8);
  const auto scheme = ctx.cfg.scheme.value_or(WeightScheme::derivative);
  ctx.params["scheme"] = to_string(scheme);
  const auto rs = tail_grid(count);

  auto signature = [&](const std::string& name, const RadialMeasure& m) {
    const auto blocks = tail_block_norm(m, scheme, n, rs);
    const double first = blocks.front().norm;
    ctx.metric("initial." + name, first);
    ctx.metric("final." + name, blocks.back().norm);
    double lowest = first;
    for (const auto& b : blocks) lowest = std::min(lowest, b.norm);
    ctx.metric("min_over_initial." + name, first > 0.0 ? lowest / first : 0.0);
    const auto sig = classify_tail_blocks(blocks);
    ctx.label("signature." + name, to_string(sig));
    return sig;
  };

  bool ok = false;
  if (ctx.cfg.measure) {
    const auto sig = signature("input", *ctx.cfg.measure);
    const auto car = carleson2(*ctx.cfg.measure);
    ctx.label("carleson2.input", to_string(car.vanishing));
    const bool vanishing = car.vanishing == Trend::decaying;
    ok = sig != CompactnessSignature::neither &&
         (sig == CompactnessSignature::decaying) == vanishing;
  } else {
    const auto s3 = signature("beta-3", RadialMeasure::beta_density(3.0));
    const auto s2 = signature("beta-2", RadialMeasure::beta_density(2.0));
    ok = s3 == CompactnessSignature::decaying && s2 == CompactnessSignature::persistent;
  }
  return ctx.finish(ok ? Verdict::pass : Verdict::fail, 0.2);
}

VerificationOutcome necessity(Context& ctx, NecessityTarget target) {
  const double p_default = target == NecessityTarget::bq ? 0.5 : 1.0;
  const double p = ctx.param("p", ctx.cfg.p, p_default);
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("necessity scenarios require 0 < p <= 1");
  double q_conj = 2.0;
  if (target == NecessityTarget::hardy_q) {
    const double q = ctx.param("q", ctx.cfg.q, 2.0);
    if (!(q > 1.0)) throw std::invalid_argument("necessity-4.1-i requires q > 1");
    q_conj = q / (q - 1.0);
  } else if (target == NecessityTarget::bq) {
    const double q = ctx.param("q", ctx.cfg.q, 0.5);
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("necessity-4.1-iii requires 0 < q < 1");
  }
  const int count = ctx.param("grid_j", ctx.cfg.grid_j, 10);
  if (count < 1) throw std::invalid_argument("grid_j must be >= 1");
  const double exponent = target == NecessityTarget::hardy_q ? 1.0 / p + 1.0 / q_conj + 1.0
                                                             : 1.0 / p + 1.0;
  const RadialMeasure m = ctx.cfg.measure.value_or(RadialMeasure::beta_density(exponent));
  ctx.params["target"] = to_string(target);

  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  bool nonneg = true;
  for (double a : dyadic_grid(count)) {
    const auto v = necessity_functional(m, p, target, a, q_conj);
    if (v.lhs < 0.0) nonneg = false;
    if (v.rhs > 0.0) {
      const double ratio = v.lhs / v.rhs;
      lo = any ? std::min(lo, ratio) : ratio;
      hi = any ? std::max(hi, ratio) : ratio;
      any = true;
    }
  }
  constexpr double spread_tol = 10.0;
  ctx.metric("spread", any && lo > 0.0 ? hi / lo : 0.0);
  ctx.metric("c_fit", lo);
  ctx.metric("max_ratio", hi);
  ctx.metric("exponent", exponent);
  const auto car = carleson_constant(m, exponent, dyadic_grid(kCarlesonGrid));
  ctx.label("carleson_at_exponent", to_string(car.vanishing));
  const bool ok = nonneg && (!any || (lo > 0.0 && hi / lo <= spread_tol));
  return ctx.finish(ok ? Verdict::pass : Verdict::fail, spread_tol);
}

VerificationOutcome embedding_hastings(Context& ctx) {
  const double p = ctx.param("p", ctx.cfg.p, 1.0);
  const double q = ctx.param("q", ctx.cfg.q, 2.0);
  if (!(p > 0.0 && q >= p)) throw std::invalid_argument("embedding-hastings requires 0 < p <= q");
  const int count = ctx.param("grid_j", ctx.cfg.grid_j, 12);
  if (count < 5) throw std::invalid_argument("embedding-hastings requires grid_j >= 5");
  const RadialMeasure m = ctx.cfg.measure.value_or(RadialMeasure::beta_density(2.0));
  const double s = q / p;
  const auto grid = dyadic_grid(count);
  const auto profile = embedding_profile(m, p, q, grid);
  const auto trend = classify_embedding(profile);
  const auto car = carleson_constant(m, s, dyadic_grid(kCarlesonGrid));
  ctx.metric("embedding_constant", *std::max_element(profile.begin(), profile.end()));
  ctx.metric("s", s);
  ctx.metric("carleson_constant", car.constant);
  ctx.label("embedding_trend", to_string(trend));
  ctx.label("carleson", to_string(car.vanishing));
  const bool ok = (trend == Trend::growing) == !car.is_carleson();
  return ctx.finish(ok ? Verdict::pass : Verdict::fail, 1.1);
}

VerificationOutcome lemma41(Context& ctx) {
  const double alpha = ctx.param("alpha", ctx.cfg.alpha, 1.0);
  if (!(alpha > 0.0)) throw std::invalid_argument("lemma-4.1-integrability requires alpha > 0");
  const RadialMeasure m = ctx.cfg.measure.value_or(RadialMeasure::beta_density(2.0));
  constexpr double margin = 0.05;
  const auto car = carleson_constant(m, alpha + margin, dyadic_grid(kCarlesonGrid));
  const auto integral = singular_integral(m, alpha);
  ctx.metric("integral", integral.value);
  ctx.metric("exponent_estimate", car.exponent_estimate);
  ctx.metric("diverged", integral.diverged ? 1.0 : 0.0);
  const bool hypothesis = car.exponent_estimate > alpha + margin;
  ctx.label("hypothesis", hypothesis ? "holds" : "not met");
  if (!hypothesis) return ctx.finish(Verdict::informational, margin);
  return ctx.finish(integral.diverged ? Verdict::fail : Verdict::pass, margin);
}

VerificationOutcome conjecture41(Context& ctx) {
  const double p = ctx.param("p", ctx.cfg.p, 4.0);
  if (!(p > 2.0)) throw std::invalid_argument("conjecture-4.1-probe requires p > 2");
  const int n = ctx.param("N", ctx.cfg.n, 4096);
  const int count = ctx.param("grid_j", ctx.cfg.grid_j, 6);
  if (count < 1) throw std::invalid_argument("grid_j must be >= 1");
  const RadialMeasure m = ctx.cfg.measure.value_or(RadialMeasure::beta_density(2.0));
  const auto h = WeightedHankelMatrix::build(moments(m, 2 * n - 1), n, WeightScheme::derivative);

  std::vector<double> ratios;
  for (double a : dyadic_grid(count)) {
    const int order = std::min(n - 1, kernel_order(2.0 / p, a));
    const auto f = test_function_f(p, a, order);
    std::vector<cdouble> coeffs(static_cast<std::size_t>(n));
    std::copy(f.coeffs().begin(), f.coeffs().end(), coeffs.begin());
    const PowerSeries image(h.apply(coeffs));
    ratios.push_back(hardy_norm(image, p).value / hardy_norm(f, p).value);
  }
  const auto c2 = carleson2(m);
  ctx.metric("max_ratio", *std::max_element(ratios.begin(), ratios.end()));
  ctx.metric("final_ratio", ratios.back());
  ctx.label("ratio_trend", to_string(classify_embedding(ratios)));
  ctx.label("carleson2", to_string(c2.vanishing));
  return ctx.finish(Verdict::informational, 0.0);
}

using Runner = std::function<VerificationOutcome(Context&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"repr-identity", repr_identity},
      {"pairing-identity", pairing_identity},
      {"hilbert-ineq", hilbert_ineq},
      {"h2-bounded-dichotomy", h2_bounded},
      {"h2-compact-dichotomy", h2_compact},
      {"necessity-4.1-i", [](Context& c) { return necessity(c, NecessityTarget::hardy_q); }},
      {"necessity-4.1-ii", [](Context& c) { return necessity(c, NecessityTarget::hardy_one); }},
      {"necessity-4.1-iii", [](Context& c) { return necessity(c, NecessityTarget::bq); }},
      {"embedding-hastings", embedding_hastings},
      {"lemma-4.1-integrability", lemma41},
      {"conjecture-4.1-probe", conjecture41},
  };
  return r;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::informational: return "informational";
  }
  return "?";
}

double VerificationOutcome::metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m.value;
  }
  throw std::out_of_range("no metric named " + std::string(name));
}

std::string VerificationOutcome::label(std::string_view name) const {
  for (const auto& l : labels) {
    if (l.name == name) return l.value;
  }
  throw std::out_of_range("no label named " + std::string(name));
}

const std::vector<std::string>& scenario_catalog() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

VerificationOutcome run_scenario(std::string_view id, const ScenarioConfig& config) {
  for (const auto& [name, fn] : registry()) {
    if (name == id) {
      Context ctx(id, config);
      return fn(ctx);
    }
  }
  throw UnknownScenario("unknown scenario '" + std::string(id) + "'");
}

Trend classify_embedding(std::span<const double> values) {
  if (values.size() < 2) return Trend::bounded;
  const std::size_t window = std::min<std::size_t>(5, values.size());
  const auto tail = values.last(window);
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (!(tail[i] > tail[i - 1])) return Trend::bounded;
  }
  return tail.back() >= 1.1 * tail.front() ? Trend::growing : Trend::bounded;
}

}  // namespace dhlab
