#include "dhlab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dhlab {
namespace {

using Vector = WeightedHankelMatrix::Vector;

double norm2(const Vector& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

void scale(Vector& v, double s) {
  for (auto& x : v) x *= s;
}

}  // namespace

IntegralValue apply_integral(const RadialMeasure& m, const PowerSeries& f, cdouble z, int alpha) {
  if (alpha != 1 && alpha != 2) throw std::invalid_argument("apply_integral: alpha must be 1 or 2");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("apply_integral: requires |z| < 1");
  auto integrand = [&](double t) {
    const cdouble d = 1.0 - t * z;
    return f(t) / (alpha == 1 ? d : d * d);
  };
  const auto r = integrate_complex(m, integrand);
  return {r.value, !r.ok()};
}

std::vector<cdouble> disk_grid() {
  std::vector<cdouble> grid{cdouble{}};
  for (double r : {0.3, 0.6, 0.9}) {
    for (int j = 0; j < 16; ++j) grid.push_back(std::polar(r, 2.0 * std::numbers::pi * j / 16.0));
  }
  return grid;
}

double representation_gap(const RadialMeasure& m, const PowerSeries& f,
                          std::span<const cdouble> z_grid, int n) {
  const auto mu = moments(m, 2 * n - 1);
  const auto h = WeightedHankelMatrix::build(mu, n, WeightScheme::derivative);
  Vector a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)];
  const PowerSeries series(h.apply(a));
  double gap = 0.0;
  for (const auto& z : z_grid) {
    const auto integral = apply_integral(m, f, z, 2);
    if (integral.diverged) throw DivergenceError("representation_gap: integral form diverged");
    gap = std::max(gap, std::abs(series(z) - integral.value));
  }
  return gap;
}

SpectralNorm spectral_norm(const WeightedHankelMatrix& a, double tol, int max_iterations) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm requires tol > 0");
  const auto n = static_cast<std::size_t>(a.size());
  Vector v(n, cdouble{1.0 / std::sqrt(static_cast<double>(n))});
  std::mt19937_64 rng(0x5eed);
  bool restarted = false;

  SpectralNorm out;
  double prev = -1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const Vector w = a.apply(v);
    const double lambda = std::pow(norm2(w), 2);
    Vector y = a.apply_adjoint(w);
    const double ny = norm2(y);
    out.value = std::sqrt(lambda);
    out.iterations = it;
    if (ny == 0.0) {
      if (restarted) return out;
      // The all-ones start can be orthogonal to the row space.
      std::normal_distribution<double> gauss;
      for (auto& x : v) x = {gauss(rng), gauss(rng)};
      scale(v, 1.0 / norm2(v));
      restarted = true;
      prev = -1.0;
      continue;
    }
    if (prev >= 0.0 && std::abs(lambda - prev) < tol * lambda) return out;
    prev = lambda;
    scale(y, 1.0 / ny);
    v = std::move(y);
  }
  out.converged = false;
  return out;
}

const char* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::plateau: return "plateau";
    case GrowthVerdict::growing: return "growing";
    case GrowthVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

GrowthVerdict classify_growth(std::span<const double> ratios) {
  if (ratios.empty()) return GrowthVerdict::inconclusive;
  if (ratios.back() < kPlateauRatio) return GrowthVerdict::plateau;
  const std::size_t window = std::min<std::size_t>(3, ratios.size());
  const bool grows = std::all_of(ratios.end() - static_cast<std::ptrdiff_t>(window), ratios.end(),
                                 [](double r) { return r > kGrowthRatio; });
  return grows ? GrowthVerdict::growing : GrowthVerdict::inconclusive;
}

NormProfile norm_profile(const RadialMeasure& m, WeightScheme scheme, std::span<const int> orders) {
  if (orders.empty()) throw std::invalid_argument("norm_profile needs at least one order");
  if (!std::is_sorted(orders.begin(), orders.end()) || orders.front() < 1) {
    throw std::invalid_argument("norm_profile orders must be positive and increasing");
  }
  const auto mu = moments(m, 2 * orders.back() - 1);
  NormProfile profile;
  profile.orders.assign(orders.begin(), orders.end());
  for (int n : orders) {
    const auto sn = spectral_norm(WeightedHankelMatrix::build(mu, n, scheme));
    profile.norms.push_back(sn.value);
    profile.iterations.push_back(sn.iterations);
  }
  for (std::size_t i = 1; i < profile.norms.size(); ++i) {
    const double prev = profile.norms[i - 1];
    profile.ratios.push_back(prev > 0.0 ? profile.norms[i] / prev : 1.0);
  }
  profile.verdict = classify_growth(profile.ratios);
  return profile;
}

std::vector<int> default_orders() {
  std::vector<int> orders;
  for (int n = 64; n <= 4096; n *= 2) orders.push_back(n);
  return orders;
}

std::vector<TailBlock> tail_block_norm(const RadialMeasure& m, WeightScheme scheme, int n,
                                       std::span<const double> r_list) {
  std::vector<TailBlock> out;
  for (double r : r_list) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("tail_block_norm: r must lie in (0,1)");
    const auto tail = restrict_tail(m, r);
    const auto mu = moments(tail, 2 * n - 1);
    out.push_back({r, spectral_norm(WeightedHankelMatrix::build(mu, n, scheme)).value});
  }
  return out;
}

const char* to_string(CompactnessSignature s) {
  switch (s) {
    case CompactnessSignature::decaying: return "decaying";
    case CompactnessSignature::persistent: return "persistent";
    case CompactnessSignature::neither: return "neither";
  }
  return "?";
}

CompactnessSignature classify_tail_blocks(std::span<const TailBlock> blocks) {
  if (blocks.empty()) return CompactnessSignature::neither;
  const double first = blocks.front().norm;
  if (first == 0.0) {
    const bool all_zero =
        std::all_of(blocks.begin(), blocks.end(), [](const TailBlock& b) { return b.norm == 0.0; });
    return all_zero ? CompactnessSignature::decaying : CompactnessSignature::neither;
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (!(blocks[i].norm < blocks[i - 1].norm)) decreasing = false;
  }
  if (decreasing && blocks.back().norm < 0.2 * first) return CompactnessSignature::decaying;
  const bool persistent = std::all_of(blocks.begin(), blocks.end(),
                                      [&](const TailBlock& b) { return b.norm >= 0.5 * first; });
  return persistent ? CompactnessSignature::persistent : CompactnessSignature::neither;
}

}  // namespace dhlab
