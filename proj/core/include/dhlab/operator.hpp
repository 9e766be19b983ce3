#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "dhlab/analytic.hpp"
#include "dhlab/hankel.hpp"
#include "dhlab/measure.hpp"

namespace dhlab {

struct IntegralValue {
  cdouble value{};
  bool diverged = false;
};

/// int f(t) / (1 - tz)^alpha dmu(t), alpha in {1, 2}, |z| < 1.
IntegralValue apply_integral(const RadialMeasure& m, const PowerSeries& f, cdouble z, int alpha);

/// 16 angles on each of the radii 0.3, 0.6, 0.9, plus the origin.
std::vector<cdouble> disk_grid();

/// max over z_grid of |sum_{n<N} (n+1) (sum_{k<N} mu_{n+k} a_k) z^n - apply_integral(m, f, z, 2)|.
double representation_gap(const RadialMeasure& m, const PowerSeries& f,
                          std::span<const cdouble> z_grid, int n);

struct SpectralNorm {
  double value = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Power iteration on A^* A from the all-ones vector. `value` is ||A v|| for the
/// last unit iterate, so it never exceeds the true norm.
SpectralNorm spectral_norm(const WeightedHankelMatrix& a, double tol = 1e-8,
                           int max_iterations = 10000);

enum class GrowthVerdict { plateau, growing, inconclusive };
const char* to_string(GrowthVerdict v);

struct NormProfile {
  std::vector<int> orders;
  std::vector<double> norms;
  std::vector<double> ratios;
  std::vector<int> iterations;
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
};

inline constexpr double kPlateauRatio = 1.02;
inline constexpr double kGrowthRatio = 1.05;

/// plateau: last ratio < 1.02. growing: each of the last three ratios > 1.05.
GrowthVerdict classify_growth(std::span<const double> ratios);

/// Orders must be increasing; moments are computed once for the largest order.
NormProfile norm_profile(const RadialMeasure& m, WeightScheme scheme, std::span<const int> orders);

/// {64, 128, ..., 4096}.
std::vector<int> default_orders();

struct TailBlock {
  double r = 0.0;
  double norm = 0.0;
};

std::vector<TailBlock> tail_block_norm(const RadialMeasure& m, WeightScheme scheme, int n,
                                       std::span<const double> r_list);

enum class CompactnessSignature { decaying, persistent, neither };
const char* to_string(CompactnessSignature s);

/// decaying: strictly decreasing with final < 0.2 * initial (an all-zero
/// sequence also counts). persistent: every value >= 0.5 * initial.
CompactnessSignature classify_tail_blocks(std::span<const TailBlock> blocks);

}  // namespace dhlab
