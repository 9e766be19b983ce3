#pragma once

#include <cstdint>
#include <span>

#include "dhlab/analytic.hpp"
#include "dhlab/hankel.hpp"
#include "dhlab/measure.hpp"

namespace dhlab {

inline constexpr int kPairingTerms = 512;

/// Smallest power of two that resolves conj(DH f)(r e^{it}) g(e^{it}) without aliasing.
int pairing_samples(const PowerSeries& g, int terms = kPairingTerms);

/// (1/2pi) int conj(DH_mu f(r e^{it})) g(e^{it}) dt with DH_mu f truncated to
/// `terms` coefficients and the circle sampled at K points (K = 0 picks
/// pairing_samples). `mu` must hold at least 2 * terms - 1 moments.
cdouble duality_pairing_lhs(const MomentSequence& mu, const PowerSeries& f, const PowerSeries& g,
                            double r, int samples = 0, int terms = kPairingTerms);
cdouble duality_pairing_lhs(const RadialMeasure& m, const PowerSeries& f, const PowerSeries& g,
                            double r, int samples = 0, int terms = kPairingTerms);

/// int conj(f(t)) (g(rt) + rt g'(rt)) dmu(t).
cdouble duality_pairing_rhs(const RadialMeasure& m, const PowerSeries& f, const PowerSeries& g,
                            double r);

struct HilbertCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = true;
};

/// Moments 1/(n+1), unit weights: the N x N Hilbert matrix.
WeightedHankelMatrix hilbert_matrix(int n);

/// lhs = sum_n |sum_k a_k/(n+k+1)|^2, rhs = sum |a_k|^2; passes iff lhs <= pi^2 rhs (1 + 1e-12).
HilbertCheck hilbert_inequality_check(std::span<const cdouble> a);
HilbertCheck hilbert_inequality_check(const WeightedHankelMatrix& hilbert,
                                      std::span<const cdouble> a);

struct HilbertSweep {
  int trials = 0;
  int violations = 0;
  /// max lhs / (pi^2 rhs)
  double max_ratio = 0.0;
};

/// Random complex unit vectors of length N drawn from std::mt19937_64(seed).
HilbertSweep hilbert_sweep(int trials, int n, std::uint64_t seed);

enum class NecessityTarget {
  hardy_q,    ///< H^q with q > 1, power kernel of order q'
  hardy_one,  ///< H^1, log kernel
  bq,         ///< B_q with 0 < q < 1, cauchy kernel
};

const char* to_string(NecessityTarget t);

struct NecessityValue {
  double lhs = 0.0;
  double rhs = 0.0;
  double exponent = 0.0;
};

/// lhs = int_[a,1) f_a(t) (g_a(x) + x g_a'(x)) dmu(t), with x = t for hardy_q
/// and x = r t otherwise (r < 0 means r = a). rhs = mu([a,1)) / (1-a^2)^E with
/// E = 1/p + 1/q' + 1 for hardy_q and 1/p + 1 otherwise.
NecessityValue necessity_functional(const RadialMeasure& m, double p, NecessityTarget target,
                                    double a, double q_conj = 2.0, double r = -1.0);

struct CoefficientDecay {
  double max_scaled_coeff = 0.0;
  double lemma32_sum = 0.0;
};

/// max |a_n| / (n+1)^(1/p-1) and sum (n+1)^(p-2) |a_n|^p.
CoefficientDecay coefficient_decay_check(const PowerSeries& f, double p);

}  // namespace dhlab
