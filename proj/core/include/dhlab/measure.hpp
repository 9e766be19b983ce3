#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dhlab/quadrature.hpp"

namespace dhlab {

/// Point mass w at position t in [0, 1).
struct Atom {
  double t = 0.0;
  double w = 0.0;
};

/// Density c (1-t)^(beta-1) (log(e/(1-t)))^lam dt, supported on (cutoff, 1).
/// A nonzero cutoff only arises from restrict_tail.
struct Density {
  double c = 1.0;
  double beta = 1.0;
  int lam = 0;
  double cutoff = 0.0;
};

class InvalidMeasure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature failed to reach the requested accuracy; the density is ill-posed
/// for the requested integral.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positive Borel measure on [0, 1): finitely many atoms plus Beta/log-type
/// densities. Immutable once built.
class RadialMeasure {
 public:
  RadialMeasure() = default;
  RadialMeasure(std::vector<Atom> atoms, std::vector<Density> densities);

  static RadialMeasure lebesgue();
  static RadialMeasure point_mass(double t, double w = 1.0);
  static RadialMeasure beta_density(double beta, double c = 1.0, int lam = 0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Density>& densities() const { return densities_; }
  bool empty() const { return atoms_.empty() && densities_.empty(); }

  /// Short human-readable label, e.g. "atom(0.5,1) + beta(2,c=1,lam=0)".
  std::string describe() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Density> densities_;
};

struct MomentSequence {
  std::vector<double> values;
  std::string source;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t n) const { return values[n]; }
};

enum class MomentMethod {
  automatic,   ///< closed form for lam = 0, quadrature otherwise
  quadrature,  ///< always integrate numerically
};

double moment(const RadialMeasure& m, int n, MomentMethod method = MomentMethod::automatic);
MomentSequence moments(const RadialMeasure& m, int count,
                       MomentMethod method = MomentMethod::automatic);

/// mu([t, 1)).
double tail_mass(const RadialMeasure& m, double t);
double total_mass(const RadialMeasure& m);

/// Drops atoms with t <= r and raises every density cutoff to r.
RadialMeasure restrict_tail(const RadialMeasure& m, double r);

/// Grid t_j = 1 - 2^-j, j = 1..count.
std::vector<double> dyadic_grid(int count);

enum class Trend { decaying, bounded, growing };
const char* to_string(Trend t);

/// Verdict on the last five entries of a ratio sequence.
/// decaying: strictly decreasing with final/initial < 0.5, or final ratio 0.
/// growing: every step increases by more than 1e-9 relative.
Trend classify_trend(std::span<const double> ratios);

struct CarlesonReport {
  double s = 0.0;
  double log_alpha = 0.0;
  double constant = 0.0;
  double exponent_estimate = 0.0;
  Trend vanishing = Trend::bounded;
  std::vector<double> grid;
  std::vector<double> ratios;
  std::vector<double> tails;

  /// True unless the ratio sequence grows.
  bool is_carleson() const { return vanishing != Trend::growing; }
};

CarlesonReport carleson_constant(const RadialMeasure& m, double s, std::span<const double> grid);
CarlesonReport log_carleson_constant(const RadialMeasure& m, double s, double alpha,
                                     std::span<const double> grid);

struct SingularIntegral {
  double value = 0.0;
  bool diverged = false;
};

/// Integral of (1-t)^-alpha against m.
SingularIntegral singular_integral(const RadialMeasure& m, double alpha);

/// Integral of g over [from, 1) (closed at `from` for atoms) against m.
quad::Result<double> integrate_real(const RadialMeasure& m, const std::function<double(double)>& g,
                                    double from = 0.0, const quad::Options& opts = {});
quad::Result<std::complex<double>> integrate_complex(
    const RadialMeasure& m, const std::function<std::complex<double>(double)>& g,
    double from = 0.0, const quad::Options& opts = {});

/// Lower bound on the best constant in (int |f|^q dmu)^(1/q) <= C ||f||_{H^p},
/// probed by the unit-norm kernels f_a(t) = ((1-a^2)/(1-at)^2)^(1/p).
double embedding_constant(const RadialMeasure& m, double p, double q,
                          std::span<const double> a_grid);
std::vector<double> embedding_profile(const RadialMeasure& m, double p, double q,
                                      std::span<const double> a_grid);

/// Smallest eigenvalue of the Hankel block (mu_{n+k})_{n,k<size}.
double hankel_min_eigenvalue(const MomentSequence& mu, int size);

}  // namespace dhlab
