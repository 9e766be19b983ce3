#pragma once

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "dhlab/measure.hpp"

namespace dhlab {

/// w_n = 1 gives the generalized Hilbert operator H_mu; w_n = n + 1 gives the
/// derivative-Hilbert operator DH_mu.
enum class WeightScheme { unit, derivative };

const char* to_string(WeightScheme s);
WeightScheme parse_scheme(std::string_view name);

class InsufficientMoments : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// N x N truncation of (w_n mu_{n+k}). Immutable and cheap to copy; the
/// spectrum of the circular embedding is computed once at construction.
class WeightedHankelMatrix {
 public:
  using Vector = std::vector<std::complex<double>>;

  /// Requires at least 2N - 1 moments.
  static WeightedHankelMatrix build(const MomentSequence& mu, int n, WeightScheme scheme);
  static WeightedHankelMatrix build(std::span<const double> mu, int n, WeightScheme scheme);

  int size() const { return n_; }
  WeightScheme scheme() const { return scheme_; }
  double weight(int row) const { return scheme_ == WeightScheme::unit ? 1.0 : row + 1.0; }
  double moment(int index) const { return (*moments_)[static_cast<std::size_t>(index)]; }
  double entry(int row, int col) const { return weight(row) * moment(row + col); }

  /// b_n = w_n sum_k mu_{n+k} a_k through a circular convolution of length
  /// 2^ceil(log2(3N)).
  Vector apply(std::span<const std::complex<double>> a) const;
  /// Same product by direct O(N^2) summation.
  Vector apply_naive(std::span<const std::complex<double>> a) const;
  /// Conjugate transpose: (A^* x)_k = sum_n mu_{n+k} w_n x_n.
  Vector apply_adjoint(std::span<const std::complex<double>> x) const;

  Eigen::MatrixXd dense() const;

 private:
  Vector correlate(std::span<const std::complex<double>> a) const;

  int n_ = 0;
  WeightScheme scheme_ = WeightScheme::unit;
  std::shared_ptr<const std::vector<double>> moments_;
  std::shared_ptr<const Vector> spectrum_;
};

}  // namespace dhlab
