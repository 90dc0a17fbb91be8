#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace gfmg {

/// Square matrix with kl sub- and ku super-diagonals.
class BandMatrix {
 public:
  BandMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower() const { return kl_; }
  int upper() const { return ku_; }

  bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }
  /// Entry (i,j); zero outside the band.
  double operator()(int i, int j) const;
  /// Writable entry; throws std::out_of_range outside the band.
  double& at(int i, int j);

  std::vector<double> multiply(std::span<const double> x) const;
  /// Row-major dense copy, for small diagnostics and oracles.
  std::vector<double> to_dense() const;

 private:
  int n_, kl_, ku_;
  std::vector<double> data_;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LU factorisation with row equilibration and partial pivoting, kept in band
/// storage with kl extra super-diagonals for fill-in. Factor once, solve many.
class BandLU {
 public:
  explicit BandLU(const BandMatrix& a);

  std::vector<double> solve(std::span<const double> b) const;
  int size() const { return n_; }

 private:
  double& lu(int i, int j) { return data_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)]; }
  double lu(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)];
  }

  int n_, kl_, ku_;  // ku_ here includes the fill-in diagonals
  std::size_t width_;
  std::vector<double> data_;
  std::vector<double> row_scale_;
  std::vector<int> pivot_;
};

}  // namespace gfmg
