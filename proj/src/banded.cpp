#include "gfmg/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gfmg {

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), data_(static_cast<std::size_t>(n) * (kl + ku + 1), 0.0) {}

double BandMatrix::operator()(int i, int j) const {
  if (!in_band(i, j)) return 0.0;
  return data_[static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_)];
}

double& BandMatrix::at(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || !in_band(i, j)) {
    throw std::out_of_range("band entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside storage");
  }
  return data_[static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_)];
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    const int lo = std::max(0, i - kl_);
    const int hi = std::min(n_ - 1, i + ku_);
    double s = 0.0;
    for (int j = lo; j <= hi; ++j) s += (*this)(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

std::vector<double> BandMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) {
      d[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
    }
  }
  return d;
}

BandLU::BandLU(const BandMatrix& a)
    : n_(a.size()),
      kl_(a.lower()),
      ku_(a.upper() + a.lower()),
      width_(static_cast<std::size_t>(2 * a.lower() + a.upper() + 1)),
      data_(static_cast<std::size_t>(a.size()) * width_, 0.0),
      row_scale_(static_cast<std::size_t>(a.size()), 1.0),
      pivot_(static_cast<std::size_t>(a.size()), 0) {
  for (int i = 0; i < n_; ++i) {
    double m = 0.0;
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + a.upper()); ++j) {
      m = std::max(m, std::abs(a(i, j)));
    }
    if (m == 0.0) throw SingularMatrixError("row " + std::to_string(i) + " is identically zero");
    row_scale_[static_cast<std::size_t>(i)] = 1.0 / m;
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + a.upper()); ++j) {
      lu(i, j) = a(i, j) / m;
    }
  }

  for (int k = 0; k < n_; ++k) {
    const int last_row = std::min(n_ - 1, k + kl_);
    const int last_col = std::min(n_ - 1, k + ku_);
    int p = k;
    for (int i = k + 1; i <= last_row; ++i) {
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    }
    if (lu(p, k) == 0.0) {
      throw SingularMatrixError("zero pivot in column " + std::to_string(k));
    }
    pivot_[static_cast<std::size_t>(k)] = p;
    if (p != k) {
      for (int j = k; j <= last_col; ++j) std::swap(lu(k, j), lu(p, j));
    }
    const double pivot = lu(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double l = lu(i, k) / pivot;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (int j = k + 1; j <= last_col; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
}

std::vector<double> BandLU::solve(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] *= row_scale_[static_cast<std::size_t>(i)];
  // LINPACK-style: interchanges interleaved with the unit-lower eliminations.
  for (int k = 0; k < n_; ++k) {
    const int p = pivot_[static_cast<std::size_t>(k)];
    if (p != k) std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(p)]);
    const double xk = x[static_cast<std::size_t>(k)];
    for (int i = k + 1; i <= std::min(n_ - 1, k + kl_); ++i) {
      x[static_cast<std::size_t>(i)] -= lu(i, k) * xk;
    }
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= std::min(n_ - 1, i + ku_); ++j) s -= lu(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / lu(i, i);
  }
  return x;
}

}  // namespace gfmg
