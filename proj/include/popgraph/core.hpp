// Copyright 2026 The popgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POPGRAPH_CORE_HPP_
#define POPGRAPH_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace popgraph {

// Error hierarchy. Everything thrown by the library derives from Error so the
// CLI can map any failure to a nonzero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain inputs (non-finite params, ragged matrices...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values (non-positive temperatures, bad sizes...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for this game or graph kind.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

using Vector = std::vector<double>;

inline bool AllFinite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

inline double Distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Dense row-major real matrix. Small (populations are tens of agents), so a
// flat std::vector is all we need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw InputError("Matrix: negative dimension");
  }
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != cols_) {
        throw InputError("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix FromRows(const std::vector<Vector>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) {
        throw InputError("Matrix: ragged rows");
      }
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static Matrix Identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::span<double> row(int i) {
    return {data_.data() + static_cast<std::size_t>(i) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * cols_,
            static_cast<std::size_t>(cols_)};
  }

  std::span<const double> data() const { return data_; }

  std::vector<Vector> ToRows() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (int i = 0; i < rows_; ++i) out.emplace_back(row(i).begin(), row(i).end());
    return out;
  }

  Matrix Transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool AllFinite() const { return popgraph::AllFinite(data_); }

  // A x
  Vector Apply(std::span<const double> x) const {
    Vector out(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) out[i] = Dot(row(i), x);
    return out;
  }

  // x^T A
  Vector ApplyLeft(std::span<const double> x) const {
    Vector out(cols_, 0.0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[j] += x[i] * (*this)(i, j);
    return out;
  }

  // x^T A y
  double Bilinear(std::span<const double> x, std::span<const double> y) const {
    return Dot(x, Apply(y));
  }

  double MaxAbs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Largest |A + A^T| entry; zero exactly when A is antisymmetric.
inline double AntisymmetryDefect(const Matrix& a) {
  if (!a.square()) return INFINITY;
  double defect = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      defect = std::max(defect, std::abs(a(i, j) + a(j, i)));
  return defect;
}

inline std::string ToString(std::span<const double> v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Random streams.
//
// Every consumer of randomness gets its own engine whose seed is a hash of
// (run seed, purpose, indices). Streams never depend on execution order, so
// serial and parallel schedules produce identical numbers.

using RngStream = std::mt19937_64;

namespace internal {
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace internal

// Purpose tags for named sub-streams of a seed.
enum class StreamPurpose : std::uint64_t {
  kInit = 1,
  kPairSampling = 2,
  kLearnerUpdate = 3,
  kGraphEvaluation = 4,
  kMetricsEvaluation = 5,
  kUser = 99,
};

inline RngStream MakeStream(std::uint64_t seed, StreamPurpose purpose,
                            std::uint64_t a = 0, std::uint64_t b = 0,
                            std::uint64_t c = 0) {
  std::uint64_t h = internal::Mix64(seed);
  h = internal::Mix64(h ^ static_cast<std::uint64_t>(purpose));
  h = internal::Mix64(h ^ a);
  h = internal::Mix64(h ^ (b * 0x2545f4914f6cdd1dULL));
  h = internal::Mix64(h ^ (c * 0x9e3779b97f4a7c15ULL));
  return RngStream(h);
}

}  // namespace popgraph

#endif  // POPGRAPH_CORE_HPP_
