#pragma once

// Dense matrices over arbitrary-precision integers.  Sizes here are desk
// scale (hundreds of rows at most); clarity over blocking tricks.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "plusctl/errors.hpp"

namespace plusctl {

using Int = boost::multiprecision::cpp_int;

struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> data;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  bool is_zero() const {
    for (const Int& x : data)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw ValidationError("matrix product dimension mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        const Int& bkj = b.at(k, j);
        if (bkj != 0) c.at(i, j) += aik * bkj;
      }
    }
  return c;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw ValidationError("matrix difference dimension mismatch");
  IntMatrix c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
  return c;
}

inline std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& x) {
  if (a.cols != x.size()) throw ValidationError("matrix-vector dimension mismatch");
  std::vector<Int> y(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < a.cols; ++j)
      if (a.at(i, j) != 0) acc += a.at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

/// Horizontal concatenation [a | b].
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows != b.rows) throw ValidationError("hconcat row mismatch");
  IntMatrix c(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) c.at(i, a.cols + j) = b.at(i, j);
  }
  return c;
}

}  // namespace plusctl
