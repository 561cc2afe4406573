#pragma once

#include <string>

#include "pellforms/quadfield.hpp"

namespace pellforms {

/// Column vector (first, second) over a quadratic field.
struct Vec2 {
  QElem first, second;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// 2x2 matrix [[a, b], [c, d]] with exact entries.
struct Mat2 {
  QElem a, b, c, d;

  static Mat2 identity() { return {1, 0, 0, 1}; }

  QElem det() const { return a * d - b * c; }
  Mat2 inverse() const;  // throws DivisionByZero when singular
  Vec2 operator*(const Vec2& v) const { return {a * v.first + b * v.second, c * v.first + d * v.second}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  std::string str() const;

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Integer 2x2 matrix; used for SL2(Z) reduction certificates.
struct IntMat2 {
  Int a = 1, b = 0, c = 0, d = 1;

  Int det() const { return a * d - b * c; }
  IntMat2 operator*(const IntMat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 to_mat2() const { return {a, b, c, d}; }
  std::string str() const;

  friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

}  // namespace pellforms
