#pragma once

#include <string>
#include <string_view>

#include "pellforms/intarith.hpp"
#include "pellforms/matrix.hpp"
#include "pellforms/quadfield.hpp"

namespace pellforms {

/// The Pell conic x^2 + sigma*x*y - m*y^2 = 1 is determined by its
/// fundamental discriminant delta = sigma + 4m.
using PellConic = Discriminant;

/// A point of a Pell conic. The conic is passed explicitly to every
/// operation rather than stored in the point.
struct ConicPoint {
  QElem x = 1;
  QElem y = 0;

  static ConicPoint identity() { return {1, 0}; }
  std::string str() const;  // "(x ; y)"

  friend bool operator==(const ConicPoint&, const ConicPoint&) = default;
};

/// x^2 + sigma*x*y - m*y^2.
QElem conic_value(const PellConic& c, const QElem& x, const QElem& y);

bool conic_contains(const PellConic& c, const ConicPoint& p);

/// [[x, m y], [y, x + sigma y]]; its determinant is the conic equation.
Mat2 conic_matrix(const PellConic& c, const ConicPoint& p);

ConicPoint conic_add(const PellConic& c, const ConicPoint& p1, const ConicPoint& p2);
ConicPoint conic_neg(const PellConic& c, const ConicPoint& p);
ConicPoint conic_sub(const PellConic& c, const ConicPoint& p1, const ConicPoint& p2);
ConicPoint conic_mul(const PellConic& c, const ConicPoint& p, const Int& n);

/// Coordinate-wise field conjugation.
ConicPoint conic_conj(const ConicPoint& p);

bool is_integral_point(const ConicPoint& p);
bool is_rational_point(const ConicPoint& p);

/// Parses "(x ; y)" with QElem components.
ConicPoint parse_point(std::string_view text);

/// Splits "(first ; second)" into its two component strings.
std::pair<std::string, std::string> split_pair(std::string_view text);

}  // namespace pellforms
