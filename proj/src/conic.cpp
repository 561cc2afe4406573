#include "pellforms/conic.hpp"

#include "pellforms/error.hpp"

namespace pellforms {

std::string ConicPoint::str() const { return "(" + x.str() + " ; " + y.str() + ")"; }

QElem conic_value(const PellConic& c, const QElem& x, const QElem& y) {
  return x * x + QElem(c.sigma) * x * y - QElem(c.m) * y * y;
}

bool conic_contains(const PellConic& c, const ConicPoint& p) { return conic_value(c, p.x, p.y) == QElem(1); }

Mat2 conic_matrix(const PellConic& c, const ConicPoint& p) {
  return {p.x, QElem(c.m) * p.y, p.y, p.x + QElem(c.sigma) * p.y};
}

ConicPoint conic_add(const PellConic& c, const ConicPoint& p1, const ConicPoint& p2) {
  const QElem y1y2 = p1.y * p2.y;
  return {p1.x * p2.x + QElem(c.m) * y1y2, p1.x * p2.y + p2.x * p1.y + QElem(c.sigma) * y1y2};
}

ConicPoint conic_neg(const PellConic& c, const ConicPoint& p) { return {p.x + QElem(c.sigma) * p.y, -p.y}; }

ConicPoint conic_sub(const PellConic& c, const ConicPoint& p1, const ConicPoint& p2) {
  return {p1.x * p2.x + QElem(c.sigma) * p1.x * p2.y - QElem(c.m) * p1.y * p2.y, p2.x * p1.y - p1.x * p2.y};
}

ConicPoint conic_mul(const PellConic& c, const ConicPoint& p, const Int& n) {
  ConicPoint base = sgn(n) < 0 ? conic_neg(c, p) : p;
  Int k = abs(n);
  ConicPoint acc = ConicPoint::identity();
  while (k != 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = conic_add(c, acc, base);
    k >>= 1;
    if (k != 0) base = conic_add(c, base, base);
  }
  return acc;
}

ConicPoint conic_conj(const ConicPoint& p) { return {qf_conj(p.x), qf_conj(p.y)}; }

bool is_integral_point(const ConicPoint& p) { return qf_is_integral(p.x) && qf_is_integral(p.y); }

bool is_rational_point(const ConicPoint& p) { return p.x.is_rational() && p.y.is_rational(); }

std::pair<std::string, std::string> split_pair(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t");
  std::size_t e = text.find_last_not_of(" \t");
  if (b == std::string_view::npos || text[b] != '(' || text[e] != ')') {
    throw Error(ErrorKind::ParseError, "expected '(first ; second)': '" + std::string(text) + "'");
  }
  const std::string_view inner = text.substr(b + 1, e - b - 1);
  const std::size_t semi = inner.find(';');
  if (semi == std::string_view::npos || inner.find(';', semi + 1) != std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "expected exactly one ';' in '" + std::string(text) + "'");
  }
  return {std::string(inner.substr(0, semi)), std::string(inner.substr(semi + 1))};
}

ConicPoint parse_point(std::string_view text) {
  auto [xs, ys] = split_pair(text);
  ConicPoint p{parse_qelem(xs), parse_qelem(ys)};
  common_field(p.x, p.y);
  return p;
}

}  // namespace pellforms
