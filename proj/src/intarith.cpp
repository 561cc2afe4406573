#include "pellforms/intarith.hpp"

#include <cctype>

#include "pellforms/error.hpp"

namespace pellforms {

Gcd2 ext_gcd2(const Int& x, const Int& y) {
  Gcd2 r;
  if (x == 0 && y == 0) {
    r.g = 0;
    r.s = 0;
    r.t = 0;
    return r;
  }
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

Gcd3 ext_gcd3(const Int& x, const Int& y, const Int& z) {
  const Gcd2 xy = ext_gcd2(x, y);
  const Gcd2 all = ext_gcd2(xy.g, z);
  Gcd3 r;
  r.g = all.g;
  r.j = all.s * xy.s;
  r.k = all.s * xy.t;
  r.l = all.t;
  return r;
}

Int gcd(const Int& x, const Int& y) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

Int gcd(const Int& x, const Int& y, const Int& z) { return gcd(gcd(x, y), z); }

Int mod_floor(const Int& x, const Int& n) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  if (sgn(r) < 0) r += abs(n);
  return r;
}

Int mod_inverse(const Int& x, const Int& n) {
  if (n < 1) throw Error(ErrorKind::NotInvertible, "modulus must be positive");
  if (gcd(x, n) != 1) {
    throw Error(ErrorKind::NotInvertible, x.get_str() + " mod " + n.get_str());
  }
  if (n == 1) return 1;
  Int r;
  mpz_invert(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return mod_floor(r, n);
}

Int div_exact(const Int& x, const Int& d) {
  Int q;
  mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return q;
}

bool is_squarefree(const Int& n) {
  Int v = abs(n);
  if (v == 0) return false;
  for (Int p = 2; p * p <= v; ++p) {
    if (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
      v /= p;
      if (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) return false;
    }
  }
  return true;
}

bool is_fundamental_discriminant(const Int& d) {
  if (d == 0 || d == 1) return false;
  const Int r = mod_floor(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  const Int q = d / 4;
  const Int qr = mod_floor(q, 4);
  return (qr == 2 || qr == 3) && is_squarefree(q);
}

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Discriminant Discriminant::fundamental(const Int& delta) {
  if (!is_fundamental_discriminant(delta)) {
    throw Error(ErrorKind::NotFundamental, delta.get_str());
  }
  Discriminant d;
  d.delta = delta;
  d.sigma = mod_floor(delta, 4);
  d.m = (delta - d.sigma) / 4;
  return d;
}

Int Discriminant::q0(const Int& beta) const { return beta * beta + sigma * beta - m; }

Int parse_int(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) throw Error(ErrorKind::ParseError, "expected integer: '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw Error(ErrorKind::ParseError, "expected integer: '" + std::string(text) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Int(digits, 10);
}

}  // namespace pellforms
