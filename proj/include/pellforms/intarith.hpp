#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pellforms {

using Int = mpz_class;
using Rational = mpq_class;

struct Gcd2 {
  Int g, s, t;  // s*x + t*y = g
};

struct Gcd3 {
  Int g, j, k, l;  // j*x + k*y + l*z = g
};

/// gcd(x, y) >= 0 with Bezout coefficients. gcd(0, 0) = 0 with s = t = 0.
Gcd2 ext_gcd2(const Int& x, const Int& y);

/// Three-term Bezout identity, chained through two ext_gcd2 calls.
Gcd3 ext_gcd3(const Int& x, const Int& y, const Int& z);

Int gcd(const Int& x, const Int& y);
Int gcd(const Int& x, const Int& y, const Int& z);

/// Least positive a with a*x = 1 (mod n). Throws NotInvertible.
Int mod_inverse(const Int& x, const Int& n);

/// Least non-negative residue of x modulo n > 0.
Int mod_floor(const Int& x, const Int& n);

/// Exact division; the caller guarantees d | x.
Int div_exact(const Int& x, const Int& d);

/// Trial division; intended for |n| up to roughly 1e12.
bool is_squarefree(const Int& n);

bool is_fundamental_discriminant(const Int& d);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n);

/// Decomposition of a fundamental discriminant as delta = sigma + 4m,
/// sigma in {0, 1}. Shared by the Pell conic and the form machinery.
struct Discriminant {
  Int delta;
  Int sigma;
  Int m;

  /// Throws NotFundamental.
  static Discriminant fundamental(const Int& delta);

  /// Principal form evaluated at (beta, 1): beta^2 + sigma*beta - m.
  Int q0(const Int& beta) const;

  bool positive() const { return sgn(delta) > 0; }

  friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.delta == b.delta; }
};

/// Parses an optionally signed decimal integer; throws ParseError.
Int parse_int(std::string_view text);

}  // namespace pellforms
