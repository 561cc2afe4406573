#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "pellforms/intarith.hpp"

namespace pellforms {

/// Element (p + q*sqrt(m)) / r of a quadratic field Q(sqrt(m)).
///
/// Canonical form: r >= 1, gcd(p, q, r) = 1, and m = 0 whenever q = 0.
/// A rational element therefore carries no field tag and combines with
/// elements of any Q(sqrt(m)); combining two irrational elements of
/// different fields throws MixedFields.
class QElem {
 public:
  QElem() : p_(0), q_(0), m_(0), r_(1) {}
  QElem(long v) : p_(v), q_(0), m_(0), r_(1) {}  // NOLINT(google-explicit-constructor)
  QElem(const Int& v) : p_(v), q_(0), m_(0), r_(1) {}  // NOLINT(google-explicit-constructor)
  QElem(const Rational& v);  // NOLINT(google-explicit-constructor)
  template <class U>
  QElem(const __gmp_expr<mpz_t, U>& e) : QElem(Int(e)) {}  // NOLINT(google-explicit-constructor)
  template <class U>
  QElem(const __gmp_expr<mpq_t, U>& e) : QElem(Rational(e)) {}  // NOLINT(google-explicit-constructor)

  /// Validates that m is squarefree and not 0 or 1 when q != 0.
  static QElem make(const Int& p, const Int& q, const Int& m, const Int& r);
  static QElem sqrt(const Int& m);

  const Int& p() const { return p_; }
  const Int& q() const { return q_; }
  const Int& r() const { return r_; }
  /// Field tag; 0 for rational elements.
  const Int& m() const { return m_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  /// Requires is_rational().
  Rational to_rational() const;

  std::string str() const;

  friend QElem operator+(const QElem& a, const QElem& b);
  friend QElem operator-(const QElem& a, const QElem& b);
  friend QElem operator*(const QElem& a, const QElem& b);
  friend QElem operator/(const QElem& a, const QElem& b);
  friend QElem operator-(const QElem& a);
  QElem& operator+=(const QElem& b) { return *this = *this + b; }
  QElem& operator-=(const QElem& b) { return *this = *this - b; }
  QElem& operator*=(const QElem& b) { return *this = *this * b; }

  friend bool operator==(const QElem& a, const QElem& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_ && a.m_ == b.m_;
  }
  friend bool operator!=(const QElem& a, const QElem& b) { return !(a == b); }

 private:
  QElem(Int p, Int q, Int m, Int r, bool);  // unchecked; canonicalizes
  void canonicalize();

  Int p_, q_, m_, r_;
};

std::ostream& operator<<(std::ostream& os, const QElem& a);

QElem qf_add(const QElem& a, const QElem& b);
QElem qf_sub(const QElem& a, const QElem& b);
QElem qf_mul(const QElem& a, const QElem& b);
QElem qf_div(const QElem& a, const QElem& b);

/// (p + q sqrt m)/r -> (p - q sqrt m)/r. The nontrivial automorphism of the field.
QElem qf_conj(const QElem& a);

/// Field norm a * conj(a). For rational a this is a^2, the norm from any
/// quadratic field containing a.
Rational qf_norm(const QElem& a);

Rational qf_trace(const QElem& a);

/// Least n >= 1 with n*a an algebraic integer. Always r or r/2.
Int qf_den(const QElem& a);

/// Trace and norm are both rational integers.
bool qf_is_integral(const QElem& a);

/// Square root inside the field of a (or inside Q(sqrt(m)) for some m when a
/// is rational), if one exists.
std::optional<QElem> qf_sqrt(const QElem& a);

/// Field tag shared by a and b (0 if both rational); throws MixedFields.
Int common_field(const QElem& a, const QElem& b);

/// Accepts `(p+q*sqrt(m))/r` and its abbreviations; more generally any
/// expression over integers and sqrt(m) with + - * / and parentheses.
QElem parse_qelem(std::string_view text);

}  // namespace pellforms
