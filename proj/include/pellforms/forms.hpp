#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pellforms/conic.hpp"
#include "pellforms/intarith.hpp"
#include "pellforms/matrix.hpp"

namespace pellforms {

/// Binary quadratic form a t^2 + b t u + c u^2.
struct Form {
  Int a, b, c;

  Int discriminant() const { return b * b - 4 * a * c; }
  bool is_primitive() const { return gcd(a, b, c) == 1; }
  QElem eval(const QElem& t, const QElem& u) const;
  std::string str() const;  // "(a,b,c)"

  friend bool operator==(const Form&, const Form&) = default;
  friend bool operator<(const Form& x, const Form& y);
};

/// Point (t, u) of a conic Q(t, u) = 1; the form is carried by context.
struct TorsorPoint {
  QElem t = 0;
  QElem u = 0;

  Vec2 vec() const { return {t, u}; }
  static TorsorPoint from(const Vec2& v) { return {v.first, v.second}; }
  std::string str() const;  // "(t ; u)"

  friend bool operator==(const TorsorPoint&, const TorsorPoint&) = default;
};

/// Class of (A, 2 beta + sigma, Q0(beta,1)/A) under upper-triangular
/// unimodular substitution. Canonical: A > 0, 0 <= beta < A, A | Q0(beta, 1).
struct FClassRep {
  Int A;
  Int beta;

  /// Reduces beta mod A; throws InvalidClassRep unless A > 0 and A | Q0(beta, 1).
  static FClassRep make(const Discriminant& d, const Int& A, const Int& beta);
  /// Class of a form with positive leading coefficient.
  static FClassRep of(const Discriminant& d, const Form& f);

  Form form(const Discriminant& d) const;
  std::string str() const;  // "F[A,beta]"

  friend bool operator==(const FClassRep&, const FClassRep&) = default;
};

/// Canonical representative (A^2, 2 beta + sigma, Q0(beta,1)/A^2) of a class
/// in the square-leading-coefficient subgroup: A > 0, 0 <= beta < A^2,
/// A^2 | Q0(beta, 1), gcd(A, delta) = 1.
struct F2ClassRep {
  Int A;
  Int beta;

  static F2ClassRep make(const Discriminant& d, const Int& A, const Int& beta);
  static F2ClassRep identity() { return {1, 0}; }

  Int leading() const { return A * A; }
  /// Q0(beta, 1) / A^2.
  Int gamma(const Discriminant& d) const;
  Form form(const Discriminant& d) const;
  QElem eval(const Discriminant& d, const TorsorPoint& q) const { return form(d).eval(q.t, q.u); }
  std::string str() const;  // "F2[A,beta]"

  friend bool operator==(const F2ClassRep&, const F2ClassRep&) = default;
};

/// (1, sigma, -m). Throws NotFundamental.
Form principal_form(const Int& delta);
Form principal_form(const Discriminant& d);

/// Bezout triple A1 j + A2 k + beta+ l = e used by a composition.
struct Bezout3 {
  Int j, k, l;
};

/// Dirichlet composition of F-classes; any valid Bezout triple gives the same class.
FClassRep f_compose(const Discriminant& d, const FClassRep& q1, const FClassRep& q2);
FClassRep f_compose(const Discriminant& d, const FClassRep& q1, const FClassRep& q2, const Bezout3& bz);
FClassRep f_inverse(const Discriminant& d, const FClassRep& q);

/// Composition in the square subgroup with e_hat = gcd(A1^2, A2^2, beta+) = e^2.
F2ClassRep f2_compose(const Discriminant& d, const F2ClassRep& q1, const F2ClassRep& q2);
F2ClassRep f2_compose(const Discriminant& d, const F2ClassRep& q1, const F2ClassRep& q2, const Bezout3& bz);
F2ClassRep f2_inverse(const Discriminant& d, const F2ClassRep& q);

/// [Q]_F . [Q]_F via A w + (2 beta + sigma) l = 1, beta3 = beta - l Q0(beta, 1).
/// Throws NotCoprimeToDiscriminant.
F2ClassRep f2_square(const Discriminant& d, const FClassRep& q);

/// Automorph M_P = [[x - beta y, -gamma y], [A^2 y, x + (beta + sigma) y]].
Mat2 automorph_matrix(const Discriminant& d, const F2ClassRep& q, const ConicPoint& p);

/// N_Q = [[1/A, -beta/A], [0, A]]; Q0(v) = Q(N_Q v).
Mat2 substitution_matrix(const F2ClassRep& q);

/// L_{Q,q} = [[A^2 t + (beta + sigma) u, beta t + gamma u], [-u, t]]; det = Q(t, u).
Mat2 l_matrix(const Discriminant& d, const F2ClassRep& q, const TorsorPoint& tq);

/// Q'(v) = Q(M v). Throws NotUnimodular unless det M = 1.
Form form_apply_sl2(const Form& f, const IntMat2& m);

/// Rational entries, integral, det 1; throws NotUnimodular otherwise.
IntMat2 to_sl2(const Mat2& m);

Form parse_form(std::string_view text);
TorsorPoint parse_torsor_point(std::string_view text);

using ClassRep = std::variant<FClassRep, F2ClassRep>;

/// Parses "F[A,beta]" or "F2[A,beta]" and validates it against d.
ClassRep parse_class_rep(const Discriminant& d, std::string_view text);

}  // namespace pellforms
