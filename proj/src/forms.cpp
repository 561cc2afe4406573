#include "pellforms/forms.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "pellforms/error.hpp"

namespace pellforms {

QElem Form::eval(const QElem& t, const QElem& u) const {
  return QElem(a) * t * t + QElem(b) * t * u + QElem(c) * u * u;
}

std::string Form::str() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }

bool operator<(const Form& x, const Form& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.c < y.c;
}

std::string TorsorPoint::str() const { return "(" + t.str() + " ; " + u.str() + ")"; }

FClassRep FClassRep::make(const Discriminant& d, const Int& A, const Int& beta) {
  if (sgn(A) <= 0) throw Error(ErrorKind::InvalidClassRep, "leading coefficient must be positive");
  if (!mpz_divisible_p(d.q0(beta).get_mpz_t(), A.get_mpz_t())) {
    throw Error(ErrorKind::InvalidClassRep, A.get_str() + " does not divide Q0(" + beta.get_str() + ",1)");
  }
  return {A, mod_floor(beta, A)};
}

FClassRep FClassRep::of(const Discriminant& d, const Form& f) {
  if (f.discriminant() != d.delta) throw Error(ErrorKind::MixedDiscriminants, f.str());
  // b = 2 beta + sigma; b and delta share parity
  return make(d, f.a, (f.b - d.sigma) / 2);
}

Form FClassRep::form(const Discriminant& d) const { return {A, 2 * beta + d.sigma, div_exact(d.q0(beta), A)}; }

std::string FClassRep::str() const { return "F[" + A.get_str() + "," + beta.get_str() + "]"; }

F2ClassRep F2ClassRep::make(const Discriminant& d, const Int& A, const Int& beta) {
  if (sgn(A) <= 0) throw Error(ErrorKind::InvalidClassRep, "A must be positive");
  if (gcd(A, d.delta) != 1) {
    throw Error(ErrorKind::NotCoprimeToDiscriminant, "gcd(" + A.get_str() + ", " + d.delta.get_str() + ") != 1");
  }
  const Int a2 = A * A;
  if (!mpz_divisible_p(d.q0(beta).get_mpz_t(), a2.get_mpz_t())) {
    throw Error(ErrorKind::InvalidClassRep, a2.get_str() + " does not divide Q0(" + beta.get_str() + ",1)");
  }
  return {A, mod_floor(beta, a2)};
}

Int F2ClassRep::gamma(const Discriminant& d) const { return div_exact(d.q0(beta), A * A); }

Form F2ClassRep::form(const Discriminant& d) const { return {A * A, 2 * beta + d.sigma, gamma(d)}; }

std::string F2ClassRep::str() const { return "F2[" + A.get_str() + "," + beta.get_str() + "]"; }

Form principal_form(const Discriminant& d) { return {1, d.sigma, -d.m}; }

Form principal_form(const Int& delta) { return principal_form(Discriminant::fundamental(delta)); }

namespace {

Bezout3 default_bezout(const Int& x, const Int& y, const Int& z) {
  const Gcd3 g = ext_gcd3(x, y, z);
  return {g.j, g.k, g.l};
}

void check_bezout(const Int& x, const Int& y, const Int& z, const Int& target, const Bezout3& bz) {
  if (x * bz.j + y * bz.k + z * bz.l != target) throw std::invalid_argument("Bezout triple does not satisfy the identity");
}

}  // namespace

FClassRep f_compose(const Discriminant& d, const FClassRep& q1, const FClassRep& q2) {
  const Int bplus = q1.beta + q2.beta + d.sigma;
  return f_compose(d, q1, q2, default_bezout(q1.A, q2.A, bplus));
}

FClassRep f_compose(const Discriminant& d, const FClassRep& q1, const FClassRep& q2, const Bezout3& bz) {
  const Int bplus = q1.beta + q2.beta + d.sigma;
  const Int btimes = q1.beta * q2.beta + d.m;
  const Int e = gcd(q1.A, q2.A, bplus);
  check_bezout(q1.A, q2.A, bplus, e, bz);
  const Int a3 = div_exact(q1.A * q2.A, e * e);
  const Int b3 = div_exact(q1.A, e) * q2.beta * bz.j + div_exact(q2.A, e) * q1.beta * bz.k + div_exact(btimes, e) * bz.l;
  return FClassRep::make(d, a3, b3);
}

FClassRep f_inverse(const Discriminant& d, const FClassRep& q) { return FClassRep::make(d, q.A, -q.beta - d.sigma); }

F2ClassRep f2_compose(const Discriminant& d, const F2ClassRep& q1, const F2ClassRep& q2) {
  const Int bplus = q1.beta + q2.beta + d.sigma;
  return f2_compose(d, q1, q2, default_bezout(q1.leading(), q2.leading(), bplus));
}

F2ClassRep f2_compose(const Discriminant& d, const F2ClassRep& q1, const F2ClassRep& q2, const Bezout3& bz) {
  const Int a1sq = q1.leading();
  const Int a2sq = q2.leading();
  const Int bplus = q1.beta + q2.beta + d.sigma;
  const Int btimes = q1.beta * q2.beta + d.m;
  const Int ehat = gcd(a1sq, a2sq, bplus);
  const Int e = gcd(q1.A, q2.A, bplus);
  if (ehat != e * e) throw std::logic_error("gcd(A1^2, A2^2, beta+) != gcd(A1, A2, beta+)^2");
  check_bezout(a1sq, a2sq, bplus, ehat, bz);
  const Int a3 = div_exact(q1.A * q2.A, ehat);
  const Int b3 =
      div_exact(a1sq, ehat) * q2.beta * bz.j + div_exact(a2sq, ehat) * q1.beta * bz.k + div_exact(btimes, ehat) * bz.l;
  return F2ClassRep::make(d, a3, b3);
}

F2ClassRep f2_inverse(const Discriminant& d, const F2ClassRep& q) {
  return F2ClassRep::make(d, q.A, q.leading() - q.beta - d.sigma);
}

F2ClassRep f2_square(const Discriminant& d, const FClassRep& q) {
  if (gcd(q.A, d.delta) != 1) {
    throw Error(ErrorKind::NotCoprimeToDiscriminant, "gcd(" + q.A.get_str() + ", " + d.delta.get_str() + ") != 1");
  }
  const Gcd2 wl = ext_gcd2(q.A, 2 * q.beta + d.sigma);  // A w + B l = 1
  return F2ClassRep::make(d, q.A, q.beta - wl.t * d.q0(q.beta));
}

Mat2 automorph_matrix(const Discriminant& d, const F2ClassRep& q, const ConicPoint& p) {
  const QElem beta(q.beta);
  return {p.x - beta * p.y, -QElem(q.gamma(d)) * p.y, QElem(q.leading()) * p.y, p.x + QElem(Int(q.beta + d.sigma)) * p.y};
}

Mat2 substitution_matrix(const F2ClassRep& q) {
  return {QElem(Rational(1, q.A)), QElem(Rational(-q.beta, q.A)), 0, QElem(q.A)};
}

Mat2 l_matrix(const Discriminant& d, const F2ClassRep& q, const TorsorPoint& tq) {
  return {QElem(q.leading()) * tq.t + QElem(Int(q.beta + d.sigma)) * tq.u, QElem(q.beta) * tq.t + QElem(q.gamma(d)) * tq.u,
          -tq.u, tq.t};
}

Form form_apply_sl2(const Form& f, const IntMat2& m) {
  if (m.det() != 1) throw Error(ErrorKind::NotUnimodular, "det " + m.det().get_str() + " for " + m.str());
  // Q(a t + b u, c t + d u)
  return {f.a * m.a * m.a + f.b * m.a * m.c + f.c * m.c * m.c,
          2 * f.a * m.a * m.b + f.b * (m.a * m.d + m.b * m.c) + 2 * f.c * m.c * m.d,
          f.a * m.b * m.b + f.b * m.b * m.d + f.c * m.d * m.d};
}

IntMat2 to_sl2(const Mat2& m) {
  for (const QElem* e : {&m.a, &m.b, &m.c, &m.d}) {
    if (!e->is_rational() || e->r() != 1) throw Error(ErrorKind::NotUnimodular, "non-integer entry in " + m.str());
  }
  IntMat2 r{m.a.p(), m.b.p(), m.c.p(), m.d.p()};
  if (r.det() != 1) throw Error(ErrorKind::NotUnimodular, "det " + r.det().get_str());
  return r;
}

namespace {

std::vector<std::string> split_fields(std::string_view inner, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = inner.find(sep, start);
    std::string piece(inner.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    const auto b = piece.find_first_not_of(" \t");
    const auto e = piece.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : piece.substr(b, e - b + 1));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Form parse_form(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw Error(ErrorKind::ParseError, "expected '(a,b,c)': '" + std::string(text) + "'");
  }
  const auto parts = split_fields(s.substr(1, s.size() - 2), ',');
  if (parts.size() != 3) throw Error(ErrorKind::ParseError, "expected three coefficients: '" + std::string(text) + "'");
  return {parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2])};
}

TorsorPoint parse_torsor_point(std::string_view text) {
  auto [ts, us] = split_pair(text);
  TorsorPoint q{parse_qelem(ts), parse_qelem(us)};
  common_field(q.t, q.u);
  return q;
}

ClassRep parse_class_rep(const Discriminant& d, std::string_view text) {
  const std::string_view s = trim(text);
  const bool square = s.substr(0, 3) == "F2[";
  const std::size_t open = square ? 2 : 1;
  if (!(square || s.substr(0, 2) == "F[") || s.back() != ']') {
    throw Error(ErrorKind::ParseError, "expected 'F[A,beta]' or 'F2[A,beta]': '" + std::string(text) + "'");
  }
  const auto parts = split_fields(s.substr(open + 1, s.size() - open - 2), ',');
  if (parts.size() != 2) throw Error(ErrorKind::ParseError, "expected two fields: '" + std::string(text) + "'");
  const Int A = parse_int(parts[0]);
  const Int beta = parse_int(parts[1]);
  if (square) return F2ClassRep::make(d, A, beta);
  return FClassRep::make(d, A, beta);
}

}  // namespace pellforms
