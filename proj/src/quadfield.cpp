#include "pellforms/quadfield.hpp"

#include <cctype>
#include <sstream>
#include <utility>

#include "pellforms/error.hpp"

namespace pellforms {

QElem::QElem(Int p, Int q, Int m, Int r, bool)
    : p_(std::move(p)), q_(std::move(q)), m_(std::move(m)), r_(std::move(r)) {
  canonicalize();
}

QElem::QElem(const Rational& v) : p_(v.get_num()), q_(0), m_(0), r_(v.get_den()) { canonicalize(); }

void QElem::canonicalize() {
  if (r_ == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (sgn(r_) < 0) {
    r_ = -r_;
    p_ = -p_;
    q_ = -q_;
  }
  if (q_ == 0) m_ = 0;
  const Int g = gcd(p_, q_, r_);
  if (g != 1) {
    p_ = div_exact(p_, g);
    q_ = div_exact(q_, g);
    r_ = div_exact(r_, g);
  }
}

QElem QElem::make(const Int& p, const Int& q, const Int& m, const Int& r) {
  if (q != 0 && (m == 0 || m == 1 || !is_squarefree(m))) {
    throw Error(ErrorKind::ParseError, "sqrt(" + m.get_str() + ") needs a squarefree m other than 0, 1");
  }
  return QElem(p, q, m, r, true);
}

QElem QElem::sqrt(const Int& m) { return make(0, 1, m, 1); }

Rational QElem::to_rational() const {
  Rational v(p_, r_);
  v.canonicalize();
  return v;
}

std::string QElem::str() const {
  std::ostringstream os;
  if (q_ == 0) {
    os << p_;
    if (r_ != 1) os << '/' << r_;
    return os.str();
  }
  std::ostringstream core;
  bool terms = false;
  if (p_ != 0) {
    core << p_;
    terms = true;
  }
  const Int aq = abs(q_);
  if (sgn(q_) < 0) {
    core << '-';
  } else if (terms) {
    core << '+';
  }
  if (aq != 1) core << aq << '*';
  core << "sqrt(" << m_ << ')';
  if (r_ == 1) return core.str();
  os << '(' << core.str() << ")/" << r_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QElem& a) { return os << a.str(); }

Int common_field(const QElem& a, const QElem& b) {
  if (a.is_rational()) return b.m();
  if (b.is_rational()) return a.m();
  if (a.m() != b.m()) {
    throw Error(ErrorKind::MixedFields, "Q(sqrt(" + a.m().get_str() + ")) vs Q(sqrt(" + b.m().get_str() + "))");
  }
  return a.m();
}

QElem operator+(const QElem& a, const QElem& b) {
  const Int m = common_field(a, b);
  if (a.r_ == b.r_) return QElem(a.p_ + b.p_, a.q_ + b.q_, m, a.r_, true);
  return QElem(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, m, a.r_ * b.r_, true);
}

QElem operator-(const QElem& a) { return QElem(-a.p_, -a.q_, a.m_, a.r_, true); }

QElem operator-(const QElem& a, const QElem& b) { return a + (-b); }

QElem operator*(const QElem& a, const QElem& b) {
  const Int m = common_field(a, b);
  return QElem(a.p_ * b.p_ + a.q_ * b.q_ * m, a.p_ * b.q_ + a.q_ * b.p_, m, a.r_ * b.r_, true);
}

QElem operator/(const QElem& a, const QElem& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  const Int m = common_field(a, b);
  // a / b = a * conj(b) * r_b / (p_b^2 - q_b^2 m)
  const Int n = b.p_ * b.p_ - b.q_ * b.q_ * m;
  const QElem num = a * QElem(b.p_ * b.r_, -b.q_ * b.r_, m, 1, true);
  return QElem(num.p_, num.q_, num.m_, num.r_ * n, true);
}

QElem qf_add(const QElem& a, const QElem& b) { return a + b; }
QElem qf_sub(const QElem& a, const QElem& b) { return a - b; }
QElem qf_mul(const QElem& a, const QElem& b) { return a * b; }
QElem qf_div(const QElem& a, const QElem& b) { return a / b; }

QElem qf_conj(const QElem& a) {
  if (a.is_rational()) return a;
  return QElem::make(a.p(), -a.q(), a.m(), a.r());
}

Rational qf_norm(const QElem& a) {
  Rational v(a.p() * a.p() - a.q() * a.q() * a.m(), a.r() * a.r());
  v.canonicalize();
  return v;
}

Rational qf_trace(const QElem& a) {
  Rational v(2 * a.p(), a.r());
  v.canonicalize();
  return v;
}

namespace {

bool integral_scaled(const QElem& a, const Int& n) {
  // trace(n a) = 2 n p / r, norm(n a) = n^2 (p^2 - q^2 m) / r^2
  const Int tr = 2 * n * a.p();
  if (!mpz_divisible_p(tr.get_mpz_t(), a.r().get_mpz_t())) return false;
  const Int nm = n * n * (a.p() * a.p() - a.q() * a.q() * a.m());
  const Int r2 = a.r() * a.r();
  return mpz_divisible_p(nm.get_mpz_t(), r2.get_mpz_t()) != 0;
}

}  // namespace

Int qf_den(const QElem& a) {
  // r*a = p + q sqrt(m) is integral, so den | r; gcd(p, q, r) = 1 leaves only r/2 as a
  // proper candidate (half-integers when m = 1 mod 4).
  if (mpz_even_p(a.r().get_mpz_t())) {
    const Int half = a.r() / 2;
    if (integral_scaled(a, half)) return half;
  }
  return a.r();
}

bool qf_is_integral(const QElem& a) { return integral_scaled(a, 1); }

namespace {

std::optional<Rational> rational_sqrt(const Rational& v) {
  if (sgn(v) < 0) return std::nullopt;
  if (!is_perfect_square(v.get_num()) || !is_perfect_square(v.get_den())) return std::nullopt;
  Rational r(isqrt(v.get_num()), isqrt(v.get_den()));
  r.canonicalize();
  return r;
}

// Squarefree part of a nonzero integer, with the square cofactor's root.
std::pair<Int, Int> squarefree_split(const Int& n) {
  Int core = n;
  Int root = 1;
  Int v = abs(n);
  for (Int p = 2; p * p <= v; ++p) {
    const Int p2 = p * p;
    while (mpz_divisible_p(core.get_mpz_t(), p2.get_mpz_t())) {
      core /= p2;
      root *= p;
    }
    while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) v /= p;
  }
  return {core, root};
}

}  // namespace

std::optional<QElem> qf_sqrt(const QElem& a) {
  if (a.is_zero()) return QElem(0);
  if (a.is_rational()) {
    const Rational v = a.to_rational();
    if (auto s = rational_sqrt(v)) return QElem(*s);
    // v = num/den = num*den / den^2; sqrt = sqrt(num*den)/den
    const Int nd = v.get_num() * v.get_den();
    auto [core, root] = squarefree_split(nd);
    if (core == 1) return std::nullopt;
    return QElem::make(0, root, core, v.get_den());
  }
  // (x + y sqrt m)^2 = x^2 + m y^2 + 2xy sqrt m; x^2 = (s + n)/2 with n^2 = norm(a).
  const Rational s(a.p(), a.r());
  const Rational t(a.q(), a.r());
  const auto n = rational_sqrt(qf_norm(a));
  if (!n) return std::nullopt;
  for (int sign : {1, -1}) {
    const Rational x2 = (s + sign * *n) / 2;
    const auto x = rational_sqrt(x2);
    if (!x || sgn(*x) == 0) continue;
    const Rational y = t / (2 * *x);
    const QElem cand = QElem(*x) + QElem(y) * QElem::sqrt(a.m());
    if (cand * cand == a) return cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  QElem parse() {
    QElem v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QElem expr() {
    QElem v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  QElem term() {
    QElem v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = v / unary();
      } else {
        return v;
      }
    }
  }

  QElem unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }

  Int integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return parse_int(s_.substr(start, pos_ - start));
  }

  QElem atom() {
    skip();
    if (eat('(')) {
      QElem v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      const Int m = integer();
      if (!eat(')')) fail("expected ')'");
      return QElem::sqrt(m);
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) return QElem(integer());
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

QElem parse_qelem(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace pellforms
