#include <doctest.h>

#include <random>

#include "pellforms/error.hpp"
#include "pellforms/quadfield.hpp"

using namespace pellforms;

namespace {

// a lies in Z[w] iff its coordinates in the integral basis {1, w} are
// integers; w = (1 + sqrt m)/2 when m = 1 mod 4 and sqrt m otherwise.
bool in_ring_of_integers(const Rational& p, const Rational& q, long m) {
  auto is_int = [](const Rational& v) { return v.get_den() == 1; };
  if (((m % 4) + 4) % 4 == 1) return is_int(Rational(p - q)) && is_int(Rational(2 * q));
  return is_int(p) && is_int(q);
}

// Smallest n with n*a integral, by scanning n = 1, 2, ...
Int brute_den(long p, long q, long m, long r) {
  for (long n = 1;; ++n) {
    Rational a(n * p, r), b(n * q, r);
    a.canonicalize();
    b.canonicalize();
    if (in_ring_of_integers(a, b, m)) return n;
  }
}

QElem elem(long p, long q, long m, long r) { return QElem::make(p, q, m, r); }

}  // namespace

TEST_CASE("arithmetic and canonical form") {
  const QElem i = QElem::sqrt(-1);
  CHECK((i / QElem(5)) * QElem(5) == i);
  CHECK(QElem(1) * i == i);
  const QElem phi = elem(1, 1, 5, 2);
  CHECK(phi * phi == elem(3, 1, 5, 2));
  CHECK(elem(2, 4, 7, 6) == elem(1, 2, 7, 3));
  CHECK(elem(3, 0, 7, 6).is_rational());
  CHECK(elem(3, 0, 7, 6).m() == 0);
  CHECK(elem(-2, 0, 7, -4) == QElem(Rational(1, 2)));
  CHECK((phi - phi).is_zero());
  CHECK(phi / phi == QElem(1));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(QElem::sqrt(-1) + QElem::sqrt(2), Error);
  CHECK_THROWS_AS(QElem(1) / QElem(0), Error);
  CHECK_THROWS_AS(QElem::make(1, 1, 4, 1), Error);
  try {
    (void)(QElem::sqrt(3) * QElem::sqrt(5));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedFields);
  }
  try {
    (void)(QElem::sqrt(3) / QElem(0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("conjugation") {
  CHECK(qf_conj(QElem(Rational(3, 7))) == QElem(Rational(3, 7)));
  CHECK(qf_conj(QElem::sqrt(-1)) == -QElem::sqrt(-1));
  CHECK(qf_conj(elem(3, 2, 7, 5)) == elem(3, -2, 7, 5));
}

TEST_CASE("norm") {
  const QElem y = elem(0, -2, -1, 15);
  CHECK(qf_norm(y) == Rational(4, 225));
  CHECK(Rational(225) * qf_norm(y) == 4);
  CHECK(qf_norm(QElem(0)) == 0);
  CHECK(qf_norm(elem(1, 1, 5, 2)) == -1);
  // Rationals use the field norm a * conj(a) = a^2.
  CHECK(qf_norm(QElem(Rational(-2, 3))) == Rational(4, 9));
}

TEST_CASE("den and integrality") {
  CHECK(qf_den(elem(0, -2, -1, 15)) == 15);
  CHECK(qf_den(QElem(0)) == 1);
  CHECK(qf_den(elem(1, 1, 5, 2)) == 1);
  CHECK(qf_is_integral(QElem::sqrt(-1)));
  CHECK_FALSE(qf_is_integral(QElem(Rational(1, 2))));
  CHECK(qf_is_integral(elem(1, 1, 13, 2)));
  CHECK_FALSE(qf_is_integral(elem(1, 1, 7, 2)));
  CHECK(qf_den(elem(1, 1, 7, 2)) == 2);
}

TEST_CASE("den agrees with a brute-force oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coeff(-60, 60), den(1, 80);
  const long fields[] = {-1, -3, -5, -7, 2, 3, 5, 13, 17, 21, -15, 6};
  for (int i = 0; i < 3000; ++i) {
    const long m = fields[i % 12];
    const long p = coeff(rng), q = coeff(rng), r = den(rng);
    CAPTURE(p);
    CAPTURE(q);
    CAPTURE(m);
    CAPTURE(r);
    REQUIRE(qf_den(elem(p, q, m, r)) == brute_den(p, q, m, r));
  }
}

TEST_CASE("den(a) = den(N(a)/a)") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-60, 60), den(1, 80);
  const long fields[] = {-1, -3, 2, 5, 13, -23};
  int checked = 0;
  while (checked < 500) {
    const QElem a = elem(coeff(rng), coeff(rng), fields[checked % 6], den(rng));
    if (a.is_zero()) continue;
    ++checked;
    REQUIRE(qf_den(a) == qf_den(QElem(qf_norm(a)) / a));
  }
}

TEST_CASE("field homomorphism properties") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> coeff(-30, 30), den(1, 20);
  for (int i = 0; i < 300; ++i) {
    const QElem a = elem(coeff(rng), coeff(rng), 13, den(rng));
    const QElem b = elem(coeff(rng), coeff(rng), 13, den(rng));
    REQUIRE(qf_conj(qf_conj(a)) == a);
    REQUIRE(qf_conj(a + b) == qf_conj(a) + qf_conj(b));
    REQUIRE(qf_conj(a * b) == qf_conj(a) * qf_conj(b));
    REQUIRE(qf_norm(a * b) == qf_norm(a) * qf_norm(b));
    REQUIRE(qf_is_integral(QElem(qf_den(a)) * a));
  }
}

TEST_CASE("square roots") {
  CHECK(qf_sqrt(QElem(Rational(9, 4))) == QElem(Rational(3, 2)));
  const auto s = qf_sqrt(QElem(-4));
  REQUIRE(s);
  CHECK(*s * *s == QElem(-4));
  const QElem phi = elem(1, 1, 5, 2);
  const auto r = qf_sqrt(phi * phi);
  REQUIRE(r);
  CHECK(*r * *r == phi * phi);
  CHECK_FALSE(qf_sqrt(QElem::sqrt(2)));
}

TEST_CASE("parsing and printing") {
  CHECK(parse_qelem("(0+1*sqrt(-1))/5") == QElem::sqrt(-1) / QElem(5));
  CHECK(parse_qelem("-2*sqrt(-1)/15") == elem(0, -2, -1, 15));
  CHECK(parse_qelem("3/6") == QElem(Rational(1, 2)));
  CHECK(parse_qelem("(1+sqrt(5))/2") == elem(1, 1, 5, 2));
  CHECK_THROWS_AS(parse_qelem("sqrt(-4)"), Error);
  for (const QElem& a : {elem(3, -2, 7, 5), elem(0, 1, -1, 1), elem(4, 0, 0, 3), elem(-1, 3, 13, 2), QElem(-5)}) {
    CHECK(parse_qelem(a.str()) == a);
  }
  CHECK(QElem::sqrt(-1).str() == "sqrt(-1)");
  CHECK_THROWS_AS(parse_qelem("1+"), Error);
  CHECK_THROWS_AS(parse_qelem("sqrt(x)"), Error);
}
