#include <doctest.h>

#include "pellforms/classgroup.hpp"
#include "pellforms/error.hpp"
#include "pellforms/primitive.hpp"
#include "pellforms/sampling.hpp"
#include "pellforms/verify.hpp"

using namespace pellforms;

namespace {

const PellConic c229 = PellConic::fundamental(229);
const QElem i1 = QElem::sqrt(-1);
const ConicPoint kExample{i1 / QElem(5), QElem(-2) * i1 / QElem(15)};

}  // namespace

TEST_CASE("worked example") {
  const auto d = analyze_point(c229, kExample);
  REQUIRE(d);
  CHECK(d->A == 15);
  CHECK(d->a2_norm == 4);
  CHECK(d->inverse == 169);
  CHECK(d->b == -1014);
  CHECK(d->beta == 111);
  CHECK(d->form == F2ClassRep{15, 111});
  CHECK(d->form.form(c229) == Form{225, 223, 55});
  CHECK(attached_form_prime(c229, *d) == Form{15, 223, 825});
  CHECK(d->quotient == i1);
  CHECK(d->numerator == QElem(-2) * i1);
  CHECK(d->ideal_str() == "(15, 111+omega)^2");
  const TorsorPoint t = phi(kExample, *d);
  CHECK(t == TorsorPoint{i1, QElem(-2) * i1});
  CHECK(phi_inv(c229, d->form, t) == kExample);
  // 169 * 4 = 676 = 1 mod 225, and -1014 = 111 mod 225.
  CHECK((169 * 4) % 225 == 1);
  CHECK(mod_floor(Int(-1014), Int(225)) == 111);
}

TEST_CASE("kernel decomposition of the example") {
  const auto d = analyze_point(c229, kExample);
  REQUIRE(d);
  const ClassGroup g = narrow_class_group(229);
  CHECK(lambda_K(c229, *d, g) == g.identity);
  const auto k = decompose_kernel(c229, kExample, *d);
  REQUIRE(k);
  CHECK(k->rational == ConicPoint{QElem(Rational(-31, 5)), QElem(Rational(-13, 15))});
  CHECK(k->integral == ConicPoint{QElem(-8) * i1, i1});
  CHECK(conic_add(c229, k->rational, k->integral) == kExample);
  CHECK(conic_contains(c229, k->rational));
  CHECK(is_integral_point(k->integral));
}

TEST_CASE("integral and rational points") {
  const auto o = analyze_point(c229, ConicPoint::identity());
  REQUIRE(o);
  CHECK(o->A == 1);
  CHECK(o->form == F2ClassRep::identity());
  const PellConic c5 = PellConic::fundamental(5);
  const auto d = analyze_point(c5, {2, 3});
  REQUIRE(d);
  CHECK(d->A == 1);
  CHECK(d->beta == 0);
  CHECK(phi({2, 3}, *d) == TorsorPoint{2, 3});
  // Every rational point is primitive.
  Rng rng(5);
  for (long delta : kSuiteDiscriminants) {
    const PellConic c = PellConic::fundamental(delta);
    for (int i = 0; i < 100; ++i) {
      const ConicPoint p = random_conic_point(c, 0, rng, 9, 7);
      const auto pd = analyze_point(c, p);
      REQUIRE(pd);
      CHECK(represents_one_integrally(c, pd->form.form(c)));
    }
  }
}

TEST_CASE("non-primitive point") {
  // x = 1/(2*sqrt(2)) style points: y with den 2 but A x not integral.
  const PellConic c = PellConic::fundamental(8);
  Rng rng(3);
  std::size_t rejected = 0;
  for (int i = 0; i < 400; ++i) {
    const ConicPoint p = random_conic_point(c, -1, rng, 5, 4);
    if (!analyze_point(c, p)) ++rejected;
  }
  CHECK(rejected > 0);
}

TEST_CASE("phi_inv errors") {
  const F2ClassRep q{15, 111};
  CHECK_THROWS_AS(phi_inv(c229, q, TorsorPoint{1, 1}), Error);
  CHECK_THROWS_AS(phi_inv(c229, q, TorsorPoint{QElem(Rational(1, 15)), 0}), Error);
  try {
    phi_inv(c229, q, TorsorPoint{1, 1});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOnTorsor);
  }
}

TEST_CASE("sampled invariants") {
  Rng rng(11);
  for (long delta : kSuiteDiscriminants) {
    const PellConic c = PellConic::fundamental(delta);
    for (long field : {-1, 2}) {
      PrimitiveSampler s(c, field, rng, 6);
      for (int i = 0; i < 30; ++i) {
        const ConicPoint p = s.sample();
        const ConicPoint q = s.sample();
        const auto dp = analyze_point(c, p);
        const auto dq = analyze_point(c, q);
        REQUIRE(dp);
        REQUIRE(dq);
        const Int a2 = dp->A * dp->A;
        CHECK(a2 == dp->form.leading());
        CHECK(qf_is_integral(dp->quotient));
        CHECK(qf_is_integral(dp->numerator));
        CHECK(dp->form.eval(c, phi(p, *dp)) == QElem(1));
        CHECK(phi_inv(c, dp->form, phi(p, *dp)) == p);
        const auto ds = analyze_point(c, conic_add(c, p, q));
        REQUIRE(ds);
        CHECK(theta(*ds) == f2_compose(c, theta(*dp), theta(*dq)));
        const auto dn = analyze_point(c, conic_neg(c, p));
        REQUIRE(dn);
        CHECK(theta(*dn) == f2_inverse(c, theta(*dp)));
        const auto dc = analyze_point(c, conic_conj(p));
        REQUIRE(dc);
        CHECK(theta(*dc) == theta(*dp));
      }
    }
  }
}

TEST_CASE("nonprincipal classes") {
  Rng rng(13);
  for (const auto& [delta, field] : kNonprincipalCases) {
    CAPTURE(delta);
    const PellConic c = PellConic::fundamental(delta);
    const ClassGroup g = narrow_class_group(delta);
    PrimitiveSampler s(c, field, rng, 6);
    std::size_t principal = 0, other = 0;
    for (int i = 0; i < 60; ++i) {
      const ConicPoint p = s.sample();
      const auto d = analyze_point(c, p);
      REQUIRE(d);
      const std::size_t k = lambda_K(c, *d, g);
      const auto dec = decompose_kernel(c, p, *d);
      CHECK((k == g.identity) == dec.has_value());
      if (dec) {
        ++principal;
        CHECK(is_rational_point(dec->rational));
        CHECK(is_integral_point(dec->integral));
        CHECK(conic_add(c, dec->rational, dec->integral) == p);
      } else {
        ++other;
      }
    }
    CHECK(principal > 0);
    CHECK(other > 0);
  }
}
