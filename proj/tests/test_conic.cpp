#include <doctest.h>

#include "pellforms/conic.hpp"
#include "pellforms/error.hpp"
#include "pellforms/sampling.hpp"

using namespace pellforms;

namespace {

const ConicPoint kExample{QElem::sqrt(-1) / QElem(5), QElem(-2) * QElem::sqrt(-1) / QElem(15)};

}  // namespace

TEST_CASE("membership") {
  const PellConic c229 = PellConic::fundamental(229);
  const PellConic c5 = PellConic::fundamental(5);
  CHECK(conic_contains(c229, kExample));
  CHECK(conic_contains(c229, ConicPoint::identity()));
  CHECK(conic_contains(c5, ConicPoint::identity()));
  CHECK_FALSE(conic_contains(c5, {2, 2}));
}

TEST_CASE("group law examples") {
  const PellConic c5 = PellConic::fundamental(5);
  const PellConic c229 = PellConic::fundamental(229);
  CHECK(conic_add(c5, {1, 1}, {1, 1}) == ConicPoint{2, 3});
  CHECK(conic_add(c229, kExample, ConicPoint::identity()) == kExample);
  CHECK(conic_add(c229, kExample, conic_neg(c229, kExample)) == ConicPoint::identity());
  CHECK(conic_neg(c5, {2, 3}) == ConicPoint{5, -3});
  CHECK(conic_neg(c5, ConicPoint::identity()) == ConicPoint::identity());
  const ConicPoint n = conic_neg(c229, kExample);
  CHECK(n == ConicPoint{QElem::sqrt(-1) / QElem(15), QElem(2) * QElem::sqrt(-1) / QElem(15)});
  CHECK(conic_contains(c229, n));
  CHECK(conic_sub(c229, kExample, kExample) == ConicPoint::identity());
  CHECK(conic_sub(c5, {2, 3}, {1, 1}) == ConicPoint{1, 1});
  CHECK(conic_sub(c229, kExample, ConicPoint::identity()) == kExample);
  CHECK(conic_mul(c229, kExample, 0) == ConicPoint::identity());
  CHECK(conic_mul(c5, {1, 1}, 2) == ConicPoint{2, 3});
  CHECK(conic_mul(c229, kExample, -1) == conic_neg(c229, kExample));
  CHECK(conic_mul(c5, {1, 1}, 5) == conic_add(c5, conic_mul(c5, {1, 1}, 2), conic_mul(c5, {1, 1}, 3)));
}

TEST_CASE("conic matrix") {
  const PellConic c = PellConic::fundamental(229);
  CHECK(conic_matrix(c, kExample).det() == QElem(1));
  const Vec2 v = conic_matrix(c, kExample) * Vec2{kExample.x, kExample.y};
  CHECK(ConicPoint{v.first, v.second} == conic_add(c, kExample, kExample));
}

TEST_CASE("mixed fields are rejected") {
  const PellConic c = PellConic::fundamental(5);
  Rng rng(1);
  const ConicPoint a = random_conic_point(c, -1, rng);
  ConicPoint b = random_conic_point(c, 2, rng);
  while (is_rational_point(b)) b = random_conic_point(c, 2, rng);
  if (!is_rational_point(a)) CHECK_THROWS_AS(conic_add(c, a, b), Error);
}

TEST_CASE("group axioms on sampled points") {
  Rng rng(4);
  for (long delta : {5, 8, 13, 229, -4, -23}) {
    const PellConic c = PellConic::fundamental(delta);
    for (long field : {0, -1, 2}) {
      for (int i = 0; i < 70; ++i) {
        const ConicPoint p = random_conic_point(c, field, rng);
        const ConicPoint q = random_conic_point(c, field, rng);
        const ConicPoint r = random_conic_point(c, field, rng);
        REQUIRE(conic_contains(c, p));
        REQUIRE(conic_contains(c, conic_add(c, p, q)));
        REQUIRE(conic_add(c, conic_add(c, p, q), r) == conic_add(c, p, conic_add(c, q, r)));
        REQUIRE(conic_add(c, p, q) == conic_add(c, q, p));
        REQUIRE(conic_sub(c, p, q) == conic_add(c, p, conic_neg(c, q)));
      }
    }
  }
}

TEST_CASE("slope parametrization") {
  const PellConic c = PellConic::fundamental(13);
  for (long k = -20; k <= 20; ++k) {
    const auto p = point_from_slope(c, QElem(Rational(k, 3)));
    if (p) REQUIRE(conic_contains(c, *p));
  }
}

TEST_CASE("point syntax") {
  const ConicPoint p = parse_point("((0+1*sqrt(-1))/5 ; (0-2*sqrt(-1))/15)");
  CHECK(p == kExample);
  CHECK(parse_point(p.str()) == p);
  CHECK(parse_point("(1;0)") == ConicPoint::identity());
  CHECK_THROWS_AS(parse_point("(1, 0)"), Error);
}
