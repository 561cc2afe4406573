#include <doctest.h>

#include <cstdint>
#include <vector>

#include "pellforms/classgroup.hpp"
#include "pellforms/error.hpp"
#include "pellforms/forms.hpp"
#include "oracle.hpp"

using namespace pellforms;

using oracle::brute_class_count;
using oracle::brute_reduced;

TEST_CASE("class numbers against brute force") {
  for (long delta : {5, 8, 12, 13, 229, -3, -4, -23, -20, 17, 40, 65}) {
    CAPTURE(delta);
    const ClassGroup g = narrow_class_group(delta);
    CHECK(g.order() == brute_class_count(delta, 20));
    std::size_t counted = 0;
    for (const auto& [f, i] : g.index) {
      (void)i;
      ++counted;
      CHECK(is_reduced(g.disc, f));
    }
    CHECK(counted == brute_reduced(delta).size());
  }
}

TEST_CASE("known class numbers") {
  CHECK(narrow_class_group(5).order() == 1);
  CHECK(narrow_class_group(13).order() == 1);
  CHECK(narrow_class_group(229).order() == 3);
  CHECK(narrow_class_group(-4).order() == 1);
  CHECK(narrow_class_group(-23).order() == 3);
  CHECK(narrow_class_group(12).order() == 2);
  CHECK_THROWS_AS(narrow_class_group(20), Error);
  CHECK_THROWS_AS(narrow_class_group(Int(10000001) * 4 + 1), Error);
}

TEST_CASE("reduction certificates") {
  const Discriminant d = Discriminant::fundamental(229);
  for (const Form& f : {Form{225, 223, 55}, Form{50625, 63223, 19739}, Form{3, 13, -5}, Form{-3, 1, 19}}) {
    const ReducedForm r = reduce(d, f);
    CHECK(form_apply_sl2(f, r.certificate) == r.form);
    CHECK(r.certificate.det() == 1);
    CHECK(is_reduced(d, r.form));
  }
  const Discriminant dn = Discriminant::fundamental(-23);
  const ReducedForm r = reduce(dn, Form{4, 5, 3});
  CHECK(r.form == Form{2, -1, 3});
  CHECK(form_apply_sl2(Form{4, 5, 3}, r.certificate) == r.form);
  CHECK_THROWS_AS(reduce(d, Form{2, 2, 2}), Error);
  CHECK_THROWS_AS(reduce(d, Form{1, 1, -1}), Error);
}

TEST_CASE("equivalence") {
  const Discriminant d = Discriminant::fundamental(229);
  CHECK_FALSE(is_properly_equivalent(d, Form{1, 1, -57}, Form{3, 13, -5}));
  CHECK(is_properly_equivalent(d, Form{3, 13, -5}, form_apply_sl2(Form{3, 13, -5}, IntMat2{2, 7, 1, 4})));
  CHECK(is_properly_equivalent(d, Form{225, 223, 55}, Form{1, 1, -57}));
  CHECK(represents_one_integrally(d, Form{225, 223, 55}));
  const auto tu = represents_one_integrally(d, Form{225, 223, 55});
  CHECK(Form{225, 223, 55}.eval(tu->first, tu->second) == QElem(1));
  CHECK_FALSE(represents_one_integrally(d, Form{9, 7, -5}));
}

TEST_CASE("cycles") {
  const Discriminant d = Discriminant::fundamental(229);
  const ClassGroup g = narrow_class_group(229);
  for (const auto& [f, i] : g.index) {
    const auto cyc = reduction_cycle(d, f);
    CHECK(cyc.front() == f);
    for (const Form& h : cyc) CHECK(g.index.at(h) == i);
    CHECK(form_apply_sl2(f, rho_step(d, f).certificate) == rho_step(d, f).form);
  }
}

TEST_CASE("composition table") {
  for (long delta : {229, -23, 12, 65, -20}) {
    const ClassGroup g = narrow_class_group(delta);
    const std::size_t n = g.order();
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(g.table[g.identity][a] == a);
      CHECK(g.table[a][g.inverse(a)] == g.identity);
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(g.table[a][b] == g.table[b][a]);
        for (std::size_t c = 0; c < n; ++c) CHECK(g.table[g.table[a][b]][c] == g.table[a][g.table[b][c]]);
      }
    }
    const ClassGroup s = squares_subgroup(g);
    CHECK(s.order() * 1 <= n);
    if (delta == 229 || delta == -23) CHECK(s.order() == 3);
    if (delta == 12) CHECK(s.order() == 1);
  }
}

TEST_CASE("census") {
  const auto r229 = sha_census(229);
  REQUIRE(r229.size() == 2);
  std::vector<Form> forms;
  for (const auto& r : r229) {
    forms.push_back(r.form);
    CHECK(r.rational_point == TorsorPoint{QElem(Rational(1) / r.rep.A), 0});
    CHECK(r.form.eval(r.rational_point.t, r.rational_point.u) == QElem(1));
    CHECK_FALSE(r.integral);
    CHECK(r.class_order == 3);
  }
  CHECK(forms == std::vector<Form>{{9, 7, -5}, {25, 23, 3}});
  // No integral solution in a box.
  for (const Form& f : forms) {
    const int64_t a = f.a.get_si(), b = f.b.get_si(), c = f.c.get_si();
    bool found = false;
    for (int64_t t = -1000; t <= 1000 && !found; ++t) {
      for (int64_t u = -1000; u <= 1000; ++u) {
        if (a * t * t + b * t * u + c * u * u == 1) {
          found = true;
          break;
        }
      }
    }
    CHECK_FALSE(found);
  }
  CHECK(sha_census(5).empty());
  CHECK(sha_census(13).empty());
  CHECK(sha_census(12).empty());
  const auto rn = sha_census(-23);
  REQUIRE(rn.size() == 2);
  CHECK(rn[0].form == Form{4, 3, 2});
  CHECK(rn[1].form == Form{4, 5, 3});
}

TEST_CASE("coprime representative") {
  const Discriminant d = Discriminant::fundamental(229);
  const Form f = coprime_representative(d, Form{-3, 1, 19});
  CHECK(sgn(f.a) > 0);
  CHECK(gcd(f.a, Int(229)) == 1);
  CHECK(is_properly_equivalent(d, f, Form{-3, 1, 19}));
}
