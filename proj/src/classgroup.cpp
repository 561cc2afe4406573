#include "pellforms/classgroup.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "pellforms/error.hpp"

namespace pellforms {

namespace {

IntMat2 translation(const Int& k) { return {1, k, 0, 1}; }

const IntMat2 kSwap{0, -1, 1, 0};

void check_form(const Discriminant& d, const Form& f) {
  if (f.discriminant() != d.delta) {
    throw Error(ErrorKind::MixedDiscriminants, f.str() + " has discriminant " + f.discriminant().get_str());
  }
  if (!f.is_primitive()) throw Error(ErrorKind::NotPrimitive, f.str());
}

ReducedForm reduce_definite(const Form& f) {
  Form q = f;
  IntMat2 cert;
  for (;;) {
    const Int two_a = 2 * q.a;
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), Int(q.a - q.b).get_mpz_t(), two_a.get_mpz_t());
    if (k != 0) {
      const IntMat2 t = translation(k);
      q = form_apply_sl2(q, t);
      cert = cert * t;
    }
    if (q.c < q.a || (q.c == q.a && sgn(q.b) < 0)) {
      q = form_apply_sl2(q, kSwap);
      cert = cert * kSwap;
      continue;
    }
    return {q, cert};
  }
}

// x < sqrt(delta) for integer x and non-square delta with s = isqrt(delta).
bool below_root(const Int& x, const Int& s) { return x <= s; }

}  // namespace

bool is_reduced(const Discriminant& d, const Form& f) {
  if (!d.positive()) {
    if (sgn(f.a) <= 0) return false;
    const Int ab = abs(f.b);
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if ((ab == f.a || f.a == f.c) && sgn(f.b) < 0) return false;
    return true;
  }
  const Int s = isqrt(d.delta);
  const Int two_a = 2 * abs(f.a);
  return sgn(f.b) > 0 && below_root(f.b, s) && !below_root(two_a + f.b, s) && below_root(two_a - f.b, s);
}

ReducedForm rho_step(const Discriminant& d, const Form& f) {
  const Int s = isqrt(d.delta);
  const Int ac = abs(f.c);
  const Int two_c = 2 * ac;
  Int b;
  if (below_root(ac, s)) {
    b = s - mod_floor(s + f.b, two_c);
  } else {
    b = mod_floor(-f.b, two_c);
    if (b > ac) b -= two_c;
  }
  const IntMat2 m{0, -1, 1, div_exact(b + f.b, 2 * f.c)};
  return {form_apply_sl2(f, m), m};
}

ReducedForm reduce(const Discriminant& d, const Form& f) {
  check_form(d, f);
  if (!d.positive()) {
    if (sgn(f.a) < 0) {
      ReducedForm r = reduce_definite({-f.a, -f.b, -f.c});
      r.form = {-r.form.a, -r.form.b, -r.form.c};
      return r;
    }
    return reduce_definite(f);
  }
  ReducedForm r{f, IntMat2{}};
  while (!is_reduced(d, r.form)) {
    const ReducedForm step = rho_step(d, r.form);
    r.form = step.form;
    r.certificate = r.certificate * step.certificate;
  }
  return r;
}

std::vector<Form> reduction_cycle(const Discriminant& d, const Form& reduced) {
  std::vector<Form> cycle{reduced};
  for (Form cur = rho_step(d, reduced).form; cur != reduced; cur = rho_step(d, cur).form) {
    cycle.push_back(cur);
  }
  return cycle;
}

bool is_properly_equivalent(const Discriminant& d, const Form& f1, const Form& f2) {
  const Form r1 = reduce(d, f1).form;
  const Form r2 = reduce(d, f2).form;
  if (!d.positive()) return r1 == r2;
  const auto cycle = reduction_cycle(d, r2);
  return std::find(cycle.begin(), cycle.end(), r1) != cycle.end();
}

std::optional<std::pair<Int, Int>> represents_one_integrally(const Discriminant& d, const Form& f) {
  ReducedForm r = reduce(d, f);
  if (!d.positive()) {
    if (r.form == principal_form(d)) return std::make_pair(r.certificate.a, r.certificate.c);
    return std::nullopt;
  }
  const Form start = r.form;
  do {
    if (r.form.a == 1) return std::make_pair(r.certificate.a, r.certificate.c);
    const ReducedForm step = rho_step(d, r.form);
    r.form = step.form;
    r.certificate = r.certificate * step.certificate;
  } while (r.form != start);
  return std::nullopt;
}

Form coprime_representative(const Discriminant& d, const Form& f) {
  check_form(d, f);
  if (sgn(f.a) > 0 && gcd(f.a, d.delta) == 1) return f;
  for (long bound = 1;; ++bound) {
    for (long t = -bound; t <= bound; ++t) {
      for (long u = -bound; u <= bound; ++u) {
        if (std::max(std::labs(t), std::labs(u)) != bound) continue;
        const Gcd2 g = ext_gcd2(t, u);
        if (g.g != 1) continue;
        const Int n = f.a * t * t + f.b * t * u + f.c * u * u;
        if (sgn(n) <= 0 || gcd(n, d.delta) != 1) continue;
        // [[t, -g.t], [u, g.s]] has det t*g.s + u*g.t = 1
        return form_apply_sl2(f, IntMat2{t, -g.t, u, g.s});
      }
    }
  }
}

std::optional<std::size_t> ClassGroup::class_of(const Form& f) const {
  const ReducedForm r = reduce(disc, f);
  const auto it = index.find(r.form);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::size_t ClassGroup::inverse(std::size_t g) const {
  for (std::size_t h = 0; h < order(); ++h) {
    if (table[g][h] == identity) return h;
  }
  throw std::logic_error("class without inverse");
}

std::size_t ClassGroup::element_order(std::size_t g) const {
  std::size_t n = 1;
  for (std::size_t cur = g; cur != identity; cur = table[cur][g]) ++n;
  return n;
}

namespace {

std::vector<Form> reduced_forms(const Discriminant& d) {
  std::vector<Form> out;
  const Int& delta = d.delta;
  if (!d.positive()) {
    const Int ad = -delta;
    for (Int a = 1; 3 * a * a <= ad; ++a) {
      for (Int b = -a + 1; b <= a; ++b) {
        const Int num = b * b - delta;
        if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t())) continue;
        const Int c = num / (4 * a);
        const Form f{a, b, c};
        if (is_reduced(d, f) && f.is_primitive()) out.push_back(f);
      }
    }
    return out;
  }
  const Int s = isqrt(delta);
  for (Int b = d.sigma == 0 ? 2 : 1; b <= s; b += 2) {
    const Int n = (delta - b * b) / 4;  // = -a c > 0
    for (Int a0 = 1; a0 * a0 <= n; ++a0) {
      if (!mpz_divisible_p(n.get_mpz_t(), a0.get_mpz_t())) continue;
      const Int a1 = n / a0;
      for (const Int* mag : std::array<const Int*, 2>{&a0, &a1}) {
        for (int sign : {1, -1}) {
          const Form f{sign * *mag, b, -sign * (n / *mag)};
          if (is_reduced(d, f) && f.is_primitive()) out.push_back(f);
        }
        if (a0 == a1) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ClassGroup narrow_class_group(const Int& delta) {
  ClassGroup g;
  g.disc = Discriminant::fundamental(delta);
  if (abs(delta) > kDeskScaleBound) throw Error(ErrorKind::TooLarge, "|delta| > " + kDeskScaleBound.get_str());
  const Discriminant& d = g.disc;

  for (const Form& f : reduced_forms(d)) {
    if (g.index.count(f)) continue;
    const std::size_t cls = g.reps.size();
    if (!d.positive()) {
      g.index.emplace(f, cls);
      g.reps.push_back(f);
      continue;
    }
    const auto cycle = reduction_cycle(d, f);
    Form rep = f;
    bool have_rep = false;
    for (const Form& member : cycle) {
      g.index.emplace(member, cls);
      if (sgn(member.a) <= 0) continue;
      if (!have_rep || (gcd(rep.a, delta) != 1 && gcd(member.a, delta) == 1)) {
        rep = member;
        have_rep = true;
      }
    }
    g.reps.push_back(rep);
  }

  const auto principal = g.class_of(principal_form(d));
  if (!principal) throw std::logic_error("principal form missing from the class list");
  g.identity = *principal;

  const std::size_t h = g.order();
  std::vector<FClassRep> f_reps;
  f_reps.reserve(h);
  for (const Form& f : g.reps) f_reps.push_back(FClassRep::of(d, f));
  g.table.assign(h, std::vector<std::size_t>(h));
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = i; j < h; ++j) {
      const Form composed = f_compose(d, f_reps[i], f_reps[j]).form(d);
      const auto cls = g.class_of(composed);
      if (!cls) throw std::logic_error("composition left the class group: " + composed.str());
      g.table[i][j] = g.table[j][i] = *cls;
    }
  }
  return g;
}

ClassGroup squares_subgroup(const ClassGroup& g) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.order(); ++i) members.push_back(g.square(i));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  std::vector<std::size_t> new_index(g.order(), g.order());
  for (std::size_t k = 0; k < members.size(); ++k) new_index[members[k]] = k;

  ClassGroup s;
  s.disc = g.disc;
  for (std::size_t m : members) s.reps.push_back(g.reps[m]);
  s.identity = new_index[g.identity];
  s.table.assign(members.size(), std::vector<std::size_t>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) s.table[i][j] = new_index[g.table[members[i]][members[j]]];
  }
  for (const auto& [form, cls] : g.index) {
    if (new_index[cls] != g.order()) s.index.emplace(form, new_index[cls]);
  }
  return s;
}

std::vector<ObstructionRecord> sha_census(const Int& delta) {
  const ClassGroup g = narrow_class_group(delta);
  const Discriminant& d = g.disc;
  std::vector<ObstructionRecord> out;
  std::vector<bool> done(g.order(), false);
  done[g.identity] = true;
  for (std::size_t root = 0; root < g.order(); ++root) {
    const std::size_t sq = g.square(root);
    if (done[sq]) continue;
    done[sq] = true;
    const Form base = coprime_representative(d, g.reps[root]);
    const F2ClassRep rep = f2_square(d, FClassRep::of(d, base));
    ObstructionRecord rec;
    rec.delta = delta;
    rec.rep = rep;
    rec.form = rep.form(d);
    rec.rational_point = {QElem(Rational(1, rep.A)), 0};
    rec.integral = represents_one_integrally(d, rec.form).has_value();
    rec.class_order = g.element_order(sq);
    out.push_back(rec);
  }
  std::sort(out.begin(), out.end(), [](const ObstructionRecord& a, const ObstructionRecord& b) {
    if (a.class_order != b.class_order) return a.class_order < b.class_order;
    return a.form < b.form;
  });
  return out;
}

}  // namespace pellforms
