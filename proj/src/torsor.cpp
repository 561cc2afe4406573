#include "pellforms/torsor.hpp"

#include <algorithm>
#include <stdexcept>

#include "pellforms/error.hpp"

namespace pellforms {

TorsorPoint mu(const PellConic& c, const F2ClassRep& q, const TorsorPoint& tq, const ConicPoint& p) {
  return TorsorPoint::from(automorph_matrix(c, q, p) * tq.vec());
}

ConicPoint nu(const PellConic& c, const F2ClassRep& q, const TorsorPoint& q2, const TorsorPoint& q1) {
  const Vec2 v = l_matrix(c, q, q1) * q2.vec();
  return {v.first, v.second};
}

TorsorPoint BilinearComposition::apply(const TorsorPoint& p1, const TorsorPoint& p2) const {
  const QElem t1t2 = p1.t * p2.t;
  const QElem t1u2 = p1.t * p2.u;
  const QElem t2u1 = p2.t * p1.u;
  const QElem u1u2 = p1.u * p2.u;
  return {QElem(e2) * t1t2 + QElem(f) * t1u2 + QElem(g) * t2u1 + QElem(h) * u1u2,
          QElem(b) * t1u2 + QElem(c) * t2u1 + QElem(d) * u1u2};
}

BilinearComposition bilinear_composition(const PellConic& c, const F2ClassRep& q1, const F2ClassRep& q2) {
  BilinearComposition bc;
  bc.q3 = f2_compose(c, q1, q2);
  const Int a1sq = q1.leading();
  const Int a2sq = q2.leading();
  const Int bplus = q1.beta + q2.beta + c.sigma;
  const Int btimes = q1.beta * q2.beta + c.m;
  const Int e2 = gcd(a1sq, a2sq, bplus);
  const Int& beta3 = bc.q3.beta;
  bc.e2 = e2;
  bc.b = Rational(a1sq, e2);
  bc.c = Rational(a2sq, e2);
  bc.d = Rational(bplus, e2);
  bc.f = Rational(Int(e2 * (q2.beta - beta3)), a2sq);
  bc.g = Rational(Int(e2 * (q1.beta - beta3)), a1sq);
  bc.h = Rational(Int(e2 * (btimes - beta3 * bplus)), Int(a1sq * a2sq));
  for (Rational* r : {&bc.b, &bc.c, &bc.d, &bc.f, &bc.g, &bc.h}) r->canonicalize();
  return bc;
}

CircResult circ(const PellConic& c, const F2ClassRep& q1, const TorsorPoint& p1, const F2ClassRep& q2,
                const TorsorPoint& p2) {
  common_field(p1.t, p2.t);
  common_field(p1.u, p2.u);
  common_field(p1.t, p2.u);
  for (const auto& [q, p] : {std::pair{&q1, &p1}, std::pair{&q2, &p2}}) {
    if (q->eval(c, *p) != QElem(1)) throw Error(ErrorKind::NotOnTorsor, p->str() + " on " + q->form(c).str());
    if (!qf_is_integral(p->t) || !qf_is_integral(p->u)) throw Error(ErrorKind::NotIntegral, p->str());
  }
  const BilinearComposition bc = bilinear_composition(c, q1, q2);
  return {bc.q3, bc.apply(p1, p2)};
}

AxiomReport phs_axioms_check(const PellConic& c, const F2ClassRep& q, const std::vector<TorsorPoint>& torsor_sample,
                             const std::vector<ConicPoint>& conic_sample) {
  AxiomReport report;
  std::vector<TorsorPoint> qs;
  std::vector<ConicPoint> ps;
  for (const TorsorPoint& tq : torsor_sample) {
    if (q.eval(c, tq) == QElem(1)) {
      qs.push_back(tq);
    } else {
      report.precondition_failures.push_back("off torsor: " + tq.str());
    }
  }
  for (const ConicPoint& p : conic_sample) {
    if (conic_contains(c, p)) {
      ps.push_back(p);
    } else {
      report.precondition_failures.push_back("off conic: " + p.str());
    }
  }
  auto violation = [&](const std::string& what) { report.violations.push_back(what); };

  for (const TorsorPoint& tq : qs) {
    ++report.checked;
    if (mu(c, q, tq, ConicPoint::identity()) != tq) violation("axiom 1 at " + tq.str());
    for (const ConicPoint& p1 : ps) {
      const TorsorPoint moved = mu(c, q, tq, p1);
      ++report.checked;
      if (q.eval(c, moved) != QElem(1)) violation("mu leaves the torsor at " + tq.str() + ", " + p1.str());
      if (nu(c, q, moved, tq) != p1) violation("axiom 3 (uniqueness) at " + tq.str() + ", " + p1.str());
      for (const ConicPoint& p2 : ps) {
        ++report.checked;
        if (mu(c, q, moved, p2) != mu(c, q, tq, conic_add(c, p1, p2))) {
          violation("axiom 2 at " + tq.str() + ", " + p1.str() + ", " + p2.str());
        }
      }
    }
    for (const TorsorPoint& other : qs) {
      ++report.checked;
      const ConicPoint transport = nu(c, q, other, tq);
      if (!conic_contains(c, transport) || mu(c, q, tq, transport) != other) {
        violation("axiom 3 (existence) from " + tq.str() + " to " + other.str());
      }
    }
  }
  return report;
}

Cocycle xi_cocycle(const PellConic& c, const PrimitiveData& data, const TorsorPoint& tq) {
  const TorsorPoint conj{qf_conj(tq.t), qf_conj(tq.u)};
  Cocycle f{ConicPoint::identity(), nu(c, data.form, conj, tq)};
  if (!is_integral_point(f.at_tau)) throw std::logic_error("cocycle value is not integral: " + f.at_tau.str());
  return f;
}

bool satisfies_cocycle_condition(const PellConic& c, const Cocycle& f) {
  return conic_add(c, conic_conj(f.at_tau), f.at_tau) == ConicPoint::identity() &&
         f.at_identity == ConicPoint::identity();
}

namespace {

QElem omega_of(const Int& field) {
  if (mod_floor(field, 4) == 1) return (QElem(1) + QElem::sqrt(field)) / QElem(2);
  return QElem::sqrt(field);
}

}  // namespace

std::vector<TorsorPoint> integral_torsor_points(const PellConic& c, const F2ClassRep& q, const Int& field, long bound) {
  std::vector<TorsorPoint> out;
  const QElem omega = field == 0 ? QElem(0) : omega_of(field);
  const QElem delta(c.delta);
  const QElem four_a2(4 * q.leading());
  const QElem two_a2(2 * q.leading());
  const QElem B(2 * q.beta + c.sigma);
  const long qbound = field == 0 ? 0 : bound;
  for (long pp = -bound; pp <= bound; ++pp) {
    for (long qq = -qbound; qq <= qbound; ++qq) {
      const QElem u = QElem(pp) + QElem(qq) * omega;
      // A^2 t^2 + B u t + (C u^2 - 1) = 0
      const auto w = qf_sqrt(delta * u * u + four_a2);
      if (!w) continue;
      if (!w->is_rational() && w->m() != field) continue;
      for (int sign : {1, -1}) {
        const QElem t = (-B * u + QElem(sign) * *w) / two_a2;
        if (!qf_is_integral(t)) continue;
        const TorsorPoint tq{t, u};
        if (std::find(out.begin(), out.end(), tq) == out.end()) out.push_back(tq);
      }
    }
  }
  return out;
}

std::optional<ConicPoint> find_coboundary_witness(const PellConic& c, const ConicPoint& value, const Int& field,
                                                  long bound) {
  for (const TorsorPoint& r : integral_torsor_points(c, F2ClassRep::identity(), field, bound)) {
    const ConicPoint R{r.t, r.u};
    if (conic_sub(c, conic_conj(R), R) == value) return R;
  }
  return std::nullopt;
}

}  // namespace pellforms
