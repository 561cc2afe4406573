#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pellforms/conic.hpp"
#include "pellforms/forms.hpp"
#include "pellforms/primitive.hpp"

namespace pellforms {

/// mu(q, P) = M_P q. Acts on the torsor Q(t, u) = 1.
TorsorPoint mu(const PellConic& c, const F2ClassRep& q, const TorsorPoint& tq, const ConicPoint& p);

/// nu(q2, q1) = L_{Q,q1} q2, the unique P with mu(q1, P) = q2.
ConicPoint nu(const PellConic& c, const F2ClassRep& q, const TorsorPoint& q2, const TorsorPoint& q1);

/// Coefficients of the bilinear substitution
///   t3 = e^2 t1 t2 + f t1 u2 + g t2 u1 + h u1 u2
///   u3 = b t1 u2 + c t2 u1 + d u1 u2
/// carrying Q1 x Q2 to Q3 = Q1 * Q2.
struct BilinearComposition {
  F2ClassRep q3;
  Rational e2, b, c, d, f, g, h;

  TorsorPoint apply(const TorsorPoint& q1, const TorsorPoint& q2) const;
};

BilinearComposition bilinear_composition(const PellConic& c, const F2ClassRep& q1, const F2ClassRep& q2);

struct CircResult {
  F2ClassRep form;
  TorsorPoint point;
};

/// Group law on integral torsor points. Throws NotOnTorsor, NotIntegral, MixedFields.
CircResult circ(const PellConic& c, const F2ClassRep& q1, const TorsorPoint& p1, const F2ClassRep& q2,
                const TorsorPoint& p2);

struct AxiomReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  std::vector<std::string> precondition_failures;

  bool ok() const { return violations.empty(); }
};

/// Checks identity, compatibility and unique transport on every sample
/// combination. Off-torsor or off-conic samples are recorded as
/// precondition failures and skipped.
AxiomReport phs_axioms_check(const PellConic& c, const F2ClassRep& q, const std::vector<TorsorPoint>& torsor_sample,
                             const std::vector<ConicPoint>& conic_sample);

/// Cocycle on Gal(Q(sqrt m)/Q) = {id, tau}: f(id) = O, f(tau) = nu(q^tau, q).
struct Cocycle {
  ConicPoint at_identity;
  ConicPoint at_tau;
};

Cocycle xi_cocycle(const PellConic& c, const PrimitiveData& data, const TorsorPoint& tq);

/// tau(f(tau)) + f(tau) = O.
bool satisfies_cocycle_condition(const PellConic& c, const Cocycle& f);

/// Integral points of Q(t, u) = 1 over the ring of integers of Q(sqrt(field)),
/// with u = p + q*omega for |p|, |q| <= bound (omega = sqrt(field) or
/// (1 + sqrt(field))/2). Solutions outside the box are not found.
std::vector<TorsorPoint> integral_torsor_points(const PellConic& c, const F2ClassRep& q, const Int& field, long bound);

/// Integral R with f(tau) = R^tau - R searched in a box of integral elements
/// of Q(sqrt(field)); used when the literal comparison of two cocycles fails.
std::optional<ConicPoint> find_coboundary_witness(const PellConic& c, const ConicPoint& value, const Int& field,
                                                  long bound);

}  // namespace pellforms
