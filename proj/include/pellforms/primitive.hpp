#pragma once

#include <optional>
#include <string>

#include "pellforms/classgroup.hpp"
#include "pellforms/conic.hpp"
#include "pellforms/forms.hpp"

namespace pellforms {

/// Invariants of a primitive point P = (x, y):
///   A = den(y), beta its ratio (0 <= beta < A^2, A^2 | Q0(beta, 1)),
///   quotient T = (x - beta y)/A and numerator U = A y, both integral,
///   Q_P(T, U) = 1 for Q_P = (A^2, 2 beta + sigma, Q0(beta, 1)/A^2).
struct PrimitiveData {
  Int A;
  Int beta;
  QElem quotient;
  QElem numerator;
  F2ClassRep form;

  /// Intermediate values of the membership test.
  Int a2_norm;   // A^2 N(y)
  Int inverse;   // a = (A^2 N(y))^{-1} mod A^2, least positive
  Int b;         // rational part of a A^2 N(y) x / y, which is congruent to it mod A^2 (0 when y = 0)

  /// Ideal (A, beta + omega) whose square corresponds to the attached form.
  std::string ideal_str() const;
};

/// Primitive-point test and invariant extraction; nullopt when P is not primitive.
/// Precondition: P lies on the conic.
std::optional<PrimitiveData> analyze_point(const PellConic& c, const ConicPoint& p);

/// Forms attached to a primitive point: (A, 2 beta + sigma, Q0(beta,1)/A).
Form attached_form_prime(const PellConic& c, const PrimitiveData& data);

/// (T, U) = N_Q (x, y).
TorsorPoint phi(const ConicPoint& p, const PrimitiveData& data);

/// ((A^2 t + beta u)/A, u/A). Throws NotOnTorsor, NotIntegral, DenominatorCollapse.
ConicPoint phi_inv(const PellConic& c, const F2ClassRep& q, const TorsorPoint& tq);

/// Class of the point in the square-leading-coefficient group.
inline F2ClassRep theta(const PrimitiveData& data) { return data.form; }

/// Narrow class of the attached form Q_P in g.
std::size_t lambda_K(const PellConic& c, const PrimitiveData& data, const ClassGroup& g);

struct KernelDecomposition {
  ConicPoint rational;  // R in P(Q)
  ConicPoint integral;  // Z with integral coordinates, R + Z = P
};

/// Splits P = R + Z when Q_P represents 1 over Z; nullopt otherwise.
std::optional<KernelDecomposition> decompose_kernel(const PellConic& c, const ConicPoint& p, const PrimitiveData& data);

}  // namespace pellforms
