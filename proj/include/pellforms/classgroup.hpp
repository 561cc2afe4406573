#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pellforms/forms.hpp"

namespace pellforms {

/// Largest |delta| accepted by narrow_class_group.
inline const Int kDeskScaleBound = 1000000;

/// Reduced form with certificate: form_apply_sl2(original, certificate) == form.
struct ReducedForm {
  Form form;
  IntMat2 certificate;
};

/// Delta < 0: |b| <= a <= c, b >= 0 if |b| = a or a = c.
/// Delta > 0: 0 < b < sqrt(delta), sqrt(delta) - b < 2|a| < sqrt(delta) + b.
bool is_reduced(const Discriminant& d, const Form& f);

/// Proper (SL2(Z)) reduction. Negative definite forms reduce to the negative
/// of a reduced positive definite form. Throws NotPrimitive, MixedDiscriminants.
ReducedForm reduce(const Discriminant& d, const Form& f);

/// One step of the indefinite reduction operator; maps reduced forms to
/// reduced forms and permutes each cycle.
ReducedForm rho_step(const Discriminant& d, const Form& f);

/// Reduced forms properly equivalent to a reduced indefinite form, in rho order.
std::vector<Form> reduction_cycle(const Discriminant& d, const Form& reduced);

bool is_properly_equivalent(const Discriminant& d, const Form& f1, const Form& f2);

/// Integer (t, u) with Q(t, u) = 1, present exactly when Q lies in the
/// principal class.
std::optional<std::pair<Int, Int>> represents_one_integrally(const Discriminant& d, const Form& f);

/// A properly equivalent form whose leading coefficient is positive and
/// coprime to delta.
Form coprime_representative(const Discriminant& d, const Form& f);

/// Narrow class group Cl+(delta) with a full composition table.
struct ClassGroup {
  Discriminant disc;
  /// One representative per class, leading coefficient > 0.
  std::vector<Form> reps;
  /// table[i][j] = class of reps[i] * reps[j].
  std::vector<std::vector<std::size_t>> table;
  std::size_t identity = 0;
  /// Every reduced form of every class, mapped to its class index.
  std::map<Form, std::size_t> index;

  std::size_t order() const { return reps.size(); }
  /// Class of an arbitrary form; nullopt when outside the group
  /// (negative definite, or not in this subgroup).
  std::optional<std::size_t> class_of(const Form& f) const;
  std::size_t inverse(std::size_t g) const;
  std::size_t square(std::size_t g) const { return table[g][g]; }
  std::size_t element_order(std::size_t g) const;
};

/// Enumerates reduced forms, partitions them into classes and composes.
/// Throws NotFundamental, TooLarge.
ClassGroup narrow_class_group(const Int& delta);

/// {g^2} with the inherited table, reindexed.
ClassGroup squares_subgroup(const ClassGroup& g);

/// Torsor with a rational point but no integral one.
struct ObstructionRecord {
  Int delta;
  F2ClassRep rep;
  Form form;
  TorsorPoint rational_point;  // (1/A, 0)
  bool integral = false;
  std::size_t class_order = 0;  // order of the class in Cl+(delta)
};

/// One record per nontrivial class of Cl+(delta)^2.
std::vector<ObstructionRecord> sha_census(const Int& delta);

}  // namespace pellforms
