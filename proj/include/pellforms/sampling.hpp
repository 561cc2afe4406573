#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pellforms/conic.hpp"
#include "pellforms/forms.hpp"
#include "pellforms/primitive.hpp"

namespace pellforms {

/// Seeded generator for every sampled check; runs with the same seed are
/// reproducible.
using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi);

/// Random (p + q*omega)/r with |p|, |q| <= coeff and 1 <= r <= den, where
/// omega = sqrt(field); field = 0 gives a rational number.
QElem random_element(Rng& rng, const Int& field, long coeff, long den);

/// Point on the line through O = (1, 0) with slope lambda:
///   y = -(2 lambda + sigma)/(lambda^2 + sigma lambda - m), x = 1 + lambda y.
/// nullopt when the denominator vanishes.
std::optional<ConicPoint> point_from_slope(const PellConic& c, const QElem& lambda);

/// Random point over Q(sqrt(field)) (over Q when field = 0).
ConicPoint random_conic_point(const PellConic& c, const Int& field, Rng& rng, long coeff = 4, long den = 3);

/// F2 class representatives with 1 <= A <= max_a.
std::vector<F2ClassRep> small_f2_reps(const PellConic& c, long max_a);

/// Uniform A in [1, max_a] (retrying when no beta exists), then a uniform
/// admissible beta.
FClassRep random_f_rep(const PellConic& c, Rng& rng, long max_a);
F2ClassRep random_f2_rep(const PellConic& c, Rng& rng, long max_a);

/// Random primitive points over one quadratic field.
///
/// A pool is seeded from integral torsor points of small F2 classes (found by
/// bounded search, then mapped through phi_inv) and from slope-parametrized
/// points that pass analyze_point. Samples combine up to two pool entries
/// with a random rational point.
class PrimitiveSampler {
 public:
  PrimitiveSampler(const PellConic& c, const Int& field, Rng& rng, long search_bound = 6);

  const std::vector<ConicPoint>& pool() const { return pool_; }
  /// Number of pool points that are not rational.
  std::size_t irrational_pool_size() const;

  ConicPoint sample();

  /// Integral points of the conic over the field, from the same bounded search.
  const std::vector<ConicPoint>& integral_points() const { return integral_; }

 private:
  PellConic c_;
  Int field_;
  Rng& rng_;
  std::vector<ConicPoint> pool_;
  std::vector<ConicPoint> integral_;
};

}  // namespace pellforms
