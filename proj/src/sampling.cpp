#include "pellforms/sampling.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "pellforms/torsor.hpp"

namespace pellforms {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

QElem random_element(Rng& rng, const Int& field, long coeff, long den) {
  const long p = uniform(rng, -coeff, coeff);
  const long r = uniform(rng, 1, den);
  if (field == 0) return QElem(Rational(p, r));
  const long q = uniform(rng, -coeff, coeff);
  return QElem::make(p, q, field, r);
}

std::optional<ConicPoint> point_from_slope(const PellConic& c, const QElem& lambda) {
  const QElem denom = lambda * lambda + QElem(c.sigma) * lambda - QElem(c.m);
  if (denom.is_zero()) return std::nullopt;
  const QElem y = -(QElem(2) * lambda + QElem(c.sigma)) / denom;
  return ConicPoint{QElem(1) + lambda * y, y};
}

ConicPoint random_conic_point(const PellConic& c, const Int& field, Rng& rng, long coeff, long den) {
  for (;;) {
    if (auto p = point_from_slope(c, random_element(rng, field, coeff, den))) return *p;
  }
}

std::vector<F2ClassRep> small_f2_reps(const PellConic& c, long max_a) {
  std::vector<F2ClassRep> out;
  for (long a = 1; a <= max_a; ++a) {
    const Int A(a);
    if (gcd(A, c.delta) != 1) continue;
    const Int a2 = A * A;
    for (Int beta = 0; beta < a2; ++beta) {
      if (mpz_divisible_p(c.q0(beta).get_mpz_t(), a2.get_mpz_t())) out.push_back({A, beta});
    }
  }
  return out;
}

FClassRep random_f_rep(const PellConic& c, Rng& rng, long max_a) {
  for (;;) {
    const Int A(uniform(rng, 1, max_a));
    std::vector<Int> betas;
    for (Int beta = 0; beta < A; ++beta) {
      if (mpz_divisible_p(c.q0(beta).get_mpz_t(), A.get_mpz_t())) betas.push_back(beta);
    }
    if (betas.empty()) continue;
    return {A, betas[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(betas.size()) - 1))]};
  }
}

F2ClassRep random_f2_rep(const PellConic& c, Rng& rng, long max_a) {
  for (;;) {
    const Int A(uniform(rng, 1, max_a));
    if (gcd(A, c.delta) != 1) continue;
    const Int a2 = A * A;
    std::vector<Int> betas;
    for (Int beta = 0; beta < a2; ++beta) {
      if (mpz_divisible_p(c.q0(beta).get_mpz_t(), a2.get_mpz_t())) betas.push_back(beta);
    }
    if (betas.empty()) continue;
    return {A, betas[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(betas.size()) - 1))]};
  }
}

namespace {

// The box search is deterministic and dominates sampler setup, so results are
// shared across samplers.
const std::vector<TorsorPoint>& cached_torsor_points(const PellConic& c, const F2ClassRep& q, const Int& field,
                                                    long bound) {
  using Key = std::tuple<std::string, std::string, std::string, std::string, long>;
  static std::mutex mu;
  static std::map<Key, std::vector<TorsorPoint>> cache;
  const Key key{c.delta.get_str(), q.A.get_str(), q.beta.get_str(), field.get_str(), bound};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, integral_torsor_points(c, q, field, bound)).first;
  return it->second;
}

}  // namespace

PrimitiveSampler::PrimitiveSampler(const PellConic& c, const Int& field, Rng& rng, long search_bound)
    : c_(c), field_(field), rng_(rng) {
  for (const TorsorPoint& r : cached_torsor_points(c, F2ClassRep::identity(), field, search_bound)) {
    integral_.push_back({r.t, r.u});
  }
  for (const F2ClassRep& q : small_f2_reps(c, 15)) {
    if (q.A == 1) continue;
    for (const TorsorPoint& tq : cached_torsor_points(c, q, field, search_bound)) {
      pool_.push_back(phi_inv(c, q, tq));
    }
  }
  for (int i = 0; i < 400; ++i) {
    const ConicPoint p = random_conic_point(c, field, rng_, 3, 2);
    if (!p.x.is_rational() || !p.y.is_rational()) {
      if (analyze_point(c, p)) pool_.push_back(p);
    }
  }
  for (const ConicPoint& p : integral_) {
    if (!is_rational_point(p)) pool_.push_back(p);
  }
  if (pool_.empty()) pool_.push_back(ConicPoint::identity());
}

std::size_t PrimitiveSampler::irrational_pool_size() const {
  return static_cast<std::size_t>(std::count_if(pool_.begin(), pool_.end(), [](const ConicPoint& p) {
    return !is_rational_point(p);
  }));
}

ConicPoint PrimitiveSampler::sample() {
  auto pick = [&]() -> const ConicPoint& { return pool_[static_cast<std::size_t>(uniform(rng_, 0, static_cast<long>(pool_.size()) - 1))]; };
  ConicPoint p = pick();
  if (uniform(rng_, 0, 1) == 1) p = conic_neg(c_, p);
  if (uniform(rng_, 0, 2) == 0) p = conic_add(c_, p, pick());
  if (uniform(rng_, 0, 1) == 1) p = conic_add(c_, p, random_conic_point(c_, 0, rng_, 3, 3));
  return p;
}

}  // namespace pellforms
