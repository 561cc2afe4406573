#include "pellforms/primitive.hpp"

#include <stdexcept>

#include "pellforms/error.hpp"

namespace pellforms {

namespace {

// Coordinates (c0, c1) of an algebraic integer v = c0 + c1 w in the integral
// basis {1, w} of its field, w = sqrt(m) or (1 + sqrt(m))/2.
std::optional<std::pair<Int, Int>> integral_coords(const QElem& v) {
  if (!qf_is_integral(v)) return std::nullopt;
  if (v.is_rational()) return std::pair<Int, Int>{v.p(), 0};
  if (mod_floor(v.m(), 4) == 1) {
    // (p + q sqrt m)/r = (p - q)/r + (2q/r) w
    return std::pair<Int, Int>{div_exact(v.p() - v.q(), v.r()), div_exact(2 * v.q(), v.r())};
  }
  return std::pair<Int, Int>{div_exact(v.p(), v.r()), div_exact(v.q(), v.r())};
}

}  // namespace

std::string PrimitiveData::ideal_str() const { return "(" + A.get_str() + ", " + beta.get_str() + "+omega)^2"; }

std::optional<PrimitiveData> analyze_point(const PellConic& c, const ConicPoint& p) {
  PrimitiveData data;
  data.A = qf_den(p.y);
  const Int& A = data.A;
  const QElem qa(A);
  if (!qf_is_integral(qa * p.x)) return std::nullopt;

  const Int a2 = A * A;
  const Rational scaled_norm = Rational(a2) * qf_norm(p.y);
  // A y is integral, so A^2 N(y) = N(A y) is a rational integer.
  if (scaled_norm.get_den() != 1) throw std::logic_error("A^2 N(y) is not an integer");
  data.a2_norm = scaled_norm.get_num();
  if (gcd(data.a2_norm, a2) != 1 || gcd(A, c.delta) != 1) return std::nullopt;

  data.inverse = mod_inverse(mod_floor(data.a2_norm, a2), a2);
  if (p.y.is_zero()) {
    data.b = 0;
  } else {
    // a A^2 N(y) x / y = a (A x)(A conj y) is integral; only its class
    // modulo A^2 matters, so the w-coordinate has to vanish mod A^2.
    const auto b = integral_coords(QElem(data.inverse * data.a2_norm) * p.x / p.y);
    if (!b || !mpz_divisible_p(b->second.get_mpz_t(), a2.get_mpz_t())) return std::nullopt;
    data.b = b->first;
  }
  data.beta = mod_floor(data.b, a2);

  // Equivalent characterization: A^2 | Q0(b, 1) and (x - b y)/A integral.
  const bool divides = mpz_divisible_p(c.q0(data.b).get_mpz_t(), a2.get_mpz_t()) != 0;
  if (!divides || !qf_is_integral((p.x - QElem(data.b) * p.y) / qa)) {
    throw std::logic_error("primitive point fails the equivalent characterization: " + p.str());
  }

  data.form = F2ClassRep::make(c, A, data.beta);
  const TorsorPoint tu = TorsorPoint::from(substitution_matrix(data.form) * Vec2{p.x, p.y});
  data.quotient = tu.t;
  data.numerator = tu.u;
  return data;
}

Form attached_form_prime(const PellConic& c, const PrimitiveData& data) {
  return {data.A, 2 * data.beta + c.sigma, div_exact(c.q0(data.beta), data.A)};
}

TorsorPoint phi(const ConicPoint& p, const PrimitiveData& data) {
  return TorsorPoint::from(substitution_matrix(data.form) * Vec2{p.x, p.y});
}

ConicPoint phi_inv(const PellConic& c, const F2ClassRep& q, const TorsorPoint& tq) {
  if (q.eval(c, tq) != QElem(1)) throw Error(ErrorKind::NotOnTorsor, tq.str() + " on " + q.form(c).str());
  if (!qf_is_integral(tq.t) || !qf_is_integral(tq.u)) throw Error(ErrorKind::NotIntegral, tq.str());
  const Vec2 v = substitution_matrix(q).inverse() * tq.vec();
  if (qf_den(v.second) != q.A) {
    throw Error(ErrorKind::DenominatorCollapse, "den(" + v.second.str() + ") != " + q.A.get_str());
  }
  return {v.first, v.second};
}

std::size_t lambda_K(const PellConic& c, const PrimitiveData& data, const ClassGroup& g) {
  const auto cls = g.class_of(data.form.form(c));
  if (!cls) throw std::logic_error("attached form outside the class group");
  return *cls;
}

std::optional<KernelDecomposition> decompose_kernel(const PellConic& c, const ConicPoint& p, const PrimitiveData& data) {
  const auto witness = represents_one_integrally(c, data.form.form(c));
  if (!witness) return std::nullopt;
  const auto& [t, u] = *witness;
  const Int& A = data.A;
  KernelDecomposition out;
  out.rational = {QElem(Rational(Int(A * A * t + data.beta * u), A)), QElem(Rational(u, A))};
  out.integral = conic_sub(c, p, out.rational);
  if (!is_integral_point(out.integral)) throw std::logic_error("P - R is not integral for " + p.str());
  return out;
}

}  // namespace pellforms
