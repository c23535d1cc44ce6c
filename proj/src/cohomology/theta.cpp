#include "reglab/cohomology/theta.hpp"

#include "reglab/errors.hpp"

namespace reglab {

Rational rational_power(const Rational& x, long e) {
  if (x == 0 && e < 0) throw DomainError("zero to a negative power");
  Int num = x.get_num(), den = x.get_den();
  if (e < 0) {
    std::swap(num, den);
    e = -e;
  }
  Int a, b;
  mpz_pow_ui(a.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(b.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
  Rational r(a, b);
  r.canonicalize();
  return r;
}

ThetaProduct theta_product(const GModule& M, const BrauerRelation& theta, int degree, TateRoute route) {
  ThetaProduct out;
  out.degree = degree;
  for (const auto& t : theta.terms) {
    if (t.coeff == 0) continue;
    out.value *= rational_power(Rational(tate(M, t.subgroup, degree, route).order), t.coeff);
  }
  out.value.canonicalize();
  return out;
}

Rational theta_kernel_product(const ModuleHom& f, const BrauerRelation& theta, int degree, TateRoute route) {
  Rational v = 1;
  for (const auto& t : theta.terms) {
    if (t.coeff == 0) continue;
    v *= rational_power(Rational(induced_kernel_order(f, t.subgroup, degree, route)), t.coeff);
  }
  v.canonicalize();
  return v;
}

}  // namespace reglab
