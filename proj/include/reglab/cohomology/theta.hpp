#pragma once

#include "reglab/brauer/brauer.hpp"
#include "reglab/cohomology/tate.hpp"

namespace reglab {

struct ThetaProduct {
  int degree = 0;
  Rational value = 1;
};

/// Π_H ĥⁱ(H,M)^{n_H}.
ThetaProduct theta_product(const GModule& M, const BrauerRelation& theta, int degree,
                           TateRoute route = TateRoute::Auto);

/// Π_H |ker Ĥⁱ(H,f)|^{n_H}.
Rational theta_kernel_product(const ModuleHom& f, const BrauerRelation& theta, int degree,
                              TateRoute route = TateRoute::Auto);

/// x^e for integer e (negative allowed).
Rational rational_power(const Rational& x, long e);

}  // namespace reglab
