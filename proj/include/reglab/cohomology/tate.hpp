#pragma once

#include <optional>

#include "reglab/exactla/lattice.hpp"
#include "reglab/gmodules/gmodule.hpp"

namespace reglab {

/// How degree 1 (and degree 2, through the dimension shift) is computed.
///  Auto        - periodicity shortcuts for cyclic H, then Cocycle.
///  Cocycle     - cochains determined by their values on a generating set of H.
///  FullCochain - inhomogeneous cochains on all non-identity elements.
enum class TateRoute { Auto, Cocycle, FullCochain };

struct TateGroup {
  int degree = 0;
  Subgroup subgroup;
  IntVector divisors;  // elementary divisors > 1
  Int order = 1;
};

/// Ĥⁱ(H, M). Degrees −1..2 always; any degree for cyclic H (period 2) and
/// for dihedral H of order 2·odd (period 4). Throws DomainError otherwise.
TateGroup tate(const GModule& M, const Subgroup& H, int degree, TateRoute route = TateRoute::Auto);

/// |ker Ĥⁱ(H, f)|.
Int induced_kernel_order(const ModuleHom& f, const Subgroup& H, int degree, TateRoute route = TateRoute::Auto);

/// The degree in −1..2 that computes degree i for H, or nullopt if i is unsupported.
std::optional<int> reduced_degree(const FiniteGroup& G, const Subgroup& H, int degree, TateRoute route);

/// ĥ⁰(C,M)/ĥ⁻¹(C,M) for cyclic C.
Rational herbrand(const GModule& M, const Subgroup& C);

/// v_ℓ of the Herbrand quotient from ranks of fixed points (Rosen's formula).
long rosen_valuation(const GModule& M, const Subgroup& P, long ell);

/// ℓ-adic valuation of a nonzero rational.
long valuation(const Rational& x, long ell);
long valuation(const Int& x, long ell);

}  // namespace reglab
