#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reglab/brauer/brauer.hpp"
#include "reglab/gmodules/gmodule.hpp"

namespace reglab {

/// A positive rational with its prime factorization.
struct RegulatorConstant {
  Rational value = 1;
  std::map<Int, long> factorization;  // prime → exponent, zero exponents omitted

  std::string to_string() const;
  long exponent(long prime) const;
};

/// Throws DomainError unless x > 0.
RegulatorConstant make_constant(const Rational& x);

/// Σ_g A_gᵀA_g for a torsion-free module (L = 0).
IntMatrix invariant_pairing(const GModule& Mtf);

RegulatorConstant rc_pairing(const GModule& M, const BrauerRelation& theta);

/// Equivariant φ: P₁ → P₂ with finite cokernel, P₁ (P₂) the permutation modules of
/// the positive (negative) part of Θ.
struct PhiMap {
  BrauerRelation theta;  // canonical form
  std::vector<Subgroup> source_summands;  // one entry per copy of Z[G/H]
  std::vector<Subgroup> target_summands;
  GModule P1, P2;
  IntMatrix matrix;  // rank(P₂) × rank(P₁)
  std::uint64_t seed = 0;
  int draws = 0;
};

PhiMap build_phi(const BrauerRelation& theta, std::uint64_t seed);

/// q((φ⊗M)^G) / q((φ̂⊗M)^G) through Shapiro coordinates M^H.
RegulatorConstant rc_qindex(const GModule& M, const PhiMap& phi);
/// Same quotient computed on the fixed points of P⊗M directly (slow; for tests).
RegulatorConstant rc_qindex_tensor(const GModule& M, const PhiMap& phi);

/// Both routes; throws InternalError with a dump when they differ.
RegulatorConstant regulator_constant(const GModule& M, const BrauerRelation& theta, std::uint64_t phi_seed = 1);

struct IdentityReport {
  std::string id;
  bool pass = false;
  Rational lhs = 0, rhs = 0;
  /// Intermediate invariants in computation order.
  std::vector<std::pair<std::string, std::string>> details;
};

/// C(M)·C(M*)·ĥ⁰(Θ,M)² = 1 for torsion-free M.
IdentityReport verify_dual1(const GModule& M, const BrauerRelation& theta);
/// C(M)/C(M∨) = (ĥ⁻¹(Θ,M)/ĥ⁰(Θ,M))² for finite M.
IdentityReport verify_finite_dual(const GModule& M, const BrauerRelation& theta);
/// Finite dihedral M: the order identity and C_Θ(M) = ĥ⁻¹(Θ,M)/ĥ⁰(Θ,M).
std::vector<IdentityReport> verify_finite_dihedral(const GModule& M);
/// ĥⁱ(Θ_D,M)·ĥ^{i+2}(Θ_D,M) = 1 for i ∈ {−1, 0}.
std::vector<IdentityReport> verify_dcf(const GModule& M);
/// The kernel-order version for a module map.
std::vector<IdentityReport> verify_dcf_kernel(const ModuleHom& f);
/// C_Θ(M)·ĥ⁰(Θ,M)·ĥ¹(Θ,M) = 1 and C_Θ(M) = ĥ⁻¹(Θ,M)/ĥ⁰(Θ,M).
std::vector<IdentityReport> verify_dihedral_main(const GModule& M);

struct BoundsReport {
  long prime = 0;
  long v = 0;
  long L = 0, U = 0;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> details;
};

BoundsReport bounds(const GModule& M, long ell);
IdentityReport verify_bounds(const GModule& M, long ell);
/// v_ℓ(C_{Θ_D}(M)) = 0 for every prime ℓ ∤ q: lhs is the ℓ∤q part of C.
IdentityReport verify_coprime_valuation(const GModule& M);
/// C_{Θ_D}(Z) = 1/q.
IdentityReport verify_rcz(const FiniteGroup& D);
/// C_{Θ_D}(⊕ Z[G/H_v]) = Π_{H_v ⊄ Ρ} (|H_v|/2)⁻¹.
IdentityReport verify_rczs(const FiniteGroup& D, const std::vector<Subgroup>& family);

/// Successful pairing/q-index cross-checks since program start.
std::size_t cross_checks_passed();
/// Calls to regulator_constant since program start, including ones that threw.
std::size_t cross_checks_attempted();

/// Prime divisors of q in increasing order.
std::vector<long> prime_divisors(long q);

}  // namespace reglab
