#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reglab/exactla/lattice.hpp"
#include "reglab/groups/finite_group.hpp"
#include "reglab/groups/subgroups.hpp"

namespace reglab {

/// M = Zⁿ/L with one n×n action matrix per group element.
class GModule {
 public:
  GModule() = default;
  /// No validation here; call validate() on untrusted input.
  GModule(FiniteGroup group, Lattice relations, std::vector<IntMatrix> action);

  const FiniteGroup& group() const { return group_; }
  std::size_t ambient_rank() const { return relations_.ambient_rank(); }
  const Lattice& relations() const { return relations_; }
  const IntMatrix& action(Element g) const { return action_[g]; }
  const std::vector<IntMatrix>& actions() const { return action_; }

  bool is_finite() const { return relations_.is_full_rank(); }
  bool is_torsion_free() const;
  bool is_zero() const { return relations_.is_full_rank() && relations_.basis().is_identity(); }
  /// rank of M ⊗ Q.
  std::size_t rational_rank() const { return ambient_rank() - relations_.rank(); }
  /// The underlying abelian group Zⁿ/L.
  PresentedAbelianGroup abelian_group() const;

 private:
  FiniteGroup group_;
  Lattice relations_;
  std::vector<IntMatrix> action_;
};

/// Returns a description of the first violated module invariant, if any.
std::optional<std::string> validation_failure(const GModule& M);
/// Throws ValidationError with the witness from validation_failure.
void validate(const GModule& M);

/// Z[G]-linear map; matrix is (target rank) × (source rank).
class ModuleHom {
 public:
  ModuleHom() = default;
  ModuleHom(GModule source, GModule target, IntMatrix matrix);

  const GModule& source() const { return source_; }
  const GModule& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

 private:
  GModule source_;
  GModule target_;
  IntMatrix matrix_;
};

std::optional<std::string> validation_failure(const ModuleHom& f);
void validate(const ModuleHom& f);

/// M^H = F/L with F = {x : (A_h − I)x ∈ L for h in a generating set of H}.
struct FixedPointData {
  Lattice F;
  Subquotient quotient;  // F/L
  const PresentedAbelianGroup& abstract() const { return quotient.group(); }
};

FixedPointData fixed_points(const GModule& M, const Subgroup& H);
/// Lattice F of fixed_points without building the quotient.
Lattice fixed_lattice(const GModule& M, const Subgroup& H);
/// N_H·Zⁿ + L.
Lattice norm_image(const GModule& M, const Subgroup& H);
/// Σ_{h∈H} A_h.
IntMatrix norm_matrix(const GModule& M, const Subgroup& H);

/// Trivial module Z^rank (or (Z/d)^rank for d > 0).
GModule trivial_module(const FiniteGroup& G, std::size_t rank = 1, long modulus = 0);
GModule permutation_module(const FiniteGroup& G, const Subgroup& H);
GModule direct_sum(const GModule& M, const GModule& N);
GModule direct_sum(const std::vector<GModule>& parts);
GModule tensor_product(const GModule& M, const GModule& N);
/// M viewed as a module for H (group re-indexed as subgroup_as_group).
GModule restrict_module(const GModule& M, const Subgroup& H);

/// Re-presentation with minimal generators: relations diag(dᵢ) on the torsion
/// coordinates, free coordinates after. `to`/`from` convert coordinates.
struct MinimalModule {
  GModule module;
  IntMatrix to;    // k × n
  IntMatrix from;  // n × k
  IntVector moduli;
};
MinimalModule minimize(const GModule& M);

struct TorsionDecomposition {
  GModule tors;       // sat(L)/L on a basis of sat(L)
  GModule mt;         // Zⁿ/sat(L), re-presented as Z^r
  ModuleHom inclusion;   // tors → M
  ModuleHom projection;  // M → mt
};
TorsionDecomposition torsion_decomposition(const GModule& M);

/// Hom(M, Z) with action (A_{g⁻¹})ᵀ; M must be torsion-free.
GModule dual_module(const GModule& M);
/// Hom(M, Q/Z) for finite M, on the Smith-diagonal presentation.
GModule finite_dual(const GModule& M);

/// Exact equality of presentations: same rank, relations and action matrices modulo L.
bool same_module(const GModule& a, const GModule& b);

}  // namespace reglab
