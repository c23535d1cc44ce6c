#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reglab/exactla/int_matrix.hpp"
#include "reglab/groups/finite_group.hpp"
#include "reglab/groups/subgroups.hpp"

namespace reglab {

struct BrauerTerm {
  Subgroup subgroup;
  long coeff = 0;
};

/// Formal combination Σ n_H·H of subgroups of `group`.
struct BrauerRelation {
  FiniteGroup group;
  std::vector<BrauerTerm> terms;

  std::string to_string() const;
};

/// Replaces each subgroup by its class representative, merges equal terms,
/// drops zero coefficients and orders terms by class.
BrauerRelation canonicalize(const BrauerRelation& theta);
BrauerRelation canonicalize(const BrauerRelation& theta, const std::vector<SubgroupClass>& classes);

/// χ_{G/H}(g): number of cosets fixed by g.
std::size_t fixed_coset_count(const FiniteGroup& G, const Subgroup& H, Element g);

struct PermCharMatrix {
  std::vector<Subgroup> subgroups;                  // class representatives, by order
  std::vector<std::vector<Element>> element_classes;  // by smallest member
  IntMatrix entries;                                // subgroups × element classes
};

PermCharMatrix perm_char_matrix(const FiniteGroup& G);

struct BrauerCheck {
  bool ok = true;
  /// Smallest element of the first class where the character sum is nonzero.
  std::optional<Element> witness;
  long witness_value = 0;
};

BrauerCheck is_brauer_relation(const BrauerRelation& theta);

/// HNF basis of the integer relations between permutation characters.
std::vector<BrauerRelation> relation_lattice(const FiniteGroup& G);

/// Θ_D = 1 + 2D − Ρ − 2Σ in dihedral(q).
BrauerRelation dihedral_relation(std::size_t q);
/// The same relation for a group built by FiniteGroup::dihedral.
BrauerRelation dihedral_relation(const FiniteGroup& D);

/// Ρ = ⟨ρ⟩ and Σ = ⟨σ⟩ of a group built by FiniteGroup::dihedral.
Subgroup rotation_subgroup(const FiniteGroup& D);
Subgroup reflection_subgroup(const FiniteGroup& D);

}  // namespace reglab
