#pragma once

#include <optional>
#include <vector>

#include "reglab/groups/finite_group.hpp"

namespace reglab {

/// Subgroup as a strictly increasing list of element indices.
class Subgroup {
 public:
  Subgroup() : elements_{0} {}
  /// Throws ValidationError unless `elements` is a subgroup of G.
  Subgroup(const FiniteGroup& G, std::vector<Element> elements);

  static Subgroup trivial() { return Subgroup(); }
  static Subgroup whole(const FiniteGroup& G);
  /// Smallest subgroup containing `generators`.
  static Subgroup generated(const FiniteGroup& G, const std::vector<Element>& generators);

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element x) const;
  bool is_subgroup_of(const Subgroup& other) const;
  /// Position of x in elements(); x must be a member.
  std::size_t index_of(Element x) const;

  bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }
  bool operator<(const Subgroup& o) const;

 private:
  struct Unchecked {};
  Subgroup(Unchecked, std::vector<Element> elements) : elements_(std::move(elements)) {}
  std::vector<Element> elements_;
  friend Subgroup conjugate_subgroup(const FiniteGroup&, const Subgroup&, Element);
};

/// g·H·g⁻¹.
Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& H, Element g);
bool is_normal(const FiniteGroup& G, const Subgroup& H);

/// A short generating set of H (for cyclic H a single generator).
std::vector<Element> generating_set(const FiniteGroup& G, const Subgroup& H);

/// Generator of H when H is cyclic.
std::optional<Element> cyclic_generator(const FiniteGroup& G, const Subgroup& H);
bool is_cyclic(const FiniteGroup& G, const Subgroup& H);

/// (ρ, σ) when H is dihedral of order 2m with m odd and m > 1:
/// ρ generates the cyclic subgroup of index 2 and σ is an involution outside it.
struct DihedralStructure {
  Element rho;
  Element sigma;
  std::size_t m;
};
std::optional<DihedralStructure> dihedral_structure(const FiniteGroup& G, const Subgroup& H);

struct SubgroupClass {
  Subgroup representative;  // lexicographically smallest member
  std::vector<Subgroup> members;
};

/// Conjugacy classes of subgroups sorted by order, then representative.
/// Throws ResourceLimitError when |G| exceeds `limit`.
std::vector<SubgroupClass> enumerate_subgroups(const FiniteGroup& G, std::size_t limit = 48);

/// Index of the class containing H (or a conjugate of H).
std::size_t class_index(const std::vector<SubgroupClass>& classes, const Subgroup& H);

/// H as a group in its own right. Element i of the result is H.elements()[i].
FiniteGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H);

/// Left cosets xH, ordered by smallest representative; g acts by g·xH = (gx)H.
class CosetSpace {
 public:
  /// Throws ValidationError when H is not a subgroup; verifies the action is a homomorphism.
  CosetSpace(const FiniteGroup& G, const Subgroup& H);

  const Subgroup& subgroup() const { return H_; }
  std::size_t points() const { return reps_.size(); }
  /// Smallest element of each coset.
  const std::vector<Element>& representatives() const { return reps_; }
  std::size_t point_of(Element x) const { return point_of_[x]; }
  /// Image of point p under g.
  std::size_t act(Element g, std::size_t p) const { return action_[g][p]; }
  const std::vector<std::size_t>& permutation(Element g) const { return action_[g]; }
  /// Number of points fixed by g.
  std::size_t fixed_points(Element g) const;

 private:
  Subgroup H_;
  std::vector<Element> reps_;
  std::vector<std::size_t> point_of_;
  std::vector<std::vector<std::size_t>> action_;
};

CosetSpace coset_space(const FiniteGroup& G, const Subgroup& H);

}  // namespace reglab
