#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reglab/exactla/int_matrix.hpp"

namespace reglab {

/// Sublattice of Zⁿ, stored by its column Hermite basis.
///
/// Two lattices are equal exactly when their bases are equal.
class Lattice {
 public:
  Lattice() = default;
  /// The zero lattice in Zⁿ.
  explicit Lattice(std::size_t ambient_rank) : n_(ambient_rank), basis_(ambient_rank, 0) {}

  /// Lattice generated by the columns of `generators`.
  static Lattice span(const IntMatrix& generators);
  static Lattice span(std::size_t ambient_rank, const std::vector<IntVector>& generators);
  static Lattice full(std::size_t n);
  /// Wraps a matrix already in Hermite form (no checks).
  static Lattice from_hermite(IntMatrix basis);

  std::size_t ambient_rank() const { return n_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  bool is_zero() const { return rank() == 0; }
  bool is_full_rank() const { return rank() == n_; }

  bool contains(const IntVector& v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v in the basis, if v lies in the lattice.
  std::optional<IntVector> coordinates(const IntVector& v) const;

  /// Image A·L as a lattice in Z^{A.rows()}.
  Lattice image(const IntMatrix& A) const;
  Lattice scaled(const Int& c) const;

  bool operator==(const Lattice& o) const { return n_ == o.n_ && basis_ == o.basis_; }

 private:
  std::size_t n_ = 0;
  IntMatrix basis_;
};

Lattice operator+(const Lattice& a, const Lattice& b);
Lattice intersect(const Lattice& a, const Lattice& b);
/// (L ⊗ Q) ∩ Zⁿ.
Lattice saturate(const Lattice& L);
/// {x : A·x = 0}; always saturated.
Lattice integer_kernel(const IntMatrix& A);
/// {x : A·x ∈ L}.
Lattice preimage(const IntMatrix& A, const Lattice& L);
/// L₁ ⊕ L₂ in Z^{n₁+n₂}.
Lattice direct_sum(const Lattice& a, const Lattice& b);
/// L ⊕ … ⊕ L (k copies).
Lattice repeat_lattice(const Lattice& L, std::size_t k);

/// Index [U:V] when V ⊆ U have equal rank; nullopt when the index is infinite.
std::optional<Int> lattice_index(const Lattice& U, const Lattice& V);

/// Z^k modulo the column span of `relations`.
class PresentedAbelianGroup {
 public:
  PresentedAbelianGroup() = default;
  PresentedAbelianGroup(std::size_t generator_count, IntMatrix relations);

  /// ⊕ Z/dᵢ (dᵢ > 1) ⊕ Z^free, on generators in that order.
  static PresentedAbelianGroup from_invariants(const IntVector& torsion, std::size_t free_rank);

  std::size_t generator_count() const { return k_; }
  const IntMatrix& relations() const { return relations_; }
  const Lattice& relation_lattice() const { return rel_; }

  /// Elementary divisors greater than one.
  const IntVector& torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  /// |A| if finite.
  std::optional<Int> order() const;
  Int torsion_order() const;
  std::string to_string() const;

 private:
  std::size_t k_ = 0;
  IntMatrix relations_;
  Lattice rel_;
  IntVector torsion_;
  std::size_t free_rank_ = 0;
};

/// Homomorphism of presented groups given on generators.
class GroupHom {
 public:
  GroupHom() = default;
  /// Throws ValidationError unless matrix·(source relations) lies in the target relations.
  GroupHom(PresentedAbelianGroup source, PresentedAbelianGroup target, IntMatrix matrix);

  const PresentedAbelianGroup& source() const { return source_; }
  const PresentedAbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  PresentedAbelianGroup kernel() const;
  PresentedAbelianGroup cokernel() const;

 private:
  PresentedAbelianGroup source_;
  PresentedAbelianGroup target_;
  IntMatrix matrix_;
};

/// g ∘ f.
GroupHom compose(const GroupHom& g, const GroupHom& f);

/// |coker f| / |ker f|, or nullopt ("infinite") when either is infinite.
std::optional<Rational> qindex(const GroupHom& f);
std::string qindex_to_string(const std::optional<Rational>& q);

/// Restriction of f to the torsion subgroups.
GroupHom torsion_part(const GroupHom& f);
/// Induced map on the maximal torsion-free quotients.
GroupHom free_part(const GroupHom& f);
/// Hom(-, Z) of f, on the dual bases of the torsion-free quotients.
GroupHom z_dual(const GroupHom& f);
/// Hom(-, Q/Z) of a map between finite groups.
GroupHom pontryagin_dual(const GroupHom& f);

/// The quotient U/V of lattices V ⊆ U ⊆ Zⁿ with a minimal presentation.
///
/// Minimal coordinates come from the Smith form of the V-basis written in a
/// U-basis; unit divisors are dropped. Coordinate i is torsion of order
/// moduli()[i] when that is positive and free when it is zero.
class Subquotient {
 public:
  Subquotient() = default;
  /// Throws ValidationError("not a subquotient") unless V ⊆ U.
  Subquotient(Lattice upper, Lattice lower);

  const Lattice& upper() const { return U_; }
  const Lattice& lower() const { return V_; }
  const PresentedAbelianGroup& group() const { return group_; }
  const IntVector& moduli() const { return moduli_; }
  std::size_t generator_count() const { return moduli_.size(); }

  /// Minimal coordinates of x ∈ U (torsion coordinates reduced). Throws if x ∉ U.
  IntVector coordinates(const IntVector& x) const;
  /// Ambient vector representing the minimal coordinates z.
  IntVector lift(const IntVector& z) const;
  /// n × k matrix whose columns lift the minimal generators.
  const IntMatrix& generator_lifts() const { return lifts_; }
  /// k × rank(U) matrix taking U-basis coordinates to (unreduced) minimal coordinates.
  const IntMatrix& to_min() const { return to_min_; }

 private:
  Lattice U_, V_;
  IntMatrix to_min_;  // k × rank(U)
  IntMatrix lifts_;   // n × k
  IntVector moduli_;
  PresentedAbelianGroup group_;
};

PresentedAbelianGroup subquotient_group(const Lattice& U, const Lattice& V);

/// Map src → dst induced by an ambient matrix sending src.upper into dst.upper
/// and src.lower into dst.lower (both checked).
GroupHom induced_hom(const Subquotient& src, const Subquotient& dst, const IntMatrix& ambient_map);

}  // namespace reglab
