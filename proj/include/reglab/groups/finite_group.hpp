#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace reglab {

using Element = std::size_t;

/// Finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<Element>>{{0}}) {}
  /// Validates the table; throws ValidationError naming the first failure.
  explicit FiniteGroup(const std::vector<std::vector<Element>>& table, std::string name = "");

  static FiniteGroup cyclic(std::size_t n);
  /// Order 2q, q odd > 1. Element i < q is ρ^i, element q+i is ρ^i·σ.
  static FiniteGroup dihedral(std::size_t q);
  /// Direct product; mixed radix with the last factor varying fastest.
  static FiniteGroup product(const std::vector<FiniteGroup>& factors);

  std::size_t order() const { return n_; }
  Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
  Element inverse(Element a) const { return inv_[a]; }
  Element conjugate(Element g, Element x) const { return mul(mul(g, x), inv_[g]); }
  std::size_t element_order(Element a) const;
  Element power(Element a, long k) const;

  /// Designated generators: (ρ, σ) for dihedral groups, empty otherwise.
  const std::vector<Element>& designated_generators() const { return designated_; }
  /// q for a group built by dihedral(q), 0 otherwise.
  std::size_t dihedral_q() const { return dihedral_q_; }
  const std::string& name() const { return name_; }

  std::vector<std::vector<Element>> table() const;

  /// Conjugacy classes of elements, each sorted, ordered by smallest member.
  const std::vector<std::vector<Element>>& conjugacy_classes() const { return classes_; }
  std::size_t class_of(Element x) const { return class_of_[x]; }

 private:
  std::size_t n_ = 1;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<Element> designated_;
  std::size_t dihedral_q_ = 0;
  std::string name_;
  std::vector<std::vector<Element>> classes_;
  std::vector<std::size_t> class_of_;
};

}  // namespace reglab
