#include "reglab/brauer/brauer.hpp"

#include <map>
#include <sstream>

#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"

namespace reglab {

std::string BrauerRelation::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    os << (first ? (t.coeff < 0 ? "-" : "") : (t.coeff < 0 ? " - " : " + "));
    long c = t.coeff < 0 ? -t.coeff : t.coeff;
    if (c != 1) os << c << "*";
    os << "[";
    for (std::size_t i = 0; i < t.subgroup.elements().size(); ++i) os << (i ? "," : "") << t.subgroup.elements()[i];
    os << "]";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

BrauerRelation canonicalize(const BrauerRelation& theta, const std::vector<SubgroupClass>& classes) {
  std::map<std::size_t, long> coeff;
  for (const auto& t : theta.terms) coeff[class_index(classes, t.subgroup)] += t.coeff;
  BrauerRelation out{theta.group, {}};
  for (const auto& [idx, c] : coeff)
    if (c != 0) out.terms.push_back({classes[idx].representative, c});
  return out;
}

BrauerRelation canonicalize(const BrauerRelation& theta) {
  return canonicalize(theta, enumerate_subgroups(theta.group));
}

std::size_t fixed_coset_count(const FiniteGroup& G, const Subgroup& H, Element g) {
  std::size_t c = 0;
  for (Element x = 0; x < G.order(); ++x)
    if (H.contains(G.mul(G.mul(G.inverse(x), g), x))) ++c;
  return c / H.order();
}

PermCharMatrix perm_char_matrix(const FiniteGroup& G) {
  PermCharMatrix P;
  for (const auto& c : enumerate_subgroups(G)) P.subgroups.push_back(c.representative);
  P.element_classes = G.conjugacy_classes();
  P.entries = IntMatrix(P.subgroups.size(), P.element_classes.size());
  for (std::size_t i = 0; i < P.subgroups.size(); ++i)
    for (std::size_t j = 0; j < P.element_classes.size(); ++j)
      P.entries(i, j) = static_cast<unsigned long>(fixed_coset_count(G, P.subgroups[i], P.element_classes[j][0]));
  return P;
}

BrauerCheck is_brauer_relation(const BrauerRelation& theta) {
  const FiniteGroup& G = theta.group;
  for (const auto& t : theta.terms) Subgroup(G, t.subgroup.elements());  // throws on a malformed subgroup
  BrauerCheck out;
  for (const auto& cls : G.conjugacy_classes()) {
    long sum = 0;
    for (const auto& t : theta.terms) sum += t.coeff * static_cast<long>(fixed_coset_count(G, t.subgroup, cls[0]));
    if (sum != 0) {
      out.ok = false;
      out.witness = cls[0];
      out.witness_value = sum;
      return out;
    }
  }
  return out;
}

std::vector<BrauerRelation> relation_lattice(const FiniteGroup& G) {
  PermCharMatrix P = perm_char_matrix(G);
  IntMatrix K = kernel_basis(P.entries.transpose());
  std::vector<BrauerRelation> out;
  for (std::size_t j = 0; j < K.cols(); ++j) {
    BrauerRelation r{G, {}};
    for (std::size_t i = 0; i < K.rows(); ++i)
      if (K(i, j) != 0) {
        if (!K(i, j).fits_slong_p()) throw ResourceLimitError("relation coefficient does not fit in a machine word");
        r.terms.push_back({P.subgroups[i], K(i, j).get_si()});
      }
    if (!is_brauer_relation(r).ok) throw InternalError("relation_lattice produced a non-relation");
    out.push_back(std::move(r));
  }
  return out;
}

Subgroup rotation_subgroup(const FiniteGroup& D) {
  if (!D.dihedral_q()) throw DomainError("group was not built as a dihedral group");
  return Subgroup::generated(D, {D.designated_generators()[0]});
}

Subgroup reflection_subgroup(const FiniteGroup& D) {
  if (!D.dihedral_q()) throw DomainError("group was not built as a dihedral group");
  return Subgroup::generated(D, {D.designated_generators()[1]});
}

BrauerRelation dihedral_relation(const FiniteGroup& D) {
  return BrauerRelation{D,
                        {{Subgroup::trivial(), 1},
                         {reflection_subgroup(D), -2},
                         {rotation_subgroup(D), -1},
                         {Subgroup::whole(D), 2}}};
}

BrauerRelation dihedral_relation(std::size_t q) { return dihedral_relation(FiniteGroup::dihedral(q)); }

}  // namespace reglab
