#include "reglab/groups/subgroups.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

// Closure of `start` ∪ gens under right multiplication by gens.
std::vector<Element> closure(const FiniteGroup& G, const std::vector<Element>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<Element> out{0};
  in[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Element s : gens) {
      Element y = G.mul(out[i], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subgroup::Subgroup(const FiniteGroup& G, std::vector<Element> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
    throw ValidationError("subgroup lists an element twice");
  if (elements_.empty() || elements_[0] != 0) throw ValidationError("subgroup does not contain the identity");
  for (Element x : elements_)
    if (x >= G.order()) throw ValidationError("subgroup element " + std::to_string(x) + " is out of range");
  for (Element x : elements_) {
    if (!contains(G.inverse(x))) throw ValidationError("subgroup not closed under inverse at " + std::to_string(x));
    for (Element y : elements_)
      if (!contains(G.mul(x, y)))
        throw ValidationError("subgroup not closed: " + std::to_string(x) + "*" + std::to_string(y));
  }
}

Subgroup Subgroup::whole(const FiniteGroup& G) {
  std::vector<Element> all(G.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(Unchecked{}, std::move(all));
}

Subgroup Subgroup::generated(const FiniteGroup& G, const std::vector<Element>& generators) {
  for (Element g : generators)
    if (g >= G.order()) throw ValidationError("generator " + std::to_string(g) + " is out of range");
  return Subgroup(Unchecked{}, closure(G, generators));
}

bool Subgroup::contains(Element x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::size_t Subgroup::index_of(Element x) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
  if (it == elements_.end() || *it != x) throw std::out_of_range("element not in subgroup");
  return static_cast<std::size_t>(it - elements_.begin());
}

bool Subgroup::operator<(const Subgroup& o) const {
  if (order() != o.order()) return order() < o.order();
  return elements_ < o.elements_;
}

Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& H, Element g) {
  std::vector<Element> e;
  e.reserve(H.order());
  for (Element h : H.elements()) e.push_back(G.conjugate(g, h));
  std::sort(e.begin(), e.end());
  return Subgroup(Subgroup::Unchecked{}, std::move(e));
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
  for (Element g = 0; g < G.order(); ++g)
    for (Element h : H.elements())
      if (!H.contains(G.conjugate(g, h))) return false;
  return true;
}

std::vector<Element> generating_set(const FiniteGroup& G, const Subgroup& H) {
  if (auto c = cyclic_generator(G, H)) {
    if (*c == 0) return {};
    return {*c};
  }
  // Greedy: add the element enlarging the closure the most (ties: lowest index).
  std::vector<Element> gens;
  std::vector<Element> current{0};
  while (current.size() < H.order()) {
    Element best = 0;
    std::size_t best_size = 0;
    for (Element x : H.elements()) {
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      auto trial = gens;
      trial.push_back(x);
      std::size_t s = closure(G, trial).size();
      if (s > best_size) {
        best_size = s;
        best = x;
      }
    }
    gens.push_back(best);
    current = closure(G, gens);
  }
  return gens;
}

std::optional<Element> cyclic_generator(const FiniteGroup& G, const Subgroup& H) {
  for (Element x : H.elements())
    if (G.element_order(x) == H.order()) return x;
  return std::nullopt;
}

bool is_cyclic(const FiniteGroup& G, const Subgroup& H) { return cyclic_generator(G, H).has_value(); }

std::optional<DihedralStructure> dihedral_structure(const FiniteGroup& G, const Subgroup& H) {
  if (H.order() < 6 || H.order() % 4 != 2) return std::nullopt;
  const std::size_t m = H.order() / 2;
  std::optional<Element> rho;
  for (Element x : H.elements())
    if (G.element_order(x) == m) {
      rho = x;
      break;
    }
  if (!rho) return std::nullopt;
  Subgroup R = Subgroup::generated(G, {*rho});
  std::optional<Element> sigma;
  for (Element x : H.elements()) {
    if (R.contains(x)) continue;
    if (G.element_order(x) != 2) return std::nullopt;
    if (!sigma) sigma = x;
  }
  if (G.conjugate(*sigma, *rho) != G.inverse(*rho)) return std::nullopt;
  return DihedralStructure{*rho, *sigma, m};
}

std::vector<SubgroupClass> enumerate_subgroups(const FiniteGroup& G, std::size_t limit) {
  if (G.order() > limit)
    throw ResourceLimitError("subgroup enumeration: group order " + std::to_string(G.order()) + " exceeds limit " +
                             std::to_string(limit));
  // Start from cyclic subgroups and join with single elements until nothing new appears.
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> queue;
  auto add = [&](std::vector<Element> e) {
    if (found.insert(e).second) queue.push_back(std::move(e));
  };
  for (Element x = 0; x < G.order(); ++x) add(closure(G, {x}));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::vector<Element> S = queue[i];
    std::vector<Element> gens = S;
    for (Element x = 0; x < G.order(); ++x) {
      if (std::binary_search(S.begin(), S.end(), x)) continue;
      gens.push_back(x);
      add(closure(G, gens));
      gens.pop_back();
    }
  }
  std::vector<Subgroup> all;
  for (const auto& e : found) all.push_back(Subgroup::generated(G, e));
  std::sort(all.begin(), all.end());
  std::vector<SubgroupClass> classes;
  std::set<std::vector<Element>> assigned;
  for (const auto& H : all) {
    if (assigned.count(H.elements())) continue;
    std::set<std::vector<Element>> conj;
    for (Element g = 0; g < G.order(); ++g) conj.insert(conjugate_subgroup(G, H, g).elements());
    SubgroupClass cls;
    for (const auto& e : conj) {
      assigned.insert(e);
      cls.members.push_back(Subgroup::generated(G, e));
    }
    cls.representative = cls.members.front();
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [](const SubgroupClass& a, const SubgroupClass& b) { return a.representative < b.representative; });
  return classes;
}

std::size_t class_index(const std::vector<SubgroupClass>& classes, const Subgroup& H) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].representative.order() != H.order()) continue;
    for (const auto& m : classes[i].members)
      if (m == H) return i;
  }
  throw ValidationError("subgroup not found among the conjugacy classes");
}

FiniteGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H) {
  const auto& e = H.elements();
  std::vector<std::vector<Element>> t(e.size(), std::vector<Element>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) t[i][j] = H.index_of(G.mul(e[i], e[j]));
  return FiniteGroup(t, "subgroup(" + std::to_string(e.size()) + ")");
}

CosetSpace::CosetSpace(const FiniteGroup& G, const Subgroup& H) : H_(H) {
  Subgroup(G, H.elements());  // validates closure
  const std::size_t n = G.order();
  point_of_.assign(n, n);
  for (Element x = 0; x < n; ++x) {
    if (point_of_[x] != n) continue;
    for (Element h : H.elements()) point_of_[G.mul(x, h)] = reps_.size();
    reps_.push_back(x);
  }
  action_.assign(n, std::vector<std::size_t>(reps_.size()));
  for (Element g = 0; g < n; ++g)
    for (std::size_t p = 0; p < reps_.size(); ++p) action_[g][p] = point_of_[G.mul(g, reps_[p])];
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h) {
      const auto& gh = action_[G.mul(g, h)];
      for (std::size_t p = 0; p < reps_.size(); ++p)
        if (action_[g][action_[h][p]] != gh[p]) throw InternalError("coset action is not a homomorphism");
    }
}

std::size_t CosetSpace::fixed_points(Element g) const {
  std::size_t c = 0;
  for (std::size_t p = 0; p < reps_.size(); ++p) c += (action_[g][p] == p);
  return c;
}

CosetSpace coset_space(const FiniteGroup& G, const Subgroup& H) { return CosetSpace(G, H); }

}  // namespace reglab
