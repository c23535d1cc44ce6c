#include "reglab/groups/finite_group.hpp"

#include <algorithm>
#include <string>

#include "reglab/errors.hpp"

namespace reglab {

FiniteGroup::FiniteGroup(const std::vector<std::vector<Element>>& table, std::string name)
    : n_(table.size()), name_(std::move(name)) {
  if (n_ == 0) throw ValidationError("group table is empty");
  table_.resize(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (table[a].size() != n_)
      throw ValidationError("group table row " + std::to_string(a) + " has length " + std::to_string(table[a].size()) +
                            ", expected " + std::to_string(n_));
    for (std::size_t b = 0; b < n_; ++b) {
      if (table[a][b] >= n_)
        throw ValidationError("group table entry mul[" + std::to_string(a) + "][" + std::to_string(b) +
                              "] is out of range");
      table_[a * n_ + b] = table[a][b];
    }
  }
  for (std::size_t a = 0; a < n_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a)
      throw ValidationError("element 0 is not an identity (fails at " + std::to_string(a) + ")");
  std::vector<char> seen(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n_; ++b) {
      if (seen[mul(a, b)]) throw ValidationError("group table row " + std::to_string(a) + " is not a permutation");
      seen[mul(a, b)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n_; ++b) {
      if (seen[mul(b, a)]) throw ValidationError("group table column " + std::to_string(a) + " is not a permutation");
      seen[mul(b, a)] = 1;
    }
  }
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const Element ab = mul(a, b);
      for (std::size_t c = 0; c < n_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c)))
          throw ValidationError("associativity fails for (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
    }
  inv_.resize(n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
  class_of_.assign(n_, n_);
  for (std::size_t x = 0; x < n_; ++x) {
    if (class_of_[x] != n_) continue;
    std::vector<Element> cls;
    for (std::size_t g = 0; g < n_; ++g) cls.push_back(conjugate(g, x));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (Element y : cls) class_of_[y] = classes_.size();
    classes_.push_back(std::move(cls));
  }
  if (name_.empty()) name_ = "table(" + std::to_string(n_) + ")";
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw ValidationError("cyclic group needs n >= 1");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return FiniteGroup(t, "cyclic(" + std::to_string(n) + ")");
}

FiniteGroup FiniteGroup::dihedral(std::size_t q) {
  if (q < 3 || q % 2 == 0) throw ValidationError("dihedral(q) needs odd q > 1, got " + std::to_string(q));
  const std::size_t n = 2 * q;
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t a = x % q, ea = x / q, b = y % q, eb = y / q;
      std::size_t c = ea ? (a + q - b) % q : (a + b) % q;
      t[x][y] = ((ea ^ eb) ? q : 0) + c;
    }
  FiniteGroup G(t, "dihedral(" + std::to_string(q) + ")");
  G.designated_ = {1, q};
  G.dihedral_q_ = q;
  return G;
}

FiniteGroup FiniteGroup::product(const std::vector<FiniteGroup>& factors) {
  if (factors.empty()) return cyclic(1);
  std::size_t n = 1;
  std::string name = "product(";
  for (std::size_t k = 0; k < factors.size(); ++k) {
    n *= factors[k].order();
    if (n > 100000) throw ResourceLimitError("product group too large");
    name += (k ? "," : "") + factors[k].name();
  }
  name += ")";
  std::vector<std::size_t> stride(factors.size());
  std::size_t s = 1;
  for (std::size_t k = factors.size(); k-- > 0;) {
    stride[k] = s;
    s *= factors[k].order();
  }
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t z = 0;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        std::size_t xi = (x / stride[k]) % factors[k].order();
        std::size_t yi = (y / stride[k]) % factors[k].order();
        z += factors[k].mul(xi, yi) * stride[k];
      }
      t[x][y] = z;
    }
  return FiniteGroup(t, name);
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  Element x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

Element FiniteGroup::power(Element a, long k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  Element r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> t(n_, std::vector<Element>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

}  // namespace reglab
