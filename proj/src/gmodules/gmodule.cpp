#include "reglab/gmodules/gmodule.hpp"

#include <string>
#include <utility>

#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"

namespace reglab {

namespace {

std::string vec_str(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

// Every column of X lies in L.
std::optional<std::size_t> first_column_outside(const IntMatrix& X, const Lattice& L) {
  for (std::size_t j = 0; j < X.cols(); ++j) {
    IntVector c = X.column(j);
    if (is_zero(c)) continue;
    if (L.is_zero() || !L.contains(c)) return j;
  }
  return std::nullopt;
}

// Reduces the rows of X belonging to torsion coordinates modulo their order.
void reduce_rows(IntMatrix& X, const IntVector& moduli) {
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] == 0) continue;
    for (std::size_t j = 0; j < X.cols(); ++j)
      mpz_fdiv_r(X(i, j).get_mpz_t(), X(i, j).get_mpz_t(), moduli[i].get_mpz_t());
  }
}

Lattice diagonal_relations(const IntVector& moduli) {
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] == 0) continue;
    IntVector c(moduli.size());
    c[i] = moduli[i];
    cols.push_back(c);
  }
  return Lattice::span(moduli.size(), cols);
}

}  // namespace

GModule::GModule(FiniteGroup group, Lattice relations, std::vector<IntMatrix> action)
    : group_(std::move(group)), relations_(std::move(relations)), action_(std::move(action)) {
  if (action_.size() != group_.order())
    throw ValidationError("module action lists " + std::to_string(action_.size()) + " matrices for a group of order " +
                          std::to_string(group_.order()));
  const std::size_t n = relations_.ambient_rank();
  for (std::size_t g = 0; g < action_.size(); ++g)
    if (action_[g].rows() != n || action_[g].cols() != n)
      throw ValidationError("action matrix of element " + std::to_string(g) + " is not " + std::to_string(n) + "x" +
                            std::to_string(n));
}

bool GModule::is_torsion_free() const { return saturate(relations_) == relations_; }

PresentedAbelianGroup GModule::abelian_group() const {
  return PresentedAbelianGroup(ambient_rank(), relations_.basis());
}

std::optional<std::string> validation_failure(const GModule& M) {
  const FiniteGroup& G = M.group();
  const std::size_t n = M.ambient_rank();
  const Lattice& L = M.relations();
  if (!M.action(0).is_identity()) return std::string("action of the identity element 0 is not the identity matrix");
  for (Element g = 0; g < G.order(); ++g) {
    if (L.rank() == 0) break;
    IntMatrix img = M.action(g) * L.basis();
    if (auto j = first_column_outside(img, L))
      return "relation lattice not stable under element " + std::to_string(g) + ": relation vector " +
             vec_str(L.basis().column(*j)) + " maps outside L";
  }
  for (Element g = 0; g < G.order(); ++g)
    for (Element h = 0; h < G.order(); ++h) {
      IntMatrix D = M.action(g) * M.action(h) - M.action(G.mul(g, h));
      if (first_column_outside(D, L))
        return "action is not a homomorphism at (g,h) = (" + std::to_string(g) + "," + std::to_string(h) +
               "): A_g*A_h != A_gh modulo relations";
    }
  (void)n;
  return std::nullopt;
}

void validate(const GModule& M) {
  if (auto err = validation_failure(M)) throw ValidationError(*err);
}

ModuleHom::ModuleHom(GModule source, GModule target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ambient_rank() || matrix_.cols() != source_.ambient_rank())
    throw ValidationError("module hom matrix has the wrong shape");
  if (source_.group().order() != target_.group().order())
    throw ValidationError("module hom between modules over different groups");
}

std::optional<std::string> validation_failure(const ModuleHom& f) {
  const GModule& M = f.source();
  const GModule& N = f.target();
  if (M.relations().rank()) {
    if (auto j = first_column_outside(f.matrix() * M.relations().basis(), N.relations()))
      return "module hom does not map relation vector " + vec_str(M.relations().basis().column(*j)) +
             " into the target relations";
  }
  for (Element g = 0; g < M.group().order(); ++g) {
    IntMatrix D = N.action(g) * f.matrix() - f.matrix() * M.action(g);
    if (first_column_outside(D, N.relations()))
      return "module hom does not commute with element " + std::to_string(g);
  }
  return std::nullopt;
}

void validate(const ModuleHom& f) {
  if (auto err = validation_failure(f)) throw ValidationError(*err);
}

IntMatrix norm_matrix(const GModule& M, const Subgroup& H) {
  IntMatrix N(M.ambient_rank(), M.ambient_rank());
  for (Element h : H.elements()) N = N + M.action(h);
  return N;
}

Lattice fixed_lattice(const GModule& M, const Subgroup& H) {
  const std::size_t n = M.ambient_rank();
  auto gens = generating_set(M.group(), H);
  if (gens.empty() || n == 0) return Lattice::full(n);
  IntMatrix S(n * gens.size(), n);
  for (std::size_t k = 0; k < gens.size(); ++k) S.set_block(k * n, 0, M.action(gens[k]) - IntMatrix::identity(n));
  return preimage(S, repeat_lattice(M.relations(), gens.size()));
}

FixedPointData fixed_points(const GModule& M, const Subgroup& H) {
  Lattice F = fixed_lattice(M, H);
  Subquotient Q(F, M.relations());
  Lattice NH = norm_image(M, H);
  if (!F.contains(NH)) throw InternalError("fixed_points: norm image is not contained in the fixed lattice");
  return FixedPointData{std::move(F), std::move(Q)};
}

Lattice norm_image(const GModule& M, const Subgroup& H) {
  return M.relations() + Lattice::span(norm_matrix(M, H));
}

GModule trivial_module(const FiniteGroup& G, std::size_t rank, long modulus) {
  Lattice L = modulus > 0 ? Lattice::full(rank).scaled(Int(modulus)) : Lattice(rank);
  return GModule(G, std::move(L), std::vector<IntMatrix>(G.order(), IntMatrix::identity(rank)));
}

GModule permutation_module(const FiniteGroup& G, const Subgroup& H) {
  CosetSpace X(G, H);
  const std::size_t m = X.points();
  std::vector<IntMatrix> act;
  act.reserve(G.order());
  for (Element g = 0; g < G.order(); ++g) {
    IntMatrix P(m, m);
    for (std::size_t p = 0; p < m; ++p) P(X.act(g, p), p) = 1;
    act.push_back(std::move(P));
  }
  return GModule(G, Lattice(m), std::move(act));
}

GModule direct_sum(const GModule& M, const GModule& N) {
  if (M.group().order() != N.group().order()) throw ValidationError("direct sum of modules over different groups");
  std::vector<IntMatrix> act;
  for (Element g = 0; g < M.group().order(); ++g) act.push_back(block_diagonal({M.action(g), N.action(g)}));
  return GModule(M.group(), direct_sum(M.relations(), N.relations()), std::move(act));
}

GModule direct_sum(const std::vector<GModule>& parts) {
  if (parts.empty()) throw ValidationError("direct sum of no modules");
  GModule S = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) S = direct_sum(S, parts[i]);
  return S;
}

GModule tensor_product(const GModule& M, const GModule& N) {
  if (M.group().order() != N.group().order()) throw ValidationError("tensor product of modules over different groups");
  const std::size_t n = M.ambient_rank(), m = N.ambient_rank();
  check_column_limit(n * m, "tensor_product");
  std::vector<IntVector> gens;
  for (std::size_t a = 0; a < M.relations().rank(); ++a)
    for (std::size_t j = 0; j < m; ++j) {
      IntVector v(n * m);
      for (std::size_t i = 0; i < n; ++i) v[i * m + j] = M.relations().basis()(i, a);
      gens.push_back(std::move(v));
    }
  for (std::size_t b = 0; b < N.relations().rank(); ++b)
    for (std::size_t i = 0; i < n; ++i) {
      IntVector v(n * m);
      for (std::size_t j = 0; j < m; ++j) v[i * m + j] = N.relations().basis()(j, b);
      gens.push_back(std::move(v));
    }
  std::vector<IntMatrix> act;
  for (Element g = 0; g < M.group().order(); ++g) act.push_back(kron(M.action(g), N.action(g)));
  return GModule(M.group(), Lattice::span(n * m, gens), std::move(act));
}

GModule restrict_module(const GModule& M, const Subgroup& H) {
  FiniteGroup K = subgroup_as_group(M.group(), H);
  std::vector<IntMatrix> act;
  for (Element h : H.elements()) act.push_back(M.action(h));
  return GModule(std::move(K), M.relations(), std::move(act));
}

MinimalModule minimize(const GModule& M) {
  Subquotient Q(Lattice::full(M.ambient_rank()), M.relations());
  MinimalModule out;
  out.to = Q.to_min();
  out.from = Q.generator_lifts();
  out.moduli = Q.moduli();
  reduce_rows(out.to, out.moduli);
  std::vector<IntMatrix> act;
  act.reserve(M.group().order());
  for (Element g = 0; g < M.group().order(); ++g) {
    IntMatrix A = out.to * M.action(g) * out.from;
    reduce_rows(A, out.moduli);
    act.push_back(std::move(A));
  }
  out.module = GModule(M.group(), diagonal_relations(out.moduli), std::move(act));
  return out;
}

TorsionDecomposition torsion_decomposition(const GModule& M) {
  const std::size_t n = M.ambient_rank();
  Lattice S = saturate(M.relations());
  const IntMatrix& B = S.basis();
  const std::size_t s = S.rank();
  // tors M on the basis of sat(L)
  std::vector<IntMatrix> tact;
  for (Element g = 0; g < M.group().order(); ++g) {
    IntMatrix img = M.action(g) * B;
    IntMatrix A(s, s);
    for (std::size_t j = 0; j < s; ++j) {
      auto c = S.coordinates(img.column(j));
      if (!c) throw InternalError("torsion_decomposition: saturation is not G-stable");
      A.set_column(j, *c);
    }
    tact.push_back(std::move(A));
  }
  std::vector<IntVector> lrel;
  for (std::size_t j = 0; j < M.relations().rank(); ++j) lrel.push_back(*S.coordinates(M.relations().basis().column(j)));
  GModule tors_raw(M.group(), Lattice::span(s, lrel), std::move(tact));
  MinimalModule tmin = minimize(tors_raw);

  Subquotient Q(Lattice::full(n), S);
  const IntMatrix& to = Q.to_min();
  const IntMatrix& from = Q.generator_lifts();
  std::vector<IntMatrix> mact;
  for (Element g = 0; g < M.group().order(); ++g) mact.push_back(to * M.action(g) * from);
  GModule mt(M.group(), Lattice(to.rows()), std::move(mact));

  TorsionDecomposition out{tmin.module, mt, ModuleHom(tmin.module, M, B * tmin.from), ModuleHom(M, mt, to)};
  return out;
}

GModule dual_module(const GModule& M) {
  if (!M.is_torsion_free()) throw DomainError("Z-dual requires a torsion-free module (take mt(M) first)");
  GModule F = M.relations().rank() ? minimize(M).module : M;
  const FiniteGroup& G = F.group();
  std::vector<IntMatrix> act;
  for (Element g = 0; g < G.order(); ++g) act.push_back(F.action(G.inverse(g)).transpose());
  return GModule(G, Lattice(F.ambient_rank()), std::move(act));
}

GModule finite_dual(const GModule& M) {
  if (!M.is_finite()) throw DomainError("finite dual requires a finite module");
  MinimalModule m = minimize(M);
  const IntVector& d = m.moduli;
  const std::size_t k = d.size();
  const FiniteGroup& G = M.group();
  std::vector<IntMatrix> act;
  for (Element g = 0; g < G.order(); ++g) {
    const IntMatrix& A = m.module.action(G.inverse(g));
    IntMatrix B(k, k);
    // B = D·Aᵀ·D⁻¹, entrywise d_j·A_ij/d_i at (j,i)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Int v = d[j] * A(i, j);
        if (!mpz_divisible_p(v.get_mpz_t(), d[i].get_mpz_t()))
          throw InternalError("finite_dual: action does not preserve the relations");
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d[i].get_mpz_t());
        B(j, i) = v;
      }
    reduce_rows(B, d);
    act.push_back(std::move(B));
  }
  return GModule(G, diagonal_relations(d), std::move(act));
}

bool same_module(const GModule& a, const GModule& b) {
  if (a.group().order() != b.group().order() || !(a.relations() == b.relations())) return false;
  for (Element g = 0; g < a.group().order(); ++g)
    if (first_column_outside(a.action(g) - b.action(g), a.relations())) return false;
  return true;
}

}  // namespace reglab
