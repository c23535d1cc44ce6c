#include "reglab/cohomology/tate.hpp"

#include <string>
#include <utility>

#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"

namespace reglab {

namespace {

// Everything needed to compute Ĥⁱ of a module over K (= H as its own group)
// and to push a module map through it.
struct TateData {
  int degree = 0;
  Subquotient sq;
  std::size_t blocks = 0;             // copies of the ambient module in degree 1
  std::optional<MinimalModule> shift;  // degree 2: the quotient Q of the coinduced module
};

IntMatrix stack_rows(const std::vector<IntMatrix>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) rows += p.rows();
  IntMatrix S(rows, cols);
  rows = 0;
  for (const auto& p : parts) {
    S.set_block(rows, 0, p);
    rows += p.rows();
  }
  return S;
}

Subquotient degree_zero(const GModule& M) {
  const Subgroup all = Subgroup::whole(M.group());
  return Subquotient(fixed_lattice(M, all), norm_image(M, all));
}

Subquotient degree_minus_one(const GModule& M) {
  const std::size_t n = M.ambient_rank();
  const Subgroup all = Subgroup::whole(M.group());
  Lattice U = preimage(norm_matrix(M, all), M.relations());
  std::vector<IntVector> gens;
  for (Element s : generating_set(M.group(), all)) {
    IntMatrix D = M.action(s) - IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) gens.push_back(D.column(j));
  }
  Lattice V = Lattice::span(n, gens) + M.relations();
  return Subquotient(U, V);
}

// 1-cochains determined by f(s), s in a generating set S, through
// f(s·y) = f(s) + s·f(y); every Cayley-graph edge outside the BFS tree gives a
// cocycle constraint.
Subquotient degree_one_cocycle(const GModule& M, std::size_t& blocks) {
  const FiniteGroup& K = M.group();
  const std::size_t n = M.ambient_rank();
  const auto gens = generating_set(K, Subgroup::whole(K));
  const std::size_t t = gens.size();
  blocks = t;
  const std::size_t N = n * t;
  check_column_limit(N, "tate degree 1");
  if (t == 0 || n == 0) return Subquotient(Lattice::full(N), Lattice::full(N));
  std::vector<std::optional<IntMatrix>> C(K.order());
  C[0] = IntMatrix(n, N);
  std::vector<Element> queue{0};
  std::vector<IntMatrix> constraints;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Element y = queue[qi];
    for (std::size_t k = 0; k < t; ++k) {
      const Element z = K.mul(gens[k], y);
      IntMatrix cand = M.action(gens[k]) * *C[y];
      for (std::size_t i = 0; i < n; ++i) cand(i, k * n + i) += 1;
      if (!C[z]) {
        C[z] = std::move(cand);
        queue.push_back(z);
      } else {
        IntMatrix d = *C[z] - cand;
        if (!d.is_zero()) constraints.push_back(std::move(d));
      }
    }
  }
  Lattice Z1 = constraints.empty()
                   ? Lattice::full(N)
                   : preimage(stack_rows(constraints, N), repeat_lattice(M.relations(), constraints.size()));
  IntMatrix cob(N, n);
  for (std::size_t k = 0; k < t; ++k) cob.set_block(k * n, 0, M.action(gens[k]) - IntMatrix::identity(n));
  Lattice B1 = Lattice::span(cob) + repeat_lattice(M.relations(), t);
  return Subquotient(Z1, B1);
}

// Inhomogeneous cochains on all non-identity elements.
Subquotient degree_one_full(const GModule& M, std::size_t& blocks) {
  const FiniteGroup& K = M.group();
  const std::size_t n = M.ambient_rank();
  const std::size_t h = K.order();
  blocks = h - 1;
  const std::size_t N = n * (h - 1);
  check_column_limit(N, "tate degree 1 (full cochains)");
  if (h == 1 || n == 0) return Subquotient(Lattice::full(N), Lattice::full(N));
  auto slot = [&](Element g) { return (g - 1) * n; };
  std::vector<IntMatrix> constraints;
  for (Element g = 1; g < h; ++g)
    for (Element x = 1; x < h; ++x) {
      // f(gx) − f(g) − g·f(x)
      IntMatrix c(n, N);
      const Element gx = K.mul(g, x);
      if (gx != 0)
        for (std::size_t i = 0; i < n; ++i) c(i, slot(gx) + i) += 1;
      for (std::size_t i = 0; i < n; ++i) c(i, slot(g) + i) -= 1;
      const IntMatrix& A = M.action(g);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, slot(x) + j) -= A(i, j);
      constraints.push_back(std::move(c));
    }
  Lattice Z1 = preimage(stack_rows(constraints, N), repeat_lattice(M.relations(), constraints.size()));
  IntMatrix cob(N, n);
  for (Element g = 1; g < h; ++g) cob.set_block(slot(g), 0, M.action(g) - IntMatrix::identity(n));
  Lattice B1 = Lattice::span(cob) + repeat_lattice(M.relations(), h - 1);
  return Subquotient(Z1, B1);
}

Subquotient degree_one(const GModule& M, TateRoute route, std::size_t& blocks) {
  if (route == TateRoute::FullCochain) return degree_one_full(M, blocks);
  return degree_one_cocycle(M, blocks);
}

// 0 → M → Z[K]⊗M₀ → Q → 0 with ι(x)_b = A_{b⁻¹}x; the middle term is induced,
// so Ĥ²(M) ≅ Ĥ¹(Q).
MinimalModule dimension_shift(const GModule& M) {
  const FiniteGroup& K = M.group();
  const std::size_t n = M.ambient_rank(), h = K.order();
  check_column_limit(n * h, "tate degree 2");
  IntMatrix iota(n * h, n);
  for (Element b = 0; b < h; ++b) iota.set_block(b * n, 0, M.action(K.inverse(b)));
  Lattice rel = repeat_lattice(M.relations(), h) + Lattice::span(iota);
  std::vector<IntMatrix> act;
  act.reserve(h);
  for (Element k = 0; k < h; ++k) {
    IntMatrix P(n * h, n * h);
    for (Element b = 0; b < h; ++b) {
      const Element kb = K.mul(k, b);
      for (std::size_t i = 0; i < n; ++i) P(kb * n + i, b * n + i) = 1;
    }
    act.push_back(std::move(P));
  }
  return minimize(GModule(K, std::move(rel), std::move(act)));
}

TateData compute(const GModule& MK, int degree, TateRoute route) {
  TateData d;
  d.degree = degree;
  switch (degree) {
    case 0:
      d.sq = degree_zero(MK);
      break;
    case -1:
      d.sq = degree_minus_one(MK);
      break;
    case 1:
      d.sq = degree_one(MK, route, d.blocks);
      break;
    case 2:
      d.shift = dimension_shift(MK);
      d.sq = degree_one(d.shift->module, route, d.blocks);
      break;
    default:
      throw InternalError("tate: reduced degree outside -1..2");
  }
  if (!d.sq.group().is_finite())
    throw InternalError("tate: cohomology group came out infinite in degree " + std::to_string(degree));
  return d;
}

IntMatrix block_diag_repeat(const IntMatrix& X, std::size_t k) { return kron(IntMatrix::identity(k), X); }

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

std::optional<int> reduced_degree(const FiniteGroup& G, const Subgroup& H, int degree, TateRoute route) {
  if (H.order() == 1) return 0;
  const bool in_window = degree >= -1 && degree <= 2;
  if (is_cyclic(G, H)) {
    if (route == TateRoute::Auto || !in_window) return mod(degree + 1, 2) - 1;
    return degree;
  }
  if (in_window) return degree;
  if (dihedral_structure(G, H)) return mod(degree + 1, 4) - 1;
  return std::nullopt;
}

TateGroup tate(const GModule& M, const Subgroup& H, int degree, TateRoute route) {
  auto r = reduced_degree(M.group(), H, degree, route);
  if (!r) throw DomainError("degree out of supported window: " + std::to_string(degree));
  TateGroup out;
  out.degree = degree;
  out.subgroup = H;
  if (H.order() == 1) return out;
  TateData d = compute(restrict_module(M, H), *r, route);
  out.divisors = d.sq.group().torsion();
  out.order = d.sq.group().torsion_order();
  return out;
}

Int induced_kernel_order(const ModuleHom& f, const Subgroup& H, int degree, TateRoute route) {
  auto r = reduced_degree(f.source().group(), H, degree, route);
  if (!r) throw DomainError("degree out of supported window: " + std::to_string(degree));
  if (H.order() == 1) return 1;
  GModule MK = restrict_module(f.source(), H);
  GModule NK = restrict_module(f.target(), H);
  TateData a = compute(MK, *r, route), b = compute(NK, *r, route);
  const IntMatrix& Phi = f.matrix();
  IntMatrix ambient;
  switch (*r) {
    case 0:
    case -1:
      ambient = Phi;
      break;
    case 1:
      ambient = block_diag_repeat(Phi, a.blocks);
      break;
    case 2: {
      const std::size_t h = H.order();
      IntMatrix PhiQ = b.shift->to * block_diag_repeat(Phi, h) * a.shift->from;
      ambient = block_diag_repeat(PhiQ, a.blocks);
      break;
    }
  }
  GroupHom g = induced_hom(a.sq, b.sq, ambient);
  auto k = g.kernel().order();
  if (!k) throw InternalError("induced_kernel_order: infinite kernel");
  return *k;
}

Rational herbrand(const GModule& M, const Subgroup& C) {
  if (!is_cyclic(M.group(), C)) throw DomainError("herbrand quotient needs a cyclic subgroup");
  Rational h(tate(M, C, 0).order, tate(M, C, -1).order);
  h.canonicalize();
  return h;
}

long valuation(const Int& x, long ell) {
  if (x == 0) throw DomainError("valuation of zero");
  Int y = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(ell))) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(ell));
    ++v;
  }
  return v;
}

long valuation(const Rational& x, long ell) { return valuation(x.get_num(), ell) - valuation(x.get_den(), ell); }

long rosen_valuation(const GModule& M, const Subgroup& P, long ell) {
  auto gen = cyclic_generator(M.group(), P);
  if (!gen) throw DomainError("rosen_valuation needs a cyclic subgroup");
  const long q = static_cast<long>(P.order());
  if (ell < 2 || q % ell != 0) return 0;
  const std::size_t L = M.relations().rank();
  auto r = [&](long d) -> long {
    Subgroup S = Subgroup::generated(M.group(), {M.group().power(*gen, q / d)});
    return static_cast<long>(fixed_lattice(M, S).rank() - L);
  };
  long t = 0, qq = q;
  while (qq % ell == 0) {
    qq /= ell;
    ++t;
  }
  long v = t * r(q);
  long ell_i = 1;  // ℓ^{i−1}
  for (long i = 1; i <= t; ++i) {
    const long phi = ell_i * (ell - 1);  // φ(ℓ^i)
    const long diff = r(q / (ell_i * ell)) - r(q / ell_i);
    if (diff % phi != 0)
      throw InternalError("rosen_valuation: rank difference " + std::to_string(diff) + " not divisible by " +
                          std::to_string(phi));
    v -= diff / phi;
    ell_i *= ell;
  }
  return v;
}

}  // namespace reglab
