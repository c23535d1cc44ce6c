#include "reglab/exactla/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <sstream>
#include <utility>

#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"

namespace reglab {

// ---- Lattice ---------------------------------------------------------------

Lattice Lattice::span(const IntMatrix& generators) {
  Lattice L;
  L.n_ = generators.rows();
  if (generators.cols() == 0)
    L.basis_ = IntMatrix(L.n_, 0);
  else
    L.basis_ = hermite_basis(generators);
  return L;
}

Lattice Lattice::span(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
  if (generators.empty()) return Lattice(ambient_rank);
  return span(IntMatrix::from_columns(generators, ambient_rank));
}

Lattice Lattice::full(std::size_t n) { return from_hermite(IntMatrix::identity(n)); }

Lattice Lattice::from_hermite(IntMatrix basis) {
  Lattice L;
  L.n_ = basis.rows();
  L.basis_ = std::move(basis);
  return L;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& v) const {
  if (v.size() != n_) throw std::invalid_argument("lattice membership: dimension mismatch");
  return solve_hermite(basis_, v);
}

bool Lattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  if (other.n_ != n_) return false;
  if (other.rank() > rank()) return false;
  for (std::size_t j = 0; j < other.rank(); ++j)
    if (!contains(other.basis_.column(j))) return false;
  return true;
}

Lattice Lattice::image(const IntMatrix& A) const {
  if (rank() == 0) return Lattice(A.rows());
  return span(A * basis_);
}

Lattice Lattice::scaled(const Int& c) const {
  if (c == 0) return Lattice(n_);
  return span(basis_.scaled(c));
}

Lattice operator+(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("lattice sum: dimension mismatch");
  if (b.rank() == 0) return a;
  if (a.rank() == 0) return b;
  return Lattice::span(hstack(a.basis(), b.basis()));
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.ambient_rank();
  if (b.ambient_rank() != n) throw std::invalid_argument("lattice intersection: dimension mismatch");
  if (a.rank() == 0 || b.rank() == 0) return Lattice(n);
  if (a.is_full_rank() && a.basis().is_identity()) return b;
  if (b.is_full_rank() && b.basis().is_identity()) return a;
  // x = B_a·u = B_b·v
  IntMatrix K = kernel_basis(hstack(a.basis(), -b.basis()));
  if (K.cols() == 0) return Lattice(n);
  return Lattice::span(a.basis() * K.block(0, 0, a.rank(), K.cols()));
}

Lattice saturate(const Lattice& L) {
  const std::size_t n = L.ambient_rank();
  if (L.rank() == 0) return L;
  if (L.rank() == n) return Lattice::full(n);
  // The annihilator of the annihilator.
  IntMatrix W = kernel_basis(L.basis().transpose());
  return integer_kernel(W.transpose());
}

Lattice integer_kernel(const IntMatrix& A) {
  if (A.rows() == 0) return Lattice::full(A.cols());
  return Lattice::from_hermite(kernel_basis(A));
}

namespace {

// Per-coordinate moduli when every basis column is a multiple of a unit vector
// (0 = no relation on that coordinate).
std::optional<std::vector<Int>> diagonal_moduli(const Lattice& L) {
  const IntMatrix& B = L.basis();
  std::vector<Int> d(L.ambient_rank(), 0);
  for (std::size_t j = 0; j < B.cols(); ++j) {
    std::size_t at = B.rows();
    for (std::size_t i = 0; i < B.rows(); ++i) {
      if (sgn(B(i, j)) == 0) continue;
      if (at != B.rows()) return std::nullopt;
      at = i;
    }
    d[at] = abs(B(at, j));
  }
  return d;
}

// Arithmetic modulo the exponent; exponents beyond this go through the generic route.
constexpr long kMaxExponent = 1L << 30;

using ModVector = std::vector<long>;

long mod_of(long x, long e) {
  x %= e;
  return x < 0 ? x + e : x;
}

long gcd_ext(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  x = x0;
  y = y0;
  return a;
}

// (a, b) ← (x·a + y·b, (va/g)·b − (vb/g)·a) where g = x·va + y·vb = gcd(va, vb); returns g.
long combine(ModVector& a, ModVector& b, long va, long vb, long e) {
  long x, y;
  const long g = gcd_ext(va, vb, x, y);
  const long ca = va / g, cb = vb / g;
  x = mod_of(x, e);
  y = mod_of(y, e);
  const long mca = mod_of(ca, e), mcb = mod_of(-cb, e);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const long na = (x * a[k] + y * b[k]) % e;
    b[k] = (mca * b[k] + mcb * a[k]) % e;
    a[k] = na;
  }
  return g;
}

// Triangular basis of span(gens) + e·Z^r.
IntMatrix modular_basis(std::vector<ModVector> gens, long e, std::size_t r) {
  IntMatrix H(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    ModVector piv(r, 0);
    long pv = e;
    for (ModVector& w : gens) {
      if (w[i] == 0) continue;
      const long wv = w[i];
      pv = combine(piv, w, pv, wv, e);
      w[i] = 0;
    }
    piv[i] = pv;
    // (e/g)·piv lies in the lattice and has e in coordinate i.
    ModVector extra(r);
    const long f = e / pv;
    for (std::size_t k = 0; k < r; ++k) extra[k] = (piv[k] * f) % e;
    extra[i] = 0;
    for (std::size_t k = 0; k < r; ++k) H(k, i) = piv[k];
    gens.push_back(std::move(extra));
    std::erase_if(gens, [](const ModVector& w) { return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; }); });
  }
  return H;
}

// {x : (A·x)_i ≡ 0 mod d_i}, d_i = 0 meaning equality; nullopt when the exponent is too large.
std::optional<Lattice> preimage_diagonal(const IntMatrix& A, const std::vector<Int>& d) {
  const std::size_t n = A.cols();
  std::vector<std::size_t> exact, tors;
  Int e = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (sgn(d[i]) == 0)
      exact.push_back(i);
    else if (d[i] != 1) {
      tors.push_back(i);
      e = lcm(e, d[i]);
      if (e > kMaxExponent) return std::nullopt;
    }
  }
  IntMatrix K = exact.empty() ? IntMatrix::identity(n) : kernel_basis(A.select_rows(exact));
  const std::size_t r = K.cols();
  if (r == 0) return Lattice(n);
  if (tors.empty()) return Lattice::from_hermite(std::move(K));
  const long em = e.get_si();
  const IntMatrix B = A.select_rows(tors) * K;
  std::vector<long> Bm(tors.size() * r);
  for (std::size_t i = 0; i < tors.size(); ++i)
    for (std::size_t k = 0; k < r; ++k) {
      Int x = B(i, k) % e;
      Bm[i * r + k] = mod_of(x.get_si(), em);
    }
  std::vector<ModVector> Y(r, ModVector(r, 0));
  for (std::size_t j = 0; j < r; ++j) Y[j][j] = 1;
  ModVector v(r);
  for (std::size_t row = 0; row < tors.size(); ++row) {
    const long m = d[tors[row]].get_si();
    const long* b = &Bm[row * r];
    std::size_t p = r;
    for (std::size_t j = 0; j < r; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < r; ++k) s = (s + b[k] * Y[j][k]) % m;
      v[j] = s;
      if (p == r && s != 0) p = j;
    }
    if (p == r) continue;
    for (std::size_t j = p + 1; j < r; ++j) {
      if (v[j] == 0) continue;
      v[p] = combine(Y[p], Y[j], v[p], v[j], em);
    }
    const long f = m / std::gcd(v[p], m);
    for (long& x : Y[p]) x = (x * f) % em;
  }
  return Lattice::span(K * modular_basis(std::move(Y), em, r));
}

}  // namespace

Lattice preimage(const IntMatrix& A, const Lattice& L) {
  const std::size_t n = A.cols();
  if (A.rows() != L.ambient_rank()) throw std::invalid_argument("preimage: dimension mismatch");
  if (L.is_full_rank() && L.basis().is_identity()) return Lattice::full(n);
  if (L.rank() == 0) return integer_kernel(A);
  if (auto d = diagonal_moduli(L))
    if (auto P = preimage_diagonal(A, *d)) return *P;
  IntMatrix K = kernel_basis(hstack(A, -L.basis()));
  if (K.cols() == 0) return Lattice(n);
  return Lattice::span(K.block(0, 0, n, K.cols()));
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  IntMatrix B(a.ambient_rank() + b.ambient_rank(), a.rank() + b.rank());
  B.set_block(0, 0, a.basis());
  B.set_block(a.ambient_rank(), a.rank(), b.basis());
  return Lattice::from_hermite(std::move(B));
}

Lattice repeat_lattice(const Lattice& L, std::size_t k) {
  const std::size_t n = L.ambient_rank(), r = L.rank();
  IntMatrix B(n * k, r * k);
  for (std::size_t i = 0; i < k; ++i) B.set_block(i * n, i * r, L.basis());
  return Lattice::from_hermite(std::move(B));
}

std::optional<Int> lattice_index(const Lattice& U, const Lattice& V) {
  auto G = subquotient_group(U, V);
  return G.order();
}

// ---- PresentedAbelianGroup -------------------------------------------------

PresentedAbelianGroup::PresentedAbelianGroup(std::size_t generator_count, IntMatrix relations)
    : k_(generator_count), relations_(std::move(relations)) {
  if (relations_.cols() == 0) relations_ = IntMatrix(k_, 0);
  if (relations_.rows() != k_) throw ValidationError("presented group: relation length differs from generator count");
  rel_ = Lattice::span(relations_);
  IntVector d = rel_.rank() ? elementary_divisors(rel_.basis()) : IntVector{};
  for (const auto& x : d)
    if (x > 1) torsion_.push_back(x);
  free_rank_ = k_ - rel_.rank();
}

PresentedAbelianGroup PresentedAbelianGroup::from_invariants(const IntVector& torsion, std::size_t free_rank) {
  const std::size_t t = torsion.size();
  IntMatrix R(t + free_rank, t);
  for (std::size_t i = 0; i < t; ++i) {
    if (torsion[i] <= 1) throw std::invalid_argument("from_invariants: divisor must exceed 1");
    R(i, i) = torsion[i];
  }
  return PresentedAbelianGroup(t + free_rank, std::move(R));
}

std::optional<Int> PresentedAbelianGroup::order() const {
  if (free_rank_ != 0) return std::nullopt;
  return torsion_order();
}

Int PresentedAbelianGroup::torsion_order() const {
  Int o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

std::string PresentedAbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion_) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  if (free_rank_) {
    os << (first ? "" : " + ") << "Z^" << free_rank_;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---- GroupHom --------------------------------------------------------------

GroupHom::GroupHom(PresentedAbelianGroup source, PresentedAbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
    throw ValidationError("group hom: matrix shape does not match generator counts");
  const IntMatrix& R = source_.relations();
  for (std::size_t j = 0; j < R.cols(); ++j)
    if (!target_.relation_lattice().contains(matrix_ * R.column(j)))
      throw ValidationError("group hom: a source relation is not mapped into the target relations");
}

PresentedAbelianGroup GroupHom::kernel() const {
  Lattice K = preimage(matrix_, target_.relation_lattice());
  return subquotient_group(K, source_.relation_lattice());
}

PresentedAbelianGroup GroupHom::cokernel() const {
  return PresentedAbelianGroup(target_.generator_count(), hstack(matrix_, target_.relation_lattice().basis()));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (f.target().generator_count() != g.source().generator_count() ||
      !(f.target().relation_lattice() == g.source().relation_lattice()))
    throw std::invalid_argument("compose: target of f is not the source of g");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

std::optional<Rational> qindex(const GroupHom& f) {
  auto ker = f.kernel();
  auto cok = f.cokernel();
  auto ko = ker.order();
  auto co = cok.order();
  if (!ko || !co) return std::nullopt;
  Rational q(*co, *ko);
  q.canonicalize();
  return q;
}

std::string qindex_to_string(const std::optional<Rational>& q) {
  if (!q) return "infinite";
  return q->get_str();
}

namespace {

Subquotient torsion_subquotient(const PresentedAbelianGroup& A) {
  return Subquotient(saturate(A.relation_lattice()), A.relation_lattice());
}

Subquotient free_subquotient(const PresentedAbelianGroup& A) {
  return Subquotient(Lattice::full(A.generator_count()), saturate(A.relation_lattice()));
}

}  // namespace

GroupHom torsion_part(const GroupHom& f) {
  return induced_hom(torsion_subquotient(f.source()), torsion_subquotient(f.target()), f.matrix());
}

GroupHom free_part(const GroupHom& f) {
  return induced_hom(free_subquotient(f.source()), free_subquotient(f.target()), f.matrix());
}

GroupHom z_dual(const GroupHom& f) {
  GroupHom m = free_part(f);
  return GroupHom(m.target(), m.source(), m.matrix().transpose());
}

GroupHom pontryagin_dual(const GroupHom& f) {
  if (!f.source().is_finite() || !f.target().is_finite())
    throw DomainError("pontryagin_dual: groups must be finite");
  Subquotient S(Lattice::full(f.source().generator_count()), f.source().relation_lattice());
  Subquotient T(Lattice::full(f.target().generator_count()), f.target().relation_lattice());
  GroupHom m = induced_hom(S, T, f.matrix());
  const IntVector& a = S.moduli();
  const IntVector& b = T.moduli();
  // χ_j(e) = M_ji / b_j on e_i; in the basis ψ_i(e_i) = 1/a_i this is M_ji·a_i/b_j.
  IntMatrix D(a.size(), b.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) {
      Int v = m.matrix()(j, i) * a[i];
      if (!mpz_divisible_p(v.get_mpz_t(), b[j].get_mpz_t()))
        throw InternalError("pontryagin_dual: non-integral dual entry");
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), b[j].get_mpz_t());
      D(i, j) = v;
    }
  return GroupHom(m.target(), m.source(), D);
}

// ---- Subquotient -----------------------------------------------------------

Subquotient::Subquotient(Lattice upper, Lattice lower) : U_(std::move(upper)), V_(std::move(lower)) {
  const std::size_t n = U_.ambient_rank();
  if (V_.ambient_rank() != n) throw ValidationError("not a subquotient: dimension mismatch");
  const std::size_t u = U_.rank(), v = V_.rank();
  IntMatrix C(u, v);
  for (std::size_t j = 0; j < v; ++j) {
    auto c = U_.coordinates(V_.basis().column(j));
    if (!c) throw ValidationError("not a subquotient");
    C.set_column(j, *c);
  }
  SmithForm snf = smith_normal_form(C);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < u; ++i) {
    if (i < snf.divisors.size()) {
      if (snf.divisors[i] > 1) {
        keep.push_back(i);
        moduli_.push_back(snf.divisors[i]);
      }
    } else {
      keep.push_back(i);
      moduli_.push_back(0);
    }
  }
  to_min_ = snf.U.select_rows(keep);
  lifts_ = u ? U_.basis() * snf.U_inv.select_cols(keep) : IntMatrix(n, 0);
  IntVector torsion;
  std::size_t free_rank = 0;
  for (const auto& m : moduli_) {
    if (m == 0)
      ++free_rank;
    else
      torsion.push_back(m);
  }
  group_ = PresentedAbelianGroup::from_invariants(torsion, free_rank);
}

IntVector Subquotient::coordinates(const IntVector& x) const {
  auto c = U_.coordinates(x);
  if (!c) throw ValidationError("subquotient coordinates: vector outside the upper lattice");
  IntVector z = to_min_ * *c;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (moduli_[i] != 0) mpz_fdiv_r(z[i].get_mpz_t(), z[i].get_mpz_t(), moduli_[i].get_mpz_t());
  return z;
}

IntVector Subquotient::lift(const IntVector& z) const { return lifts_ * z; }

PresentedAbelianGroup subquotient_group(const Lattice& U, const Lattice& V) { return Subquotient(U, V).group(); }

GroupHom induced_hom(const Subquotient& src, const Subquotient& dst, const IntMatrix& ambient_map) {
  if (ambient_map.cols() != src.upper().ambient_rank() || ambient_map.rows() != dst.upper().ambient_rank())
    throw std::invalid_argument("induced_hom: map shape mismatch");
  const IntMatrix& Vb = src.lower().basis();
  if (Vb.cols()) {
    IntMatrix img = ambient_map * Vb;
    for (std::size_t j = 0; j < img.cols(); ++j)
      if (!dst.lower().contains(img.column(j)))
        throw InternalError("induced_hom: lower lattice not mapped into lower lattice");
  }
  const std::size_t k = src.generator_count();
  IntMatrix M(dst.generator_count(), k);
  if (k) {
    IntMatrix img = ambient_map * src.generator_lifts();
    for (std::size_t j = 0; j < k; ++j) M.set_column(j, dst.coordinates(img.column(j)));
  }
  // Source and target are the diagonal minimal presentations.
  return GroupHom(src.group(), dst.group(), std::move(M));
}

}  // namespace reglab
