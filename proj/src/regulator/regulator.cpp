#include "reglab/regulator/regulator.hpp"

#include <atomic>
#include <sstream>

#include "reglab/cohomology/tate.hpp"
#include "reglab/cohomology/theta.hpp"
#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"
#include "reglab/gmodules/random_module.hpp"

namespace reglab {

namespace {

std::atomic<std::size_t> cross_checks{0};
std::atomic<std::size_t> cross_check_calls{0};

std::string str(const Rational& x) { return x.get_str(); }
std::string str(const Int& x) { return x.get_str(); }
std::string str(long x) { return std::to_string(x); }

Rational ratio(const Int& a, const Int& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

void require_relation(const BrauerRelation& theta) {
  auto chk = is_brauer_relation(theta);
  if (!chk.ok)
    throw ValidationError("not a Brauer relation: character sum " + std::to_string(chk.witness_value) +
                          " at element " + std::to_string(*chk.witness));
}

std::size_t dihedral_q(const FiniteGroup& D) {
  const std::size_t q = D.dihedral_q();
  if (q == 0) throw DomainError("identity needs a group built as dihedral(q)");
  return q;
}

Int finite_order(const PresentedAbelianGroup& A, const char* what) {
  auto o = A.order();
  if (!o) throw InternalError(std::string(what) + " is not finite");
  return *o;
}

GModule sum_or_zero(const FiniteGroup& G, const std::vector<Subgroup>& parts) {
  if (parts.empty()) return trivial_module(G, 0);
  std::vector<GModule> mods;
  for (const auto& H : parts) mods.push_back(permutation_module(G, H));
  return direct_sum(mods);
}

// Equivariant maps Z[G/H] → Z[G/K]: one per H-orbit O on G/K, gH ↦ g·ΣO.
std::vector<IntMatrix> hom_basis(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
  CosetSpace X = coset_space(G, H), Y = coset_space(G, K);
  std::vector<bool> seen(Y.points(), false);
  std::vector<IntMatrix> out;
  for (std::size_t p = 0; p < Y.points(); ++p) {
    if (seen[p]) continue;
    std::vector<std::size_t> orbit;
    for (Element h : H.elements()) {
      std::size_t y = Y.act(h, p);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
    IntMatrix B(Y.points(), X.points());
    for (std::size_t c = 0; c < X.points(); ++c)
      for (std::size_t y : orbit) B(Y.act(X.representatives()[c], y), c) += 1;
    out.push_back(std::move(B));
  }
  return out;
}

struct ShapiroSide {
  Subquotient sq;
  std::vector<std::size_t> offsets;  // first row of each summand in the permutation module
  std::vector<CosetSpace> cosets;
};

ShapiroSide shapiro_side(const GModule& M, const std::vector<Subgroup>& summands) {
  const FiniteGroup& G = M.group();
  ShapiroSide s;
  Lattice U(0);
  std::size_t off = 0;
  for (const auto& H : summands) {
    U = direct_sum(U, fixed_lattice(M, H));
    s.cosets.push_back(coset_space(G, H));
    s.offsets.push_back(off);
    off += s.cosets.back().points();
  }
  s.sq = Subquotient(U, repeat_lattice(M.relations(), summands.size()));
  return s;
}

// (φ⊗M)^G read on ⊕M^{H_a} → ⊕M^{K_b}: component at the identity coset of K_b.
std::optional<Rational> shapiro_qindex(const GModule& M, const IntMatrix& Phi, const ShapiroSide& src,
                                       const ShapiroSide& dst) {
  const std::size_t n = M.ambient_rank();
  const std::size_t A = src.offsets.size(), B = dst.offsets.size();
  IntMatrix Psi(n * B, n * A);
  for (std::size_t b = 0; b < B; ++b) {
    const std::size_t row = dst.offsets[b] + dst.cosets[b].point_of(0);
    for (std::size_t a = 0; a < A; ++a) {
      IntMatrix blk(n, n);
      const CosetSpace& X = src.cosets[a];
      for (std::size_t c = 0; c < X.points(); ++c) {
        const Int& coef = Phi(row, src.offsets[a] + c);
        if (coef != 0) blk = blk + M.action(X.representatives()[c]).scaled(coef);
      }
      Psi.set_block(b * n, a * n, blk);
    }
  }
  return qindex(induced_hom(src.sq, dst.sq, Psi));
}

Rational qindex_or_throw(const std::optional<Rational>& q) {
  if (!q) throw DomainError("phi not injective on M-part");
  return *q;
}

std::string dump(const GModule& M) {
  std::ostringstream os;
  os << "group " << M.group().name() << ", rank " << M.ambient_rank() << "\nrelations\n"
     << M.relations().basis().to_string() << "\n";
  for (Element g = 0; g < M.group().order(); ++g) os << "A_" << g << "\n" << M.action(g).to_string() << "\n";
  return os.str();
}

IdentityReport equality(std::string id, const Rational& lhs, const Rational& rhs) {
  IdentityReport r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.pass = lhs == rhs;
  return r;
}

}  // namespace

std::string RegulatorConstant::to_string() const { return value.get_str(); }

long RegulatorConstant::exponent(long prime) const {
  auto it = factorization.find(Int(prime));
  return it == factorization.end() ? 0 : it->second;
}

RegulatorConstant make_constant(const Rational& x) {
  if (x <= 0) throw DomainError("regulator constant must be positive, got " + x.get_str());
  RegulatorConstant c;
  c.value = x;
  c.value.canonicalize();
  auto factor = [&](Int m, long sign) {
    Int p = 2;
    while (m > 1) {
      if (p * p > m) {
        c.factorization[m] += sign;
        break;
      }
      while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        c.factorization[p] += sign;
      }
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
  };
  factor(c.value.get_num(), 1);
  factor(c.value.get_den(), -1);
  for (auto it = c.factorization.begin(); it != c.factorization.end();)
    it = it->second == 0 ? c.factorization.erase(it) : std::next(it);
  return c;
}

IntMatrix invariant_pairing(const GModule& Mtf) {
  if (Mtf.relations().rank() != 0) throw DomainError("invariant_pairing needs a module with no relations");
  const std::size_t r = Mtf.ambient_rank();
  IntMatrix P(r, r);
  for (Element g = 0; g < Mtf.group().order(); ++g) P = P + Mtf.action(g).transpose() * Mtf.action(g);
  return P;
}

RegulatorConstant rc_pairing(const GModule& M, const BrauerRelation& theta) {
  require_relation(theta);
  TorsionDecomposition td = torsion_decomposition(M);
  const IntMatrix P = invariant_pairing(td.mt);
  const IntMatrix& pi = td.projection.matrix();
  const std::size_t r = td.mt.ambient_rank();
  Rational C = 1;
  for (const auto& t : theta.terms) {
    if (t.coeff == 0) continue;
    const Lattice F = fixed_lattice(M, t.subgroup);
    std::vector<IntVector> imgs;
    const IntMatrix img = pi * F.basis();
    for (std::size_t j = 0; j < img.cols(); ++j) imgs.push_back(img.column(j));
    const Lattice I = Lattice::span(r, imgs);
    const std::size_t rho = I.rank();
    Int det = 1;
    if (rho > 0) {
      const IntMatrix& B = I.basis();
      det = determinant(B.transpose() * P * B);
      if (det <= 0) throw InternalError("rc_pairing: Gram matrix on a fixed sublattice is not positive definite");
    }
    Int hpow;
    mpz_pow_ui(hpow.get_mpz_t(), Int(static_cast<unsigned long>(t.subgroup.order())).get_mpz_t(), rho);
    const Int tors = finite_order(fixed_points(td.tors, t.subgroup).abstract(), "tors(M)^H");
    C *= rational_power(ratio(det, hpow * tors * tors), t.coeff);
  }
  return make_constant(C);
}

PhiMap build_phi(const BrauerRelation& theta, std::uint64_t seed) {
  require_relation(theta);
  PhiMap out;
  out.theta = canonicalize(theta);
  out.seed = seed;
  const FiniteGroup& G = out.theta.group;
  for (const auto& t : out.theta.terms)
    for (long k = 0; k < (t.coeff > 0 ? t.coeff : -t.coeff); ++k)
      (t.coeff > 0 ? out.source_summands : out.target_summands).push_back(t.subgroup);
  out.P1 = sum_or_zero(G, out.source_summands);
  out.P2 = sum_or_zero(G, out.target_summands);
  const std::size_t r1 = out.P1.ambient_rank(), r2 = out.P2.ambient_rank();
  if (r1 != r2) throw InternalError("build_phi: permutation modules of a relation have different ranks");
  check_column_limit(r1, "build_phi");

  struct Piece {
    std::size_t row, col;
    IntMatrix m;
  };
  std::vector<Piece> basis;
  std::size_t col = 0;
  for (const auto& H : out.source_summands) {
    std::size_t row = 0;
    const std::size_t w = G.order() / H.order();
    for (const auto& K : out.target_summands) {
      for (auto& m : hom_basis(G, H, K)) basis.push_back({row, col, std::move(m)});
      row += G.order() / K.order();
    }
    col += w;
  }
  Rng rng(seed);
  for (int draw = 1; draw <= 64; ++draw) {
    IntMatrix Phi(r2, r1);
    for (const auto& p : basis) {
      long c = rng.range(-3, 3);
      if (c == 0) continue;
      IntMatrix cur = Phi.block(p.row, p.col, p.m.rows(), p.m.cols());
      Phi.set_block(p.row, p.col, cur + p.m.scaled(Int(c)));
    }
    if (matrix_rank(Phi) == r1) {
      out.matrix = std::move(Phi);
      out.draws = draw;
      validate(ModuleHom(out.P1, out.P2, out.matrix));
      return out;
    }
  }
  throw DomainError("build_phi: no injective equivariant map after 64 draws (seed " + std::to_string(seed) + ")");
}

RegulatorConstant rc_qindex(const GModule& M, const PhiMap& phi) {
  if (!(M.group().table() == phi.theta.group.table())) throw ValidationError("module and relation use different groups");
  ShapiroSide s1 = shapiro_side(M, phi.source_summands);
  ShapiroSide s2 = shapiro_side(M, phi.target_summands);
  Rational a = qindex_or_throw(shapiro_qindex(M, phi.matrix, s1, s2));
  Rational b = qindex_or_throw(shapiro_qindex(M, phi.matrix.transpose(), s2, s1));
  return make_constant(a / b);
}

RegulatorConstant rc_qindex_tensor(const GModule& M, const PhiMap& phi) {
  const Subgroup all = Subgroup::whole(M.group());
  const std::size_t n = M.ambient_rank();
  FixedPointData f1 = fixed_points(tensor_product(phi.P1, M), all);
  FixedPointData f2 = fixed_points(tensor_product(phi.P2, M), all);
  const IntMatrix In = IntMatrix::identity(n);
  Rational a = qindex_or_throw(qindex(induced_hom(f1.quotient, f2.quotient, kron(phi.matrix, In))));
  Rational b = qindex_or_throw(qindex(induced_hom(f2.quotient, f1.quotient, kron(phi.matrix.transpose(), In))));
  return make_constant(a / b);
}

RegulatorConstant regulator_constant(const GModule& M, const BrauerRelation& theta, std::uint64_t phi_seed) {
  ++cross_check_calls;
  RegulatorConstant a = rc_pairing(M, theta);
  std::optional<RegulatorConstant> b;
  PhiMap phi;
  for (std::uint64_t k = 0; k < 8 && !b; ++k) {
    phi = build_phi(theta, phi_seed + k);
    try {
      b = rc_qindex(M, phi);
    } catch (const DomainError&) {
    }
  }
  if (!b) throw InternalError("regulator_constant: no seed gave finite q-indices\n" + dump(M));
  if (a.value != b->value) {
    std::ostringstream os;
    os << "regulator routes disagree: pairing " << a.to_string() << ", q-index " << b->to_string()
       << "\nrelation " << phi.theta.to_string() << "\nphi (seed " << phi.seed << ")\n"
       << phi.matrix.to_string() << "\n"
       << dump(M);
    throw InternalError(os.str());
  }
  ++cross_checks;
  return a;
}

std::size_t cross_checks_passed() { return cross_checks.load(); }
std::size_t cross_checks_attempted() { return cross_check_calls.load(); }

IdentityReport verify_dual1(const GModule& M, const BrauerRelation& theta) {
  if (!M.is_torsion_free()) throw DomainError("DUAL1 needs a torsion-free module");
  RegulatorConstant c = regulator_constant(M, theta);
  RegulatorConstant cd = regulator_constant(dual_module(M), theta);
  Rational h0 = theta_product(M, theta, 0).value;
  IdentityReport r = equality("DUAL1", c.value * cd.value * h0 * h0, 1);
  r.details = {{"C(M)", str(c.value)}, {"C(M*)", str(cd.value)}, {"h0(Theta,M)", str(h0)}};
  return r;
}

IdentityReport verify_finite_dual(const GModule& M, const BrauerRelation& theta) {
  if (!M.is_finite()) throw DomainError("FINITE_DUAL needs a finite module");
  RegulatorConstant c = regulator_constant(M, theta);
  RegulatorConstant cd = regulator_constant(finite_dual(M), theta);
  Rational hm1 = theta_product(M, theta, -1).value, h0 = theta_product(M, theta, 0).value;
  Rational q = hm1 / h0;
  IdentityReport r = equality("FINITE_DUAL", c.value / cd.value, q * q);
  r.details = {{"C(M)", str(c.value)}, {"C(Mv)", str(cd.value)}, {"h-1(Theta,M)", str(hm1)}, {"h0(Theta,M)", str(h0)}};
  return r;
}

std::vector<IdentityReport> verify_finite_dihedral(const GModule& M) {
  dihedral_q(M.group());
  if (!M.is_finite()) throw DomainError("FINITE_DIHEDRAL needs a finite module");
  const FiniteGroup& D = M.group();
  const Subgroup all = Subgroup::whole(D), P = rotation_subgroup(D), S = reflection_subgroup(D);
  auto fixed = [&](const Subgroup& H) { return finite_order(fixed_points(M, H).abstract(), "M^H"); };
  const Int m = finite_order(M.abelian_group(), "M"), mD = fixed(all), mP = fixed(P), mS = fixed(S);
  const Int hD0 = tate(M, all, 0).order, hDm1 = tate(M, all, -1).order;
  IdentityReport a = equality("FINITE_DIHEDRAL.orders", ratio(m * mD * mD, mP * mS * mS), ratio(hD0, hDm1));
  a.details = {{"|M|", str(m)},       {"|M^D|", str(mD)},    {"|M^P|", str(mP)},
               {"|M^S|", str(mS)},    {"h0(D,M)", str(hD0)}, {"h-1(D,M)", str(hDm1)}};
  const BrauerRelation th = dihedral_relation(D);
  RegulatorConstant c = regulator_constant(M, th);
  Rational hm1 = theta_product(M, th, -1).value, h0 = theta_product(M, th, 0).value;
  IdentityReport b = equality("FINITE_DIHEDRAL.regulator", c.value, hm1 / h0);
  b.details = {{"C(M)", str(c.value)}, {"h-1(Theta,M)", str(hm1)}, {"h0(Theta,M)", str(h0)}};
  return {a, b};
}

std::vector<IdentityReport> verify_dcf(const GModule& M) {
  dihedral_q(M.group());
  const BrauerRelation th = dihedral_relation(M.group());
  std::vector<IdentityReport> out;
  for (int i : {-1, 0}) {
    Rational a = theta_product(M, th, i).value, b = theta_product(M, th, i + 2).value;
    IdentityReport r = equality("DCF[i=" + std::to_string(i) + "]", a * b, 1);
    r.details = {{"h" + std::to_string(i), str(a)}, {"h" + std::to_string(i + 2), str(b)}};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<IdentityReport> verify_dcf_kernel(const ModuleHom& f) {
  dihedral_q(f.source().group());
  const BrauerRelation th = dihedral_relation(f.source().group());
  std::vector<IdentityReport> out;
  for (int i : {-1, 0}) {
    Rational a = theta_kernel_product(f, th, i), b = theta_kernel_product(f, th, i + 2);
    IdentityReport r = equality("DCF.kernel[i=" + std::to_string(i) + "]", a * b, 1);
    r.details = {{"k" + std::to_string(i), str(a)}, {"k" + std::to_string(i + 2), str(b)}};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<IdentityReport> verify_dihedral_main(const GModule& M) {
  dihedral_q(M.group());
  const BrauerRelation th = dihedral_relation(M.group());
  RegulatorConstant c = regulator_constant(M, th);
  Rational hm1 = theta_product(M, th, -1).value, h0 = theta_product(M, th, 0).value,
           h1 = theta_product(M, th, 1).value;
  std::vector<std::pair<std::string, std::string>> det = {
      {"C(M)", str(c.value)}, {"h-1(Theta,M)", str(hm1)}, {"h0(Theta,M)", str(h0)}, {"h1(Theta,M)", str(h1)}};
  IdentityReport a = equality("DIHEDRAL_MAIN.product", c.value * h0 * h1, 1);
  IdentityReport b = equality("DIHEDRAL_MAIN.ratio", c.value, hm1 / h0);
  a.details = b.details = det;
  return {a, b};
}

BoundsReport bounds(const GModule& M, long ell) {
  const std::size_t q = dihedral_q(M.group());
  const FiniteGroup& D = M.group();
  BoundsReport r;
  r.prime = ell;
  RegulatorConstant c = regulator_constant(M, dihedral_relation(D));
  r.v = c.exponent(ell);
  r.details.push_back({"C(M)", str(c.value)});
  if (q % static_cast<std::size_t>(ell) == 0) {
    const Subgroup all = Subgroup::whole(D), P = rotation_subgroup(D);
    TorsionDecomposition td = torsion_decomposition(M);
    auto tq = [&](const Subgroup& H) {
      Int o = 1;
      const FixedPointData fp = fixed_points(td.tors, H);
      for (const Int& d : fp.abstract().torsion()) o *= gcd(d, Int(static_cast<unsigned long>(q)));
      return o;
    };
    const Int tD = tq(all), tP = tq(P);
    const long rD = static_cast<long>(fixed_lattice(M, all).rank() - M.relations().rank());
    const long rP = static_cast<long>(fixed_lattice(M, P).rank() - M.relations().rank());
    const long vq = valuation(Int(static_cast<unsigned long>(q)), ell);
    const long vh = rosen_valuation(M, P, ell);
    r.L = 2 * valuation(tD, ell) + 2 * rD * vq - vh;
    r.U = 2 * valuation(tP, ell) + 2 * rP * vq - vh;
    r.details.insert(r.details.end(), {{"|T^D/q|", str(tD)},
                                       {"|T^P/q|", str(tP)},
                                       {"rk M^D", str(rD)},
                                       {"rk M^P", str(rP)},
                                       {"v(h_P) rosen", str(vh)},
                                       {"v(h_P) herbrand", str(valuation(herbrand(M, P), ell))}});
  }
  r.details.push_back({"L", str(r.L)});
  r.details.push_back({"U", str(r.U)});
  r.pass = -r.L <= r.v && r.v <= r.U;
  return r;
}

IdentityReport verify_bounds(const GModule& M, long ell) {
  BoundsReport b = bounds(M, ell);
  IdentityReport r;
  r.id = "BOUNDS[l=" + std::to_string(ell) + "]";
  r.pass = b.pass;
  r.lhs = b.v;
  r.rhs = b.U;
  r.details = b.details;
  r.details.push_back({"v", str(b.v)});
  return r;
}

IdentityReport verify_coprime_valuation(const GModule& M) {
  const std::size_t q = dihedral_q(M.group());
  RegulatorConstant c = regulator_constant(M, dihedral_relation(M.group()));
  Rational part = 1;
  for (const auto& [p, e] : c.factorization)
    if (!mpz_divisible_p(Int(static_cast<unsigned long>(q)).get_mpz_t(), p.get_mpz_t()))
      part *= rational_power(Rational(p), e);
  IdentityReport r = equality("VALUATION", part, 1);
  r.details = {{"C(M)", str(c.value)}};
  return r;
}

IdentityReport verify_rcz(const FiniteGroup& D) {
  const std::size_t q = dihedral_q(D);
  RegulatorConstant c = regulator_constant(trivial_module(D), dihedral_relation(D));
  IdentityReport r = equality("RCZ", c.value, Rational(1, static_cast<unsigned long>(q)));
  r.details = {{"q", str(static_cast<long>(q))}};
  return r;
}

IdentityReport verify_rczs(const FiniteGroup& D, const std::vector<Subgroup>& family) {
  dihedral_q(D);
  const Subgroup P = rotation_subgroup(D);
  Rational expected = 1;
  std::size_t split = 0;
  for (const auto& H : family) {
    if (H.is_subgroup_of(P)) {
      ++split;
      continue;
    }
    expected *= Rational(2, static_cast<unsigned long>(H.order()));
  }
  expected.canonicalize();
  RegulatorConstant c = regulator_constant(sum_or_zero(D, family), dihedral_relation(D));
  IdentityReport r = equality("RCZS", c.value, expected);
  r.details = {{"family size", str(static_cast<long>(family.size()))}, {"inside rotations", str(static_cast<long>(split))}};
  return r;
}

std::vector<long> prime_divisors(long q) {
  std::vector<long> out;
  for (long p = 2; p * p <= q; ++p)
    if (q % p == 0) {
      out.push_back(p);
      while (q % p == 0) q /= p;
    }
  if (q > 1) out.push_back(q);
  return out;
}

}  // namespace reglab
