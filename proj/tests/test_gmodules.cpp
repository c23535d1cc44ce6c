#include "doctest.h"
#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"
#include "reglab/gmodules/gmodule.hpp"
#include "reglab/gmodules/random_module.hpp"

using namespace reglab;

namespace {

GModule sign_module(const FiniteGroup& C2) {
  return GModule(C2, Lattice(1), {IntMatrix::identity(1), IntMatrix::from_rows({{-1}})});
}

IntVector ones(std::size_t n) { return IntVector(n, Int(1)); }

std::size_t double_cosets(const FiniteGroup& G, const Subgroup& H, const Subgroup& U) {
  std::vector<int> seen(G.order(), 0);
  std::size_t count = 0;
  for (Element x = 0; x < G.order(); ++x) {
    if (seen[x]) continue;
    ++count;
    for (Element h : H.elements())
      for (Element u : U.elements()) seen[G.mul(G.mul(h, x), u)] = 1;
  }
  return count;
}

std::vector<FiniteGroup> suite_groups() {
  return {FiniteGroup::dihedral(3), FiniteGroup::dihedral(5),
          FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)}), FiniteGroup::cyclic(6)};
}

}  // namespace

TEST_CASE("validate") {
  FiniteGroup D = FiniteGroup::dihedral(3);
  GModule R = permutation_module(D, Subgroup::trivial());
  CHECK(!validation_failure(R));
  auto act = R.actions();
  act[1] = IntMatrix::identity(6);
  auto err = validation_failure(GModule(D, Lattice(6), act));
  REQUIRE(err);
  CHECK(err->find("(g,h) = (") != std::string::npos);

  FiniteGroup C2 = FiniteGroup::cyclic(2);
  GModule swap(C2, Lattice::span(IntMatrix::from_rows({{1}, {0}})),
               {IntMatrix::identity(2), IntMatrix::from_rows({{0, 1}, {1, 0}})});
  auto e2 = validation_failure(swap);
  REQUIRE(e2);
  CHECK(e2->find("not stable under element 1") != std::string::npos);
  CHECK_THROWS_AS(validate(swap), ValidationError);
}

TEST_CASE("permutation modules") {
  FiniteGroup D = FiniteGroup::dihedral(3);
  GModule P = permutation_module(D, Subgroup(D, {0, 3}));
  CHECK(P.ambient_rank() == 3);
  const IntMatrix& rho = P.action(1);
  // a 3-cycle: permutation matrix with no fixed points whose cube is the identity
  CHECK(rho * rho * rho == IntMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(rho(i, i) == 0);
  CHECK(!validation_failure(P));
  GModule T = permutation_module(D, Subgroup::whole(D));
  CHECK(same_module(T, trivial_module(D)));
  CHECK(permutation_module(D, Subgroup::trivial()).ambient_rank() == 6);
}

TEST_CASE("fixed points examples") {
  FiniteGroup D = FiniteGroup::dihedral(3);
  Subgroup G = Subgroup::whole(D);
  auto fp = fixed_points(permutation_module(D, Subgroup::trivial()), G);
  CHECK(fp.abstract().free_rank() == 1);
  CHECK(fp.F == Lattice::span(6, {ones(6)}));

  FiniteGroup C2 = FiniteGroup::cyclic(2);
  CHECK(fixed_points(sign_module(C2), Subgroup::whole(C2)).abstract().is_trivial());
  auto z2 = fixed_points(trivial_module(C2, 1, 2), Subgroup::whole(C2));
  CHECK(z2.abstract().order() == Int(2));

  GModule P = permutation_module(D, Subgroup(D, {0, 3}));
  auto fr = fixed_points(P, Subgroup(D, {0, 1, 2}));
  CHECK(fr.abstract().free_rank() == 1);
  CHECK(fr.abstract().torsion().empty());
  CHECK(fr.F == Lattice::span(3, {ones(3)}));
}

TEST_CASE("torsion decomposition") {
  FiniteGroup C2 = FiniteGroup::cyclic(2);
  GModule M(C2, Lattice::span(IntMatrix::from_rows({{2}, {0}})), {IntMatrix::identity(2), IntMatrix::identity(2)});
  auto td = torsion_decomposition(M);
  CHECK(td.tors.abelian_group().torsion() == IntVector{Int(2)});
  CHECK(td.tors.abelian_group().free_rank() == 0);
  CHECK(td.mt.ambient_rank() == 1);
  CHECK(td.mt.is_torsion_free());
  CHECK(!validation_failure(td.inclusion));
  CHECK(!validation_failure(td.projection));

  auto tf = torsion_decomposition(permutation_module(C2, Subgroup::trivial()));
  CHECK(tf.tors.abelian_group().is_trivial());
  auto fin = torsion_decomposition(trivial_module(C2, 2, 3));
  CHECK(fin.mt.ambient_rank() == 0);
}

TEST_CASE("duals") {
  FiniteGroup D = FiniteGroup::dihedral(3);
  CHECK(same_module(dual_module(trivial_module(D)), trivial_module(D)));
  for (const auto& c : enumerate_subgroups(D)) {
    GModule P = permutation_module(D, c.representative);
    CHECK(same_module(dual_module(P), P));
  }
  FiniteGroup C2 = FiniteGroup::cyclic(2);
  CHECK(same_module(dual_module(sign_module(C2)), sign_module(C2)));
  CHECK_THROWS_AS(dual_module(trivial_module(C2, 1, 2)), DomainError);
}

TEST_CASE("finite dual keeps elementary divisors") {
  for (const auto& G : suite_groups())
    for (std::uint64_t s = 0; s < 20; ++s) {
      GModule M = random_module(G, ModuleProfile::Finite, s);
      GModule Mv = finite_dual(M);
      CHECK(!validation_failure(Mv));
      CHECK(Mv.abelian_group().torsion() == M.abelian_group().torsion());
      // double dual returns the minimal presentation
      CHECK(same_module(finite_dual(Mv), minimize(M).module));
    }
}

TEST_CASE("tensor products") {
  FiniteGroup D = FiniteGroup::dihedral(3);
  GModule P = permutation_module(D, Subgroup(D, {0, 3}));
  CHECK(same_module(tensor_product(P, trivial_module(D)), P));

  FiniteGroup C2 = FiniteGroup::cyclic(2);
  GModule R = permutation_module(C2, Subgroup::trivial());
  GModule T = tensor_product(R, sign_module(C2));
  // x ↦ X·x with X = diag(1,-1) is a unimodular equivalence Z[C2] → Z[C2] ⊗ sign
  IntMatrix X = IntMatrix::from_rows({{1, 0}, {0, -1}});
  for (Element g = 0; g < 2; ++g) CHECK(T.action(g) * X == X * R.action(g));
  CHECK(abs(determinant(X)) == 1);

  FiniteGroup C1 = FiniteGroup::cyclic(1);
  GModule Z6 = tensor_product(trivial_module(C1, 1, 2), trivial_module(C1, 1, 3));
  CHECK(Z6.is_zero());
}

TEST_CASE("random modules are deterministic and valid") {
  FiniteGroup D = FiniteGroup::dihedral(3);
  for (auto p : {ModuleProfile::TorsionFree, ModuleProfile::Finite, ModuleProfile::Mixed}) {
    GModule a = random_module(D, p, 17), b = random_module(D, p, 17);
    CHECK(a.relations() == b.relations());
    CHECK(a.actions() == b.actions());
  }
  int count = 0;
  auto groups = suite_groups();
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const FiniteGroup& G = groups[s % groups.size()];
    auto p = static_cast<ModuleProfile>(s % 3);
    GModule M = random_module(G, p, derive_seed(99, s));
    auto err = validation_failure(M);
    CHECK_MESSAGE(!err, (err ? *err : ""));
    CHECK(!M.is_zero());
    if (p == ModuleProfile::Finite) CHECK(M.is_finite());
    if (p == ModuleProfile::TorsionFree) CHECK(M.is_torsion_free());
    ++count;
  }
  CHECK(count == 1000);
}

TEST_CASE("fixed points contain norms and torsion commutes with invariants") {
  for (const auto& G : suite_groups()) {
    auto cls = enumerate_subgroups(G);
    for (std::uint64_t s = 0; s < 12; ++s) {
      GModule M = random_module(G, static_cast<ModuleProfile>(s % 3), derive_seed(5, s));
      auto td = torsion_decomposition(M);
      for (const auto& c : cls) {
        const Subgroup& H = c.representative;
        auto fp = fixed_points(M, H);
        CHECK(fp.F.contains(norm_image(M, H)));
        // tors(M^H) as the span of torsion generators of F/L
        std::vector<IntVector> tgen;
        for (std::size_t i = 0; i < fp.quotient.generator_count(); ++i)
          if (fp.quotient.moduli()[i] != 0) tgen.push_back(fp.quotient.generator_lifts().column(i));
        Lattice T1 = Lattice::span(M.ambient_rank(), tgen) + M.relations();
        // (tors M)^H computed in the tors module and pushed into M
        Lattice T2 = fixed_lattice(td.tors, H).image(td.inclusion.matrix()) + M.relations();
        CHECK(T1 == T2);
      }
    }
  }
}

TEST_CASE("double dual of torsion-free modules") {
  int n = 0;
  for (const auto& G : suite_groups())
    for (std::uint64_t s = 0; s < 25; ++s) {
      GModule M = random_module(G, ModuleProfile::TorsionFree, derive_seed(1234, s));
      CHECK(same_module(dual_module(dual_module(M)), M));
      CHECK(!validation_failure(dual_module(M)));
      ++n;
    }
  CHECK(n == 100);
}

TEST_CASE("restriction of permutation modules") {
  for (const auto& G : suite_groups()) {
    auto cls = enumerate_subgroups(G);
    for (const auto& cu : cls)
      for (const auto& ch : cls) {
        GModule P = permutation_module(G, cu.representative);
        GModule R = restrict_module(P, ch.representative);
        CHECK(R.ambient_rank() == G.order() / cu.representative.order());
        CHECK(!validation_failure(R));
        // orbits of H on G/U are the double cosets
        auto fp = fixed_points(R, Subgroup::whole(R.group()));
        CHECK(fp.abstract().free_rank() == double_cosets(G, ch.representative, cu.representative));
      }
  }
}

TEST_CASE("random module homs are equivariant") {
  FiniteGroup D = FiniteGroup::dihedral(5);
  for (std::uint64_t s = 0; s < 30; ++s) {
    GModule M = random_module(D, static_cast<ModuleProfile>(s % 3), s);
    GModule N = random_module(D, static_cast<ModuleProfile>((s + 1) % 3), s + 100);
    auto err = validation_failure(random_module_hom(M, N, s));
    CHECK_MESSAGE(!err, (err ? *err : ""));
  }
}
