#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "reglab/errors.hpp"
#include "reglab/exactla/lattice.hpp"
#include "reglab/exactla/normal_form.hpp"

using namespace reglab;

namespace {

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

bool is_diagonal_chain(const SmithForm& s) {
  for (std::size_t i = 0; i < s.S.rows(); ++i)
    for (std::size_t j = 0; j < s.S.cols(); ++j)
      if (i != j && s.S(i, j) != 0) return false;
  for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
    if (!mpz_divisible_p(s.divisors[i + 1].get_mpz_t(), s.divisors[i].get_mpz_t())) return false;
  for (std::size_t i = s.divisors.size(); i < std::min(s.S.rows(), s.S.cols()); ++i)
    if (s.S(i, i) != 0) return false;
  return true;
}

// Random unimodular matrix with known inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix P = IntMatrix::identity(n), Pi = IntMatrix::identity(n);
  if (n < 2) return {P, Pi};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> c(-2, 2);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Int q = c(rng);
    // P ← E·P with E = I + q·e_i e_jᵀ;  Pi ← Pi·E⁻¹
    for (std::size_t k = 0; k < n; ++k) P(i, k) += q * P(j, k);
    for (std::size_t k = 0; k < n; ++k) Pi(k, j) -= q * Pi(k, i);
  }
  return {P, Pi};
}

struct RandomHomMaker {
  std::mt19937_64 rng;
  explicit RandomHomMaker(std::uint64_t seed) : rng(seed) {}

  long draw(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  IntVector torsion() {
    IntVector t;
    long k = draw(0, 3);
    for (long i = 0; i < k; ++i) t.emplace_back(draw(2, 12));
    return t;
  }

  // Map ⊕Z/aᵢ ⊕ Z^s → ⊕Z/bⱼ ⊕ Z^s with nonsingular free block, then disguised
  // by unimodular changes of generators on both sides.
  GroupHom make(std::size_t s) {
    IntVector a = torsion(), b = torsion();
    std::size_t ka = a.size() + s, kb = b.size() + s;
    IntMatrix M(kb, ka);
    for (std::size_t j = 0; j < ka; ++j)
      for (std::size_t i = 0; i < kb; ++i) {
        bool src_t = j < a.size(), dst_t = i < b.size();
        if (src_t && !dst_t) continue;
        Int x = draw(-4, 4);
        if (src_t) {
          Int g;
          mpz_gcd(g.get_mpz_t(), a[j].get_mpz_t(), b[i].get_mpz_t());
          x *= b[i] / g;
        }
        M(i, j) = x;
      }
    // nonsingular free block
    while (true) {
      IntMatrix F(s, s);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) F(i, j) = draw(-3, 3);
      if (determinant(F) != 0) {
        M.set_block(b.size(), a.size(), F);
        break;
      }
    }
    auto A = PresentedAbelianGroup::from_invariants(a, s);
    auto B = PresentedAbelianGroup::from_invariants(b, s);
    auto [P, Pi] = random_unimodular(rng, ka);
    auto [Q, Qi] = random_unimodular(rng, kb);
    PresentedAbelianGroup A2(ka, P * A.relations());
    PresentedAbelianGroup B2(kb, Q * B.relations());
    return GroupHom(A2, B2, Q * M * Pi);
  }
};

}  // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(s.S == IntMatrix::from_rows({{2, 0}, {0, 4}}));
  CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}})).S == IntMatrix::from_rows({{1, 0}, {0, 6}}));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int t = 0; t < 500; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix A = oracle::random_matrix(rng, r, c, -9, 9);
    if (t % 7 == 0 && r > 1) A.set_block(r - 1, 0, A.block(0, 0, 1, c).scaled(3));  // force rank drop
    auto s = smith_normal_form(A);
    REQUIRE(s.U * A * s.V == s.S);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(s.U * s.U_inv == IntMatrix::identity(r));
    CHECK(is_diagonal_chain(s));
    if (r <= 4 && c <= 4) CHECK(s.divisors == oracle::determinantal_divisors(A));
    CHECK(elementary_divisors(A) == s.divisors);
  }
}

TEST_CASE("smith normal form is deterministic") {
  IntMatrix A = IntMatrix::from_rows({{4, -6, 10}, {2, 3, 7}, {8, 0, 1}});
  auto a = smith_normal_form(A), b = smith_normal_form(A);
  CHECK(a.U == b.U);
  CHECK(a.V == b.V);
}

TEST_CASE("hermite basis shape and canonicity") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    IntMatrix G = oracle::random_matrix(rng, 4, 5, -6, 6);
    IntMatrix H = hermite_basis(G);
    auto piv = hermite_pivot_rows(H);
    for (std::size_t j = 0; j < H.cols(); ++j) {
      CHECK(H(piv[j], j) > 0);
      for (std::size_t i = 0; i < piv[j]; ++i) CHECK(H(i, j) == 0);
      for (std::size_t k = 0; k < j; ++k) {
        CHECK(H(piv[j], k) >= 0);
        CHECK(H(piv[j], k) < H(piv[j], j));
      }
    }
    // same lattice from a different generating set
    auto [P, Pi] = random_unimodular(rng, 5);
    CHECK(hermite_basis(G * P) == H);
  }
}

TEST_CASE("integer kernel") {
  Lattice K = integer_kernel(IntMatrix::from_rows({{1, 2, 3}}));
  CHECK(K.rank() == 2);
  CHECK(K.contains(vec({2, -1, 0})));
  CHECK(K.contains(vec({3, 0, -1})));
  CHECK(integer_kernel(IntMatrix::identity(3)).rank() == 0);
  CHECK(integer_kernel(IntMatrix(2, 2)) == Lattice::full(2));

  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    IntMatrix A = oracle::random_matrix(rng, 3, 6, -5, 5);
    if (t % 3 == 0) A.set_block(2, 0, A.block(0, 0, 1, 6).scaled(2) - A.block(1, 0, 1, 6));
    Lattice L = integer_kernel(A);
    CHECK((A * L.basis()).is_zero());
    CHECK(L.rank() + matrix_rank(A) == 6);
    CHECK(saturate(L) == L);
  }
}

TEST_CASE("saturation") {
  CHECK(saturate(Lattice::span(IntMatrix::from_rows({{2}, {0}}))) == Lattice::span(IntMatrix::from_rows({{1}, {0}})));
  CHECK(saturate(Lattice::span(IntMatrix::from_rows({{2}, {4}}))) == Lattice::span(IntMatrix::from_rows({{1}, {2}})));
  CHECK(saturate(Lattice::full(2).scaled(2)) == Lattice::full(2));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Lattice L = Lattice::span(oracle::random_matrix(rng, 5, 3, -4, 4));
    Lattice S = saturate(L);
    CHECK(S.rank() == L.rank());
    CHECK(S.contains(L));
    CHECK(subquotient_group(S, L).is_finite());
    CHECK(subquotient_group(Lattice::full(5), S).torsion().empty());
  }
}

TEST_CASE("lattice sum, intersection and preimage") {
  Lattice a = Lattice::span(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  Lattice b = Lattice::span(IntMatrix::from_rows({{3, 0}, {0, 2}}));
  CHECK(intersect(a, b) == Lattice::full(2).scaled(6));
  CHECK(a + b == Lattice::full(2));
  // {x : 2x ∈ 6Z} = 3Z
  Lattice p = preimage(IntMatrix::from_rows({{2}}), Lattice::span(IntMatrix::from_rows({{6}})));
  CHECK(p == Lattice::span(IntMatrix::from_rows({{3}})));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Lattice x = Lattice::span(oracle::random_matrix(rng, 4, 3, -4, 4));
    Lattice y = Lattice::span(oracle::random_matrix(rng, 4, 3, -4, 4));
    Lattice i = intersect(x, y);
    CHECK(x.contains(i));
    CHECK(y.contains(i));
    IntMatrix A = oracle::random_matrix(rng, 4, 3, -3, 3);
    Lattice pre = preimage(A, x);
    for (std::size_t j = 0; j < pre.rank(); ++j) CHECK(x.contains(A * pre.basis().column(j)));
  }
}

TEST_CASE("preimage of a diagonal lattice matches enumeration") {
  std::mt19937_64 rng(23);
  const long choices[] = {0, 1, 2, 3, 4, 6, 9};
  for (int t = 0; t < 60; ++t) {
    IntMatrix A = oracle::random_matrix(rng, 4, 3, -5, 5);
    std::vector<long> d(4);
    IntMatrix D(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      d[i] = choices[rng() % 7];
      D(i, i) = d[i];
    }
    Lattice pre = preimage(A, Lattice::span(D));
    for (long a = -4; a <= 4; ++a)
      for (long b = -4; b <= 4; ++b)
        for (long c = -4; c <= 4; ++c) {
          IntVector x = vec({a, b, c});
          IntVector y = A * x;
          bool ok = true;
          for (std::size_t i = 0; i < 4; ++i) {
            Int r = d[i] == 0 ? y[i] : Int(y[i] % d[i]);
            if (r != 0) ok = false;
          }
          CHECK(pre.contains(x) == ok);
        }
  }
}

TEST_CASE("subquotient groups") {
  auto g = subquotient_group(Lattice::full(2), Lattice::span(IntMatrix::from_rows({{2, 0}, {0, 3}})));
  CHECK(g.torsion() == vec({6}));
  CHECK(g.order() == Int(6));
  auto f = subquotient_group(Lattice::full(2), Lattice(2));
  CHECK(f.free_rank() == 2);
  CHECK(f.torsion().empty());
  Lattice U = Lattice::span(IntMatrix::from_rows({{1, 2}, {1, 0}}));
  auto h = subquotient_group(U, U.scaled(2));
  CHECK(h.torsion() == vec({2, 2}));
  CHECK_THROWS_AS(Subquotient(U.scaled(2), U), ValidationError);
  CHECK_THROWS_WITH(Subquotient(U.scaled(2), U), "not a subquotient");
}

TEST_CASE("subquotient order equals determinant ratio") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    IntMatrix B = oracle::random_matrix(rng, 3, 3, -4, 4);
    if (determinant(B) == 0) continue;
    IntMatrix C = oracle::random_matrix(rng, 3, 3, -3, 3);
    if (determinant(C) == 0) continue;
    Lattice U = Lattice::span(B), V = Lattice::span(B * C);
    auto o = subquotient_group(U, V).order();
    REQUIRE(o);
    CHECK(*o == abs(oracle::cofactor_det(B * C)) / abs(oracle::cofactor_det(B)));
  }
}

TEST_CASE("subquotient coordinates and lifts") {
  Lattice U = Lattice::span(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  Lattice V = Lattice::span(IntMatrix::from_rows({{2, 0}, {0, 0}, {0, 4}}));
  Subquotient S(U, V);
  CHECK(S.moduli() == vec({2, 4, 0}));
  for (std::size_t i = 0; i < S.generator_count(); ++i) {
    IntVector e(S.generator_count());
    e[i] = 1;
    CHECK(S.coordinates(S.lift(e)) == e);
  }
}

TEST_CASE("qindex examples") {
  auto Z = PresentedAbelianGroup::from_invariants({}, 1);
  CHECK(qindex(GroupHom(Z, Z, IntMatrix::from_rows({{6}}))) == Rational(6));
  auto Z2 = PresentedAbelianGroup::from_invariants({}, 2);
  CHECK(qindex(GroupHom(Z2, Z2, IntMatrix::from_rows({{2, 0}, {0, 3}}))) == Rational(6));
  CHECK(!qindex(GroupHom(Z2, Z, IntMatrix::from_rows({{1, 0}}))));
  CHECK(qindex_to_string(qindex(GroupHom(Z2, Z, IntMatrix::from_rows({{1, 0}})))) == "infinite");
  auto C4 = PresentedAbelianGroup::from_invariants(vec({4}), 0);
  auto C2 = PresentedAbelianGroup::from_invariants(vec({2}), 0);
  // kernel {0,2}, cokernel 0
  CHECK(qindex(GroupHom(C4, C2, IntMatrix::from_rows({{1}}))) == Rational(1, 2));
  CHECK_THROWS_AS(GroupHom(C2, C4, IntMatrix::from_rows({{1}})), ValidationError);
}

TEST_CASE("qindex of Z/4 -> Z/2 against enumeration") {
  // kernel and cokernel by listing elements
  int ker = 0;
  for (int x = 0; x < 4; ++x) ker += (x % 2 == 0);
  int image = 2;  // 0 and 1 are both hit
  Rational expected(2 / image, ker);
  auto C4 = PresentedAbelianGroup::from_invariants(vec({4}), 0);
  auto C2 = PresentedAbelianGroup::from_invariants(vec({2}), 0);
  CHECK(qindex(GroupHom(C4, C2, IntMatrix::from_rows({{1}}))) == expected);
}

TEST_CASE("qindex torsion/free factorization and duality") {
  RandomHomMaker gen(424242);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    GroupHom f = gen.make(static_cast<std::size_t>(gen.draw(0, 3)));
    auto q = qindex(f);
    REQUIRE(q);
    auto qt = qindex(torsion_part(f));
    auto qm = qindex(free_part(f));
    auto qd = qindex(z_dual(f));
    REQUIRE(qt);
    REQUIRE(qm);
    REQUIRE(qd);
    CHECK(*q == *qt * *qm);
    // the Z-dual sees only the torsion-free part, so q(f) = q(f*)·q(tors f)
    CHECK(*q == *qd * *qt);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("qindex is multiplicative on compositions") {
  RandomHomMaker gen(777);
  int done = 0;
  for (int t = 0; done < 200 && t < 2000; ++t) {
    GroupHom f = gen.make(2);
    // g: target(f) → some group, built on the minimal presentation of target(f)
    Subquotient T(Lattice::full(f.target().generator_count()), f.target().relation_lattice());
    GroupHom fm = induced_hom(Subquotient(Lattice::full(f.source().generator_count()), f.source().relation_lattice()), T,
                              f.matrix());
    const auto& m = T.moduli();
    IntVector b;
    std::size_t free = 0;
    for (const auto& x : m) (x == 0 ? (void)++free : b.push_back(x));
    auto B = PresentedAbelianGroup::from_invariants(b, free);
    IntMatrix G(B.generator_count(), m.size());
    for (std::size_t i = 0; i < G.rows(); ++i)
      for (std::size_t j = 0; j < G.cols(); ++j) {
        bool src_t = m[j] != 0, dst_t = i < b.size();
        if (src_t && !dst_t) continue;
        Int x = gen.draw(-3, 3);
        if (i == j) x += 1;
        if (src_t) {
          Int gg;
          mpz_gcd(gg.get_mpz_t(), m[j].get_mpz_t(), b[i].get_mpz_t());
          x *= b[i] / gg;
        }
        G(i, j) = x;
      }
    GroupHom g(T.group(), B, G);
    auto qf = qindex(fm), qg = qindex(g), qgf = qindex(compose(g, fm));
    if (!qf || !qg) continue;
    REQUIRE(qgf);
    CHECK(*qgf == *qf * *qg);
    CHECK(qindex(fm) == qindex(f));
    ++done;
  }
  CHECK(done == 200);
}

TEST_CASE("pontryagin dual inverts the qindex of finite maps") {
  RandomHomMaker gen(31337);
  for (int t = 0; t < 100; ++t) {
    GroupHom f = gen.make(0);
    auto q = qindex(f), qd = qindex(pontryagin_dual(f));
    REQUIRE(q);
    REQUIRE(qd);
    CHECK(*q * *qd == 1);
  }
}

TEST_CASE("determinant and rank") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    IntMatrix A = oracle::random_matrix(rng, 4, 4, -7, 7);
    CHECK(determinant(A) == oracle::cofactor_det(A));
  }
  CHECK(matrix_rank(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
}
