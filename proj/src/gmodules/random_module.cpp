#include "reglab/gmodules/random_module.hpp"

#include <numeric>

#include "reglab/errors.hpp"

namespace reglab {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // rejection sampling keeps the draw unbiased and engine-defined
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

long Rng::range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ModuleProfile parse_profile(const std::string& s) {
  if (s == "torsion_free") return ModuleProfile::TorsionFree;
  if (s == "finite") return ModuleProfile::Finite;
  if (s == "mixed") return ModuleProfile::Mixed;
  throw ValidationError("unknown module profile '" + s + "' (expected torsion_free, finite or mixed)");
}

std::string profile_name(ModuleProfile p) {
  switch (p) {
    case ModuleProfile::TorsionFree:
      return "torsion_free";
    case ModuleProfile::Finite:
      return "finite";
    case ModuleProfile::Mixed:
      return "mixed";
  }
  return "?";
}

namespace {

GModule random_permutation_sum(const FiniteGroup& G, const std::vector<SubgroupClass>& classes, Rng& rng,
                               std::size_t max_rank, std::size_t max_summands) {
  std::size_t count = 1 + rng.below(max_summands);
  std::vector<GModule> parts;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::size_t> fits;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (used + G.order() / classes[c].representative.order() <= max_rank) fits.push_back(c);
    if (fits.empty()) break;
    const Subgroup& H = classes[fits[rng.below(fits.size())]].representative;
    used += G.order() / H.order();
    parts.push_back(permutation_module(G, H));
  }
  if (parts.empty()) parts.push_back(trivial_module(G));
  return direct_sum(parts);
}

Lattice random_orbit_lattice(const GModule& P, Rng& rng, std::size_t max_vectors, long bound, bool scale_first) {
  const std::size_t n = P.ambient_rank();
  std::size_t k = 1 + rng.below(max_vectors);
  std::vector<IntVector> gens;
  for (std::size_t t = 0; t < k; ++t) {
    IntVector v(n);
    for (auto& x : v) x = rng.range(-bound, bound);
    if (scale_first && t == 0) {
      Int c = rng.range(2, 3);
      for (auto& x : v) x *= c;
    }
    for (Element g = 0; g < P.group().order(); ++g) gens.push_back(P.action(g) * v);
  }
  return Lattice::span(n, gens);
}

// The G-stable sublattice S ⊆ Zⁿ as a module on its own basis.
GModule sublattice_module(const GModule& P, const Lattice& S) {
  const std::size_t s = S.rank();
  std::vector<IntMatrix> act;
  for (Element g = 0; g < P.group().order(); ++g) {
    IntMatrix img = P.action(g) * S.basis();
    IntMatrix A(s, s);
    for (std::size_t j = 0; j < s; ++j) {
      auto c = S.coordinates(img.column(j));
      if (!c) throw InternalError("random_module: orbit lattice is not G-stable");
      A.set_column(j, *c);
    }
    act.push_back(std::move(A));
  }
  return GModule(P.group(), Lattice(s), std::move(act));
}

}  // namespace

GModule random_module(const FiniteGroup& G, ModuleProfile profile, std::uint64_t seed,
                      const RandomModuleOptions& options) {
  Rng rng(seed);
  const auto classes = enumerate_subgroups(G);
  const std::size_t max_rank = options.max_rank ? options.max_rank : std::max<std::size_t>(1, 3 * G.order() / 2);
  static const long moduli[] = {2, 3, 4, 5, 6, 9};
  for (int attempt = 0; attempt < 64; ++attempt) {
    GModule P = random_permutation_sum(G, classes, rng, max_rank, options.max_summands);
    const std::size_t n = P.ambient_rank();
    switch (profile) {
      case ModuleProfile::TorsionFree: {
        Lattice O = random_orbit_lattice(P, rng, options.max_vectors, options.entry_bound, false);
        if (O.rank() == 0) continue;
        if (rng.coin()) O = saturate(O);
        return sublattice_module(P, O);
      }
      case ModuleProfile::Finite: {
        Lattice O = random_orbit_lattice(P, rng, options.max_vectors, options.entry_bound, false);
        Int d = moduli[rng.below(std::size(moduli))];
        Lattice L = O + Lattice::full(n).scaled(d);
        GModule M(G, L, P.actions());
        if (M.is_zero()) continue;
        return minimize(M).module;
      }
      case ModuleProfile::Mixed: {
        Lattice O = random_orbit_lattice(P, rng, options.max_vectors, options.entry_bound, true);
        GModule M(G, O, P.actions());
        if (M.is_zero()) continue;
        return minimize(M).module;
      }
    }
  }
  throw Error("random_module: only zero modules drawn after 64 attempts");
}

ModuleHom random_module_hom(const GModule& M, const GModule& N, std::uint64_t seed) {
  if (M.group().order() != N.group().order()) throw ValidationError("random_module_hom: different groups");
  Rng rng(seed);
  MinimalModule a = minimize(M), b = minimize(N);
  const IntVector& da = a.moduli;
  const IntVector& db = b.moduli;
  IntMatrix X(db.size(), da.size());
  for (std::size_t i = 0; i < db.size(); ++i)
    for (std::size_t j = 0; j < da.size(); ++j) {
      bool src_t = da[j] != 0, dst_t = db[i] != 0;
      if (src_t && !dst_t) continue;  // torsion has to land in torsion
      Int x = rng.range(-3, 3);
      if (src_t) x *= db[i] / gcd(da[j], db[i]);
      X(i, j) = x;
    }
  const FiniteGroup& G = M.group();
  IntMatrix F(db.size(), da.size());
  for (Element g = 0; g < G.order(); ++g) F = F + b.module.action(g) * X * a.module.action(G.inverse(g));
  return ModuleHom(M, N, b.from * F * a.to);
}

}  // namespace reglab
