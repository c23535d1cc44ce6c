#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "reglab/gmodules/gmodule.hpp"

namespace reglab {

/// Seeded generator with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long range(long lo, long hi);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class ModuleProfile { TorsionFree, Finite, Mixed };
ModuleProfile parse_profile(const std::string& s);
std::string profile_name(ModuleProfile p);

struct RandomModuleOptions {
  std::size_t max_rank = 0;      // rank bound on the permutation module; 0 = 3|G|/2
  std::size_t max_summands = 3;  // permutation summands
  std::size_t max_vectors = 2;   // orbit generators
  long entry_bound = 2;          // coefficients in [-bound, bound]
};

GModule random_module(const FiniteGroup& G, ModuleProfile profile, std::uint64_t seed,
                      const RandomModuleOptions& options = {});

/// Random Z[G]-map M → N obtained by averaging a random relation-compatible
/// matrix over the group.
ModuleHom random_module_hom(const GModule& M, const GModule& N, std::uint64_t seed);

}  // namespace reglab
