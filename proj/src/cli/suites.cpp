#include "reglab/cli/suites.hpp"

#include <functional>
#include <map>

#include "reglab/cli/json_io.hpp"
#include "reglab/cohomology/tate.hpp"
#include "reglab/cohomology/theta.hpp"
#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"
#include "reglab/gmodules/random_module.hpp"

namespace reglab::cli {

namespace {

using Emit = std::function<void(Report)>;

std::string divisors_string(const IntVector& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + d[i].get_str();
  return s + "]";
}

Report simple(std::string check, bool pass, const Rational& lhs, const Rational& rhs, std::uint64_t seed,
              const FiniteGroup& G, const GModule* M = nullptr) {
  Report r;
  r.check = std::move(check);
  r.status = pass ? "pass" : "fail";
  r.lhs = lhs;
  r.rhs = rhs;
  r.seed = seed;
  r.group = G.name();
  if (M) r.digest = module_digest(*M);
  return r;
}

Report error_report(std::string check, const std::string& what, std::uint64_t seed, const FiniteGroup& G) {
  Report r;
  r.check = std::move(check);
  r.status = "error";
  r.seed = seed;
  r.group = G.name();
  r.error = what;
  return r;
}

// Runs a batch of checks; domain and resource errors become error reports,
// InternalError aborts the suite.
void guarded(const Emit& emit, const std::string& check, std::uint64_t seed, const FiniteGroup& G,
             const std::function<void()>& body) {
  try {
    body();
  } catch (const ResourceLimitError& e) {
    emit(error_report(check, std::string("resource limit: ") + e.what(), seed, G));
  } catch (const DomainError& e) {
    emit(error_report(check, e.what(), seed, G));
  } catch (const ValidationError& e) {
    emit(error_report(check, e.what(), seed, G));
  }
}

void emit_all(const Emit& emit, const std::vector<IdentityReport>& rs, std::uint64_t seed, const GModule& M) {
  for (const auto& r : rs) emit(from_identity(r, seed, &M));
}

FiniteGroup klein() { return FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)}); }

std::vector<Subgroup> random_family(const FiniteGroup& G, Rng& rng) {
  auto cls = enumerate_subgroups(G);
  std::vector<Subgroup> fam;
  const std::size_t k = 1 + rng.below(4);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& c = cls[rng.below(cls.size())];
    fam.push_back(c.members[rng.below(c.members.size())]);
  }
  return fam;
}

// The relation used for a test group: Θ_D when dihedral, else the first basis vector.
std::optional<BrauerRelation> test_relation(const FiniteGroup& G) {
  if (G.dihedral_q()) return dihedral_relation(G);
  auto rels = relation_lattice(G);
  if (rels.empty()) return std::nullopt;
  return rels.front();
}

std::vector<std::size_t> or_default(const std::vector<std::size_t>& q, std::vector<std::size_t> def) {
  return q.empty() ? def : q;
}

void suite_dihedral(const SuiteParams& p, const Emit& emit) {
  for (std::size_t q : or_default(p.q, {3, 5})) {
    const FiniteGroup D = FiniteGroup::dihedral(q);
    const std::uint64_t base = derive_seed(p.seed, q);
    guarded(emit, "RCZ", base, D, [&] {
      Report r = from_identity(verify_rcz(D), base, nullptr);
      r.group = D.name();
      emit(std::move(r));
    });
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = derive_seed(base, t);
      const auto profile = static_cast<ModuleProfile>(t % 3);
      guarded(emit, "DIHEDRAL", s, D, [&] {
        GModule M = random_module(D, profile, s);
        emit_all(emit, verify_dihedral_main(M), s, M);
        emit_all(emit, verify_dcf(M), s, M);
        for (long ell : prime_divisors(static_cast<long>(q))) emit(from_identity(verify_bounds(M, ell), s, &M));
        emit(from_identity(verify_coprime_valuation(M), s, &M));
        GModule T = torsion_decomposition(M).tors;
        emit_all(emit, verify_finite_dihedral(T), s, T);
        GModule N = random_module(D, static_cast<ModuleProfile>((t + 1) % 3), derive_seed(s, 1));
        emit_all(emit, verify_dcf_kernel(random_module_hom(M, N, derive_seed(s, 2))), s, M);
        Rng rng(derive_seed(s, 3));
        Report r = from_identity(verify_rczs(D, random_family(D, rng)), s, nullptr);
        r.group = D.name();
        emit(std::move(r));
      });
    }
  }
}

std::vector<FiniteGroup> duality_groups() {
  return {klein(), FiniteGroup::dihedral(3), FiniteGroup::cyclic(6), FiniteGroup::dihedral(5)};
}

void suite_duality(const SuiteParams& p, const Emit& emit, std::vector<std::string>& skipped) {
  for (const FiniteGroup& G : duality_groups()) {
    auto th = test_relation(G);
    if (!th) {
      skipped.push_back(G.name() + ": no nonzero Brauer relation");
      continue;
    }
    const std::uint64_t base = derive_seed(p.seed, G.order());
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = derive_seed(base, t);
      guarded(emit, "DUAL1", s, G, [&] {
        GModule M = random_module(G, ModuleProfile::TorsionFree, s);
        emit(from_identity(verify_dual1(M, *th), s, &M));
      });
    }
  }
}

void suite_finite(const SuiteParams& p, const Emit& emit) {
  for (const FiniteGroup& G : {klein(), FiniteGroup::dihedral(3), FiniteGroup::dihedral(5)}) {
    const BrauerRelation th = *test_relation(G);
    const std::uint64_t base = derive_seed(p.seed, 100 + G.order());
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = derive_seed(base, t);
      guarded(emit, "FINITE", s, G, [&] {
        GModule M = random_module(G, ModuleProfile::Finite, s);
        emit(from_identity(verify_finite_dual(M, th), s, &M));
        GModule S = direct_sum(M, finite_dual(M));
        if (G.dihedral_q()) {
          emit_all(emit, verify_finite_dihedral(M), s, M);
          auto rs = verify_finite_dihedral(S);
          IdentityReport a = rs[0], b = rs[1];
          a.id = "SELF_DUAL.orders";
          a.pass = a.lhs == 1 && rs[0].pass;
          a.rhs = 1;
          b.id = "SELF_DUAL.regulator";
          b.pass = b.lhs == 1 && rs[1].pass;
          b.rhs = 1;
          emit(from_identity(a, s, &S));
          emit(from_identity(b, s, &S));
        } else {
          IdentityReport r = verify_finite_dual(S, th);
          r.id = "SELF_DUAL.dual";
          emit(from_identity(r, s, &S));
        }
      });
    }
  }
}

void suite_bounds(const SuiteParams& p, const Emit& emit) {
  for (std::size_t q : or_default(p.q, {3, 5, 9, 15})) {
    const FiniteGroup D = FiniteGroup::dihedral(q);
    const std::uint64_t base = derive_seed(p.seed, 200 + q);
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = derive_seed(base, t);
      guarded(emit, "BOUNDS", s, D, [&] {
        GModule M = random_module(D, static_cast<ModuleProfile>(t % 3), s);
        for (long ell : prime_divisors(static_cast<long>(q))) emit(from_identity(verify_bounds(M, ell), s, &M));
        emit(from_identity(verify_coprime_valuation(M), s, &M));
      });
    }
  }
}

// F_p-module: permutation module modulo an orbit lattice and p.
GModule elementary_module(const FiniteGroup& G, long p, std::uint64_t seed) {
  Rng rng(seed);
  auto cls = enumerate_subgroups(G);
  std::vector<GModule> parts;
  for (int i = 0; i < 2; ++i) parts.push_back(permutation_module(G, cls[rng.below(cls.size())].representative));
  GModule P = direct_sum(parts);
  const std::size_t n = P.ambient_rank();
  IntVector v(n);
  for (auto& x : v) x = rng.range(-1, 1);
  std::vector<IntVector> gens;
  for (Element g = 0; g < G.order(); ++g) gens.push_back(P.action(g) * v);
  Lattice L = Lattice::span(n, gens) + Lattice::full(n).scaled(Int(p));
  return minimize(GModule(G, L, P.actions())).module;
}

Report divisor_report(std::string check, const TateGroup& a, const TateGroup& b, std::uint64_t seed,
                      const FiniteGroup& G, const GModule* M) {
  Report r = simple(std::move(check), a.divisors == b.divisors, Rational(a.order), Rational(b.order), seed, G, M);
  r.details = {{"lhs_divisors", divisors_string(a.divisors)}, {"rhs_divisors", divisors_string(b.divisors)},
               {"degrees", std::to_string(a.degree) + "," + std::to_string(b.degree)}};
  return r;
}

std::string subgroup_string(const Subgroup& H) {
  std::string s;
  for (std::size_t i = 0; i < H.elements().size(); ++i) s += (i ? "," : "") + std::to_string(H.elements()[i]);
  return s;
}

void suite_cohomology(const SuiteParams& p, const Emit& emit) {
  const std::vector<FiniteGroup> groups = {FiniteGroup::dihedral(3), FiniteGroup::dihedral(5), FiniteGroup::cyclic(6),
                                           klein()};
  for (const FiniteGroup& G : groups) {
    const Subgroup all = Subgroup::whole(G);
    const GModule Z = trivial_module(G);
    const GModule R = permutation_module(G, Subgroup::trivial());
    for (const auto& c : enumerate_subgroups(G)) {
      const Subgroup& H = c.representative;
      guarded(emit, "SHAPIRO", 0, G, [&] {
        const GModule P = permutation_module(G, H);
        for (int i = -1; i <= 2; ++i) {
          Report r = divisor_report("SHAPIRO", tate(P, all, i, TateRoute::Cocycle), tate(Z, H, i, TateRoute::Cocycle), 0,
                                    G, &P);
          r.details["subgroup"] = subgroup_string(H);
          emit(std::move(r));
          TateGroup f = tate(R, H, i, TateRoute::Cocycle);
          Report z = simple("FREE", f.order == 1, Rational(f.order), 1, 0, G, &R);
          z.details = {{"subgroup", subgroup_string(H)}, {"degree", i}};
          emit(std::move(z));
        }
      });
    }
  }
  const std::uint64_t base = derive_seed(p.seed, 300);
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = derive_seed(base, t);
    const FiniteGroup& G = groups[t % groups.size()];
    guarded(emit, "ORACLES", s, G, [&] {
      GModule M = random_module(G, static_cast<ModuleProfile>(t % 3), s);
      for (const auto& c : enumerate_subgroups(G)) {
        const Subgroup& H = c.representative;
        if (H.order() == 1) continue;
        if (is_cyclic(G, H)) {
          emit(divisor_report("PERIODICITY", tate(M, H, -1, TateRoute::Cocycle), tate(M, H, 1, TateRoute::Cocycle), s, G, &M));
          emit(divisor_report("PERIODICITY", tate(M, H, 0, TateRoute::Cocycle), tate(M, H, 2, TateRoute::Cocycle), s, G, &M));
        }
        if (M.is_torsion_free()) {
          // Ĥ⁻¹ is the torsion of the coinvariants
          const std::size_t n = M.ambient_rank();
          std::vector<IntVector> gens;
          for (Element h : H.elements()) {
            IntMatrix Dh = M.action(h) - IntMatrix::identity(n);
            for (std::size_t j = 0; j < n; ++j) gens.push_back(Dh.column(j));
          }
          IntVector tors = subquotient_group(Lattice::full(n), Lattice::span(n, gens)).torsion();
          TateGroup a = tate(M, H, -1);
          Report r = simple("COINVARIANTS", a.divisors == tors, Rational(a.order), 1, s, G, &M);
          Int o = 1;
          for (const auto& d : tors) o *= d;
          r.rhs = Rational(o);
          r.details = {{"lhs_divisors", divisors_string(a.divisors)}, {"rhs_divisors", divisors_string(tors)}};
          emit(std::move(r));
        }
      }
      const long primes[] = {2, 3, 5};
      const long pr = primes[t % 3];
      GModule E = elementary_module(G, pr, derive_seed(s, 1));
      for (const auto& c : enumerate_subgroups(G)) {
        const Subgroup& H = c.representative;
        if (H.order() == 1) continue;
        const Int lhs = tate(E, H, 1, TateRoute::Cocycle).order, rhs = h1_order_mod_p(E, H, pr);
        Report r = simple("MOD_P", lhs == rhs, Rational(lhs), Rational(rhs), s, G, &E);
        r.details = {{"p", pr}, {"subgroup", subgroup_string(H)}};
        emit(std::move(r));
      }
    });
  }
  for (std::size_t q : or_default(p.q, {9, 15})) {
    const FiniteGroup D = FiniteGroup::dihedral(q);
    const Subgroup P = rotation_subgroup(D);
    const std::uint64_t qb = derive_seed(p.seed, 400 + q);
    for (std::size_t t = 0; t < p.trials; ++t) {
      const std::uint64_t s = derive_seed(qb, t);
      guarded(emit, "ROSEN", s, D, [&] {
        GModule M = random_module(D, static_cast<ModuleProfile>(t % 3), s);
        const Rational h = herbrand(M, P);
        for (long ell : prime_divisors(static_cast<long>(q))) {
          const long a = rosen_valuation(M, P, ell), b = valuation(h, ell);
          Report r = simple("ROSEN", a == b, a, b, s, D, &M);
          r.details = {{"prime", ell}, {"herbrand", rational_string(h)}};
          emit(std::move(r));
        }
      });
    }
  }
}

std::size_t cyclic_classes(const FiniteGroup& G, const std::vector<SubgroupClass>& cls) {
  std::size_t c = 0;
  for (const auto& s : cls)
    if (is_cyclic(G, s.representative)) ++c;
  return c;
}

void suite_brauer(const SuiteParams& p, const Emit& emit) {
  std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(5), klein(),
                                     FiniteGroup::product({FiniteGroup::cyclic(2), FiniteGroup::cyclic(2),
                                                           FiniteGroup::cyclic(2)})};
  for (std::size_t q : or_default(p.q, {3, 5})) groups.push_back(FiniteGroup::dihedral(q));
  for (const FiniteGroup& G : groups) {
    guarded(emit, "RELATIONS", 0, G, [&] {
      const auto cls = enumerate_subgroups(G);
      const auto rels = relation_lattice(G);
      const long expect = static_cast<long>(cls.size() - cyclic_classes(G, cls));
      emit(simple("RELATION_RANK", static_cast<long>(rels.size()) == expect, static_cast<long>(rels.size()), expect, 0, G));
      for (const auto& r : rels) {
        Report rep = simple("RELATION_VALID", is_brauer_relation(r).ok, 1, 1, 0, G);
        rep.details = {{"relation", r.to_string()}};
        if (rep.status == "fail") rep.lhs = 0;
        emit(std::move(rep));
      }
      if (G.order() == 4 && cls.size() == 5 && rels.size() == 1) {
        const auto c = canonicalize(rels[0], cls);
        std::vector<long> co;
        for (const auto& t : c.terms) co.push_back(t.coeff * (c.terms[0].coeff < 0 ? -1 : 1));
        Report rep = simple("V4_GENERATOR", co == std::vector<long>{1, -1, -1, -1, 2}, 1, 1, 0, G);
        rep.details = {{"relation", c.to_string()}};
        emit(std::move(rep));
      }
      if (G.dihedral_q()) {
        IntMatrix B(cls.size(), rels.size());
        for (std::size_t j = 0; j < rels.size(); ++j)
          for (const auto& t : rels[j].terms) B(class_index(cls, t.subgroup), j) += t.coeff;
        IntVector th(cls.size());
        for (const auto& t : dihedral_relation(G).terms) th[class_index(cls, t.subgroup)] += t.coeff;
        const bool in = Lattice::span(cls.size(), [&] {
                          std::vector<IntVector> cols;
                          for (std::size_t j = 0; j < B.cols(); ++j) cols.push_back(B.column(j));
                          return cols;
                        }()).contains(th);
        Report rep = simple("THETA_SPAN", in, in ? 1 : 0, 1, 0, G);
        rep.details = {{"theta", dihedral_relation(G).to_string()}};
        emit(std::move(rep));
      }
    });
  }
}

// Random map ⊕Z/aᵢ ⊕ Z^r → ⊕Z/bⱼ ⊕ Z^r, injective with finite cokernel on the free parts.
GroupHom random_group_hom(Rng& rng) {
  static const long mods[] = {2, 3, 4, 6, 8, 9, 12};
  auto invariants = [&] {
    IntVector t;
    const std::size_t k = rng.below(4);
    for (std::size_t i = 0; i < k; ++i) t.emplace_back(mods[rng.below(7)]);
    return t;
  };
  const IntVector ta = invariants(), tb = invariants();
  const std::size_t r = rng.below(3);
  auto A = PresentedAbelianGroup::from_invariants(ta, r);
  auto B = PresentedAbelianGroup::from_invariants(tb, r);
  for (;;) {
    IntMatrix X(tb.size() + r, ta.size() + r);
    for (std::size_t i = 0; i < tb.size(); ++i) {
      for (std::size_t j = 0; j < ta.size(); ++j) X(i, j) = (tb[i] / gcd(tb[i], ta[j])) * rng.range(-3, 3);
      for (std::size_t j = 0; j < r; ++j) X(i, ta.size() + j) = rng.range(-4, 4);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) X(tb.size() + i, ta.size() + j) = rng.range(-3, 3);
    if (r == 0 || determinant(X.block(tb.size(), ta.size(), r, r)) != 0) return GroupHom(A, B, X);
  }
}

void suite_qindex(const SuiteParams& p, const Emit& emit) {
  const FiniteGroup Z1 = FiniteGroup::cyclic(1);
  const std::uint64_t base = derive_seed(p.seed, 500);
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::uint64_t s = derive_seed(base, t);
    guarded(emit, "QINDEX", s, Z1, [&] {
      Rng rng(s);
      GroupHom f = random_group_hom(rng);
      auto q = qindex(f), qt = qindex(torsion_part(f)), qm = qindex(free_part(f)), qd = qindex(z_dual(f));
      if (!q || !qt || !qm || !qd) throw InternalError("qindex suite: infinite q-index for an isogeny");
      Report a = simple("QINDEX_TORS", *q == *qt * *qm, *q, *qt * *qm, s, Z1);
      a.details = {{"source", f.source().to_string()}, {"target", f.target().to_string()}};
      emit(std::move(a));
      Report b = simple("QINDEX_DUAL", *q == *qd * *qt, *q, *qd * *qt, s, Z1);
      b.details = {{"q(f*)", rational_string(*qd)}, {"q(tors f)", rational_string(*qt)}};
      emit(std::move(b));
    });
  }
  const auto qs = or_default(p.q, {3, 5});
  for (std::size_t t = 0; t < p.trials; ++t) {
    const std::size_t q = qs[t % qs.size()];
    const FiniteGroup D = FiniteGroup::dihedral(q);
    const std::uint64_t s = derive_seed(base, 100000 + t);
    guarded(emit, "PHI_SEED", s, D, [&] {
      GModule M = random_module(D, static_cast<ModuleProfile>(t % 3), s);
      const BrauerRelation th = dihedral_relation(D);
      RegulatorConstant c = regulator_constant(M, th, s);
      RegulatorConstant other = rc_qindex(M, build_phi(th, derive_seed(s, 7919)));
      Report r = simple("PHI_SEED", c.value == other.value, c.value, other.value, s, D, &M);
      r.constant = c;
      emit(std::move(r));
    });
  }
}

}  // namespace

nlohmann::json report_json(const Report& r) {
  nlohmann::json j{{"check", r.check}, {"status", r.status}, {"seed", r.seed}, {"group", r.group}};
  if (r.status == "error") {
    j["error"] = r.error;
  } else {
    j["lhs"] = rational_string(r.lhs);
    j["rhs"] = rational_string(r.rhs);
  }
  j["factorization"] = r.constant ? factorization_json(*r.constant) : nlohmann::json::object();
  if (!r.digest.empty()) j["module_digest"] = r.digest;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

Report from_identity(const IdentityReport& ir, std::uint64_t seed, const GModule* M) {
  Report r;
  r.check = ir.id;
  r.status = ir.pass ? "pass" : "fail";
  r.lhs = ir.lhs;
  r.rhs = ir.rhs;
  r.seed = seed;
  if (M) {
    r.group = M->group().name();
    r.digest = module_digest(*M);
  }
  for (const auto& [k, v] : ir.details) {
    r.details[k] = v;
    if (k == "C(M)") r.constant = make_constant(Rational(v));
  }
  return r;
}

std::size_t SuiteResult::count(const std::string& prefix, const std::string& status) const {
  std::size_t c = 0;
  for (const auto& r : reports)
    if (r.check.compare(0, prefix.size(), prefix) == 0 && (status.empty() || r.status == status)) ++c;
  return c;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json reps = nlohmann::json::array();
  std::map<std::string, std::map<std::string, std::size_t>> by_check;
  for (const auto& r : reports) {
    reps.push_back(report_json(r));
    ++by_check[r.check][r.status];
  }
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& [k, m] : by_check) checks[k] = m;
  nlohmann::json summary{{"total", reports.size()},
                         {"pass", count("", "pass")},
                         {"fail", count("", "fail")},
                         {"error", count("", "error")},
                         {"checks", checks},
                         {"cross_checks", cross_checks}};
  if (!skipped.empty()) summary["skipped"] = skipped;
  return nlohmann::json{{"suite", suite}, {"params", params}, {"reports", reps}, {"summary", summary}};
}

int SuiteResult::exit_code() const {
  if (count("", "fail")) return 1;
  bool resource = false;
  for (const auto& r : reports)
    if (r.status == "error") {
      if (r.error.rfind("resource limit", 0) != 0) return 1;
      resource = true;
    }
  return resource ? 3 : 0;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"dihedral", "duality", "finite", "bounds",
                                                 "cohomology-oracles", "brauer", "qindex"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteParams& params) {
  SuiteResult out;
  out.suite = name;
  out.params = {{"q", params.q}, {"trials", params.trials}, {"seed", params.seed}};
  Emit emit = [&](Report r) { out.reports.push_back(std::move(r)); };
  const std::size_t before = cross_checks_passed();
  if (name == "dihedral") suite_dihedral(params, emit);
  else if (name == "duality") suite_duality(params, emit, out.skipped);
  else if (name == "finite") suite_finite(params, emit);
  else if (name == "bounds") suite_bounds(params, emit);
  else if (name == "cohomology-oracles") suite_cohomology(params, emit);
  else if (name == "brauer") suite_brauer(params, emit);
  else if (name == "qindex") suite_qindex(params, emit);
  else throw ValidationError("unknown suite \"" + name + "\"");
  out.cross_checks = cross_checks_passed() - before;
  return out;
}

Int h1_order_mod_p(const GModule& M, const Subgroup& H, long p) {
  if (!(M.relations() == Lattice::full(M.ambient_rank()).scaled(Int(p))))
    throw DomainError("h1_order_mod_p needs relations exactly p·Zᵏ");
  const FiniteGroup& G = M.group();
  const std::size_t k = M.ambient_rank(), h = H.order();
  const auto& e = H.elements();
  auto modp = [&](const Int& x) { return static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p))); };
  // Rows are linear forms over F_p; rank by elimination.
  auto rank = [&](std::vector<std::vector<long>> A) {
    std::size_t r = 0;
    const std::size_t cols = A.empty() ? 0 : A[0].size();
    for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
      std::size_t piv = r;
      while (piv < A.size() && A[piv][c] == 0) ++piv;
      if (piv == A.size()) continue;
      std::swap(A[piv], A[r]);
      long inv = 1;
      for (long ex = p - 2, b = A[r][c]; ex > 0; ex >>= 1, b = b * b % p)
        if (ex & 1) inv = inv * b % p;
      for (auto& x : A[r]) x = x * inv % p;
      for (std::size_t i = 0; i < A.size(); ++i) {
        if (i == r || A[i][c] == 0) continue;
        const long f = A[i][c];
        for (std::size_t j = 0; j < cols; ++j) A[i][j] = ((A[i][j] - f * A[r][j]) % p + p) % p;
      }
      ++r;
    }
    return r;
  };
  auto slot = [&](std::size_t idx) { return (idx - 1) * k; };
  std::vector<std::vector<long>> Z;
  for (std::size_t a = 1; a < h; ++a)
    for (std::size_t b = 1; b < h; ++b) {
      const std::size_t ib = H.index_of(G.mul(e[a], e[b]));
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<long> row((h - 1) * k, 0);
        if (ib != 0) row[slot(ib) + i] += 1;
        row[slot(a) + i] += p - 1;
        for (std::size_t j = 0; j < k; ++j) row[slot(b) + j] += p - modp(M.action(e[a])(i, j));
        for (auto& x : row) x %= p;
        Z.push_back(std::move(row));
      }
    }
  const std::size_t dimZ = (h - 1) * k - rank(Z);
  std::vector<std::vector<long>> B((h - 1) * k, std::vector<long>(k, 0));
  for (std::size_t a = 1; a < h; ++a)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) B[slot(a) + i][j] = modp(M.action(e[a])(i, j) - (i == j ? 1 : 0));
  const std::size_t dimB = rank(B);
  Int out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), dimZ - dimB);
  return out;
}

}  // namespace reglab::cli
