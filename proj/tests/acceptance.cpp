// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reglab/cli/suites.hpp"
#include "reglab/errors.hpp"
#include "reglab/regulator/regulator.hpp"

using namespace reglab;
using reglab::cli::Report;
using reglab::cli::SuiteParams;
using reglab::cli::SuiteResult;

namespace {

constexpr std::size_t kDihedralTrials = 200;
constexpr std::size_t kTrials = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Timed {
  SuiteResult result;
  double seconds = 0;
};

Timed timed_suite(const std::string& name, SuiteParams p) {
  const auto t0 = Clock::now();
  Timed t{cli::run_suite(name, p), 0};
  t.seconds = seconds_since(t0);
  return t;
}

// Reports whose check starts with `prefix`.
std::vector<const Report*> select(const SuiteResult& r, const std::string& prefix) {
  std::vector<const Report*> out;
  for (const auto& rep : r.reports)
    if (rep.check.rfind(prefix, 0) == 0) out.push_back(&rep);
  return out;
}

bool all_pass(const std::vector<const Report*>& rs) {
  for (const Report* r : rs)
    if (r->status != "pass") return false;
  return !rs.empty();
}

std::string first_problem(const std::vector<const Report*>& rs) {
  for (const Report* r : rs)
    if (r->status != "pass") {
      std::ostringstream os;
      os << r->check << " " << r->status << " on " << r->group << " seed " << r->seed;
      if (!r->error.empty()) os << ": " << r->error;
      return os.str();
    }
  return "no reports";
}

// Distinct modules (group, seed) among the reports.
std::map<std::string, std::set<std::uint64_t>> modules_by_group(const std::vector<const Report*>& rs) {
  std::map<std::string, std::set<std::uint64_t>> out;
  for (const Report* r : rs) out[r->group].insert(r->seed);
  return out;
}

struct Outcome {
  bool pass = false;
  std::string note;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title;
  if (!o.note.empty()) std::cout << " (" << o.note << ")";
  std::cout << std::endl;
}

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "C(Z) = 1/q by pairing and q-index for q in {3,5,9,15}", [] {
    Outcome o{true, ""};
    for (std::size_t q : {3, 5, 9, 15}) {
      const auto t0 = Clock::now();
      const FiniteGroup D = FiniteGroup::dihedral(q);
      const GModule Z = trivial_module(D);
      const BrauerRelation th = dihedral_relation(D);
      const Rational a = rc_pairing(Z, th).value, b = rc_qindex(Z, build_phi(th, 1)).value;
      const double s = seconds_since(t0);
      const Rational want(1, static_cast<unsigned long>(q));
      const bool ok = a == want && b == want && s < 1.0;
      if (!ok) o.pass = false;
      o.note += (o.note.empty() ? "" : ", ") + std::string("q=") + std::to_string(q) + " pairing " + a.get_str() + " q-index " +
                b.get_str() + " in " + fmt(s);
    }
    return o;
  });

  SuiteParams dp;
  dp.q = {3, 5};
  dp.trials = kDihedralTrials;
  Timed dihedral;
  std::string dihedral_error;
  try {
    dihedral = timed_suite("dihedral", dp);
  } catch (const std::exception& e) {
    dihedral_error = e.what();
  }
  auto need_dihedral = [&] {
    if (!dihedral_error.empty()) throw InternalError("dihedral suite aborted: " + dihedral_error);
  };

  criterion(2, "DIHEDRAL_MAIN on >=200 random modules per q in {3,5}, all profiles, <= 10 min", [&] {
    need_dihedral();
    auto rs = select(dihedral.result, "DIHEDRAL_MAIN");
    auto mods = modules_by_group(rs);
    bool ok = all_pass(rs) && dihedral.seconds <= 600 && mods.size() == 2;
    std::string note = std::to_string(rs.size()) + " checks, " + fmt(dihedral.seconds);
    for (const auto& [g, seeds] : mods) {
      if (seeds.size() < 200) ok = false;
      note += ", " + g + ": " + std::to_string(seeds.size()) + " modules";
    }
    if (!all_pass(rs)) note += "; " + first_problem(rs);
    return Outcome{ok, note};
  });

  criterion(3, "DUAL1 on >=100 torsion-free modules per group in {V4, D3, D5}", [] {
    SuiteParams p;
    p.trials = kTrials;
    Timed t = timed_suite("duality", p);
    auto rs = select(t.result, "DUAL1");
    auto mods = modules_by_group(rs);
    bool ok = all_pass(rs) && mods.size() >= 3;
    std::string note = fmt(t.seconds);
    for (const auto& [g, seeds] : mods) {
      if (seeds.size() < 100) ok = false;
      note += ", " + g + ": " + std::to_string(seeds.size());
    }
    if (!all_pass(rs)) note += "; " + first_problem(rs);
    return Outcome{ok, note};
  });

  criterion(4, "FINITE_DUAL and FINITE_DIHEDRAL on >=100 finite modules per group, self-dual sums", [] {
    SuiteParams p;
    p.trials = kTrials;
    Timed t = timed_suite("finite", p);
    auto fd = select(t.result, "FINITE_DUAL"), fdi = select(t.result, "FINITE_DIHEDRAL"),
         sd = select(t.result, "SELF_DUAL");
    auto mods = modules_by_group(fd);
    bool ok = all_pass(fd) && all_pass(fdi) && all_pass(sd) && mods.size() == 3;
    std::string note = fmt(t.seconds) + ", " + std::to_string(fdi.size()) + " dihedral checks, " +
                       std::to_string(sd.size()) + " self-dual checks";
    for (const auto& [g, seeds] : mods) {
      if (seeds.size() < 100) ok = false;
      note += ", " + g + ": " + std::to_string(seeds.size());
    }
    for (const auto* rs : {&fd, &fdi, &sd})
      if (!all_pass(*rs)) note += "; " + first_problem(*rs);
    return Outcome{ok, note};
  });

  criterion(5, "DCF in degrees -1, 0 and kernel orders for >=50 module maps", [&] {
    need_dihedral();
    auto rs = select(dihedral.result, "DCF[");
    auto ks = select(dihedral.result, "DCF.kernel");
    std::size_t maps = 0;
    for (const auto& [g, seeds] : modules_by_group(ks)) maps += seeds.size();
    const bool ok = all_pass(rs) && all_pass(ks) && maps >= 50;
    std::string note = std::to_string(rs.size()) + " module checks, " + std::to_string(maps) + " maps";
    if (!all_pass(rs)) note += "; " + first_problem(rs);
    if (!all_pass(ks)) note += "; " + first_problem(ks);
    return Outcome{ok, note};
  });

  criterion(6, "valuation bounds for l | q and zero valuation for l not dividing q", [&] {
    need_dihedral();
    SuiteParams p;
    p.trials = kTrials;
    Timed t = timed_suite("bounds", p);
    auto b1 = select(dihedral.result, "BOUNDS"), v1 = select(dihedral.result, "VALUATION");
    auto b2 = select(t.result, "BOUNDS"), v2 = select(t.result, "VALUATION");
    const bool ok = all_pass(b1) && all_pass(v1) && all_pass(b2) && all_pass(v2);
    std::string note = std::to_string(b1.size() + b2.size()) + " bound checks, " + std::to_string(v1.size() + v2.size()) +
                       " coprime checks, q in {3,5,9,15}, " + fmt(t.seconds);
    for (const auto* rs : {&b1, &v1, &b2, &v2})
      if (!all_pass(*rs)) note += "; " + first_problem(*rs);
    return Outcome{ok, note};
  });

  SuiteParams cp;
  cp.trials = kTrials;
  Timed coh;
  std::string coh_error;
  try {
    coh = timed_suite("cohomology-oracles", cp);
  } catch (const std::exception& e) {
    coh_error = e.what();
  }
  auto need_coh = [&] {
    if (!coh_error.empty()) throw InternalError("cohomology-oracles suite aborted: " + coh_error);
  };

  criterion(7, "Rosen valuation equals Herbrand valuation on >=100 modules for |P| = 9, 15", [&] {
    need_coh();
    auto rs = select(coh.result, "ROSEN");
    auto mods = modules_by_group(rs);
    bool ok = all_pass(rs) && mods.size() == 2;
    std::string note = std::to_string(rs.size()) + " checks";
    for (const auto& [g, seeds] : mods) {
      if (seeds.size() < 100) ok = false;
      note += ", " + g + ": " + std::to_string(seeds.size());
    }
    if (!all_pass(rs)) note += "; " + first_problem(rs);
    return Outcome{ok, note};
  });

  criterion(8, "cohomology oracles: Shapiro, cyclic periodicity, mod-p ranks, free modules", [&] {
    need_coh();
    bool ok = true;
    std::string note = fmt(coh.seconds);
    for (const char* c : {"SHAPIRO", "PERIODICITY", "MOD_P", "FREE", "COINVARIANTS"}) {
      auto rs = select(coh.result, c);
      if (!all_pass(rs)) {
        ok = false;
        note += "; " + first_problem(rs);
      }
      note += ", " + std::string(c) + " " + std::to_string(rs.size());
    }
    return Outcome{ok, note};
  });

  criterion(9, "relation lattices: V4 generator, cyclic groups empty, Theta_D in span, all valid", [] {
    Timed t = timed_suite("brauer", SuiteParams{});
    bool ok = true;
    std::string note;
    for (const char* c : {"RELATION_RANK", "RELATION_VALID", "V4_GENERATOR", "THETA_SPAN"}) {
      auto rs = select(t.result, c);
      if (!all_pass(rs)) {
        ok = false;
        note += first_problem(rs) + "; ";
      }
      note += std::string(c) + " " + std::to_string(rs.size()) + " ";
    }
    // C2, C3, C5 must come back with no relations at all.
    std::size_t cyclic_empty = 0;
    for (const Report* r : select(t.result, "RELATION_RANK"))
      if (r->group.rfind("cyclic(", 0) == 0 && r->status == "pass" && r->lhs == 0) ++cyclic_empty;
    if (cyclic_empty != 3) ok = false;
    note += "cyclic empty " + std::to_string(cyclic_empty) + "/3";
    if (select(t.result, "V4_GENERATOR").size() != 1) ok = false;
    if (select(t.result, "THETA_SPAN").size() != 2) ok = false;
    return Outcome{ok, note};
  });

  criterion(10, "RCZS on >=50 subgroup families per q in {3,5}", [&] {
    need_dihedral();
    auto rs = select(dihedral.result, "RCZS");
    auto mods = modules_by_group(rs);
    bool ok = all_pass(rs) && mods.size() == 2;
    std::string note;
    for (const auto& [g, seeds] : mods) {
      if (seeds.size() < 50) ok = false;
      note += (note.empty() ? "" : ", ") + g + ": " + std::to_string(seeds.size());
    }
    if (!all_pass(rs)) note += "; " + first_problem(rs);
    return Outcome{ok, note};
  });

  criterion(11, "pairing = q-index on every regulator constant; phi-seed independence on >=100 modules", [] {
    SuiteParams p;
    p.trials = kTrials;
    Timed t = timed_suite("qindex", p);
    auto rs = select(t.result, "PHI_SEED");
    std::set<std::uint64_t> seeds;
    for (const Report* r : rs) seeds.insert(r->seed);
    const std::size_t passed = cross_checks_passed(), attempted = cross_checks_attempted();
    const bool ok = all_pass(rs) && seeds.size() >= 100 && passed == attempted && passed > 0;
    std::string note = std::to_string(passed) + "/" + std::to_string(attempted) + " cross-checks, " +
                       std::to_string(seeds.size()) + " phi-seed modules";
    if (!all_pass(rs)) note += "; " + first_problem(rs);
    return Outcome{ok, note};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
