#include "reglab/cli/app.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "reglab/cli/json_io.hpp"
#include "reglab/cli/suites.hpp"
#include "reglab/cohomology/tate.hpp"
#include "reglab/errors.hpp"
#include "reglab/gmodules/random_module.hpp"

namespace reglab::cli {

namespace {

// Relation given by --relation, or Θ_D for a dihedral group.
BrauerRelation relation_or_theta(const std::string& path, const FiniteGroup& G) {
  if (!path.empty()) return load_relation(path, &G);
  if (G.dihedral_q()) return dihedral_relation(G);
  throw ValidationError("--relation is required for groups not built as dihedral(q)");
}

int emit_reports(std::ostream& out, const std::string& id, const std::vector<Report>& reports) {
  json reps = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    reps.push_back(report_json(r));
    ok = ok && r.status == "pass";
  }
  out << json{{"identity", id}, {"reports", reps}, {"status", ok ? "pass" : "fail"}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_check(const std::string& id, const std::string& module_path, const std::string& relation_path, long prime,
              const std::string& family, std::ostream& out) {
  LoadedModule lm = load_module(module_path);
  const GModule& M = lm.module;
  const FiniteGroup& G = M.group();
  std::vector<Report> reps;
  auto add = [&](const IdentityReport& r) { reps.push_back(from_identity(r, 0, &M)); };
  if (id == "DUAL1") {
    add(verify_dual1(M, relation_or_theta(relation_path, G)));
  } else if (id == "FINITE_DUAL") {
    add(verify_finite_dual(M, relation_or_theta(relation_path, G)));
  } else if (id == "FINITE_DIHEDRAL") {
    for (const auto& r : verify_finite_dihedral(M)) add(r);
  } else if (id == "DCF") {
    for (const auto& r : verify_dcf(M)) add(r);
  } else if (id == "DIHEDRAL_MAIN") {
    for (const auto& r : verify_dihedral_main(M)) add(r);
  } else if (id == "BOUNDS") {
    if (!G.dihedral_q()) throw DomainError("BOUNDS needs a dihedral group");
    std::vector<long> primes = prime > 0 ? std::vector<long>{prime} : prime_divisors(static_cast<long>(G.dihedral_q()));
    for (long ell : primes) add(verify_bounds(M, ell));
    add(verify_coprime_valuation(M));
  } else if (id == "RCZ") {
    add(verify_rcz(G));
  } else if (id == "RCZS") {
    if (family.empty()) throw ValidationError("RCZS needs --family \"i,j;k,l;...\"");
    std::vector<Subgroup> fam;
    std::stringstream ss(family);
    std::string tok;
    while (std::getline(ss, tok, ';')) fam.push_back(parse_subgroup(G, tok));
    add(verify_rczs(G, fam));
  } else {
    throw CLI::ValidationError("--identity", "unknown identity " + id);
  }
  return emit_reports(out, id, reps);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Tate cohomology, Brauer relations and regulator constants"};
  app.require_subcommand(1);

  std::string module_path, relation_path, group_arg, subgroup_arg, degrees = "-1..2", method = "both",
                                                                   route_arg = "auto";
  auto* validate_cmd = app.add_subcommand("validate", "Check a module file");
  validate_cmd->add_option("--module", module_path, "module JSON")->required();

  auto* coh = app.add_subcommand("cohomology", "Tate cohomology groups of a module");
  coh->add_option("--module", module_path, "module JSON")->required();
  coh->add_option("--subgroup", subgroup_arg, "comma-separated element indices (default: whole group)");
  coh->add_option("--degrees", degrees, "degree or range lo..hi");
  coh->add_option("--route", route_arg, "auto|cocycle|full")->check(CLI::IsMember({"auto", "cocycle", "full"}));

  std::uint64_t phi_seed = 1;
  auto* reg = app.add_subcommand("regulator", "Regulator constant of a module");
  reg->add_option("--module", module_path, "module JSON")->required();
  reg->add_option("--relation", relation_path, "relation JSON (default: the dihedral relation)");
  reg->add_option("--method", method, "pairing|qindex|both")->check(CLI::IsMember({"pairing", "qindex", "both"}));
  reg->add_option("--phi-seed", phi_seed, "seed for the map between permutation modules");

  auto* rel = app.add_subcommand("relations", "Basis of the Brauer relations of a group");
  rel->add_option("--group", group_arg, "group JSON file or inline JSON object")->required();

  std::string identity, family;
  long prime = 0;
  auto* chk = app.add_subcommand("check", "Verify one identity on a module");
  chk->add_option("--identity", identity, "DUAL1|FINITE_DUAL|FINITE_DIHEDRAL|DCF|DIHEDRAL_MAIN|BOUNDS|RCZ|RCZS")
      ->required();
  chk->add_option("--module", module_path, "module JSON")->required();
  chk->add_option("--relation", relation_path, "relation JSON");
  chk->add_option("--prime", prime, "prime for BOUNDS");
  chk->add_option("--family", family, "subgroups for RCZS, e.g. \"0,3;0\"");

  std::string profile = "torsion_free", out_path;
  std::uint64_t seed = 1;
  auto* rnd = app.add_subcommand("random-module", "Draw a random module");
  rnd->add_option("--group", group_arg, "group JSON file or inline JSON object")->required();
  rnd->add_option("--profile", profile, "torsion_free|finite|mixed")
      ->check(CLI::IsMember({"torsion_free", "finite", "mixed"}));
  rnd->add_option("--seed", seed, "seed");
  rnd->add_option("--out", out_path, "output file")->required();

  std::string suite, qlist;
  std::size_t trials = 10;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--q", qlist, "comma-separated odd q values");
  ver->add_option("--trials", trials, "trials per group");
  ver->add_option("--seed", seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate_cmd->parsed()) {
      LoadedModule lm = load_module(module_path);
      const GModule& M = lm.module;
      out << json{{"valid", true},
                  {"group", M.group().name()},
                  {"rank", M.ambient_rank()},
                  {"abelian_group", M.abelian_group().to_string()},
                  {"torsion_free", M.is_torsion_free()},
                  {"finite", M.is_finite()},
                  {"module_digest", module_digest(M)}}
                 .dump(2)
          << "\n";
      return 0;
    }
    if (coh->parsed()) {
      LoadedModule lm = load_module(module_path);
      const GModule& M = lm.module;
      Subgroup H = subgroup_arg.empty() ? Subgroup::whole(M.group()) : parse_subgroup(M.group(), subgroup_arg);
      auto [lo, hi] = parse_degree_range(degrees);
      TateRoute route = route_arg == "cocycle" ? TateRoute::Cocycle
                        : route_arg == "full"  ? TateRoute::FullCochain
                                               : TateRoute::Auto;
      json groups = json::array();
      for (int i = lo; i <= hi; ++i) {
        TateGroup t = tate(M, H, i, route);
        json d = json::array();
        for (const auto& x : t.divisors) d.push_back(int_json(x));
        groups.push_back(json{{"degree", i}, {"divisors", d}, {"order", int_json(t.order)}});
      }
      out << json{{"subgroup", H.elements()}, {"module_digest", module_digest(M)}, {"groups", groups}}.dump(2) << "\n";
      return 0;
    }
    if (reg->parsed()) {
      LoadedModule lm = load_module(module_path);
      const GModule& M = lm.module;
      BrauerRelation th = relation_or_theta(relation_path, M.group());
      RegulatorConstant c;
      json j{{"method", method}, {"relation", th.to_string()}, {"module_digest", module_digest(M)}};
      if (method == "pairing") {
        c = rc_pairing(M, th);
      } else if (method == "qindex") {
        PhiMap phi = build_phi(th, phi_seed);
        c = rc_qindex(M, phi);
        j["phi_seed"] = phi_seed;
      } else {
        c = regulator_constant(M, th, phi_seed);
        j["phi_seed"] = phi_seed;
      }
      j["value"] = rational_string(c.value);
      j["factorization"] = factorization_json(c);
      out << j.dump(2) << "\n";
      return 0;
    }
    if (rel->parsed()) {
      LoadedGroup lg = load_group(group_arg);
      const auto cls = enumerate_subgroups(lg.group);
      json classes = json::array();
      for (const auto& c : cls)
        classes.push_back(json{{"representative", c.representative.elements()}, {"size", c.members.size()}});
      json basis = json::array();
      const auto rels = relation_lattice(lg.group);
      for (const auto& r : rels) basis.push_back(relation_to_json(r, lg.spec));
      out << json{{"group", lg.group.name()}, {"subgroup_classes", classes}, {"rank", rels.size()}, {"basis", basis}}.dump(2)
          << "\n";
      return 0;
    }
    if (chk->parsed()) return cmd_check(identity, module_path, relation_path, prime, family, out);
    if (rnd->parsed()) {
      LoadedGroup lg = load_group(group_arg);
      GModule M = random_module(lg.group, parse_profile(profile), seed);
      std::ofstream f(out_path);
      if (!f) throw ValidationError("cannot write " + out_path);
      f << module_to_json(M, lg.spec).dump(2) << "\n";
      out << json{{"out", out_path}, {"seed", seed}, {"profile", profile}, {"rank", M.ambient_rank()},
                  {"module_digest", module_digest(M)}}
                 .dump(2)
          << "\n";
      return 0;
    }
    if (ver->parsed()) {
      SuiteParams p;
      if (!qlist.empty()) p.q = parse_size_list(qlist);
      p.trials = trials;
      p.seed = seed;
      SuiteResult r = run_suite(suite, p);
      const json j = r.to_json();
      out << j.dump(2) << "\n";
      const json& s = j["summary"];
      err << suite << ": " << s["pass"] << "/" << s["total"] << " pass, " << s["fail"] << " fail, " << s["error"]
          << " error\n";
      return r.exit_code();
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "unsupported request: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace reglab::cli
