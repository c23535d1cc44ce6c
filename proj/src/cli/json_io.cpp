#include "reglab/cli/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "reglab/errors.hpp"
#include "reglab/exactla/normal_form.hpp"

namespace reglab::cli {

namespace {

Int int_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw ValidationError(std::string(what) + ": expected an integer, got " + j.dump());
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long>() < 0)
    throw ValidationError(std::string(what) + ": expected a non-negative integer, got " + j.dump());
  return j.get<std::size_t>();
}

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string(what) + ": missing field \"" + key + "\"");
  return j.at(key);
}

IntMatrix matrix_from_json(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw ValidationError(what + ": expected " + std::to_string(n) + " rows");
  IntMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n)
      throw ValidationError(what + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) A(i, k) = int_from_json(j[i][k], what.c_str());
  }
  return A;
}

json matrix_json(const IntMatrix& A) {
  json rows = json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < A.cols(); ++k) r.push_back(int_json(A(i, k)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Element element_index(const std::string& key, std::size_t order, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || key.empty() || v >= order)
    throw ValidationError(std::string(what) + ": bad element index \"" + key + "\"");
  return v;
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty() && std::filesystem::exists(base / path)) return base / path;
  return path;
}

// Reduce v modulo a lattice given by its Hermite basis.
IntVector reduce_mod(IntVector v, const Lattice& L) {
  const IntMatrix& B = L.basis();
  const auto piv = hermite_pivot_rows(B);
  for (std::size_t j = 0; j < piv.size(); ++j) {
    const std::size_t p = piv[j];
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), v[p].get_mpz_t(), B(p, j).get_mpz_t());
    if (f != 0)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * B(i, j);
  }
  return v;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

LoadedGroup group_from_json(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) return load_group(resolve(j.get<std::string>(), base).string());
  const std::string kind = field(j, "kind", "group").is_string() ? j.at("kind").get<std::string>() : "";
  LoadedGroup out;
  out.spec = j;
  if (kind == "dihedral") {
    out.group = FiniteGroup::dihedral(size_from_json(field(j, "q", "group"), "q"));
  } else if (kind == "cyclic") {
    std::size_t n = size_from_json(field(j, "n", "group"), "n");
    if (n == 0) throw ValidationError("cyclic group of order 0");
    out.group = FiniteGroup::cyclic(n);
  } else if (kind == "product") {
    const json& fs = field(j, "factors", "group");
    if (!fs.is_array() || fs.empty()) throw ValidationError("product: factors must be a non-empty array");
    std::vector<FiniteGroup> parts;
    for (const auto& f : fs) parts.push_back(group_from_json(f, base).group);
    out.group = FiniteGroup::product(parts);
  } else if (kind == "table") {
    const std::size_t n = size_from_json(field(j, "order", "group"), "order");
    const json& mul = field(j, "mul", "group");
    if (!mul.is_array() || mul.size() != n) throw ValidationError("table: mul must have `order` rows");
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a) {
      if (!mul[a].is_array() || mul[a].size() != n) throw ValidationError("table: row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < n; ++b) {
        t[a][b] = size_from_json(mul[a][b], "table entry");
        if (t[a][b] >= n) throw ValidationError("table: entry out of range at (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
    out.group = FiniteGroup(t);
  } else {
    throw ValidationError("group: unknown kind " + j.value("kind", json()).dump());
  }
  return out;
}

LoadedGroup load_group(const std::string& path_or_json) {
  if (!path_or_json.empty() && path_or_json.front() == '{') {
    try {
      return group_from_json(json::parse(path_or_json));
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("group: ") + e.what());
    }
  }
  std::filesystem::path p(path_or_json);
  return group_from_json(read_json_file(p), p.parent_path());
}

json group_table_json(const FiniteGroup& G) {
  return json{{"kind", "table"}, {"order", G.order()}, {"mul", G.table()}};
}

LoadedModule module_from_json(const json& j, const std::filesystem::path& base) {
  LoadedGroup lg = group_from_json(field(j, "group", "module"), base);
  const FiniteGroup& G = lg.group;
  const std::size_t n = size_from_json(field(j, "rank", "module"), "rank");
  check_column_limit(n, "module rank");
  std::vector<IntVector> rel;
  if (j.contains("relations")) {
    const json& r = j.at("relations");
    if (!r.is_array()) throw ValidationError("relations must be an array of vectors");
    for (const auto& v : r) {
      if (!v.is_array() || v.size() != n) throw ValidationError("relation vectors must have length rank");
      IntVector x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = int_from_json(v[i], "relation entry");
      rel.push_back(std::move(x));
    }
  }
  std::vector<std::optional<IntMatrix>> act(G.order());
  if (j.contains("action")) {
    const json& a = j.at("action");
    if (!a.is_object()) throw ValidationError("action must map element indices to matrices");
    for (const auto& [k, m] : a.items()) act[element_index(k, G.order(), "action")] = matrix_from_json(m, n, "action[" + k + "]");
    for (Element g = 0; g < G.order(); ++g)
      if (!act[g]) throw ValidationError("action: missing matrix for element " + std::to_string(g));
  } else if (j.contains("action_on_generators")) {
    const json& a = j.at("action_on_generators");
    if (!a.is_object()) throw ValidationError("action_on_generators must map element indices to matrices");
    std::vector<std::pair<Element, IntMatrix>> gens;
    for (const auto& [k, m] : a.items())
      gens.push_back({element_index(k, G.order(), "action_on_generators"), matrix_from_json(m, n, "action_on_generators[" + k + "]")});
    act[0] = IntMatrix::identity(n);
    std::vector<Element> queue{0};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& [s, A] : gens) {
        const Element z = G.mul(s, queue[i]);
        if (!act[z]) {
          act[z] = A * *act[queue[i]];
          queue.push_back(z);
        }
      }
    if (queue.size() != G.order())
      throw ValidationError("action_on_generators: the given elements generate only " + std::to_string(queue.size()) +
                            " of " + std::to_string(G.order()) + " elements");
  } else {
    throw ValidationError("module: missing field \"action\"");
  }
  std::vector<IntMatrix> actions;
  for (auto& A : act) actions.push_back(std::move(*A));
  GModule M(G, Lattice::span(n, rel), std::move(actions));
  validate(M);
  return LoadedModule{std::move(lg), std::move(M)};
}

LoadedModule load_module(const std::filesystem::path& path) {
  return module_from_json(read_json_file(path), path.parent_path());
}

json module_to_json(const GModule& M, const json& group_spec) {
  const std::size_t n = M.ambient_rank();
  json rel = json::array();
  const IntMatrix& B = M.relations().basis();
  for (std::size_t j = 0; j < B.cols(); ++j) {
    json v = json::array();
    for (std::size_t i = 0; i < n; ++i) v.push_back(int_json(B(i, j)));
    rel.push_back(std::move(v));
  }
  json act = json::object();
  for (Element g = 0; g < M.group().order(); ++g) act[std::to_string(g)] = matrix_json(M.action(g));
  return json{{"group", group_spec}, {"rank", n}, {"relations", rel}, {"action", act}};
}

json canonical_module_json(const GModule& M) {
  std::vector<IntMatrix> act;
  for (Element g = 0; g < M.group().order(); ++g) {
    IntMatrix A = M.action(g);
    for (std::size_t j = 0; j < A.cols(); ++j) A.set_column(j, reduce_mod(A.column(j), M.relations()));
    act.push_back(std::move(A));
  }
  return module_to_json(GModule(M.group(), M.relations(), std::move(act)), group_table_json(M.group()));
}

std::string module_digest(const GModule& M) {
  const std::string s = canonical_module_json(M).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

BrauerRelation relation_from_json(const json& j, const FiniteGroup* G, const std::filesystem::path& base) {
  FiniteGroup group;
  if (j.contains("group")) {
    group = group_from_json(j.at("group"), base).group;
    if (G && !(G->order() == group.order() && G->table() == group.table()))
      throw ValidationError("relation: group does not match the module's group");
  } else if (G) {
    group = *G;
  } else {
    throw ValidationError("relation: missing field \"group\"");
  }
  const json& terms = field(j, "terms", "relation");
  if (!terms.is_array()) throw ValidationError("relation: terms must be an array");
  BrauerRelation r{group, {}};
  for (const auto& t : terms) {
    const json& s = field(t, "subgroup", "relation term");
    if (!s.is_array()) throw ValidationError("relation term: subgroup must be an array of element indices");
    std::vector<Element> el;
    for (const auto& e : s) {
      std::size_t x = size_from_json(e, "subgroup element");
      if (x >= group.order()) throw ValidationError("relation term: element " + std::to_string(x) + " out of range");
      el.push_back(x);
    }
    const json& c = field(t, "coeff", "relation term");
    if (!c.is_number_integer()) throw ValidationError("relation term: coeff must be an integer");
    r.terms.push_back({Subgroup(group, el), c.get<long>()});
  }
  return canonicalize(r);
}

BrauerRelation load_relation(const std::filesystem::path& path, const FiniteGroup* G) {
  return relation_from_json(read_json_file(path), G, path.parent_path());
}

json relation_to_json(const BrauerRelation& r, const json& group_spec) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back(json{{"subgroup", t.subgroup.elements()}, {"coeff", t.coeff}});
  return json{{"group", group_spec}, {"terms", terms}};
}

std::string rational_string(const Rational& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json factorization_json(const RegulatorConstant& c) {
  json f = json::object();
  for (const auto& [p, e] : c.factorization) f[p.get_str()] = e;
  return f;
}

Subgroup parse_subgroup(const FiniteGroup& G, const std::string& text) {
  std::vector<Element> el;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != tok.size() || v >= G.order()) throw ValidationError("subgroup: bad element \"" + tok + "\"");
    el.push_back(v);
  }
  return Subgroup(G, el);
}

std::pair<int, int> parse_degree_range(const std::string& text) {
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ValidationError("degrees: cannot parse \"" + text + "\"");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    int d = num(text);
    return {d, d};
  }
  int lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
  if (lo > hi) throw ValidationError("degrees: empty range \"" + text + "\"");
  return {lo, hi};
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != tok.size() || v == 0) throw ValidationError("list: bad entry \"" + tok + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError("list: empty");
  return out;
}

}  // namespace reglab::cli
