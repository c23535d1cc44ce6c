#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "reglab/brauer/brauer.hpp"
#include "reglab/gmodules/gmodule.hpp"
#include "reglab/regulator/regulator.hpp"

namespace reglab::cli {

using json = nlohmann::json;

/// A group together with the JSON object it was built from.
struct LoadedGroup {
  FiniteGroup group;
  json spec;
};

/// Reads a JSON file; ValidationError on I/O or parse failure.
json read_json_file(const std::filesystem::path& path);

/// Group object {"kind": ...}, a path to a file holding one, or an inline JSON string.
LoadedGroup group_from_json(const json& j, const std::filesystem::path& base = {});
LoadedGroup load_group(const std::string& path_or_json);
/// Multiplication-table form.
json group_table_json(const FiniteGroup& G);

struct LoadedModule {
  LoadedGroup group;
  GModule module;
};

/// Parses and validates a module object; ValidationError carries the validator's witness.
LoadedModule module_from_json(const json& j, const std::filesystem::path& base = {});
LoadedModule load_module(const std::filesystem::path& path);
json module_to_json(const GModule& M, const json& group_spec);
/// HNF relations, action columns reduced modulo the relations, table-form group.
json canonical_module_json(const GModule& M);
/// FNV-1a 64 of the canonical JSON dump, as 16 hex digits.
std::string module_digest(const GModule& M);

/// Relation object {"group": ..., "terms": [...]}, canonicalized. `G` overrides
/// the embedded group when given (the relation must then match it).
BrauerRelation relation_from_json(const json& j, const FiniteGroup* G = nullptr,
                                  const std::filesystem::path& base = {});
BrauerRelation load_relation(const std::filesystem::path& path, const FiniteGroup* G = nullptr);
json relation_to_json(const BrauerRelation& r, const json& group_spec);

/// Always "p/q", also for integers.
std::string rational_string(const Rational& x);
json int_json(const Int& x);
json factorization_json(const RegulatorConstant& c);

/// Subgroup from "i,j,k" (closure is not taken; the set must be a subgroup).
Subgroup parse_subgroup(const FiniteGroup& G, const std::string& text);
/// "lo..hi" or a single integer.
std::pair<int, int> parse_degree_range(const std::string& text);
/// Comma-separated positive integers.
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace reglab::cli
