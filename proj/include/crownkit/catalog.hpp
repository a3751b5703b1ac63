#pragma once

#include <set>

#include "crownkit/perm_group.hpp"

namespace crownkit {

struct CatalogEntry {
  std::string name;
  Point degree = 0;
  std::vector<std::vector<Point>> generators;  // 0-based image arrays
  std::set<std::string> tags;                  // e.g. soluble-expected

  GroupPtr build(GroupCaps caps = {}) const;
};

// True when the name parses as a builtin family: Sym(n), Alt(n), Cyclic(n),
// Dihedral(n), ElemAbelian(p,k), CrownPower(<builtin>, k).
bool is_builtin_name(const std::string& name);

// Builds a builtin by name; throws InputError for unknown names or bad
// parameters.
GroupPtr builtin_group(const std::string& name, GroupCaps caps = {});

// JSON-lines catalog: {"name":..., "degree":..., "generators":[[...]...]}
// per line, optional "tags". Blank lines and #-comments are skipped.
// Malformed records raise InputError with the line number.
std::vector<CatalogEntry> load_catalog(const std::string& path);

// Parses a comma-separated list of builtin names into entries.
std::vector<CatalogEntry> catalog_from_names(const std::string& names);

// The default verification catalog.
std::vector<CatalogEntry> default_catalog();

// Resolves --group / --catalog arguments: builtin name, file path, or
// comma-separated builtin list.
std::vector<CatalogEntry> resolve_catalog(const std::string& spec);
GroupPtr resolve_group(const std::string& spec, GroupCaps caps = {});

}  // namespace crownkit
