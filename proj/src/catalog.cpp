#include "crownkit/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crownkit/crowns.hpp"
#include "crownkit/errors.hpp"
#include "crownkit/permcore.hpp"

namespace crownkit {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_call(const std::string& name, std::string& head, std::vector<std::string>& args) {
  std::size_t open = name.find('(');
  if (open == std::string::npos || name.back() != ')') return false;
  head = trim(name.substr(0, open));
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  // Split on top-level commas only (CrownPower takes a nested call).
  int depth = 0;
  std::string cur;
  for (char ch : inner) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) args.push_back(trim(cur));
  return true;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  if (s.empty()) throw InputError("missing " + what);
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw InputError("bad " + what + ": " + s);
    v = v * 10 + (ch - '0');
  }
  return v;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<Perm> sym_gens(Point n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<Point> t(n);
    for (Point i = 0; i < n; ++i) t[i] = i;
    std::swap(t[0], t[1]);
    gens.push_back(Perm(std::move(t)));
  }
  if (n >= 3) {
    std::vector<Point> c(n);
    for (Point i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens.push_back(Perm(std::move(c)));
  }
  return gens;
}

std::vector<Perm> alt_gens(Point n) {
  std::vector<Perm> gens;
  for (Point i = 2; i < n; ++i) {
    std::vector<Point> img(n);
    for (Point j = 0; j < n; ++j) img[j] = j;
    img[0] = 1;
    img[1] = i;
    img[i] = 0;
    gens.push_back(Perm(std::move(img)));
  }
  return gens;
}

std::vector<Perm> cyclic_gens(Point n) {
  if (n == 1) return {};
  std::vector<Point> c(n);
  for (Point i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return {Perm(std::move(c))};
}

std::vector<Perm> dihedral_gens(Point n) {
  if (n < 3) throw InputError("Dihedral(n) needs n >= 3");
  std::vector<Point> rot(n), ref(n);
  for (Point i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return {Perm(std::move(rot)), Perm(std::move(ref))};
}

std::vector<Perm> elem_abelian_gens(std::uint64_t p, std::uint64_t k, Point& degree_out) {
  if (!is_prime(p)) throw InputError("ElemAbelian(p,k): p must be prime");
  if (k == 0 || k > 16) throw InputError("ElemAbelian(p,k): need 1 <= k <= 16");
  std::uint64_t deg = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    deg *= p;
    if (deg > 100000) throw CapError("ElemAbelian degree too large");
  }
  degree_out = static_cast<Point>(deg);
  // Regular action on F_p^k; point index = sum c_i p^i. Generator i adds e_i.
  std::vector<Perm> gens;
  std::uint64_t stride = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::vector<Point> img(degree_out);
    for (std::uint64_t x = 0; x < deg; ++x) {
      std::uint64_t digit = (x / stride) % p;
      std::uint64_t y = x - digit * stride + ((digit + 1) % p) * stride;
      img[x] = static_cast<Point>(y);
    }
    gens.push_back(Perm(std::move(img)));
    stride *= p;
  }
  return gens;
}

}  // namespace

bool is_builtin_name(const std::string& name) {
  std::string head;
  std::vector<std::string> args;
  if (!parse_call(trim(name), head, args)) return false;
  return head == "Sym" || head == "Alt" || head == "Cyclic" || head == "Dihedral" ||
         head == "ElemAbelian" || head == "CrownPower";
}

GroupPtr builtin_group(const std::string& raw, GroupCaps caps) {
  const std::string name = trim(raw);
  std::string head;
  std::vector<std::string> args;
  if (!parse_call(name, head, args)) throw InputError("unknown group name: " + name);

  if (head == "Sym" || head == "Alt" || head == "Cyclic" || head == "Dihedral") {
    if (args.size() != 1) throw InputError(head + " takes one argument");
    Point n = static_cast<Point>(parse_uint(args[0], "degree"));
    if (n == 0) throw InputError(head + "(0) is not a permutation group");
    if (head == "Sym") return PermGroup::make(n, sym_gens(n), name, caps);
    if (head == "Alt") return PermGroup::make(n, alt_gens(n), name, caps);
    if (head == "Cyclic") return PermGroup::make(n, cyclic_gens(n), name, caps);
    return PermGroup::make(n, dihedral_gens(n), name, caps);
  }
  if (head == "ElemAbelian") {
    if (args.size() != 2) throw InputError("ElemAbelian takes (p, k)");
    Point degree = 0;
    auto gens = elem_abelian_gens(parse_uint(args[0], "prime"), parse_uint(args[1], "rank"),
                                  degree);
    return PermGroup::make(degree, std::move(gens), name, caps);
  }
  if (head == "CrownPower") {
    if (args.size() != 2) throw InputError("CrownPower takes (base, k)");
    GroupPtr base = builtin_group(args[0], caps);
    unsigned k = static_cast<unsigned>(parse_uint(args[1], "power"));
    MonolithicGroup mono = as_monolithic(base);
    GroupPtr power = crown_based_power(mono, k);
    // Rebuild under the requested name for stable reporting.
    return PermGroup::make(power->degree(), power->generators(), name, caps);
  }
  throw InputError("unknown group name: " + name);
}

GroupPtr CatalogEntry::build(GroupCaps caps) const {
  if (!generators.empty() || !is_builtin_name(name)) {
    std::vector<Perm> gens;
    for (const auto& images : generators) {
      std::vector<Point> img(images.begin(), images.end());
      if (img.size() != degree) throw InputError("generator length != degree in " + name);
      gens.push_back(Perm(std::move(img)));
    }
    return PermGroup::make(degree, std::move(gens), name, caps);
  }
  return builtin_group(name, caps);
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open catalog file: " + path);
  std::vector<CatalogEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("catalog line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      CatalogEntry e;
      e.name = j.at("name").get<std::string>();
      e.degree = j.at("degree").get<Point>();
      for (const auto& arr : j.at("generators")) {
        std::vector<Point> images;
        for (const auto& v : arr) images.push_back(v.get<Point>());
        e.generators.push_back(std::move(images));
      }
      if (j.contains("tags"))
        for (const auto& t2 : j["tags"]) e.tags.insert(t2.get<std::string>());
      // Validate now so the line number is reported.
      for (const auto& images : e.generators) {
        if (images.size() != e.degree)
          throw InputError("generator length != degree");
        Perm check((std::vector<Point>(images.begin(), images.end())));
      }
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& e2) {
      throw InputError("catalog line " + std::to_string(lineno) + ": " + e2.what());
    } catch (const InputError& e2) {
      throw InputError("catalog line " + std::to_string(lineno) + ": " + e2.what());
    }
  }
  return entries;
}

std::vector<CatalogEntry> catalog_from_names(const std::string& names) {
  std::vector<CatalogEntry> out;
  int depth = 0;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    cur.clear();
    if (t.empty()) return;
    if (!is_builtin_name(t)) throw InputError("unknown builtin group: " + t);
    CatalogEntry e;
    e.name = t;
    out.push_back(std::move(e));
  };
  for (char ch : names) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  if (out.empty()) throw InputError("no groups in list: " + names);
  return out;
}

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](const std::string& name, std::initializer_list<const char*> tags) {
    CatalogEntry e;
    e.name = name;
    for (const char* t : tags) e.tags.insert(t);
    out.push_back(std::move(e));
  };
  for (Point n : {2, 3, 4, 5, 6, 7, 8, 9, 12})
    add("Cyclic(" + std::to_string(n) + ")", {"soluble-expected", "transitive-expected"});
  add("ElemAbelian(2,2)", {"soluble-expected", "transitive-expected"});
  add("ElemAbelian(2,3)", {"soluble-expected", "transitive-expected"});
  add("ElemAbelian(2,4)", {"soluble-expected", "transitive-expected"});
  add("ElemAbelian(3,2)", {"soluble-expected", "transitive-expected"});
  for (Point n : {4, 5, 6, 7, 8})
    add("Dihedral(" + std::to_string(n) + ")", {"soluble-expected", "transitive-expected"});
  add("Sym(3)", {"soluble-expected", "transitive-expected"});
  add("Sym(4)", {"soluble-expected", "transitive-expected"});
  add("Sym(5)", {"insoluble-expected", "transitive-expected"});
  add("Sym(6)", {"insoluble-expected", "transitive-expected"});
  add("Alt(4)", {"soluble-expected", "transitive-expected"});
  add("Alt(5)", {"insoluble-expected", "transitive-expected"});
  add("Alt(6)", {"insoluble-expected", "transitive-expected"});
  {
    // AGL(1,5) = C5 x| C4 acting 2-transitively on F_5.
    CatalogEntry e;
    e.name = "AGL(1,5)";
    e.degree = 5;
    e.generators = {{1, 2, 3, 4, 0}, {0, 2, 4, 1, 3}};
    e.tags = {"soluble-expected", "transitive-expected"};
    out.push_back(std::move(e));
  }
  add("CrownPower(Cyclic(2),2)", {"soluble-expected"});
  add("CrownPower(Cyclic(2),3)", {"soluble-expected"});
  add("CrownPower(Sym(4),2)", {"soluble-expected"});
  add("CrownPower(Alt(5),2)", {"insoluble-expected"});
  return out;
}

std::vector<CatalogEntry> resolve_catalog(const std::string& spec) {
  if (spec.empty() || spec == "default" || spec == "builtin") return default_catalog();
  if (std::filesystem::exists(spec)) return load_catalog(spec);
  return catalog_from_names(spec);
}

GroupPtr resolve_group(const std::string& spec, GroupCaps caps) {
  if (is_builtin_name(spec)) return builtin_group(spec, caps);
  if (std::filesystem::exists(spec)) {
    auto entries = load_catalog(spec);
    if (entries.size() != 1)
      throw InputError("group file must contain exactly one record: " + spec);
    return entries.front().build(caps);
  }
  throw InputError("unknown group: " + spec);
}

}  // namespace crownkit
