#include "cotensor/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cotensor/common.hpp"
#include "cotensor/fixtures.hpp"

namespace cotensor {

namespace {

using nlohmann::json;
namespace stdfs = std::filesystem;

using CoalgebraCache = std::map<std::string, CoalgebraPtr>;

ParsedInput parse_any(const json& j, const std::string& base_dir,
                      const std::string& origin, CoalgebraCache& cache);
ParsedInput parse_file(const std::string& path, CoalgebraCache& cache);

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw parse_error(origin + ": " + msg);
}

long long get_ll(const json& j, const std::string& origin,
                 const std::string& what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(origin, what + " must be an integer");
  return j.get<long long>();
}

std::string get_str(const json& j, const std::string& origin,
                    const std::string& what) {
  if (!j.is_string()) fail(origin, what + " must be a string");
  return j.get<std::string>();
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& origin) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      fail(origin, "unexpected key \"" + item.key() + "\"");
}

// ---- matrices ----

std::string entry_text(const json& e, const std::string& origin,
                       const std::string& what) {
  if (e.is_number_integer() || e.is_number_unsigned())
    return std::to_string(e.get<long long>());
  if (!e.is_string())
    fail(origin, what + ": entries must be integers or \"a/b\" strings");
  std::string s = e.get<std::string>();
  size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    size_t start = (!den.empty() && (den[0] == '+' || den[0] == '-')) ? 1 : 0;
    if (den.find_first_not_of('0', start) == std::string::npos)
      fail(origin, what + ": zero denominator in '" + s + "'");
  }
  return s;
}

Matrix parse_matrix(const json& j, FieldSpec f, int rows, int cols,
                    const std::string& origin, const std::string& what) {
  if (!j.is_array()) fail(origin, what + " must be an array of rows");
  if (j.empty()) {
    if (rows != 0 && cols != 0)
      fail(origin, what + ": expected " + std::to_string(rows) + "x" +
                       std::to_string(cols) + ", got an empty array");
    return Matrix::zeros(f, rows, cols);
  }
  if (static_cast<int>(j.size()) != rows)
    fail(origin, what + ": expected " + std::to_string(rows) + " rows, got " +
                     std::to_string(j.size()));
  std::vector<std::string> entries;
  entries.reserve(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(origin, what + ": row " + std::to_string(r) + " must be an array of " +
                       std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      entries.push_back(entry_text(row[c], origin, what));
  }
  try {
    return Matrix::from_strings(f, rows, cols, entries);
  } catch (const parse_error& e) {
    fail(origin, what + ": " + e.what());
  }
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      if (m.field().is_rational())
        row.push_back(m.entry_string(r, c));
      else
        row.push_back(m.int_at(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- graded families keyed by degree ----

int parse_degree_key(const std::string& key, int lo, int hi,
                     const std::string& origin, const std::string& what) {
  bool canonical = !key.empty() && key.size() <= 6 &&
                   key.find_first_not_of("0123456789") == std::string::npos &&
                   (key == "0" || key[0] != '0');
  if (!canonical)
    fail(origin, what + ": key \"" + key + "\" is not a degree");
  int n = std::stoi(key);
  if (n < lo || n > hi)
    fail(origin, what + ": key " + key + " out of range [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return n;
}

using ShapeFn = std::function<std::pair<int, int>(int)>;

// Parses an optional {"n": matrix} object into a dense vector indexed
// 0..hi; degrees outside [lo, hi] are rejected, missing ones are zero.
std::vector<Matrix> parse_graded(const json* j, FieldSpec f, int lo, int hi,
                                 const ShapeFn& shape,
                                 const std::string& origin,
                                 const std::string& what) {
  std::vector<Matrix> out;
  out.reserve(hi + 1);
  for (int n = 0; n <= hi; ++n) {
    auto [r, c] = shape(n);
    out.push_back(Matrix::zeros(f, r, c));
  }
  if (!j) return out;
  if (!j->is_object())
    fail(origin, "\"" + what + "\" must be an object keyed by degree");
  for (const auto& item : j->items()) {
    int n = parse_degree_key(item.key(), lo, hi, origin, "\"" + what + "\"");
    auto [r, c] = shape(n);
    out[n] = parse_matrix(item.value(), f, r, c, origin,
                          "\"" + what + "\"[" + item.key() + "]");
  }
  return out;
}

void put_graded(json& obj, const std::string& key,
                const std::vector<Matrix>& ms, int lo) {
  json g = json::object();
  for (int n = lo; n < static_cast<int>(ms.size()); ++n)
    if (ms[n].rows() > 0 && ms[n].cols() > 0 && !ms[n].is_zero())
      g[std::to_string(n)] = matrix_json(ms[n]);
  if (!g.empty()) obj[key] = std::move(g);
}

int tensor2_dim(const ChainComplex& a, const ChainComplex& b, int n) {
  int s = 0;
  for (int i = 0; i <= n; ++i) s += a.dim(i) * b.dim(n - i);
  return s;
}

// ---- chain complexes ----

ChainComplex parse_complex_fields(const json& j, const std::string& origin) {
  if (!j.contains("field")) fail(origin, "missing \"field\"");
  long long p = get_ll(j["field"], origin, "\"field\"");
  FieldSpec f{p};
  if (p < 0 || !f.is_valid())
    fail(origin, "\"field\" must be 0 (rationals) or a prime, got " +
                     std::to_string(p));
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    fail(origin, "\"dims\" must be a nonempty array of dimensions");
  GradedDims dims;
  for (const auto& d : j["dims"]) {
    long long v = get_ll(d, origin, "\"dims\" entry");
    if (v < 0) fail(origin, "\"dims\" entries must be nonnegative");
    dims.push_back(static_cast<int>(v));
  }
  int maxdeg = static_cast<int>(dims.size()) - 1;
  const json* dj = j.contains("diff") ? &j["diff"] : nullptr;
  auto shape = [&](int n) {
    return std::pair<int, int>{n >= 1 ? dims[n - 1] : 0, dims[n]};
  };
  std::vector<Matrix> diffs =
      parse_graded(dj, f, 1, maxdeg, shape, origin, "diff");
  ChainComplex x(f, std::move(dims), std::move(diffs));
  if (j.contains("truncated")) {
    if (!j["truncated"].is_boolean())
      fail(origin, "\"truncated\" must be a boolean");
    if (j["truncated"].get<bool>()) x.mark_truncated();
  }
  return x;
}

json complex_fields_json(const ChainComplex& x) {
  json j;
  j["field"] = x.field().characteristic;
  j["dims"] = x.dims();
  std::vector<Matrix> d;
  d.reserve(x.maxdeg() + 1);
  for (int n = 0; n <= x.maxdeg(); ++n) d.push_back(x.diff(n));
  put_graded(j, "diff", d, 1);
  if (x.truncated()) j["truncated"] = true;
  return j;
}

// ---- coalgebras ----

DGCoalgebra parse_coalgebra_object(const json& j, const std::string& origin) {
  check_keys(j, {"kind", "name", "field", "dims", "diff", "truncated",
                 "comult", "counit"},
             origin);
  ChainComplex c = parse_complex_fields(j, origin);
  int maxdeg = c.maxdeg();
  const json* cj = j.contains("comult") ? &j["comult"] : nullptr;
  auto shape = [&](int n) {
    return std::pair<int, int>{tensor2_dim(c, c, n), c.dim(n)};
  };
  std::vector<Matrix> comult =
      parse_graded(cj, c.field(), 0, maxdeg, shape, origin, "comult");
  Matrix counit = Matrix::zeros(c.field(), 1, c.dim(0));
  if (j.contains("counit")) {
    const json& ce = j["counit"];
    if (!ce.is_array())
      fail(origin, "\"counit\" must be a flat array of entries");
    if (static_cast<int>(ce.size()) != c.dim(0))
      fail(origin, "\"counit\" must have " + std::to_string(c.dim(0)) +
                       " entries, got " + std::to_string(ce.size()));
    std::vector<std::string> entries;
    for (const auto& e : ce)
      entries.push_back(entry_text(e, origin, "\"counit\""));
    try {
      counit = Matrix::from_strings(c.field(), 1, c.dim(0), entries);
    } catch (const parse_error& e) {
      fail(origin, std::string("\"counit\": ") + e.what());
    }
  }
  try {
    return make_coalgebra(std::move(c), std::move(comult), counit);
  } catch (const precondition_error&) {
    // Counit is not surjective, so no coaugmentation exists; keep a zero
    // unit and let validate_coalgebra report the failure structurally.
    DGCoalgebra out;
    out.c = parse_complex_fields(j, origin);
    auto shape2 = [&](int n) {
      return std::pair<int, int>{tensor2_dim(out.c, out.c, n), out.c.dim(n)};
    };
    out.comult = parse_graded(cj, out.c.field(), 0, out.c.maxdeg(), shape2,
                              origin, "comult");
    out.counit = counit;
    out.unit = Matrix::zeros(counit.field(), counit.cols(), 1);
    return out;
  }
}

json coalgebra_object_json(const DGCoalgebra& c) {
  json j = complex_fields_json(c.c);
  j["kind"] = "coalgebra";
  put_graded(j, "comult", c.comult, 0);
  if (!c.counit.is_zero()) {
    json ce = json::array();
    for (int i = 0; i < c.counit.cols(); ++i) {
      if (c.field().is_rational())
        ce.push_back(c.counit.entry_string(0, i));
      else
        ce.push_back(c.counit.int_at(0, i));
    }
    j["counit"] = std::move(ce);
  }
  return j;
}

// ---- reference resolution ----

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"f1", "f2", "f3", "f4"};
  return names;
}

bool is_builtin_name(const std::string& ref) {
  for (const auto& n : builtin_names())
    if (n == ref) return true;
  return false;
}

CoalgebraPtr builtin_coalgebra(const std::string& name, FieldSpec f,
                               CoalgebraCache& cache) {
  std::string key =
      "builtin:" + name + ":" + std::to_string(f.characteristic);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  for (const auto& nc : fixture_coalgebras(f))
    if (nc.name == name) {
      cache[key] = nc.c;
      return nc.c;
    }
  throw internal_error("builtin coalgebra list does not contain " + name);
}

// Returns the first existing candidate for `ref`: relative to the
// referencing file's directory, under $COTENSOR_FIXTURES, then verbatim.
std::string resolve_path(const std::string& ref, const std::string& base_dir,
                         const std::string& origin) {
  std::vector<std::string> tried;
  std::vector<stdfs::path> candidates;
  stdfs::path rp(ref);
  if (rp.is_absolute()) {
    candidates.push_back(rp);
  } else {
    if (!base_dir.empty()) candidates.push_back(stdfs::path(base_dir) / rp);
    if (const char* env = std::getenv("COTENSOR_FIXTURES"))
      if (*env) candidates.push_back(stdfs::path(env) / rp);
    candidates.push_back(rp);
  }
  for (const auto& c : candidates) {
    std::error_code ec;
    if (stdfs::exists(c, ec)) return c.string();
    tried.push_back(c.string());
  }
  std::string msg = "cannot resolve reference \"" + ref + "\" (tried";
  for (const auto& t : tried) msg += " " + t;
  fail(origin, msg + ")");
}

ParsedInput parse_referenced(const std::string& ref,
                             const std::string& base_dir,
                             const std::string& origin, InputKind expect,
                             CoalgebraCache& cache) {
  std::string path = resolve_path(ref, base_dir, origin);
  ParsedInput in = parse_file(path, cache);
  if (in.kind != expect)
    fail(origin, "reference \"" + ref + "\" resolved to a " +
                     to_string(in.kind) + ", expected a " + to_string(expect));
  return in;
}

// A coalgebra reference: builtin name, path, or inline object. The field
// hint selects the ground field for builtin names.
std::pair<CoalgebraPtr, std::string> parse_coalgebra_ref(
    const json& j, const std::string& base_dir, const std::string& origin,
    std::optional<FieldSpec> field_hint, CoalgebraCache& cache) {
  if (j.is_object()) {
    if (j.value("kind", "") != "coalgebra")
      fail(origin, "inline coalgebra must have \"kind\": \"coalgebra\"");
    return {std::make_shared<const DGCoalgebra>(
                parse_coalgebra_object(j, origin + " (inline coalgebra)")),
            ""};
  }
  std::string ref = get_str(j, origin, "coalgebra reference");
  if (is_builtin_name(ref)) {
    if (!field_hint)
      fail(origin, "builtin reference \"" + ref +
                       "\" needs a \"field\" key to pick the ground field");
    return {builtin_coalgebra(ref, *field_hint, cache), ref};
  }
  std::string path = resolve_path(ref, base_dir, origin);
  auto it = cache.find(path);
  if (it != cache.end()) return {it->second, ref};
  ParsedInput in = parse_file(path, cache);
  if (in.kind != InputKind::coalgebra)
    fail(origin, "reference \"" + ref + "\" resolved to a " +
                     to_string(in.kind) + ", expected a coalgebra");
  CoalgebraPtr ptr =
      std::make_shared<const DGCoalgebra>(std::move(*in.coalgebra));
  cache[path] = ptr;
  return {ptr, ref};
}

// ---- comodules ----

std::pair<DGComodule, std::string> parse_comodule_object(
    const json& j, const std::string& base_dir, const std::string& origin,
    CoalgebraCache& cache) {
  check_keys(j, {"kind", "name", "field", "dims", "diff", "truncated",
                 "coalgebra", "coaction", "left_coaction"},
             origin);
  ChainComplex x = parse_complex_fields(j, origin);
  if (!j.contains("coalgebra")) fail(origin, "missing \"coalgebra\"");
  auto [cptr, ref] =
      parse_coalgebra_ref(j["coalgebra"], base_dir, origin, x.field(), cache);
  if (!(cptr->field() == x.field()))
    fail(origin, "carrier field " + x.field().name() +
                     " does not match coalgebra field " +
                     cptr->field().name());
  int maxdeg = x.maxdeg();
  auto shape = [&](int n) {
    return std::pair<int, int>{tensor2_dim(x, cptr->c, n), x.dim(n)};
  };
  const json* aj = j.contains("coaction") ? &j["coaction"] : nullptr;
  std::vector<Matrix> coaction =
      parse_graded(aj, x.field(), 0, maxdeg, shape, origin, "coaction");
  std::optional<std::vector<Matrix>> left;
  if (j.contains("left_coaction")) {
    auto lshape = [&](int n) {
      return std::pair<int, int>{tensor2_dim(cptr->c, x, n), x.dim(n)};
    };
    left = parse_graded(&j["left_coaction"], x.field(), 0, maxdeg, lshape,
                        origin, "left_coaction");
  }
  return {DGComodule{cptr, std::move(x), std::move(coaction), std::move(left)},
          ref};
}

json comodule_object_json(const DGComodule& m,
                          const std::string& coalgebra_ref) {
  json j = complex_fields_json(m.x);
  j["kind"] = "comodule";
  if (!coalgebra_ref.empty())
    j["coalgebra"] = coalgebra_ref;
  else
    j["coalgebra"] = coalgebra_object_json(*m.c);
  put_graded(j, "coaction", m.coaction, 0);
  if (m.left_override) put_graded(j, "left_coaction", *m.left_override, 0);
  return j;
}

// ---- maps ----

std::pair<DGComodule, std::string> parse_comodule_operand(
    const json& j, const std::string& base_dir, const std::string& origin,
    const std::string& what, CoalgebraCache& cache) {
  if (j.is_object()) {
    if (j.value("kind", "") != "comodule")
      fail(origin, what + ": inline operand must have \"kind\": \"comodule\"");
    auto [m, ref] = parse_comodule_object(
        j, base_dir, origin + " (inline " + what + ")", cache);
    (void)ref;
    return {std::move(m), ""};
  }
  std::string ref = get_str(j, origin, what);
  ParsedInput in =
      parse_referenced(ref, base_dir, origin, InputKind::comodule, cache);
  return {std::move(*in.comodule), ref};
}

std::pair<DGCoalgebra, std::string> parse_coalgebra_operand(
    const json& j, const std::string& base_dir, const std::string& origin,
    const std::string& what, std::optional<FieldSpec> field_hint,
    CoalgebraCache& cache) {
  if (j.is_object()) {
    if (j.value("kind", "") != "coalgebra")
      fail(origin,
           what + ": inline operand must have \"kind\": \"coalgebra\"");
    return {parse_coalgebra_object(j, origin + " (inline " + what + ")"), ""};
  }
  std::string ref = get_str(j, origin, what);
  if (is_builtin_name(ref)) {
    if (!field_hint)
      fail(origin, "builtin reference \"" + ref +
                       "\" needs a \"field\" key to pick the ground field");
    return {*builtin_coalgebra(ref, *field_hint, cache), ref};
  }
  ParsedInput in =
      parse_referenced(ref, base_dir, origin, InputKind::coalgebra, cache);
  return {std::move(*in.coalgebra), ref};
}

std::vector<Matrix> parse_map_components(const json& j, FieldSpec f,
                                         const ChainComplex& source,
                                         const ChainComplex& target,
                                         const std::string& origin) {
  const json* fj = j.contains("f") ? &j["f"] : nullptr;
  auto shape = [&](int n) {
    return std::pair<int, int>{target.dim(n), source.dim(n)};
  };
  return parse_graded(fj, f, 0, source.maxdeg(), shape, origin, "f");
}

// ---- top-level dispatch ----

InputKind parse_kind(const json& j, const std::string& origin) {
  if (!j.is_object()) fail(origin, "top-level value must be an object");
  if (!j.contains("kind")) fail(origin, "missing \"kind\"");
  std::string k = get_str(j["kind"], origin, "\"kind\"");
  if (k == "complex") return InputKind::complex;
  if (k == "coalgebra") return InputKind::coalgebra;
  if (k == "comodule") return InputKind::comodule;
  if (k == "comodule-map") return InputKind::comodule_map;
  if (k == "coalgebra-map") return InputKind::coalgebra_map;
  fail(origin, "unknown \"kind\" \"" + k +
                   "\" (expected complex, coalgebra, comodule, "
                   "comodule-map, or coalgebra-map)");
}

ParsedInput parse_any(const json& j, const std::string& base_dir,
                      const std::string& origin, CoalgebraCache& cache) {
  ParsedInput in;
  in.kind = parse_kind(j, origin);
  if (j.contains("name")) in.name = get_str(j["name"], origin, "\"name\"");
  switch (in.kind) {
    case InputKind::complex: {
      check_keys(j, {"kind", "name", "field", "dims", "diff", "truncated"},
                 origin);
      in.complex = parse_complex_fields(j, origin);
      break;
    }
    case InputKind::coalgebra: {
      in.coalgebra = parse_coalgebra_object(j, origin);
      break;
    }
    case InputKind::comodule: {
      auto [m, ref] = parse_comodule_object(j, base_dir, origin, cache);
      in.comodule = std::move(m);
      in.coalgebra_ref = ref;
      break;
    }
    case InputKind::comodule_map: {
      check_keys(j, {"kind", "name", "source", "target", "f"}, origin);
      if (!j.contains("source") || !j.contains("target"))
        fail(origin, "a map needs \"source\" and \"target\"");
      auto [s, sref] =
          parse_comodule_operand(j["source"], base_dir, origin, "source", cache);
      auto [t, tref] =
          parse_comodule_operand(j["target"], base_dir, origin, "target", cache);
      if (!comodules_compatible(s, t))
        fail(origin, "source and target live over different coalgebras");
      std::vector<Matrix> f =
          parse_map_components(j, s.field(), s.x, t.x, origin);
      in.comodule_map = ComoduleMap{std::move(s), std::move(t), std::move(f)};
      in.source_ref = sref;
      in.target_ref = tref;
      break;
    }
    case InputKind::coalgebra_map: {
      check_keys(j, {"kind", "name", "field", "source", "target", "f"},
                 origin);
      if (!j.contains("source") || !j.contains("target"))
        fail(origin, "a map needs \"source\" and \"target\"");
      std::optional<FieldSpec> hint;
      if (j.contains("field")) {
        long long p = get_ll(j["field"], origin, "\"field\"");
        FieldSpec fs{p};
        if (p < 0 || !fs.is_valid())
          fail(origin, "\"field\" must be 0 (rationals) or a prime, got " +
                           std::to_string(p));
        hint = fs;
      }
      auto [s, sref] = parse_coalgebra_operand(j["source"], base_dir, origin,
                                               "source", hint, cache);
      auto [t, tref] = parse_coalgebra_operand(j["target"], base_dir, origin,
                                               "target", hint, cache);
      if (!(s.field() == t.field()))
        fail(origin, "source field " + s.field().name() +
                         " does not match target field " + t.field().name());
      std::vector<Matrix> f =
          parse_map_components(j, s.field(), s.c, t.c, origin);
      in.coalgebra_map = CoalgebraMap{std::move(s), std::move(t), std::move(f)};
      in.source_ref = sref;
      in.target_ref = tref;
      break;
    }
  }
  return in;
}

ParsedInput parse_file(const std::string& path, CoalgebraCache& cache) {
  std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    fail(path, std::string("invalid JSON: ") + e.what());
  }
  std::string base_dir = stdfs::path(path).parent_path().string();
  return parse_any(j, base_dir, path, cache);
}

std::string dump(json j) { return j.dump(2) + "\n"; }

void put_name(json& j, const std::string& name) {
  if (!name.empty()) j["name"] = name;
}

}  // namespace

std::string to_string(InputKind k) {
  switch (k) {
    case InputKind::complex: return "complex";
    case InputKind::coalgebra: return "coalgebra";
    case InputKind::comodule: return "comodule";
    case InputKind::comodule_map: return "comodule-map";
    case InputKind::coalgebra_map: return "coalgebra-map";
  }
  throw internal_error("unreachable input kind");
}

ParsedInput parse_input(const std::string& path) {
  CoalgebraCache cache;
  return parse_file(path, cache);
}

ParsedInput parse_input_text(const std::string& text,
                             const std::string& base_dir,
                             const std::string& origin) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    fail(origin, std::string("invalid JSON: ") + e.what());
  }
  CoalgebraCache cache;
  return parse_any(j, base_dir, origin, cache);
}

std::string serialize_complex(const ChainComplex& x, const std::string& name) {
  json j = complex_fields_json(x);
  j["kind"] = "complex";
  put_name(j, name);
  return dump(std::move(j));
}

std::string serialize_coalgebra(const DGCoalgebra& c,
                                const std::string& name) {
  json j = coalgebra_object_json(c);
  put_name(j, name);
  return dump(std::move(j));
}

std::string serialize_comodule(const DGComodule& m,
                               const std::string& coalgebra_ref,
                               const std::string& name) {
  json j = comodule_object_json(m, coalgebra_ref);
  put_name(j, name);
  return dump(std::move(j));
}

std::string serialize_comodule_map(const ComoduleMap& m,
                                   const std::string& source_ref,
                                   const std::string& target_ref,
                                   const std::string& name) {
  json j;
  j["kind"] = "comodule-map";
  put_name(j, name);
  if (!source_ref.empty())
    j["source"] = source_ref;
  else
    j["source"] = comodule_object_json(m.source, "");
  if (!target_ref.empty())
    j["target"] = target_ref;
  else
    j["target"] = comodule_object_json(m.target, "");
  put_graded(j, "f", m.f, 0);
  return dump(std::move(j));
}

std::string serialize_coalgebra_map(const CoalgebraMap& m,
                                    const std::string& source_ref,
                                    const std::string& target_ref,
                                    const std::string& name) {
  json j;
  j["kind"] = "coalgebra-map";
  put_name(j, name);
  if (is_builtin_name(source_ref) || is_builtin_name(target_ref))
    j["field"] = m.source.field().characteristic;
  if (!source_ref.empty())
    j["source"] = source_ref;
  else
    j["source"] = coalgebra_object_json(m.source);
  if (!target_ref.empty())
    j["target"] = target_ref;
  else
    j["target"] = coalgebra_object_json(m.target);
  put_graded(j, "f", m.f, 0);
  return dump(std::move(j));
}

std::string serialize_input(const ParsedInput& in) {
  switch (in.kind) {
    case InputKind::complex:
      return serialize_complex(*in.complex, in.name);
    case InputKind::coalgebra:
      return serialize_coalgebra(*in.coalgebra, in.name);
    case InputKind::comodule:
      return serialize_comodule(*in.comodule, in.coalgebra_ref, in.name);
    case InputKind::comodule_map:
      return serialize_comodule_map(*in.comodule_map, in.source_ref,
                                    in.target_ref, in.name);
    case InputKind::coalgebra_map:
      return serialize_coalgebra_map(*in.coalgebra_map, in.source_ref,
                                     in.target_ref, in.name);
  }
  throw internal_error("unreachable input kind");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw parse_error(path + ": cannot open file for writing");
  f << text;
  if (!f) throw parse_error(path + ": write failed");
}

}  // namespace cotensor
