#include "mhm/module_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mhm {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

long long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

size_t get_index(const Json& j, const std::string& where) {
  const long long v = get_int(j, where);
  if (v < 0) fail(where, "expected a non-negative integer");
  return static_cast<size_t>(v);
}

bool get_bool(const Json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_boolean()) fail(where + "/" + key, "expected a boolean");
  return it->get<bool>();
}

Rational get_rational(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a rational string \"num/den\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

const Json& get_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string at(const std::string& base, size_t k) { return base + "/" + std::to_string(k); }

Json sparse_entries(const RationalMatrix& m) {
  Json out = Json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out.push_back(Json::array({i, j, format_rational(m(i, j))}));
  return out;
}

RationalMatrix parse_entries(const Json& entries, size_t rows, size_t cols, const std::string& where) {
  RationalMatrix m(rows, cols);
  const auto& arr = get_array(entries, where);
  for (size_t k = 0; k < arr.size(); ++k) {
    const std::string w = at(where, k);
    const auto& e = arr[k];
    if (!e.is_array() || e.size() != 3) fail(w, "expected [row, col, \"num/den\"]");
    const size_t i = get_index(e[0], w + "/0"), j = get_index(e[1], w + "/1");
    if (i >= rows || j >= cols) fail(w, "entry outside the declared shape");
    m(i, j) = get_rational(e[2], w + "/2");
  }
  return m;
}

// {level: [columns]} in increasing level order.
Json level_jumps(const std::vector<int>& levels) {
  std::map<int, std::vector<size_t>> by_level;
  for (size_t v = 0; v < levels.size(); ++v) by_level[levels[v]].push_back(v);
  Json out = Json::array();
  for (const auto& [p, cols] : by_level) out.push_back(Json{{"level", p}, {"columns", cols}});
  return out;
}

std::vector<int> parse_levels(const Json& j, size_t dim, const std::string& where) {
  std::vector<int> levels(dim, 0);
  std::vector<bool> seen(dim, false);
  const auto& arr = get_array(j, where);
  for (size_t k = 0; k < arr.size(); ++k) {
    const std::string w = at(where, k);
    const int p = static_cast<int>(get_int(field(arr[k], "level", w), w + "/level"));
    const auto& cols = get_array(field(arr[k], "columns", w), w + "/columns");
    for (size_t c = 0; c < cols.size(); ++c) {
      const size_t v = get_index(cols[c], at(w + "/columns", c));
      if (v >= dim) fail(at(w + "/columns", c), "column outside the piece");
      if (seen[v]) fail(at(w + "/columns", c), "column listed twice");
      seen[v] = true;
      levels[v] = p;
    }
  }
  for (size_t v = 0; v < dim; ++v)
    if (!seen[v]) fail(where, "column " + std::to_string(v) + " has no level");
  return levels;
}

}  // namespace

std::string serialize_module(const MonodromicalModule& m) {
  Json doc;
  doc["format"] = "mhm-module/1";
  doc["name"] = m.name;
  doc["r"] = m.r;
  doc["integral_degrees"] = m.integral_degrees;
  doc["multigraded"] = m.multigraded;
  doc["has_w"] = m.has_w;
  if (m.pure_weight) doc["pure_weight"] = *m.pure_weight;
  if (m.support_lo || m.support_hi) {
    Json sup = Json::object();
    if (m.support_lo) sup["lo"] = format_rational(*m.support_lo);
    if (m.support_hi) sup["hi"] = format_rational(*m.support_hi);
    doc["support"] = sup;
  }
  Json pieces = Json::array();
  for (const auto& [a, p] : m.pieces) {
    Json pj;
    pj["degree"] = format_rational(a);
    pj["dim"] = p.dim;
    pj["f_jumps"] = level_jumps(p.f_level);
    if (m.has_w) pj["w_jumps"] = level_jumps(p.w_level);
    if (m.multigraded) pj["multidegree"] = p.multidegree;
    Json trunc = Json::array();
    for (int side = 0; side < 2; ++side)
      for (int k = 0; k < 2; ++k) {
        const auto& tab = side == 0 ? p.out_truncated[k] : p.in_truncated[k];
        for (size_t i = 0; i < tab.size(); ++i) {
          std::vector<size_t> cols;
          for (size_t v = 0; v < tab[i].size(); ++v)
            if (tab[i][v]) cols.push_back(v);
          if (cols.empty()) continue;
          trunc.push_back(Json{{"side", side == 0 ? "out" : "in"},
                               {"op", op_name(static_cast<OpKind>(k))},
                               {"i", i + 1},
                               {"columns", cols}});
        }
      }
    pj["truncation"] = trunc;
    pieces.push_back(pj);
  }
  doc["pieces"] = pieces;
  Json ops = Json::array();
  for (const auto& [key, mat] : m.ops)
    ops.push_back(Json{{"op", op_name(key.kind)},
                       {"i", key.i},
                       {"source", format_rational(key.source)},
                       {"rows", mat.rows()},
                       {"cols", mat.cols()},
                       {"entries", sparse_entries(mat)}});
  doc["operators"] = ops;
  return doc.dump(1) + "\n";
}

MonodromicalModule parse_module(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("module file: ") + e.what());
  }
  const std::string root = "module";
  const auto& fmt = field(doc, "format", root);
  if (!fmt.is_string() || fmt.get<std::string>() != "mhm-module/1") fail(root + "/format", "expected \"mhm-module/1\"");
  MonodromicalModule m;
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail(root + "/name", "expected a string");
    m.name = it->get<std::string>();
  }
  const long long r = get_int(field(doc, "r", root), root + "/r");
  if (r < 0 || r > 16) fail(root + "/r", "expected 0 <= r <= 16");
  m.r = static_cast<int>(r);
  m.integral_degrees = get_bool(doc, "integral_degrees", root);
  m.multigraded = get_bool(doc, "multigraded", root);
  m.has_w = get_bool(doc, "has_w", root);
  if (const auto it = doc.find("pure_weight"); it != doc.end())
    m.pure_weight = static_cast<int>(get_int(*it, root + "/pure_weight"));
  if (const auto it = doc.find("support"); it != doc.end()) {
    if (!it->is_object()) fail(root + "/support", "expected an object");
    if (const auto lo = it->find("lo"); lo != it->end()) m.support_lo = get_rational(*lo, root + "/support/lo");
    if (const auto hi = it->find("hi"); hi != it->end()) m.support_hi = get_rational(*hi, root + "/support/hi");
  }

  bool any_truncation = false;
  const auto& pieces = get_array(field(doc, "pieces", root), root + "/pieces");
  for (size_t k = 0; k < pieces.size(); ++k) {
    const std::string w = at(root + "/pieces", k);
    Piece p;
    p.degree = get_rational(field(pieces[k], "degree", w), w + "/degree");
    p.dim = get_index(field(pieces[k], "dim", w), w + "/dim");
    if (m.pieces.count(p.degree)) fail(w + "/degree", "degree " + format_rational(p.degree) + " listed twice");
    p.f_level = parse_levels(field(pieces[k], "f_jumps", w), p.dim, w + "/f_jumps");
    if (m.has_w) p.w_level = parse_levels(field(pieces[k], "w_jumps", w), p.dim, w + "/w_jumps");
    if (m.multigraded) {
      const auto& md = get_array(field(pieces[k], "multidegree", w), w + "/multidegree");
      if (md.size() != p.dim) fail(w + "/multidegree", "expected one multidegree per column");
      for (size_t v = 0; v < md.size(); ++v) {
        const std::string wv = at(w + "/multidegree", v);
        const auto& e = get_array(md[v], wv);
        if (e.size() != static_cast<size_t>(m.r)) fail(wv, "expected r entries");
        Exponent ex;
        for (size_t i = 0; i < e.size(); ++i) ex.push_back(static_cast<int>(get_int(e[i], at(wv, i))));
        p.multidegree.push_back(std::move(ex));
      }
    }
    for (int kind = 0; kind < 2; ++kind)
      for (auto* tab : {&p.out_truncated[kind], &p.in_truncated[kind]})
        tab->assign(static_cast<size_t>(m.r), std::vector<bool>(p.dim, false));
    if (const auto it = pieces[k].find("truncation"); it != pieces[k].end()) {
      any_truncation = true;
      const auto& arr = get_array(*it, w + "/truncation");
      for (size_t t = 0; t < arr.size(); ++t) {
        const std::string wt = at(w + "/truncation", t);
        const auto& side = field(arr[t], "side", wt);
        const auto& op = field(arr[t], "op", wt);
        if (!side.is_string() || (side != "out" && side != "in")) fail(wt + "/side", "expected \"out\" or \"in\"");
        if (!op.is_string() || (op != "t" && op != "d")) fail(wt + "/op", "expected \"t\" or \"d\"");
        const long long i = get_int(field(arr[t], "i", wt), wt + "/i");
        if (i < 1 || i > m.r) fail(wt + "/i", "operator index out of range");
        const int kind = op == "t" ? 0 : 1;
        auto& row = (side == "out" ? p.out_truncated[kind] : p.in_truncated[kind])[static_cast<size_t>(i - 1)];
        const auto& cols = get_array(field(arr[t], "columns", wt), wt + "/columns");
        for (size_t c = 0; c < cols.size(); ++c) {
          const size_t v = get_index(cols[c], at(wt + "/columns", c));
          if (v >= p.dim) fail(at(wt + "/columns", c), "column outside the piece");
          row[v] = true;
        }
      }
    }
    m.pieces.emplace(p.degree, std::move(p));
  }

  const auto& ops = get_array(field(doc, "operators", root), root + "/operators");
  for (size_t k = 0; k < ops.size(); ++k) {
    const std::string w = at(root + "/operators", k);
    const auto& op = field(ops[k], "op", w);
    if (!op.is_string() || (op != "t" && op != "d")) fail(w + "/op", "expected \"t\" or \"d\"");
    const OpKind kind = op == "t" ? OpKind::t : OpKind::d;
    const long long i = get_int(field(ops[k], "i", w), w + "/i");
    if (i < 1 || i > m.r) fail(w + "/i", "operator index out of range");
    const Rational src = get_rational(field(ops[k], "source", w), w + "/source");
    const size_t rows = get_index(field(ops[k], "rows", w), w + "/rows");
    const size_t cols = get_index(field(ops[k], "cols", w), w + "/cols");
    const OpKey key{kind, static_cast<int>(i), src};
    if (m.ops.count(key)) fail(w, "operator listed twice");
    m.ops.emplace(key, parse_entries(field(ops[k], "entries", w), rows, cols, w + "/entries"));
  }
  if (!any_truncation) m.mark_window_boundary();
  m.check_structure();
  return m;
}

std::string serialize_vfiltration(const VFiltrationData& v) {
  Json doc;
  doc["format"] = "mhm-vfiltration/1";
  doc["direction"] = v.direction ? Json(*v.direction) : Json(nullptr);
  Json jumps = Json::array();
  for (const auto& a : v.jumps) jumps.push_back(format_rational(a));
  doc["jumps"] = jumps;
  Json degrees = Json::array();
  for (const auto& [beta, n] : v.dims) {
    Json dj;
    dj["degree"] = format_rational(beta);
    dj["dim"] = n;
    Json steps = Json::array();
    if (const auto it = v.steps.find(beta); it != v.steps.end())
      for (const auto& s : it->second) {
        const RationalMatrix& e = s.echelon();
        steps.push_back(Json{{"rows", e.rows()}, {"entries", sparse_entries(e)}});
      }
    dj["steps"] = steps;
    degrees.push_back(dj);
  }
  doc["degrees"] = degrees;
  return doc.dump(1) + "\n";
}

VFiltrationData parse_vfiltration(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("V-filtration file: ") + e.what());
  }
  const std::string root = "vfiltration";
  const auto& fmt = field(doc, "format", root);
  if (!fmt.is_string() || fmt.get<std::string>() != "mhm-vfiltration/1")
    fail(root + "/format", "expected \"mhm-vfiltration/1\"");
  VFiltrationData v;
  const auto& dir = field(doc, "direction", root);
  if (!dir.is_null()) {
    const long long i = get_int(dir, root + "/direction");
    if (i < 1) fail(root + "/direction", "expected null or a 1-based coordinate index");
    v.direction = static_cast<int>(i);
  }
  const auto& jumps = get_array(field(doc, "jumps", root), root + "/jumps");
  for (size_t k = 0; k < jumps.size(); ++k) {
    const Rational a = get_rational(jumps[k], at(root + "/jumps", k));
    if (!v.jumps.empty() && a <= v.jumps.back()) fail(at(root + "/jumps", k), "jumps must be strictly increasing");
    v.jumps.push_back(a);
  }
  const auto& degrees = get_array(field(doc, "degrees", root), root + "/degrees");
  for (size_t k = 0; k < degrees.size(); ++k) {
    const std::string w = at(root + "/degrees", k);
    const Rational beta = get_rational(field(degrees[k], "degree", w), w + "/degree");
    const size_t n = get_index(field(degrees[k], "dim", w), w + "/dim");
    if (v.dims.count(beta)) fail(w + "/degree", "degree listed twice");
    v.dims[beta] = n;
    const auto& steps = get_array(field(degrees[k], "steps", w), w + "/steps");
    if (steps.size() != v.jumps.size()) fail(w + "/steps", "expected one step per jump");
    std::vector<Subspace> out;
    for (size_t s = 0; s < steps.size(); ++s) {
      const std::string ws = at(w + "/steps", s);
      const size_t rows = get_index(field(steps[s], "rows", ws), ws + "/rows");
      const RationalMatrix m = parse_entries(field(steps[s], "entries", ws), rows, n, ws + "/entries");
      out.push_back(Subspace::span(n, m.transpose()));
      if (s > 0 && !out[s - 1].contains(out[s])) fail(ws, "steps must decrease");
    }
    v.steps[beta] = std::move(out);
  }
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MonodromicalModule read_module_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_module(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_module_file(const MonodromicalModule& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << serialize_module(m);
}

}  // namespace mhm
