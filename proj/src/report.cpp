#include "mhm/report.hpp"

#include <set>
#include <sstream>

#include "json.hpp"

namespace mhm {

ReportTable& Report::table(const std::string& name, std::vector<std::string> columns) {
  for (auto& t : tables)
    if (t.name == name) return t;
  tables.push_back({name, std::move(columns), {}});
  return tables.back();
}

std::string Report::to_tsv() const {
  std::ostringstream os;
  os << "# command\t" << command << "\n";
  for (const auto& [k, v] : meta) os << "# " << k << "\t" << v << "\n";
  os << "# status\t" << (ok ? "pass" : "fail") << "\n";
  for (const auto& t : tables) {
    os << "\n## " << t.name << "\n";
    for (size_t c = 0; c < t.columns.size(); ++c) os << (c ? "\t" : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
      for (size_t c = 0; c < row.size(); ++c) os << (c ? "\t" : "") << row[c];
      os << "\n";
    }
  }
  if (!notes.empty()) {
    os << "\n## notes\n";
    for (const auto& n : notes) os << n << "\n";
  }
  return os.str();
}

std::string Report::to_json() const {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["command"] = command;
  Json m = Json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  doc["meta"] = m;
  doc["status"] = ok ? "pass" : "fail";
  Json ts = Json::object();
  for (const auto& t : tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json rec = Json::object();
      for (size_t c = 0; c < t.columns.size() && c < row.size(); ++c) rec[t.columns[c]] = row[c];
      rows.push_back(rec);
    }
    ts[t.name] = rows;
  }
  doc["tables"] = ts;
  doc["notes"] = notes;
  return doc.dump(1) + "\n";
}

std::string Report::render(const std::string& format) const {
  if (format == "json") return to_json();
  if (format == "tsv") return to_tsv();
  throw InputError("unknown format '" + format + "' (expected tsv or json)");
}

void add_restriction_records(Report& report, const RestrictionResult& res) {
  auto& t = report.table("restriction", {"mode", "alpha", "j", "dim_H", "p", "dim_gr_F_of_H", "dim_H_of_gr_F"});
  const std::string mode = mode_name(res.mode), alpha = format_rational(res.alpha);
  for (const auto& d : res.degrees) {
    if (!res.computed) {
      t.add({mode, alpha, std::to_string(d.j), "n/a", "-", "n/a", "n/a"});
      continue;
    }
    std::set<int> ps;
    for (const auto& [p, n] : d.gr_f) ps.insert(p);
    for (const auto& [p, n] : d.gr_f_of_gr) ps.insert(p);
    if (ps.empty()) t.add({mode, alpha, std::to_string(d.j), std::to_string(d.dim), "-", "0", "0"});
    for (int p : ps) {
      const auto a = d.gr_f.find(p), b = d.gr_f_of_gr.find(p);
      t.add({mode, alpha, std::to_string(d.j), std::to_string(d.dim), std::to_string(p),
             std::to_string(a == d.gr_f.end() ? 0 : a->second), std::to_string(b == d.gr_f_of_gr.end() ? 0 : b->second)});
    }
  }
  if (!res.computed || !res.weights_computed) return;
  auto& w = report.table("weights", {"mode", "alpha", "j", "weight", "dim_gr_W"});
  for (const auto& d : res.degrees)
    for (const auto& [k, n] : d.gr_w)
      if (n) w.add({mode, alpha, std::to_string(d.j), std::to_string(k), std::to_string(n)});
}

}  // namespace mhm
