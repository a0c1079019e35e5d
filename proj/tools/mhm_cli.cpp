#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mhm/compare.hpp"
#include "mhm/module_io.hpp"
#include "mhm/report.hpp"
#include "mhm/suite.hpp"

using namespace mhm;

namespace {

struct RunConfig {
  std::string input;
  std::string family = "torus";
  int r = 2;
  std::string f;
  std::string alpha_lo = "-4";
  std::string alpha_hi = "4";
  int cap = 2;
  int box = 2;
  int f_offset = 0;
  int w_offset = 0;
  std::string format = "tsv";
  std::uint32_t seed = 1;
  std::string out;
  // command-specific
  std::string alpha = "0";
  std::string vfile;
  int i0 = 0;
  int k_lo = -1;
  int k_hi = 1;
};

// Thrown when a report was produced but some check failed.
struct CheckFailed {};

void add_module_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family, "delta | torus | product | localization | file")
      ->check(CLI::IsMember({"delta", "torus", "product", "localization", "file"}));
  sub->add_option("--r", cfg.r, "number of variables");
  sub->add_option("--f", cfg.f, "homogeneous polynomial for the localization family");
  sub->add_option("--alpha-lo", cfg.alpha_lo, "lowest stored degree (num/den)");
  sub->add_option("--alpha-hi", cfg.alpha_hi, "highest stored degree (num/den)");
  sub->add_option("--cap", cfg.cap, "pole-order cap for localization models")->check(CLI::PositiveNumber);
  sub->add_option("--box", cfg.box, "multidegree box bound for monomial families")->check(CLI::PositiveNumber);
  sub->add_option("--f-offset", cfg.f_offset, "F normalization offset");
  sub->add_option("--w-offset", cfg.w_offset, "W normalization offset");
  sub->add_option("--input", cfg.input, "module file (implies --family file)");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
  sub->add_option("--seed", cfg.seed, "random seed for property checks");
  sub->add_option("--out", cfg.out, "directory for report files");
}

WindowPolicy policy_of(const RunConfig& cfg) {
  WindowPolicy p;
  p.alpha_lo = parse_rational(cfg.alpha_lo);
  p.alpha_hi = parse_rational(cfg.alpha_hi);
  if (p.alpha_lo > p.alpha_hi) throw InputError("--alpha-lo must not exceed --alpha-hi");
  p.cap = cfg.cap;
  p.box = cfg.box;
  p.f_offset = cfg.f_offset;
  p.w_offset = cfg.w_offset;
  return p;
}

MonodromicalModule load_module(const RunConfig& cfg) {
  if (!cfg.input.empty() || cfg.family == "file") {
    if (cfg.input.empty()) throw InputError("--family file needs a module file");
    return read_module_file(cfg.input);
  }
  return build_family(cfg.family, cfg.r, cfg.f, policy_of(cfg));
}

void describe(Report& rep, const RunConfig& cfg, const MonodromicalModule& m) {
  rep.meta.push_back({"module", m.name});
  rep.meta.push_back({"r", std::to_string(m.r)});
  if (cfg.input.empty()) {
    rep.meta.push_back({"alpha_lo", cfg.alpha_lo});
    rep.meta.push_back({"alpha_hi", cfg.alpha_hi});
  } else {
    rep.meta.push_back({"input", cfg.input});
  }
}

std::string extension(const std::string& format) { return format == "json" ? "json" : "tsv"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << text;
}

void emit(const Report& rep, const RunConfig& cfg) {
  const std::string text = rep.render(cfg.format);
  std::cout << text;
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    write_file(std::filesystem::path(cfg.out) / (rep.command + "." + extension(cfg.format)), text);
  }
  if (!rep.ok) throw CheckFailed{};
}

void cmd_validate(const RunConfig& cfg) {
  const auto m = load_module(cfg);
  Report rep;
  rep.command = "validate";
  describe(rep, cfg, m);
  const auto v = validate(m);
  auto& t = rep.table("violations", {"invariant", "location"});
  for (const auto& x : v.violations) t.add({x.invariant, x.location});
  auto& n = rep.table("nilpotency", {"alpha", "order"});
  for (const auto& [a, k] : v.nilpotency_order) n.add({format_rational(a), std::to_string(k)});
  for (const auto& e : v.exempted) rep.notes.push_back("exempted: " + e);
  rep.ok = v.ok();
  for (const auto& x : v.violations) std::cerr << "violation [" << x.invariant << "] " << x.location << "\n";
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    write_module_file(m, (std::filesystem::path(cfg.out) / "module.json").string());
  }
  emit(rep, cfg);
}

void cmd_restrict(const RunConfig& cfg) {
  const auto m = load_module(cfg);
  Report rep;
  rep.command = "restrict";
  describe(rep, cfg, m);
  rep.meta.push_back({"alpha", format_rational(parse_rational(cfg.alpha))});
  const Rational alpha = parse_rational(cfg.alpha);
  for (auto mode : {KoszulMode::shriek, KoszulMode::star}) {
    const auto res = restriction(m, mode, alpha);
    add_restriction_records(rep, res);
    const std::string tag = mode_name(mode);
    if (!res.strict) {
      rep.ok = false;
      rep.notes.push_back(tag + ": not strict" +
                          (res.witness ? " at j=" + std::to_string(res.witness->j) + " p=" + std::to_string(res.witness->p)
                                       : std::string()));
    }
    if (!res.gr_two_ways_agree()) {
      rep.ok = false;
      rep.notes.push_back(tag + ": Gr^F dims disagree between the two orders");
    }
    if (res.weight_failure)
      rep.notes.push_back(tag + ": relative monodromy filtration does not exist (weight " +
                          std::to_string(res.weight_failure->k) + ", chain length " +
                          std::to_string(res.weight_failure->length) + ")");
    if (res.boundary_incomplete && res.computed)
      rep.notes.push_back(tag + ": boundary-incomplete, " + std::to_string(res.incomplete_slices) +
                          " slice(s) cut by the window");
    for (const auto& n : res.notes) rep.notes.push_back(tag + ": " + n);
  }
  emit(rep, cfg);
}

void cmd_acyclicity(const RunConfig& cfg) {
  const auto m = load_module(cfg);
  Report rep;
  rep.command = "acyclicity";
  describe(rep, cfg, m);
  std::vector<Rational> alphas;
  for (const auto& [a, p] : m.pieces)
    if (a != 0) alphas.push_back(a);
  const auto res = check_acyclicity_eq7(m, alphas);
  auto& t = rep.table("violations", {"mode", "alpha", "j", "p", "dim", "slice"});
  for (const auto& v : res.violations) {
    std::string slice;
    for (size_t i = 0; i < v.slice.size(); ++i) slice += (i ? "," : "") + std::to_string(v.slice[i]);
    t.add({mode_name(v.mode), format_rational(v.alpha), std::to_string(v.j), std::to_string(v.p),
           std::to_string(v.dim), slice});
  }
  rep.meta.push_back({"complete_slices", std::to_string(res.complete_slices)});
  for (const auto& b : res.boundary_incomplete) rep.notes.push_back("boundary-incomplete: " + b);
  rep.ok = res.ok();
  emit(rep, cfg);
}

void cmd_specialize(const RunConfig& cfg) {
  const auto m = load_module(cfg);
  Report rep;
  rep.command = "specialize";
  describe(rep, cfg, m);
  const VFiltrationData v = cfg.vfile.empty() ? canonical_v(m) : parse_vfiltration(read_text_file(cfg.vfile));
  rep.meta.push_back({"v_filtration", cfg.vfile.empty() ? "canonical" : cfg.vfile});
  const auto res = rees_specialize(m, v);
  auto& t = rep.table("specialization", {"beta", "alpha", "i", "p", "dim_output", "dim_gr_V"});
  for (const auto& row : res.table)
    t.add({format_rational(row.beta), format_rational(row.alpha), std::to_string(row.i), std::to_string(row.p),
           std::to_string(row.dim_output), std::to_string(row.dim_gr)});
  for (const auto& f : res.failures) rep.notes.push_back("failure: " + f);
  rep.ok = res.ok();
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    write_module_file(res.output, (std::filesystem::path(cfg.out) / "specialized.json").string());
  }
  emit(rep, cfg);
}

void cmd_vr(const RunConfig& cfg) {
  const auto m = load_module(cfg);
  Report rep;
  rep.command = "vr";
  describe(rep, cfg, m);
  const int i0 = cfg.i0 == 0 ? m.r : cfg.i0;
  if (i0 < 1 || i0 > m.r) throw InputError("--i0 must be between 1 and r");
  rep.meta.push_back({"i0", std::to_string(i0)});
  const Rational alpha = parse_rational(cfg.alpha);
  const auto v = cfg.vfile.empty() ? vr_monomial(m, i0) : parse_vfiltration(read_text_file(cfg.vfile));
  auto& runs = rep.table("runs", {"mode", "k", "alpha", "cone", "acyclicity", "gr0_supported_on_z", "mismatches"});
  auto& mis = rep.table("mismatches", {"mode", "k", "alpha", "check", "j", "p", "detail"});
  auto& iso = rep.table("isomorphisms", {"mode", "k", "op", "beta", "source", "claimed", "holds", "boundary"});
  for (auto mode : {KoszulMode::shriek, KoszulMode::star})
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
      const auto r = gr_vr_decompose(m, v, k, alpha, mode);
      const std::string md = mode_name(mode), ks = std::to_string(k), as = format_rational(alpha);
      runs.add({md, ks, as, r.cone_computed ? (r.cone_isomorphic ? "identified" : "differs") : "not computed",
                r.acyclicity_judged ? "judged" : "not judged", r.gr0_supported_on_z ? "yes" : "no",
                std::to_string(r.mismatches.size())});
      for (const auto& x : r.mismatches)
        mis.add({md, ks, as, x.check, std::to_string(x.j), std::to_string(x.p), x.detail});
      for (const auto& e : r.isomorphisms)
        iso.add({md, ks, op_name(e.kind), format_rational(e.beta), format_rational(e.gamma), e.claimed ? "yes" : "no",
                 e.holds ? "yes" : "no", e.boundary ? "yes" : "no"});
      for (const auto& n : r.notes) rep.notes.push_back(md + " k=" + ks + ": " + n);
      rep.ok = rep.ok && r.ok();
    }
  emit(rep, cfg);
}

void add_milnor_tables(Report& rep, const MilnorAlgebra& m) {
  auto& d = rep.table("milnor", {"k", "dim"});
  for (size_t k = 0; k < m.dims.size(); ++k) d.add({std::to_string(k), std::to_string(m.dims[k])});
  auto& g = rep.table("griffiths", {"p", "dim"});
  for (const auto& [p, n] : griffiths_dims(m)) g.add({std::to_string(p), std::to_string(n)});
  if (m.r < 2) return;
  auto& c = rep.table("complement", {"j", "summand", "dim"});
  for (const auto& e : complement_cohomology(m))
    for (const auto& [label, n] : e.summands) c.add({std::to_string(e.j), label, std::to_string(n)});
  const auto ex = expected_restriction_dims(m);
  auto& t = rep.table("expected", {"table", "p", "dim"});
  for (const auto& [p, n] : ex.top) t.add({"top", std::to_string(p), std::to_string(n)});
  for (const auto& [p, n] : ex.interior) t.add({"interior", std::to_string(p), std::to_string(n)});
  rep.notes.push_back("expected tables are hypotheses to probe; interior uses echelon-order monomial representatives");
}

void cmd_milnor(const RunConfig& cfg) {
  if (cfg.f.empty()) throw InputError("milnor needs --f");
  const Polynomial f = parse_polynomial(cfg.f);
  const auto m = milnor_dims(f);
  Report rep;
  rep.command = "milnor";
  rep.meta.push_back({"f", f.to_string(default_variable_names(f.nvars()))});
  rep.meta.push_back({"r", std::to_string(m.r)});
  rep.meta.push_back({"d", std::to_string(m.d)});
  rep.meta.push_back({"total", std::to_string(m.total())});
  add_milnor_tables(rep, m);
  emit(rep, cfg);
}

void cmd_compare(const RunConfig& cfg) {
  if (cfg.f.empty()) throw InputError("compare needs --f");
  const Polynomial f = parse_polynomial(cfg.f);
  const auto c = compare_with_koszul(f, policy_of(cfg));
  Report rep;
  rep.command = "compare";
  rep.meta.push_back({"f", c.f});
  rep.meta.push_back({"r", std::to_string(c.r)});
  rep.meta.push_back({"d", std::to_string(c.d)});
  rep.meta.push_back({"shriek_stable", c.shriek_stable ? "yes" : "no"});
  rep.meta.push_back({"star_stable", c.star_stable ? "yes" : "no"});
  add_milnor_tables(rep, c.milnor);
  auto& k = rep.table("koszul", {"mode", "cap", "j", "dim_H", "p", "dim_gr_F"});
  for (const auto* s : {&c.shriek_lo, &c.shriek_hi, &c.star_lo, &c.star_hi}) {
    if (!s->computed) {
      rep.notes.push_back(std::string(mode_name(s->mode)) + " cap=" + std::to_string(s->cap) +
                          " not computed: " + s->window_note);
      continue;
    }
    for (size_t j = 0; j < s->h.size(); ++j) {
      const auto it = s->gr_f.find(static_cast<int>(j));
      bool any = false;
      if (it != s->gr_f.end())
        for (const auto& [p, n] : it->second) {
          if (!n) continue;
          any = true;
          k.add({mode_name(s->mode), std::to_string(s->cap), std::to_string(j), std::to_string(s->h[j]),
                 std::to_string(p), std::to_string(n)});
        }
      if (!any)
        k.add({mode_name(s->mode), std::to_string(s->cap), std::to_string(j), std::to_string(s->h[j]), "-", "0"});
    }
  }
  for (const auto& l : c.lines) rep.notes.push_back(l);
  emit(rep, cfg);
}

void cmd_suite(const RunConfig& cfg) {
  const auto m = load_module(cfg);
  SuiteOptions opts;
  opts.seed = cfg.seed;
  Report rep = run_suite(m, opts);
  emit(rep, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restriction, specialization and weight computations on graded module models"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* validate_cmd = app.add_subcommand("validate", "check module invariants");
  add_module_options(validate_cmd, cfg);
  add_output_options(validate_cmd, cfg);
  validate_cmd->add_option("file", cfg.input, "module file");

  auto* restrict_cmd = app.add_subcommand("restrict", "restriction cohomology in both modes");
  add_module_options(restrict_cmd, cfg);
  add_output_options(restrict_cmd, cfg);
  restrict_cmd->add_option("--alpha", cfg.alpha, "degree of the Koszul complex (num/den)");

  auto* acyc_cmd = app.add_subcommand("acyclicity", "filtered acyclicity sweep away from degree 0");
  add_module_options(acyc_cmd, cfg);
  add_output_options(acyc_cmd, cfg);

  auto* spec_cmd = app.add_subcommand("specialize", "specialization along the canonical or a given V-filtration");
  add_module_options(spec_cmd, cfg);
  add_output_options(spec_cmd, cfg);
  spec_cmd->add_option("--vfile", cfg.vfile, "V-filtration file");

  auto* vr_cmd = app.add_subcommand("vr", "V-filtration along one coordinate: cones, isomorphisms, acyclicity");
  add_module_options(vr_cmd, cfg);
  add_output_options(vr_cmd, cfg);
  vr_cmd->add_option("--i0", cfg.i0, "coordinate index (default r)");
  vr_cmd->add_option("--k-lo", cfg.k_lo, "lowest V index");
  vr_cmd->add_option("--k-hi", cfg.k_hi, "highest V index");
  vr_cmd->add_option("--alpha", cfg.alpha, "degree of the Koszul complex (num/den)");
  vr_cmd->add_option("--vfile", cfg.vfile, "V-filtration file (default: monomial)");

  auto* milnor_cmd = app.add_subcommand("milnor", "Milnor algebra, Griffiths and complement tables");
  milnor_cmd->add_option("--f", cfg.f, "homogeneous polynomial")->required();
  add_output_options(milnor_cmd, cfg);

  auto* compare_cmd = app.add_subcommand("compare", "Koszul cohomology of C[x][1/f] next to the Milnor tables");
  compare_cmd->add_option("--f", cfg.f, "homogeneous polynomial")->required();
  compare_cmd->add_option("--cap", cfg.cap, "pole-order cap")->check(CLI::PositiveNumber);
  add_output_options(compare_cmd, cfg);

  auto* suite_cmd = app.add_subcommand("suite", "property run on one family instance");
  add_module_options(suite_cmd, cfg);
  add_output_options(suite_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) cmd_validate(cfg);
    else if (*restrict_cmd) cmd_restrict(cfg);
    else if (*acyc_cmd) cmd_acyclicity(cfg);
    else if (*spec_cmd) cmd_specialize(cfg);
    else if (*vr_cmd) cmd_vr(cfg);
    else if (*milnor_cmd) cmd_milnor(cfg);
    else if (*compare_cmd) cmd_compare(cfg);
    else if (*suite_cmd) cmd_suite(cfg);
  } catch (const CheckFailed&) {
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const WindowError& e) {
    std::cerr << "window: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
