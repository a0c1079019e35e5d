#include "mhm/suite.hpp"

#include <sstream>

#include "mhm/generators.hpp"
#include "mhm/koszul.hpp"
#include "mhm/restriction.hpp"
#include "mhm/vfiltration.hpp"
#include "mhm/weight.hpp"

namespace mhm {

MonodromicalModule build_family(const std::string& family, int r, const std::string& f, const WindowPolicy& policy) {
  if (family == "localization") {
    if (f.empty()) throw InputError("family localization needs --f");
    return build_isolated_sing_localization(parse_polynomial(f), policy);
  }
  if (r < 1 || r > 6) throw InputError("--r must be between 1 and 6");
  if (family == "delta") return build_delta(r, policy);
  if (family == "torus") return build_torus(r, policy);
  if (family == "product") {
    if (r < 2) throw InputError("family product needs r >= 2");
    // The torus factor is stored on its whole box support and the delta
    // factor far enough down that every requested product degree has all of
    // its decompositions inside the factor windows.
    const int n = r - 1;
    WindowPolicy tp = policy, dp = policy;
    tp.alpha_lo = n - n * policy.box;
    tp.alpha_hi = n + n * policy.box;
    dp.alpha_lo = policy.alpha_lo - tp.alpha_hi;
    dp.alpha_hi = 0;
    return external_product(build_torus(n, tp), build_delta(1, dp));
  }
  throw InputError("unknown family '" + family + "' (expected delta, torus, product, localization or file)");
}

namespace {

struct Checks {
  Report& report;
  ReportTable& table;
  void add(const std::string& name, bool ok, const std::string& detail) {
    table.add({name, ok ? "pass" : "fail", detail});
    report.ok = report.ok && ok;
  }
  void skip(const std::string& name, const std::string& why) { table.add({name, "skipped", why}); }
};

void restriction_checks(const MonodromicalModule& m, Checks& c) {
  for (auto mode : {KoszulMode::shriek, KoszulMode::star}) {
    const auto res = restriction(m, mode, 0);
    add_restriction_records(c.report, res);
    std::ostringstream os;
    if (res.witness) os << "non-strict at j=" << res.witness->j << " p=" << res.witness->p;
    if (res.boundary_incomplete) os << (os.tellp() > 0 ? "; " : "") << "boundary-incomplete slices excluded";
    c.add(std::string("strict_") + mode_name(mode), res.strict, os.str());
    c.add(std::string("gr_two_ways_") + mode_name(mode), res.gr_two_ways_agree(), "");
  }
}

void acyclicity_check(const MonodromicalModule& m, Checks& c) {
  std::vector<Rational> alphas;
  for (const auto& [a, p] : m.pieces)
    if (a != 0 && a >= -4 && a <= 4) alphas.push_back(a);
  const auto rep = check_acyclicity_eq7(m, alphas);
  std::ostringstream os;
  os << rep.complete_slices << " complete slices";
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    os << "; first violation " << mode_name(v.mode) << " alpha=" << format_rational(v.alpha) << " j=" << v.j
       << " p=" << v.p;
  }
  c.add("filtered_acyclicity", rep.ok(), os.str());
}

void specialization_check(const MonodromicalModule& m, Checks& c) {
  if (!m.multigraded) {
    c.skip("specialization_identity", "canonical V needs a multigraded module");
    return;
  }
  const auto v = canonical_v(m);
  const auto ax = v_axioms_check(m, v);
  c.add("canonical_v_axioms", ax.ok(), ax.ok() ? "" : ax.summary());
  if (!ax.ok()) return;
  const auto res = rees_specialize(m, v);
  const bool same = res.output.f_dimension_table() == m.f_dimension_table();
  c.add("specialization_identity", res.ok() && same, res.ok() ? "" : res.failures.front());
}

void vr_checks(const MonodromicalModule& m, Checks& c) {
  if (!m.multigraded || m.r < 2) {
    c.skip("vr_decomposition", "needs a multigraded module with r >= 2");
    return;
  }
  size_t mismatches = 0, runs = 0;
  std::string first;
  for (int i0 = 1; i0 <= m.r; ++i0) {
    const auto v = vr_monomial(m, i0);
    for (auto mode : {KoszulMode::shriek, KoszulMode::star})
      for (int k = -1; k <= 1; ++k) {
        const auto rep = gr_vr_decompose(m, v, k, 0, mode);
        ++runs;
        mismatches += rep.mismatches.size();
        if (first.empty() && !rep.mismatches.empty()) {
          const auto& x = rep.mismatches.front();
          first = "i0=" + std::to_string(i0) + " " + mode_name(mode) + " k=" + std::to_string(k) + " " + x.check +
                  " j=" + std::to_string(x.j) + " p=" + std::to_string(x.p) + " " + x.detail;
        }
      }
  }
  c.add("vr_decomposition", mismatches == 0, std::to_string(runs) + " runs" + (first.empty() ? "" : "; " + first));
}

void purity(const MonodromicalModule& m, Checks& c) {
  const auto rep = purity_check(m);
  if (!rep.applicable) {
    c.skip("purity", rep.notice);
    return;
  }
  c.add("purity", rep.ok(), rep.violations.empty() ? "" : rep.violations.front());
}

void monodromy_checks(const SuiteOptions& opts, Checks& c) {
  std::mt19937 rng(opts.seed);
  size_t bad = 0;
  for (size_t t = 0; t < opts.random_nilpotents; ++t) {
    const auto planted = random_nilpotent(rng, 8);
    const int center = static_cast<int>(t % 5) - 2;
    const auto w = monodromy_filtration(planted.n, center);
    bool ok = satisfies_monodromy_conditions(planted.n, w, center);
    for (const auto& [k, dim] : jordan_weight_dims(planted.blocks, center)) ok = ok && w.gr_dim(k) == dim;
    if (!ok) ++bad;
  }
  c.add("monodromy_filtration", bad == 0,
        std::to_string(opts.random_nilpotents) + " seeded nilpotents, seed " + std::to_string(opts.seed));
}

}  // namespace

Report run_suite(const MonodromicalModule& m, const SuiteOptions& opts) {
  Report report;
  report.command = "suite";
  report.meta.push_back({"module", m.name});
  report.meta.push_back({"r", std::to_string(m.r)});
  report.meta.push_back({"seed", std::to_string(opts.seed)});
  Checks c{report, report.table("checks", {"check", "status", "detail"})};
  const auto val = validate(m);
  c.add("validate", val.ok(), val.ok() ? "" : val.violations.front().invariant + " at " + val.violations.front().location);
  restriction_checks(m, c);
  acyclicity_check(m, c);
  specialization_check(m, c);
  vr_checks(m, c);
  purity(m, c);
  monodromy_checks(opts, c);
  return report;
}

}  // namespace mhm
