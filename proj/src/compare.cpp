#include "mhm/compare.hpp"

#include <algorithm>
#include <sstream>

namespace mhm {

namespace {

WindowPolicy covering(const WindowPolicy& policy, int r, int cap) {
  WindowPolicy p = policy;
  p.cap = cap;
  p.alpha_lo = 0;
  p.alpha_hi = r;
  return p;
}

struct Capped {
  MonodromicalModule m;
  FilteredComplex full;
  FilteredComplex sub;
  std::vector<std::vector<size_t>> coords;
};

Capped capped_complex(const Polynomial& f, KoszulMode mode, int cap, const WindowPolicy& policy) {
  const int r = f.nvars();
  Capped c;
  c.m = build_isolated_sing_localization(f, covering(policy, r, cap));
  c.full = build_koszul(c.m, mode, 0, false);
  for (int j = 0; j <= r; ++j) {
    const Rational g = mode == KoszulMode::shriek ? Rational(j) : Rational(r - j);
    const auto gens = localization_generators(f, cap, g);
    const int bound = mode == KoszulMode::shriek ? cap : cap - r + j;
    const size_t pd = gens.size();
    std::vector<size_t> keep;
    for (size_t idx = 0; idx < c.full.dims[static_cast<size_t>(j)]; ++idx)
      if (gens[idx % pd].pole <= bound) keep.push_back(idx);
    c.coords.push_back(std::move(keep));
  }
  c.sub = c.full.restrict_to(c.coords);
  if (!c.sub.d_squared_zero()) throw PreconditionError("capped Koszul complex: d∘d != 0");
  return c;
}

// Coordinates of a full-term vector inside the kept coordinates, or empty
// when it has support outside them.
std::vector<Rational> to_sub(const std::vector<Rational>& v, const std::vector<size_t>& keep) {
  std::vector<Rational> out(keep.size(), 0);
  std::vector<bool> kept(v.size(), false);
  for (size_t k = 0; k < keep.size(); ++k) {
    out[k] = v[keep[k]];
    kept[keep[k]] = true;
  }
  for (size_t x = 0; x < v.size(); ++x)
    if (!kept[x] && v[x] != 0) return {};
  return out;
}

bool is_zero_vec(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

std::vector<Rational> mat_vec(const RationalMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out(a.rows(), 0);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

}  // namespace

namespace {

CappedKoszul summarize(KoszulMode mode, int cap, const std::vector<CohomologyDegree>& h) {
  CappedKoszul out;
  out.mode = mode;
  out.cap = cap;
  out.computed = true;
  for (const auto& e : h) {
    out.h.push_back(e.dim);
    out.gr_f[e.j] = e.gr_f;
  }
  return out;
}

GeneratorCheck check_generators(const Polynomial& f, int cap, const Capped& c, const std::vector<CohomologyDegree>& h) {
  GeneratorCheck g;
  const int r = f.nvars();
  // 1 = f^cap / f^cap in degree r, the only summand of K^{*,0}.
  const auto one_full = localization_coords(f, cap, r, f.pow(static_cast<unsigned>(cap)));
  const auto one = to_sub(one_full, c.coords[0]);
  if (!one.empty()) {
    g.one_is_cycle = is_zero_vec(mat_vec(c.sub.diff(0), one));
    g.one_nonzero = g.one_is_cycle && !is_zero_vec(one);
  }
  // df/f = Σ (∂_i f · f^{cap-1}) / f^cap e_i in K^{*,1}.
  const size_t pd = c.m.dim(r - 1);
  std::vector<Rational> dff(c.full.dims[1], 0);
  for (size_t s = 0; pd && s < c.full.dims[1] / pd; ++s) {
    const std::uint32_t set = c.full.labels[1][s * pd].subset;
    int i = 1;
    while (!((set >> (i - 1)) & 1u)) ++i;
    const Polynomial num = f.derivative(i - 1) * f.pow(static_cast<unsigned>(cap - 1));
    const auto block = localization_coords(f, cap, r - 1, num);
    for (size_t x = 0; x < pd; ++x) dff[s * pd + x] = block[x];
  }
  const auto v = to_sub(dff, c.coords[1]);
  if (!v.empty()) {
    g.dff_is_cycle = is_zero_vec(mat_vec(c.sub.diff(1), v));
    const Subspace boundaries = Subspace::span(c.sub.dim(1), c.sub.diff(0));
    g.dff_nonzero = g.dff_is_cycle && !boundaries.contains(v);
    for (const auto& deg : h)
      if (deg.j == 1) g.dff_spans_h1 = g.dff_nonzero && deg.dim == 1;
  }
  return g;
}

}  // namespace

CappedKoszul capped_koszul(const Polynomial& f, KoszulMode mode, int cap, const WindowPolicy& policy) {
  try {
    const Capped c = capped_complex(f, mode, cap, policy);
    return summarize(mode, cap, cohomology(c.sub));
  } catch (const WindowError& e) {
    CappedKoszul out;
    out.mode = mode;
    out.cap = cap;
    out.window_note = e.what();
    return out;
  }
}

GeneratorCheck generator_check(const Polynomial& f, int cap, const WindowPolicy& policy) {
  try {
    const Capped c = capped_complex(f, KoszulMode::star, cap, policy);
    return check_generators(f, cap, c, cohomology(c.sub));
  } catch (const WindowError&) {
    return {};
  }
}

KoszulComparison compare_with_koszul(const Polynomial& f, const WindowPolicy& policy) {
  KoszulComparison cmp;
  cmp.f = f.to_string(default_variable_names(f.nvars()));
  cmp.milnor = milnor_dims(f);
  cmp.r = cmp.milnor.r;
  cmp.d = cmp.milnor.d;
  cmp.griffiths = griffiths_dims(cmp.milnor);
  cmp.complement = complement_cohomology(cmp.milnor);
  cmp.expected = expected_restriction_dims(cmp.milnor);
  // The class of 1 needs pole order 0 in degree 0 of the star subcomplex.
  const int m = std::max(policy.cap, cmp.r);
  cmp.shriek_lo = capped_koszul(f, KoszulMode::shriek, m, policy);
  cmp.shriek_hi = capped_koszul(f, KoszulMode::shriek, m + 1, policy);
  cmp.star_lo = capped_koszul(f, KoszulMode::star, m, policy);
  try {
    const Capped c = capped_complex(f, KoszulMode::star, m + 1, policy);
    const auto h = cohomology(c.sub);
    cmp.star_hi = summarize(KoszulMode::star, m + 1, h);
    cmp.generators = check_generators(f, m + 1, c, h);
  } catch (const WindowError& e) {
    cmp.star_hi.mode = KoszulMode::star;
    cmp.star_hi.cap = m + 1;
    cmp.star_hi.window_note = e.what();
  }
  auto stable = [](const CappedKoszul& a, const CappedKoszul& b) {
    return a.computed && b.computed && a.h == b.h && a.gr_f == b.gr_f;
  };
  cmp.shriek_stable = stable(cmp.shriek_lo, cmp.shriek_hi);
  cmp.star_stable = stable(cmp.star_lo, cmp.star_hi);

  auto say = [&](const std::string& s) { cmp.lines.push_back(s); };
  if (!cmp.shriek_stable) say("shriek: cohomology changes between caps " + std::to_string(m) + " and " + std::to_string(m + 1) + "; re-run with a larger cap");
  if (!cmp.star_stable) say("star: cohomology changes between caps " + std::to_string(m) + " and " + std::to_string(m + 1) + "; re-run with a larger cap");
  for (const auto* side : {&cmp.star_hi, &cmp.shriek_hi}) {
    if (!side->computed) continue;
    for (const auto& e : cmp.complement) {
      const size_t h = e.j < static_cast<int>(side->h.size()) ? side->h[static_cast<size_t>(e.j)] : 0;
      std::ostringstream os;
      os << mode_name(side->mode) << " H^" << e.j << ": " << h << " vs complement table " << e.total() << " ("
         << (h == e.total() ? "agree" : "differ") << ")";
      say(os.str());
    }
  }
  for (const auto* side : {&cmp.star_hi, &cmp.shriek_hi}) {
    if (!side->computed) continue;
    const int r = cmp.r;
    auto cmp_table = [&](int j, int shift, const std::map<int, size_t>& table, const char* name) {
      const auto it = side->gr_f.find(j);
      for (const auto& [p, dim] : table) {
        size_t got = 0;
        if (it != side->gr_f.end()) {
          const auto g = it->second.find(p + shift);
          if (g != it->second.end()) got = g->second;
        }
        std::ostringstream os;
        os << mode_name(side->mode) << " " << name << " p=" << p << ": Gr^F_" << p + shift << " H^" << j << " = "
           << got << " vs expected " << dim << " (" << (got == dim ? "agree" : "differ") << ")";
        say(os.str());
      }
    };
    cmp_table(r, -r, cmp.expected.top, "top");
    cmp_table(r - 1, -r + 1, cmp.expected.interior, "interior");
  }
  say(std::string("class of 1 in H^0: ") + (cmp.generators.one_nonzero ? "nonzero" : "not found"));
  say(std::string("class of df/f in H^1: ") + (cmp.generators.dff_nonzero ? "nonzero" : "not found") +
      (cmp.generators.dff_spans_h1 ? ", spans H^1" : ""));
  return cmp;
}

namespace {

void render_side(std::ostream& os, const CappedKoszul& s) {
  os << mode_name(s.mode) << " cap=" << s.cap << ":";
  if (!s.computed) {
    os << " not computed (" << s.window_note << ")\n";
    return;
  }
  for (size_t j = 0; j < s.h.size(); ++j) os << " H^" << j << "=" << s.h[j];
  os << "\n";
  for (const auto& [j, g] : s.gr_f) {
    if (g.empty()) continue;
    os << "  Gr^F H^" << j << ":";
    for (const auto& [p, dim] : g) os << " " << p << ":" << dim;
    os << "\n";
  }
}

}  // namespace

std::string KoszulComparison::render() const {
  std::ostringstream os;
  os << "f = " << f << "  (r=" << r << ", d=" << d << ")\n";
  os << "Milnor algebra dims:";
  for (size_t k = 0; k < milnor.dims.size(); ++k) os << " " << milnor.dims[k];
  os << "  (total " << milnor.total() << ")\n";
  os << "Griffiths dims Gr_F^{r-1-p} H^{r-1}(U):";
  for (const auto& [p, dim] : griffiths) os << " p=" << p << ":" << dim;
  os << "\n";
  os << "complement cohomology:\n";
  for (const auto& e : complement) {
    os << "  H^" << e.j << " = " << e.total();
    for (const auto& [label, dim] : e.summands) os << "  [" << label << ": " << dim << "]";
    os << "\n";
  }
  os << "EXPECTED top (j=r):";
  for (const auto& [p, dim] : expected.top) os << " p=" << p << ":" << dim;
  os << "\nEXPECTED interior (j=r-1, INFORMATIONAL):";
  for (const auto& [p, dim] : expected.interior) os << " p=" << p << ":" << dim;
  os << "\n";
  for (const auto* s : {&shriek_lo, &shriek_hi, &star_lo, &star_hi}) render_side(os, *s);
  os << "shriek stable: " << (shriek_stable ? "yes" : "no") << "\n";
  os << "star stable: " << (star_stable ? "yes" : "no") << "\n";
  for (const auto& l : lines) os << l << "\n";
  return os.str();
}

}  // namespace mhm
