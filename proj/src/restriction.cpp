#include "mhm/restriction.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace mhm {

const RestrictionDegree& RestrictionResult::at(int j) const {
  for (const auto& d : degrees)
    if (d.j == j) return d;
  throw PreconditionError("RestrictionResult: no degree " + std::to_string(j));
}

bool RestrictionResult::gr_two_ways_agree() const {
  for (const auto& d : degrees)
    if (d.gr_f != d.gr_f_of_gr) return false;
  return true;
}

namespace {

// Relative monodromy flag on one piece, assembled block by block.
Flag piece_weight_flag(const MonodromicalModule& m, const Rational& deg, KoszulWeights& out, std::set<std::string>& seen) {
  const size_t n = m.dim(deg);
  if (n == 0) return Flag::trivial(0, 0);
  const auto& piece = m.piece(deg);
  const Flag w = m.has_w ? Flag::from_levels(n, piece.w_level) : Flag::trivial(n, 0);
  const auto eb = m.euler_nilpotent(deg);
  std::vector<long> pos(n, -1);
  for (size_t k = 0; k < eb.columns.size(); ++k) pos[eb.columns[k]] = static_cast<long>(k);
  std::vector<std::pair<Flag, std::vector<size_t>>> parts;
  for (const auto& block : m.blocks(deg)) {
    const Flag wb = w.restrict_to(block);
    std::vector<size_t> local;
    for (auto c : block)
      if (pos[c] >= 0) local.push_back(static_cast<size_t>(pos[c]));
    if (local.size() != block.size()) {
      const std::string note = "alpha=" + format_rational(deg) + ": N not computable on truncated vectors; W used there";
      if (seen.insert(note).second) out.notes.push_back(note);
      parts.emplace_back(wb, block);
      continue;
    }
    const RationalMatrix nb = eb.n.select_rows(local).select_cols(local);
    try {
      auto rel = relative_monodromy_filtration(nb, wb);
      if (rel.exists()) {
        parts.emplace_back(*rel.flag, block);
        continue;
      }
      if (!out.failure) out.failure = rel.certificate;
      const std::string note = "alpha=" + format_rational(deg) + ": relative monodromy filtration does not exist";
      if (seen.insert(note).second) out.notes.push_back(note);
    } catch (const PreconditionError& e) {
      const std::string note = "alpha=" + format_rational(deg) + ": " + e.what();
      if (seen.insert(note).second) out.notes.push_back(note);
    }
    parts.emplace_back(wb, block);
  }
  return Flag::direct_sum(n, parts);
}

}  // namespace

KoszulWeights koszul_weight_flags(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha,
                                  const FilteredComplex& c) {
  KoszulWeights out;
  std::set<std::string> seen;
  std::map<Rational, Flag> cache;
  const int r = m.r;
  for (int j = 0; j <= r; ++j) {
    const Rational deg = mode == KoszulMode::shriek ? Rational(alpha + j) : Rational(alpha + r - j);
    if (!cache.count(deg)) cache.emplace(deg, piece_weight_flag(m, deg, out, seen));
    const Flag& pf = cache.at(deg);
    const size_t pd = m.dim(deg);
    const size_t n = c.dim(j);
    std::vector<std::pair<Flag, std::vector<size_t>>> parts;
    for (size_t s = 0; pd && s < n / pd; ++s) {
      std::vector<size_t> positions(pd);
      for (size_t v = 0; v < pd; ++v) positions[v] = s * pd + v;
      parts.emplace_back(pf, std::move(positions));
    }
    out.flags.push_back(parts.empty() ? Flag::trivial(n, 0) : Flag::direct_sum(n, parts));
  }
  return out;
}

namespace {

bool has_out_truncation(const MonodromicalModule& m) {
  for (const auto& [a, p] : m.pieces)
    for (const auto& per_op : p.out_truncated)
      for (const auto& flags : per_op)
        for (bool b : flags)
          if (b) return true;
  return false;
}

}  // namespace

RestrictionResult restriction(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha) {
  RestrictionResult res;
  res.mode = mode;
  res.alpha = alpha;
  res.r = m.r;
  const int shift = mode == KoszulMode::star ? -m.r : 0;
  res.degrees.resize(static_cast<size_t>(m.r) + 1);
  for (int j = 0; j <= m.r; ++j) res.degrees[static_cast<size_t>(j)].j = j + shift;

  FilteredComplex c = build_koszul(m, mode, alpha, false);
  if (!c.d_squared_zero()) {
    if (!has_out_truncation(m)) throw PreconditionError("Koszul complex: d∘d != 0 (module relations fail)");
    // Truncated operators break d∘d = 0 at the window boundary, so no
    // cohomology is computed from this complex.
    res.boundary_incomplete = true;
    res.computed = false;
    res.notes.push_back("d∘d != 0 across truncated operators; use compare for the capped subcomplex");
    return res;
  }
  auto kw = koszul_weight_flags(m, mode, alpha, c);
  c.W = kw.flags;
  res.weights_computed = true;
  res.weight_failure = kw.failure;
  res.notes = kw.notes;

  size_t noisy = 0;
  for (const auto& s : koszul_slices(c)) {
    const auto hs = cohomology(s.complex);
    size_t total = 0;
    for (const auto& h : hs) total += h.dim;
    if (s.incomplete) {
      ++res.incomplete_slices;
      if (total == 0) continue;
      res.boundary_incomplete = true;
      ++noisy;
    } else {
      ++res.complete_slices;
    }
    const auto st = is_strict(s.complex);
    if (!st.strict && res.strict) {
      res.strict = false;
      if (st.witness) {
        StrictnessWitness w = *st.witness;
        const auto& tc = s.coords[static_cast<size_t>(w.j + 1 - c.lo)];
        std::vector<Rational> full(c.dim(w.j + 1));
        for (size_t k = 0; k < tc.size(); ++k) full[tc[k]] = w.vector[k];
        w.vector = std::move(full);
        res.witness = std::move(w);
      }
    }
    for (const auto& h : hs) {
      auto& d = res.degrees[static_cast<size_t>(h.j)];
      d.dim += h.dim;
      for (const auto& [p, n] : h.gr_f) d.gr_f[p] += n;
      for (const auto& [k, n] : h.gr_w) d.gr_w[k + d.j] += n;
    }
    const auto [plo, phi] = s.complex.f_range();
    for (int p = plo; p <= phi; ++p)
      for (const auto& [j, n] : gr_cohomology(s.complex, p).dims)
        if (n) res.degrees[static_cast<size_t>(j)].gr_f_of_gr[p] += n;
  }
  if (noisy)
    res.notes.push_back(std::to_string(noisy) + " truncated slice(s) carry cohomology; enlarge the window, box or cap");
  return res;
}

PurityReport purity_check(const MonodromicalModule& m) {
  PurityReport rep;
  if (!m.pure_weight) {
    rep.notice = "module '" + m.name + "' declares no pure weight; purity check skipped";
    return rep;
  }
  rep.applicable = true;
  const int w = *m.pure_weight;
  for (const auto& [a, p] : m.pieces) {
    const auto eb = m.euler_nilpotent(a);
    if (!eb.n.is_zero()) rep.violations.push_back("N is not zero at alpha=" + format_rational(a));
  }
  for (auto mode : {KoszulMode::shriek, KoszulMode::star}) {
    try {
      const auto res = restriction(m, mode, 0);
      if (res.weight_failure) rep.violations.push_back(std::string(mode_name(mode)) + ": no relative monodromy filtration");
      for (const auto& d : res.degrees)
        for (const auto& [k, n] : d.gr_w)
          if (n && k != w + d.j)
            rep.violations.push_back(std::string(mode_name(mode)) + " j=" + std::to_string(d.j) + " k=" + std::to_string(k) +
                                     ": weight differs from " + std::to_string(w + d.j));
    } catch (const WindowError& e) {
      rep.violations.push_back(std::string(mode_name(mode)) + ": " + e.what());
    }
  }
  return rep;
}

bool induced_map_strict(const FilteredComplex& a, const FilteredComplex& b, const RationalMatrix& phi_j, int j) {
  const Subspace za = rank_kernel_image(a.diff(j)).kernel;
  const Subspace zb = rank_kernel_image(b.diff(j)).kernel;
  const Subspace bb = Subspace::span(b.dim(j), b.diff(j - 1));
  const Flag fa = a.flag(j), fb = b.flag(j);
  const Subspace image = za.image_under(phi_j) + bb;
  const int lo = std::min(fa.lo(), fb.lo()) - 1, hi = std::max(fa.hi(), fb.hi());
  for (int p = lo; p <= hi; ++p) {
    const Subspace lhs = intersect(za, fa.at(p)).image_under(phi_j) + bb;
    const Subspace rhs = intersect(image, intersect(zb, fb.at(p)) + bb);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

ConeVerdict mapping_cone_strictness(const FilteredComplex& a, const FilteredComplex& b,
                                    const std::vector<RationalMatrix>& phi, int r,
                                    std::optional<ConeHypotheses> claimed) {
  for (const auto* c : {&a, &b})
    for (int j = c->lo; j <= c->hi(); ++j)
      if ((j < 0 || j > r) && c->dim(j) != 0)
        throw PreconditionError("mapping_cone_strictness: terms must vanish outside [0, r]");
  auto phi_at = [&](int j) {
    const int k = j - a.lo;
    if (k >= 0 && k < static_cast<int>(phi.size())) return phi[static_cast<size_t>(k)];
    return RationalMatrix(b.dim(j), a.dim(j));
  };
  ConeVerdict v;
  const FilteredComplex cone = mapping_cone(a, b, phi);
  v.computed.source_strict = is_strict(a).strict;
  v.computed.target_strict = is_strict(b).strict;
  v.computed.h0_strict = induced_map_strict(a, b, phi_at(0), 0);
  v.computed.hr_strict = induced_map_strict(a, b, phi_at(r), r);
  const auto ha = cohomology(a), hb = cohomology(b);
  bool a_conc = true, b_conc = true;
  for (const auto& h : ha)
    if (h.j != 0 && h.dim) a_conc = false;
  for (const auto& h : hb)
    if (h.j != r && h.dim) b_conc = false;
  v.computed.one_sided_vanishing = a_conc || b_conc;
  if (claimed) {
    auto cmp = [&](const char* name, bool claim, bool actual) {
      if (claim != actual)
        v.inconsistencies.push_back(std::string(name) + ": claimed " + (claim ? "true" : "false") + ", computed " +
                                    (actual ? "true" : "false"));
    };
    cmp("source_strict", claimed->source_strict, v.computed.source_strict);
    cmp("target_strict", claimed->target_strict, v.computed.target_strict);
    cmp("h0_strict", claimed->h0_strict, v.computed.h0_strict);
    cmp("hr_strict", claimed->hr_strict, v.computed.hr_strict);
    cmp("one_sided_vanishing", claimed->one_sided_vanishing, v.computed.one_sided_vanishing);
  }
  const auto st = is_strict(cone);
  v.cone_strict = st.strict;
  v.witness = st.witness;
  return v;
}

}  // namespace mhm
