#include <algorithm>
#include <bit>
#include <set>

#include "mhm/vfiltration.hpp"

namespace mhm {

namespace {

bool has(std::uint32_t s, int i) { return (s >> (i - 1)) & 1u; }

int sign_before(std::uint32_t s, int i) { return std::popcount(s & ((1u << (i - 1)) - 1u)) % 2 ? -1 : 1; }

int sign_after(std::uint32_t s, int i) { return std::popcount(s >> i) % 2 ? -1 : 1; }

// Subsets of {1..r} \ {skip} with `size` elements, in increasing bitmask order.
std::vector<std::uint32_t> subsets_without(int r, int skip, int size) {
  std::vector<std::uint32_t> out;
  if (size < 0) return out;
  for (std::uint32_t s = 0; s < (1u << r); ++s)
    if (std::popcount(s) == size && !has(s, skip)) out.push_back(s);
  return out;
}

std::string where(const Rational& k, const Rational& alpha) {
  return "k=" + format_rational(k) + " alpha=" + format_rational(alpha);
}

Subquotient gr_or_zero(const MonodromicalModule& m, const VFiltrationData& v, const Rational& degree,
                       const Rational& level) {
  if (!m.stored(degree)) return Subquotient(Subspace(0), Subspace(0));
  return v.gr(degree, level);
}

Flag piece_flag(const MonodromicalModule& m, const Rational& degree, int shift) {
  if (!m.stored(degree)) return Flag::trivial(0, 0);
  std::vector<int> lv = m.piece(degree).f_level;
  for (int& l : lv) l += shift;
  return Flag::from_levels(lv.size(), lv);
}

Flag repeat_flag(const Flag& f, size_t copies) {
  const size_t n = f.ambient();
  std::vector<std::pair<Flag, std::vector<size_t>>> parts;
  for (size_t c = 0; c < copies; ++c) {
    std::vector<size_t> pos(n);
    for (size_t x = 0; x < n; ++x) pos[x] = c * n + x;
    parts.push_back({f, pos});
  }
  return Flag::direct_sum(copies * n, parts);
}

RationalMatrix gr_map(const MonodromicalModule& m, OpKind kind, int i, const Rational& src, const Subquotient& a,
                      const Subquotient& b) {
  if (a.dim() == 0 || b.dim() == 0) return RationalMatrix(b.dim(), a.dim());
  return subquotient_map(m.op(kind, i, src), a, b);
}

// One of the two (r-1)-variable Koszul complexes of a Gr_{V}-piece family.
struct Part {
  FilteredComplex c;
  std::vector<std::vector<std::uint32_t>> subsets;  // per term
  std::vector<Rational> degree;                     // per term
  std::vector<Subquotient> sq;                      // per term
};

Part koszul_part(const MonodromicalModule& m, const VFiltrationData& v, KoszulMode mode, int i0,
                 const Rational& level, const Rational& first_degree) {
  const int r = m.r;
  const bool shriek = mode == KoszulMode::shriek;
  const OpKind kind = shriek ? OpKind::t : OpKind::d;
  Part part;
  part.c.lo = 0;
  for (int j = 0; j < r; ++j) {
    const Rational degree = shriek ? Rational(first_degree + j) : Rational(first_degree - j);
    part.degree.push_back(degree);
    part.subsets.push_back(subsets_without(r, i0, shriek ? r - 1 - j : j));
    part.sq.push_back(gr_or_zero(m, v, degree, level));
    const Subquotient& sq = part.sq.back();
    const size_t copies = part.subsets.back().size();
    part.c.dims.push_back(copies * sq.dim());
    const Flag f = sq.dim() ? piece_flag(m, degree, shriek ? -(r - 1) : -j).induced(sq) : Flag::trivial(0, 0);
    part.c.F.push_back(repeat_flag(f, copies));
  }
  for (int j = 0; j + 1 < r; ++j) {
    const auto& ss = part.subsets[static_cast<size_t>(j)];
    const auto& ts = part.subsets[static_cast<size_t>(j + 1)];
    const Subquotient& a = part.sq[static_cast<size_t>(j)];
    const Subquotient& b = part.sq[static_cast<size_t>(j + 1)];
    RationalMatrix d(ts.size() * b.dim(), ss.size() * a.dim());
    std::map<std::uint32_t, size_t> tpos;
    for (size_t s = 0; s < ts.size(); ++s) tpos[ts[s]] = s;
    for (int i = 1; i <= r; ++i) {
      if (i == i0 || a.dim() == 0 || b.dim() == 0) continue;
      const RationalMatrix g = gr_map(m, kind, i, part.degree[static_cast<size_t>(j)], a, b);
      for (size_t s = 0; s < ss.size(); ++s) {
        const bool applies = shriek ? has(ss[s], i) : !has(ss[s], i);
        if (!applies) continue;
        const size_t t = tpos.at(ss[s] ^ (1u << (i - 1)));
        const int sg = sign_before(ss[s], i);
        for (size_t x = 0; x < a.dim(); ++x)
          for (size_t y = 0; y < b.dim(); ++y)
            if (g(y, x) != 0) d(t * b.dim() + y, s * a.dim() + x) += sg * g(y, x);
      }
    }
    part.c.d.push_back(std::move(d));
  }
  part.c.check_shapes();
  return part;
}

// Block-diagonal map A^j -> B^j induced by t_{i0} (shriek) or ∂_{i0} (star).
std::vector<RationalMatrix> connecting_map(const MonodromicalModule& m, KoszulMode mode, int i0, const Part& a,
                                           const Part& b) {
  const OpKind kind = mode == KoszulMode::shriek ? OpKind::t : OpKind::d;
  std::vector<RationalMatrix> phi;
  for (size_t j = 0; j < a.subsets.size(); ++j) {
    const Subquotient& sa = a.sq[j];
    const Subquotient& sb = b.sq[j];
    const size_t copies = a.subsets[j].size();
    RationalMatrix p(copies * sb.dim(), copies * sa.dim());
    if (sa.dim() && sb.dim()) {
      const RationalMatrix g = gr_map(m, kind, i0, a.degree[j], sa, sb);
      for (size_t s = 0; s < copies; ++s)
        for (size_t x = 0; x < sa.dim(); ++x)
          for (size_t y = 0; y < sb.dim(); ++y) p(s * sb.dim() + y, s * sa.dim() + x) = g(y, x);
    }
    phi.push_back(std::move(p));
  }
  return phi;
}

// C^j = A^j ⊕ B^{j-1}, d = [[d_A, 0], [ε_j φ, d_B]], F parts shifted.
FilteredComplex shifted_cone(const Part& a, const Part& b, const std::vector<RationalMatrix>& phi, KoszulMode mode,
                             int r) {
  FilteredComplex c;
  c.lo = 0;
  const bool shriek = mode == KoszulMode::shriek;
  auto adim = [&](int j) { return a.c.dim(j); };
  auto bdim = [&](int j) { return b.c.dim(j); };
  for (int j = 0; j <= r; ++j) {
    const size_t na = adim(j), nb = bdim(j - 1);
    c.dims.push_back(na + nb);
    std::vector<std::pair<Flag, std::vector<size_t>>> parts;
    std::vector<size_t> pa(na), pb(nb);
    for (size_t x = 0; x < na; ++x) pa[x] = x;
    for (size_t x = 0; x < nb; ++x) pb[x] = na + x;
    if (na) parts.push_back({a.c.flag(j).shifted(shriek ? 1 : 0), pa});
    if (nb) parts.push_back({b.c.flag(j - 1).shifted(1), pb});
    c.F.push_back(Flag::direct_sum(na + nb, parts));
  }
  for (int j = 0; j < r; ++j) {
    const size_t na = adim(j), nb = bdim(j - 1), ma = adim(j + 1), mb = bdim(j);
    RationalMatrix d(ma + mb, na + nb);
    const RationalMatrix da = a.c.diff(j);
    const RationalMatrix db = b.c.diff(j - 1);
    const int eps = shriek ? ((r - 1 - j) % 2 ? -1 : 1) : (j % 2 ? -1 : 1);
    for (size_t y = 0; y < ma; ++y)
      for (size_t x = 0; x < na; ++x) d(y, x) = da(y, x);
    if (j < static_cast<int>(phi.size()))
      for (size_t y = 0; y < mb; ++y)
        for (size_t x = 0; x < na; ++x) d(ma + y, x) = eps * phi[static_cast<size_t>(j)](y, x);
    for (size_t y = 0; y < mb; ++y)
      for (size_t x = 0; x < nb; ++x) d(ma + y, na + x) = db(y, x);
    c.d.push_back(std::move(d));
  }
  c.check_shapes();
  return c;
}

}  // namespace

ConeIdentification cone_identification(const MonodromicalModule& m, const VFiltrationData& v, const Rational& k,
                                       const Rational& alpha, KoszulMode mode, std::vector<VrMismatch>& out) {
  if (!v.direction) throw PreconditionError("cone_identification: V must be along a coordinate");
  const int r = m.r;
  const int i0 = *v.direction;
  const bool shriek = mode == KoszulMode::shriek;
  ConeIdentification ci;
  auto miss = [&](int j, int p, const std::string& what) { out.push_back({"cone", k, alpha, j, p, what}); };

  FilteredComplex K;
  try {
    K = build_koszul(m, mode, alpha);
  } catch (const WindowError& e) {
    ci.window_note = e.what();
    return ci;
  }
  auto term_degree = [&](int j) { return shriek ? Rational(alpha + j) : Rational(alpha + r - j); };

  // Gr^k of the full Koszul complex, κ(S, e) = level(e) - [i0 ∉ S].
  std::vector<Subquotient> lsq;
  for (int j = 0; j <= r; ++j) {
    const size_t n = K.dims[static_cast<size_t>(j)];
    const Rational g = term_degree(j);
    const size_t pd = m.stored(g) ? m.dim(g) : 0;
    Subspace big(n), small(n);
    for (size_t s = 0; pd && s < n / pd; ++s) {
      const std::uint32_t set = K.labels[static_cast<size_t>(j)][s * pd].subset;
      const Rational level = k + (has(set, i0) ? 0 : 1);
      std::vector<size_t> pos(pd);
      for (size_t x = 0; x < pd; ++x) pos[x] = s * pd + x;
      big = big + v.at(g, level).embed(n, pos);
      small = small + v.above(g, level).embed(n, pos);
    }
    lsq.emplace_back(big, small);
  }
  FilteredComplex& L = ci.gr;
  L.lo = 0;
  for (int j = 0; j <= r; ++j) {
    const auto& sq = lsq[static_cast<size_t>(j)];
    L.dims.push_back(sq.dim());
    L.F.push_back(K.F[static_cast<size_t>(j)].induced(sq));
    std::vector<TermLabel> labels;
    for (size_t c = 0; c < sq.dim(); ++c) {
      TermLabel lab;
      size_t nonzero = 0;
      for (size_t x = 0; x < sq.ambient(); ++x) {
        if (sq.lifts()(x, c) == 0) continue;
        ++nonzero;
        const TermLabel& kl = K.labels[static_cast<size_t>(j)][x];
        if (nonzero == 1) lab = kl;
        if (kl.incomplete) lab.incomplete = true;
        if (kl.slice != lab.slice) lab.slice = Exponent{};
      }
      labels.push_back(lab);
    }
    L.labels.push_back(std::move(labels));
  }
  try {
    for (int j = 0; j < r; ++j)
      L.d.push_back(subquotient_map(K.d[static_cast<size_t>(j)], lsq[static_cast<size_t>(j)], lsq[static_cast<size_t>(j + 1)]));
  } catch (const PreconditionError& e) {
    miss(0, 0, std::string("Koszul differential does not preserve V: ") + e.what());
    return ci;
  }

  Part a, b;
  try {
    a = koszul_part(m, v, mode, i0, shriek ? k : Rational(k + 1), shriek ? alpha : Rational(alpha + r));
    b = koszul_part(m, v, mode, i0, shriek ? Rational(k + 1) : k, shriek ? Rational(alpha + 1) : Rational(alpha + r - 1));
    ci.cone = shifted_cone(a, b, connecting_map(m, mode, i0, a, b), mode, r);
  } catch (const WindowError& e) {
    ci.window_note = e.what();
    return ci;
  }
  ci.computed = true;

  // Ψ: e_S ⊗ w goes to the A or B summand of S \ {i0}, with the sign of
  // moving e_{i0} past the larger indices of S.
  for (int j = 0; j <= r; ++j) {
    const auto& sq = lsq[static_cast<size_t>(j)];
    const size_t n = K.dims[static_cast<size_t>(j)];
    const Rational g = term_degree(j);
    const size_t pd = m.stored(g) ? m.dim(g) : 0;
    const size_t na = a.c.dim(j);
    RationalMatrix psi(ci.cone.dim(j), sq.dim());
    for (size_t s = 0; pd && s < n / pd; ++s) {
      const std::uint32_t set = K.labels[static_cast<size_t>(j)][s * pd].subset;
      const std::uint32_t rest = set & ~(1u << (i0 - 1));
      const bool in_a = shriek ? has(set, i0) : !has(set, i0);
      const Part& part = in_a ? a : b;
      const int pj = in_a ? j : j - 1;
      const auto& subs = part.subsets[static_cast<size_t>(pj)];
      const Subquotient& psq = part.sq[static_cast<size_t>(pj)];
      const size_t idx = static_cast<size_t>(std::find(subs.begin(), subs.end(), rest) - subs.begin());
      const size_t offset = (in_a ? 0 : na) + idx * psq.dim();
      const int sg = has(set, i0) ? sign_after(rest, i0) : 1;
      RationalMatrix w(pd, sq.dim());
      for (size_t x = 0; x < pd; ++x)
        for (size_t c = 0; c < sq.dim(); ++c) w(x, c) = sq.lifts()(s * pd + x, c);
      const RationalMatrix co = psq.coords(w);
      for (size_t y = 0; y < co.rows(); ++y)
        for (size_t c = 0; c < co.cols(); ++c) psi(offset + y, c) = sg * co(y, c);
    }
    ci.psi.push_back(std::move(psi));
  }

  bool iso = true;
  for (int j = 0; j <= r; ++j) {
    const RationalMatrix& psi = ci.psi[static_cast<size_t>(j)];
    if (psi.rows() != psi.cols() || rank(psi) != psi.cols()) {
      miss(j, 0, "term dimensions differ: Gr " + std::to_string(psi.cols()) + " vs cone " + std::to_string(psi.rows()));
      iso = false;
      continue;
    }
    if (j < r && !(ci.psi[static_cast<size_t>(j + 1)] * L.diff(j) == ci.cone.diff(j) * psi)) {
      miss(j, 0, "differentials do not correspond");
      iso = false;
    }
    const Flag fl = L.flag(j), fc = ci.cone.flag(j);
    const int plo = std::min(fl.lo(), fc.lo()) - 1, phi = std::max(fl.hi(), fc.hi());
    for (int p = plo; p <= phi; ++p)
      if (!(fl.at(p).image_under(psi) == fc.at(p))) {
        miss(j, p, "Hodge filtrations do not correspond");
        iso = false;
        break;
      }
  }
  ci.isomorphic = iso;
  return ci;
}

namespace {

bool touches(const MonodromicalModule& m, const Subspace& big, OpKind kind, int i, const Rational& degree,
             bool outgoing) {
  const RationalMatrix b = big.basis();
  for (size_t x = 0; x < b.rows(); ++x)
    for (size_t c = 0; c < b.cols(); ++c)
      if (b(x, c) != 0 && (outgoing ? m.out_truncated(kind, i, degree, x) : m.in_truncated(kind, i, degree, x)))
        return true;
  return false;
}

// Tests a map Gr^{src_level} M'_γ -> Gr^{tgt_level} M'_{γ±1} for being a
// filtered isomorphism with F_p mapping onto F_{p + f_shift}.
VrIsoEntry test_iso(const MonodromicalModule& m, const VFiltrationData& v, OpKind kind, int i0, const Rational& beta,
                    const Rational& gamma, const Rational& src_level, const Rational& tgt_level, int f_shift,
                    std::string& detail) {
  VrIsoEntry e;
  e.kind = kind;
  e.beta = beta;
  e.gamma = gamma;
  e.claimed = kind == OpKind::t ? beta > 0 : beta < 0;
  const Rational tgt = MonodromicalModule::target(kind, gamma);
  const Subquotient a = v.gr(gamma, src_level);
  const Subquotient b = v.gr(tgt, tgt_level);
  e.boundary = touches(m, a.big(), kind, i0, gamma, true) || touches(m, b.big(), kind, i0, tgt, false);
  if (a.dim() != b.dim()) {
    detail = "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim());
    return e;
  }
  RationalMatrix g;
  try {
    g = gr_map(m, kind, i0, gamma, a, b);
  } catch (const PreconditionError& x) {
    detail = x.what();
    return e;
  }
  if (rank(g) != a.dim()) {
    detail = "not injective";
    return e;
  }
  const Flag fa = piece_flag(m, gamma, 0).induced(a);
  const Flag fb = piece_flag(m, tgt, 0).induced(b);
  const int lo = std::min(fa.lo(), fb.lo() - f_shift) - 1, hi = std::max(fa.hi(), fb.hi() - f_shift);
  for (int p = lo; p <= hi; ++p)
    if (!(fa.at(p).image_under(g) == fb.at(p + f_shift))) {
      detail = "F_" + std::to_string(p) + " not mapped onto F_" + std::to_string(p + f_shift);
      return e;
    }
  e.holds = true;
  return e;
}

}  // namespace

namespace {

std::vector<VrIsoEntry> vr_isomorphisms(const MonodromicalModule& m, const VFiltrationData& v,
                                        std::vector<VrMismatch>& out) {
  const int i0 = *v.direction;
  std::set<Rational> betas;
  for (const auto& j : v.jumps) {
    betas.insert(j);
    betas.insert(j - 1);
  }
  std::vector<VrIsoEntry> entries;
  for (const auto& beta : betas)
    for (const auto& [gamma, piece] : m.pieces) {
      std::string detail;
      // t_{i0}: Gr^β M'_γ -> Gr^{β+1} M'_{γ+1}
      if (m.stored(gamma + 1) && m.op_available(OpKind::t, i0, gamma) &&
          (v.gr(gamma, beta).dim() || v.gr(gamma + 1, beta + 1).dim())) {
        auto e = test_iso(m, v, OpKind::t, i0, beta, gamma, beta, beta + 1, 0, detail);
        if (e.claimed && !e.boundary && !e.holds)
          out.push_back({"iso", beta, gamma, 0, 0, "t_" + std::to_string(i0) + ": " + detail});
        entries.push_back(e);
      }
      detail.clear();
      // ∂_{i0}: Gr^{β+1} M'_γ -> Gr^β M'_{γ-1}, F_p onto F_{p+1}
      if (m.stored(gamma - 1) && m.op_available(OpKind::d, i0, gamma) &&
          (v.gr(gamma, beta + 1).dim() || v.gr(gamma - 1, beta).dim())) {
        auto e = test_iso(m, v, OpKind::d, i0, beta, gamma, beta + 1, beta, 1, detail);
        if (e.claimed && !e.boundary && !e.holds)
          out.push_back({"iso", beta, gamma, 0, 0, "d_" + std::to_string(i0) + ": " + detail});
        entries.push_back(e);
      }
    }
  return entries;
}

// Whether every t_i (i != i0) is nilpotent on Gr^0 within the window.
bool gr0_supported(const MonodromicalModule& m, const VFiltrationData& v) {
  const int i0 = *v.direction;
  for (int i = 1; i <= m.r; ++i) {
    if (i == i0) continue;
    for (const auto& [gamma, piece] : m.pieces) {
      Subquotient cur = v.gr(gamma, 0);
      if (cur.dim() == 0) continue;
      RationalMatrix acc = RationalMatrix::identity(cur.dim());
      Rational g = gamma;
      bool vanished = false;
      while (true) {
        const Rational next = g + 1;
        if (!m.in_window(next) || touches(m, cur.big(), OpKind::t, i, g, true)) break;
        if (!m.stored(next) || !m.op_available(OpKind::t, i, g)) {
          vanished = m.stored(next) ? false : true;
          break;
        }
        const Subquotient nsq = v.gr(next, 0);
        acc = gr_map(m, OpKind::t, i, g, cur, nsq) * acc;
        cur = nsq;
        g = next;
        if (acc.is_zero()) {
          vanished = true;
          break;
        }
      }
      if (!vanished) return false;
    }
  }
  return true;
}

}  // namespace

GrVrReport gr_vr_decompose(const MonodromicalModule& m, const VFiltrationData& v, const Rational& k,
                           const Rational& alpha, KoszulMode mode) {
  if (!v.direction) throw PreconditionError("gr_vr_decompose: V must be along a coordinate");
  const VAxiomReport ax = v_axioms_check(m, v);
  if (!ax.ok()) throw PreconditionError("gr_vr_decompose: " + ax.summary());
  GrVrReport rep;
  rep.mode = mode;
  rep.k = k;
  rep.alpha = alpha;

  const ConeIdentification ci = cone_identification(m, v, k, alpha, mode, rep.mismatches);
  rep.cone_computed = ci.computed;
  rep.cone_isomorphic = ci.isomorphic;
  if (!ci.window_note.empty()) rep.notes.push_back("cone at " + where(k, alpha) + " not computed: " + ci.window_note);

  rep.isomorphisms = vr_isomorphisms(m, v, rep.mismatches);

  if (k != 0 && alpha == 0 && ci.computed) {
    rep.acyclicity_judged = true;
    for (const auto& s : koszul_slices(ci.gr)) {
      if (s.complex.dims.empty()) continue;
      const auto [plo, phi] = s.complex.f_range();
      bool nonzero = false;
      for (int p = plo; p <= phi; ++p)
        for (const auto& [j, dim] : gr_cohomology(s.complex, p).dims) {
          if (dim == 0) continue;
          nonzero = true;
          if (!s.incomplete)
            rep.mismatches.push_back({"acyclic", k, alpha, j, p, "H^j Gr^F_p of dimension " + std::to_string(dim)});
        }
      if (s.incomplete) {
        if (nonzero) ++rep.incomplete_nonzero;
      } else {
        ++rep.complete_slices;
      }
    }
  } else if (k != 0 && alpha == 0) {
    rep.notes.push_back("acyclicity at " + where(k, alpha) + " not judged: Koszul complex leaves the window");
  }

  rep.gr0_supported_on_z = gr0_supported(m, v);
  if (!rep.gr0_supported_on_z)
    rep.notes.push_back("Gr^0 is not seen to be supported on Z within the window");
  return rep;
}

}  // namespace mhm
