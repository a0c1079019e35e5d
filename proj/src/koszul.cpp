#include "mhm/koszul.hpp"

#include <bit>
#include <map>

namespace mhm {

namespace {

std::vector<std::uint32_t> subsets_of_size(int r, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << r); ++s)
    if (std::popcount(s) == k) out.push_back(s);
  return out;
}

bool has(std::uint32_t s, int i) { return (s >> (i - 1)) & 1u; }

// (-1)^{#{i' in s : i' < i}}
int sign_before(std::uint32_t s, int i) { return std::popcount(s & ((1u << (i - 1)) - 1u)) % 2 ? -1 : 1; }

struct TermSpec {
  Rational degree;
  std::vector<std::uint32_t> subsets;
  size_t piece_dim = 0;
  int f_shift = 0;  // term F level = module level + f_shift
};

FilteredComplex assemble(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha, bool check = true) {
  const int r = m.r;
  if (r > 20) throw InputError("Koszul complex: r too large");
  std::vector<TermSpec> spec;
  for (int j = 0; j <= r; ++j) {
    TermSpec t;
    if (mode == KoszulMode::shriek) {
      t.degree = alpha + j;
      t.subsets = subsets_of_size(r, r - j);
      t.f_shift = -r;
    } else {
      t.degree = alpha + r - j;
      t.subsets = subsets_of_size(r, j);
      t.f_shift = -j;
    }
    t.piece_dim = m.dim(t.degree);  // WindowError outside the window
    spec.push_back(std::move(t));
  }

  FilteredComplex c;
  c.lo = 0;
  const bool w = m.has_w;
  for (int j = 0; j <= r; ++j) {
    const auto& t = spec[static_cast<size_t>(j)];
    const size_t n = t.subsets.size() * t.piece_dim;
    c.dims.push_back(n);
    std::vector<int> fl(n), wl(w ? n : 0);
    std::vector<TermLabel> labels(n);
    const Piece* piece = t.piece_dim ? &m.piece(t.degree) : nullptr;
    for (size_t s = 0; s < t.subsets.size(); ++s)
      for (size_t v = 0; v < t.piece_dim; ++v) {
        const size_t idx = s * t.piece_dim + v;
        fl[idx] = piece->f_level[v] + t.f_shift;
        if (w) wl[idx] = piece->w_level[v];
        auto& lab = labels[idx];
        lab.subset = t.subsets[s];
        lab.vector = v;
        if (m.multigraded) {
          lab.slice = piece->multidegree[v];
          for (int i = 1; i <= r; ++i)
            if (has(lab.subset, i)) ++lab.slice[static_cast<size_t>(i - 1)];
        }
        // Outgoing operators and operators whose preimages feed this element.
        const OpKind op = mode == KoszulMode::shriek ? OpKind::t : OpKind::d;
        for (int i = 1; i <= r; ++i) {
          const bool in_set = has(lab.subset, i);
          const bool outgoing = mode == KoszulMode::shriek ? in_set : !in_set;
          if (outgoing && j < r && m.out_truncated(op, i, t.degree, v)) lab.incomplete = true;
          if (!outgoing && j > 0 && m.in_truncated(op, i, t.degree, v)) lab.incomplete = true;
        }
      }
    c.F.push_back(Flag::from_levels(n, fl));
    if (w) c.W.push_back(Flag::from_levels(n, wl));
    c.labels.push_back(std::move(labels));
  }

  for (int j = 0; j < r; ++j) {
    const auto& src = spec[static_cast<size_t>(j)];
    const auto& tgt = spec[static_cast<size_t>(j + 1)];
    RationalMatrix d(c.dims[static_cast<size_t>(j + 1)], c.dims[static_cast<size_t>(j)]);
    std::map<std::uint32_t, size_t> tpos;
    for (size_t s = 0; s < tgt.subsets.size(); ++s) tpos[tgt.subsets[s]] = s;
    for (int i = 1; i <= r; ++i) {
      const OpKind kind = mode == KoszulMode::shriek ? OpKind::t : OpKind::d;
      const RationalMatrix op = m.op(kind, i, src.degree);
      if (op.empty()) continue;
      for (size_t s = 0; s < src.subsets.size(); ++s) {
        const std::uint32_t set = src.subsets[s];
        const bool applies = mode == KoszulMode::shriek ? has(set, i) : !has(set, i);
        if (!applies) continue;
        const std::uint32_t out = set ^ (1u << (i - 1));
        const int sg = sign_before(set, i);
        const size_t ts = tpos.at(out);
        for (size_t v = 0; v < src.piece_dim; ++v)
          for (size_t u = 0; u < tgt.piece_dim; ++u)
            if (op(u, v) != 0) d(ts * tgt.piece_dim + u, s * src.piece_dim + v) += sg * op(u, v);
      }
    }
    c.d.push_back(std::move(d));
  }
  c.check_shapes();
  if (check && !c.d_squared_zero()) throw PreconditionError("Koszul complex: d∘d != 0 (module relations fail)");
  return c;
}

}  // namespace

FilteredComplex build_koszul_shriek(const MonodromicalModule& m, const Rational& alpha) {
  return assemble(m, KoszulMode::shriek, alpha);
}

FilteredComplex build_koszul_star(const MonodromicalModule& m, const Rational& alpha) {
  return assemble(m, KoszulMode::star, alpha);
}

FilteredComplex build_koszul(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha,
                             bool require_d_squared_zero) {
  return assemble(m, mode, alpha, require_d_squared_zero);
}

std::vector<KoszulSlice> koszul_slices(const FilteredComplex& c) {
  std::map<Exponent, KoszulSlice> by_key;
  const size_t terms = c.dims.size();
  for (size_t k = 0; k < terms; ++k)
    for (size_t idx = 0; idx < c.dims[k]; ++idx) {
      const TermLabel* lab = c.labels.empty() ? nullptr : &c.labels[k][idx];
      const Exponent key = lab ? lab->slice : Exponent{};
      auto& s = by_key[key];
      if (s.coords.empty()) {
        s.key = key;
        s.coords.resize(terms);
      }
      s.coords[k].push_back(idx);
      if (lab && lab->incomplete) s.incomplete = true;
    }
  std::vector<KoszulSlice> out;
  for (auto& [key, s] : by_key) {
    s.complex = c.restrict_to(s.coords);
    out.push_back(std::move(s));
  }
  return out;
}

AcyclicityReport check_acyclicity_eq7(const MonodromicalModule& m, const std::vector<Rational>& alphas,
                               std::optional<std::pair<int, int>> p_range) {
  AcyclicityReport rep;
  for (const auto& a : alphas) {
    if (a == 0) {
      rep.skipped.push_back(a);
      continue;
    }
    const KoszulMode mode = a > 0 ? KoszulMode::shriek : KoszulMode::star;
    FilteredComplex c;
    try {
      c = build_koszul(m, mode, a);
    } catch (const WindowError& e) {
      rep.boundary_incomplete.push_back(std::string(mode_name(mode)) + " alpha=" + format_rational(a) + ": " + e.what());
      continue;
    }
    size_t incomplete_nonzero = 0;
    for (const auto& s : koszul_slices(c)) {
      auto [plo, phi] = s.complex.f_range();
      if (p_range) {
        plo = std::max(plo, p_range->first);
        phi = std::min(phi, p_range->second);
      }
      bool nonzero = false;
      for (int p = plo; p <= phi; ++p) {
        const auto g = gr_cohomology(s.complex, p);
        for (const auto& [j, dim] : g.dims) {
          if (dim == 0) continue;
          nonzero = true;
          if (!s.incomplete) rep.violations.push_back({mode, a, p, j, dim, s.key});
        }
      }
      if (s.incomplete && nonzero) ++incomplete_nonzero;
      if (!s.incomplete) ++rep.complete_slices;
    }
    if (incomplete_nonzero)
      rep.boundary_incomplete.push_back(std::string(mode_name(mode)) + " alpha=" + format_rational(a) + ": " +
                                        std::to_string(incomplete_nonzero) +
                                        " truncated slice(s) with nonzero graded cohomology");
  }
  return rep;
}

}  // namespace mhm
