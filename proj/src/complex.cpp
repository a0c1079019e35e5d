#include "mhm/complex.hpp"

#include <algorithm>

namespace mhm {

RationalMatrix FilteredComplex::diff(int j) const {
  if (j >= lo && j < hi()) return d[static_cast<size_t>(j - lo)];
  return RationalMatrix(dim(j + 1), dim(j));
}

Flag FilteredComplex::flag(int j) const {
  if (in_range(j)) return F[static_cast<size_t>(j - lo)];
  return Flag::trivial(0, 0);
}

Flag FilteredComplex::wflag(int j) const {
  if (in_range(j) && has_w()) return W[static_cast<size_t>(j - lo)];
  return Flag::trivial(dim(j), 0);
}

std::pair<int, int> FilteredComplex::f_range() const {
  bool any = false;
  int a = 0, b = 0;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] == 0) continue;
    a = any ? std::min(a, F[k].lo()) : F[k].lo();
    b = any ? std::max(b, F[k].hi()) : F[k].hi();
    any = true;
  }
  return {a, b};
}

void FilteredComplex::check_shapes() const {
  if (F.size() != dims.size()) throw PreconditionError("FilteredComplex: one F flag per term required");
  if (has_w() && W.size() != dims.size()) throw PreconditionError("FilteredComplex: one W flag per term required");
  if (!dims.empty() && d.size() + 1 != dims.size()) throw PreconditionError("FilteredComplex: differential count");
  for (size_t k = 0; k < dims.size(); ++k) {
    if (F[k].ambient() != dims[k]) throw PreconditionError("FilteredComplex: F flag ambient mismatch");
    if (has_w() && W[k].ambient() != dims[k]) throw PreconditionError("FilteredComplex: W flag ambient mismatch");
  }
  for (size_t k = 0; k < d.size(); ++k)
    if (d[k].rows() != dims[k + 1] || d[k].cols() != dims[k])
      throw PreconditionError("FilteredComplex: differential shape mismatch at degree " + std::to_string(lo + k));
}

bool FilteredComplex::d_squared_zero() const {
  for (int j = lo; j + 1 < hi(); ++j)
    if (!(diff(j + 1) * diff(j)).is_zero()) return false;
  return true;
}

bool FilteredComplex::is_filtered() const {
  for (int j = lo; j < hi(); ++j) {
    const auto dj = diff(j);
    const Flag src = flag(j), tgt = flag(j + 1);
    for (int p = src.lo(); p <= src.hi(); ++p)
      if (!tgt.at(p).contains(src.at(p).image_under(dj))) return false;
    if (has_w()) {
      const Flag ws = wflag(j), wt = wflag(j + 1);
      for (int p = ws.lo(); p <= ws.hi(); ++p)
        if (!wt.at(p).contains(ws.at(p).image_under(dj))) return false;
    }
  }
  return true;
}

FilteredComplex FilteredComplex::restrict_to(const std::vector<std::vector<size_t>>& coords) const {
  if (coords.size() != dims.size()) throw PreconditionError("restrict_to: one index list per term required");
  FilteredComplex out;
  out.lo = lo;
  for (size_t k = 0; k < dims.size(); ++k) {
    out.dims.push_back(coords[k].size());
    out.F.push_back(F[k].restrict_to(coords[k]));
    if (has_w()) out.W.push_back(W[k].restrict_to(coords[k]));
    if (!labels.empty()) {
      std::vector<TermLabel> l;
      for (auto c : coords[k]) l.push_back(labels[k][c]);
      out.labels.push_back(std::move(l));
    }
  }
  for (size_t k = 0; k + 1 < dims.size(); ++k) {
    // Entries leaving the subset must vanish.
    std::vector<bool> in_tgt(dims[k + 1], false);
    for (auto c : coords[k + 1]) in_tgt[c] = true;
    for (auto c : coords[k])
      for (size_t i = 0; i < dims[k + 1]; ++i)
        if (!in_tgt[i] && d[k](i, c) != 0)
          throw PreconditionError("restrict_to: coordinate subsets are not a subcomplex");
    out.d.push_back(d[k].select_rows(coords[k + 1]).select_cols(coords[k]));
  }
  return out;
}

std::map<int, size_t> induced_gr_dims(const Subspace& cycles, const Subspace& boundaries, const Flag& flag) {
  std::map<int, size_t> out;
  size_t prev = 0;
  const size_t total = cycles.dim() - boundaries.dim();
  if (total == 0) return out;
  for (int p = flag.lo(); p <= flag.hi(); ++p) {
    const size_t cur = (intersect(cycles, flag.at(p)) + boundaries).dim() - boundaries.dim();
    if (cur > prev) out[p] = cur - prev;
    prev = cur;
  }
  return out;
}

std::vector<CohomologyDegree> cohomology(const FilteredComplex& c) {
  c.check_shapes();
  std::vector<CohomologyDegree> out;
  for (int j = c.lo; j <= c.hi(); ++j) {
    CohomologyDegree h;
    h.j = j;
    h.cycles = rank_kernel_image(c.diff(j)).kernel;
    h.boundaries = Subspace::span(c.dim(j), c.diff(j - 1));
    h.dim = h.cycles.dim() - h.boundaries.dim();
    h.gr_f = induced_gr_dims(h.cycles, h.boundaries, c.flag(j));
    if (c.has_w()) h.gr_w = induced_gr_dims(h.cycles, h.boundaries, c.wflag(j));
    out.push_back(std::move(h));
  }
  return out;
}

GrCohomology gr_cohomology(const FilteredComplex& c, int p) {
  c.check_shapes();
  const auto [a, b] = c.f_range();
  if (p < a || p > b)
    throw PreconditionError("gr_cohomology: p=" + std::to_string(p) + " outside the F range [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
  GrCohomology out;
  out.p = p;
  std::vector<Subquotient> gr;
  for (int j = c.lo; j <= c.hi(); ++j) gr.emplace_back(c.flag(j).at(p), c.flag(j).at(p - 1));
  std::vector<RationalMatrix> gd;
  for (int j = c.lo; j < c.hi(); ++j)
    gd.push_back(subquotient_map(c.diff(j), gr[static_cast<size_t>(j - c.lo)], gr[static_cast<size_t>(j - c.lo + 1)]));
  for (int j = c.lo; j <= c.hi(); ++j) {
    const size_t k = static_cast<size_t>(j - c.lo);
    const size_t n = gr[k].dim();
    const RationalMatrix out_d = j < c.hi() ? gd[k] : RationalMatrix(0, n);
    const RationalMatrix in_d = j > c.lo ? gd[k - 1] : RationalMatrix(n, 0);
    const Subspace z = rank_kernel_image(out_d).kernel;
    const Subspace bnd = Subspace::span(n, in_d);
    const Subquotient h(z, bnd);
    out.dims[j] = h.dim();
    out.bases[j] = h.lifts();
  }
  return out;
}

StrictnessResult is_strict(const FilteredComplex& c) {
  c.check_shapes();
  StrictnessResult res;
  for (int j = c.lo; j < c.hi(); ++j) {
    const auto dj = c.diff(j);
    const Subspace im = Subspace::span(c.dim(j + 1), dj);
    const Flag src = c.flag(j), tgt = c.flag(j + 1);
    const int a = std::min(src.lo(), tgt.lo()), b = std::max(src.hi(), tgt.hi());
    for (int p = a; p <= b; ++p) {
      const Subspace lhs = src.at(p).image_under(dj);
      const Subspace rhs = intersect(im, tgt.at(p));
      if (lhs == rhs) continue;
      res.strict = false;
      const RationalMatrix rb = rhs.basis();
      for (size_t col = 0; col < rb.cols(); ++col) {
        auto v = rb.column(col);
        if (!lhs.contains(v)) {
          res.witness = StrictnessWitness{j, p, std::move(v)};
          return res;
        }
      }
      return res;  // lhs not inside rhs: the complex is not even filtered
    }
  }
  return res;
}

FilteredComplex mapping_cone(const FilteredComplex& a, const FilteredComplex& b, const std::vector<RationalMatrix>& phi) {
  a.check_shapes();
  b.check_shapes();
  auto phi_at = [&](int j) {
    const int k = j - a.lo;
    if (k >= 0 && k < static_cast<int>(phi.size())) {
      const auto& m = phi[static_cast<size_t>(k)];
      if (m.rows() != b.dim(j) || m.cols() != a.dim(j)) throw PreconditionError("mapping_cone: phi shape mismatch");
      return m;
    }
    return RationalMatrix(b.dim(j), a.dim(j));
  };
  for (int j = std::min(a.lo, b.lo); j <= std::max(a.hi(), b.hi()); ++j)
    if (!(b.diff(j) * phi_at(j) == phi_at(j + 1) * a.diff(j)))
      throw PreconditionError("mapping_cone: phi is not a chain map at degree " + std::to_string(j));
  const bool w = a.has_w() && b.has_w();
  FilteredComplex c;
  c.lo = std::min(a.lo - 1, b.lo);
  const int hi = std::max(a.hi() - 1, b.hi());
  for (int n = c.lo; n <= hi; ++n) {
    const size_t na = a.dim(n + 1), nb = b.dim(n);
    c.dims.push_back(na + nb);
    std::vector<size_t> pa(na), pb(nb);
    for (size_t i = 0; i < na; ++i) pa[i] = i;
    for (size_t i = 0; i < nb; ++i) pb[i] = na + i;
    c.F.push_back(Flag::direct_sum(na + nb, {{a.flag(n + 1), pa}, {b.flag(n), pb}}));
    if (w) c.W.push_back(Flag::direct_sum(na + nb, {{a.wflag(n + 1), pa}, {b.wflag(n), pb}}));
  }
  for (int n = c.lo; n < hi; ++n) {
    const size_t na = a.dim(n + 1), nb = b.dim(n), ma = a.dim(n + 2), mb = b.dim(n + 1);
    RationalMatrix m(ma + mb, na + nb);
    const auto da = a.diff(n + 1), db = b.diff(n), ph = phi_at(n + 1);
    for (size_t i = 0; i < ma; ++i)
      for (size_t k = 0; k < na; ++k) m(i, k) = -da(i, k);
    for (size_t i = 0; i < mb; ++i) {
      for (size_t k = 0; k < na; ++k) m(ma + i, k) = ph(i, k);
      for (size_t k = 0; k < nb; ++k) m(ma + i, na + k) = db(i, k);
    }
    c.d.push_back(std::move(m));
  }
  return c;
}

FilteredComplex plain_complex(int lo, const std::vector<RationalMatrix>& d, int level) {
  FilteredComplex c;
  c.lo = lo;
  if (d.empty()) throw PreconditionError("plain_complex: need at least one differential");
  c.dims.push_back(d.front().cols());
  for (const auto& m : d) c.dims.push_back(m.rows());
  for (auto n : c.dims) c.F.push_back(Flag::trivial(n, level));
  c.d = d;
  c.check_shapes();
  return c;
}

}  // namespace mhm
