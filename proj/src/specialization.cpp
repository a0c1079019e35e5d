#include <algorithm>

#include "mhm/vfiltration.hpp"

namespace mhm {

namespace {

long floor_long(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

std::vector<size_t> support(const RationalMatrix& a, size_t col) {
  std::vector<size_t> s;
  for (size_t i = 0; i < a.rows(); ++i)
    if (a(i, col) != 0) s.push_back(i);
  return s;
}

struct Graded {
  Subquotient sq;
  RationalMatrix adapted;  // sq coordinates, columns = output basis
  RationalMatrix lifts;    // piece coordinates of the output basis
};

}  // namespace

SpecializationResult rees_specialize(const MonodromicalModule& m, const VFiltrationData& v) {
  if (v.direction) throw PreconditionError("rees_specialize: the V-filtration must be along the origin");
  const VAxiomReport ax = v_axioms_check(m, v);
  if (!ax.ok()) throw PreconditionError("rees_specialize: " + ax.summary());

  SpecializationResult res;
  MonodromicalModule& out = res.output;
  out.r = m.r;
  out.name = "Sp(" + m.name + ")";
  out.has_w = m.has_w;
  out.multigraded = m.multigraded;
  out.integral_degrees = m.integral_degrees;
  out.pure_weight = m.pure_weight;
  out.support_lo = m.support_lo;
  out.support_hi = m.support_hi;

  std::map<Rational, Graded> graded;
  for (const auto& [alpha, piece] : m.pieces) {
    for (const auto& [beta, other] : m.pieces)
      if (beta != alpha && v.gr(beta, alpha).dim() != 0)
        throw PreconditionError("rees_specialize: Gr_V^" + format_rational(alpha) + " meets degree " +
                                format_rational(beta));
    Graded g{v.gr(alpha, alpha), {}, {}};
    const size_t n = g.sq.dim();
    Piece q;
    q.degree = alpha;
    q.dim = n;
    if (n > 0) {
      const Flag fi = Flag::from_levels(piece.dim, piece.f_level).induced(g.sq);
      const Flag wi = m.has_w ? Flag::from_levels(piece.dim, piece.w_level).induced(g.sq) : Flag::trivial(n, 0);
      const AdaptedBasis ab = adapted_basis(fi, wi);
      g.adapted = ab.basis;
      g.lifts = g.sq.lifts() * ab.basis;
      q.f_level = ab.level_a;
      if (m.has_w) q.w_level = ab.level_b;
    } else {
      g.adapted = RationalMatrix(0, 0);
      g.lifts = RationalMatrix(piece.dim, 0);
    }
    for (int k = 0; k < 2; ++k) {
      const auto kind = static_cast<OpKind>(k);
      q.out_truncated[k].assign(static_cast<size_t>(m.r), std::vector<bool>(n, false));
      q.in_truncated[k].assign(static_cast<size_t>(m.r), std::vector<bool>(n, false));
      for (int i = 1; i <= m.r; ++i)
        for (size_t c = 0; c < n; ++c)
          for (size_t s : support(g.lifts, c)) {
            if (m.out_truncated(kind, i, alpha, s)) q.out_truncated[k][static_cast<size_t>(i - 1)][c] = true;
            if (m.in_truncated(kind, i, alpha, s)) q.in_truncated[k][static_cast<size_t>(i - 1)][c] = true;
          }
    }
    for (size_t c = 0; c < n && out.multigraded; ++c) {
      const auto s = support(g.lifts, c);
      const Exponent& e = piece.multidegree[s.front()];
      for (size_t x : s)
        if (piece.multidegree[x] != e) out.multigraded = false;
      q.multidegree.push_back(e);
    }
    out.pieces[alpha] = std::move(q);
    graded.emplace(alpha, std::move(g));
  }
  if (!out.multigraded)
    for (auto& [a, q] : out.pieces) q.multidegree.clear();

  for (const auto& [key, mat] : m.ops) {
    const Rational tgt = MonodromicalModule::target(key.kind, key.source);
    const auto gs = graded.find(key.source);
    const auto gt = graded.find(tgt);
    if (gs == graded.end() || gt == graded.end()) continue;
    if (gs->second.sq.dim() == 0 || gt->second.sq.dim() == 0) continue;
    const RationalMatrix induced = subquotient_map(mat, gs->second.sq, gt->second.sq);
    out.set_op(key.kind, key.i, key.source, inverse(gt->second.adapted) * induced * gs->second.adapted);
  }

  const ValidationReport rep = validate(out);
  for (const auto& x : rep.violations) res.failures.push_back("output validation [" + x.invariant + "] " + x.location);

  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& [a, p] : m.pieces)
    for (int l : p.f_level) {
      lo = any ? std::min(lo, l) : l;
      hi = any ? std::max(hi, l) : l;
      any = true;
    }
  for (const auto& [beta, q] : out.pieces) {
    const Piece& src = m.piece(beta);
    const Subspace top = v.at(beta, beta);
    const Subspace small = v.above(beta, beta);
    const long i = floor_long(Rational(m.r - beta));
    for (int p = lo - 1; p <= hi && any; ++p) {
      std::vector<size_t> fp;
      for (size_t c = 0; c < src.dim; ++c)
        if (src.f_level[c] <= p) fp.push_back(c);
      SpecializationRow row;
      row.beta = beta;
      row.i = i;
      row.alpha = beta + i;
      row.p = p;
      row.dim_output = static_cast<size_t>(std::count_if(q.f_level.begin(), q.f_level.end(), [p](int l) { return l <= p; }));
      row.dim_gr = (intersect(Subspace::coordinate(src.dim, fp), top) + small).dim() - small.dim();
      if (row.dim_output != row.dim_gr)
        res.failures.push_back("dimension table mismatch at degree=" + format_rational(beta) + " p=" + std::to_string(p));
      res.table.push_back(row);
    }
  }
  return res;
}

}  // namespace mhm
