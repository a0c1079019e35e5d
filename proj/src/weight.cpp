#include "mhm/weight.hpp"

#include <algorithm>

namespace mhm {

namespace {

std::vector<RationalMatrix> powers(const RationalMatrix& n, int upto) {
  std::vector<RationalMatrix> p{RationalMatrix::identity(n.rows())};
  for (int i = 1; i <= upto; ++i) p.push_back(p.back() * n);
  return p;
}

int checked_order(const RationalMatrix& n) {
  if (n.rows() != n.cols()) throw PreconditionError("weight: N must be square");
  const int nu = nilpotency_order(n);
  if (nu < 0) throw PreconditionError("weight: N is not nilpotent");
  return nu;
}

RationalMatrix column_of(std::span<const Rational> v) {
  RationalMatrix c(v.size(), 1);
  c.set_column(0, v);
  return c;
}

}  // namespace

Flag monodromy_filtration(const RationalMatrix& n, int center) {
  const int nu = checked_order(n);
  const size_t dim = n.rows();
  if (nu <= 1) return Flag::trivial(dim, center);
  const auto p = powers(n, 2 * nu);
  std::vector<Subspace> ker, im;
  for (const auto& m : p) {
    ker.push_back(rank_kernel_image(m).kernel);
    im.push_back(Subspace::span(dim, m));
  }
  std::vector<Subspace> steps;
  for (int k = -(nu - 1); k <= nu - 1; ++k) {
    Subspace s(dim);
    for (int j = std::max(0, -k); j <= nu; ++j) s = s + intersect(ker[static_cast<size_t>(k + j + 1)], im[static_cast<size_t>(j)]);
    steps.push_back(std::move(s));
  }
  return Flag(dim, center - (nu - 1), std::move(steps));
}

bool satisfies_monodromy_conditions(const RationalMatrix& n, const Flag& w, int center) {
  if (n.rows() != w.ambient() || n.cols() != w.ambient()) return false;
  for (int p = w.lo() - 1; p <= w.hi() + 2; ++p)
    if (!w.at(p - 2).contains(w.at(p).image_under(n))) return false;
  const int reach = std::max(std::abs(w.lo() - center), std::abs(w.hi() - center)) + 1;
  RationalMatrix nk = RationalMatrix::identity(n.rows());
  for (int k = 1; k <= reach; ++k) {
    nk = nk * n;
    const Subquotient up(w.at(center + k), w.at(center + k - 1));
    const Subquotient dn(w.at(center - k), w.at(center - k - 1));
    if (up.dim() != dn.dim()) return false;
    if (up.dim() == 0) continue;
    if (rank(subquotient_map(nk, up, dn)) != up.dim()) return false;
  }
  return true;
}

RelativeMonodromy relative_monodromy_filtration(const RationalMatrix& n, const Flag& w) {
  checked_order(n);
  const size_t dim = n.rows();
  if (w.ambient() != dim) throw PreconditionError("relative_monodromy_filtration: ambient mismatch");
  for (int p = w.lo(); p <= w.hi(); ++p)
    if (!w.at(p).contains(w.at(p).image_under(n)))
      throw PreconditionError("relative_monodromy_filtration: N does not preserve W_" + std::to_string(p));

  RelativeMonodromy out;
  std::vector<std::vector<Rational>> gens;
  std::vector<int> weights;
  auto span_upto = [&](size_t count, int level) {
    RationalMatrix m(dim, 0);
    for (size_t g = 0; g < count; ++g)
      if (weights[g] <= level) m = RationalMatrix::hstack(m, column_of(gens[g]));
    return Subspace::span(dim, m);
  };

  const auto np = powers(n, static_cast<int>(dim) + 1);
  for (int k = w.lo(); k <= w.hi(); ++k) {
    const Subspace wk = w.at(k), u = w.at(k - 1);
    if (wk.dim() == u.dim()) continue;
    const size_t before = gens.size();
    const Subquotient sq(wk, u);
    const RationalMatrix nb = subquotient_map(n, sq, sq);
    const int nu = nilpotency_order(nb);
    const auto bp = powers(nb, nu + 1);
    const RationalMatrix ub = u.basis();
    for (int m = nu; m >= 1; --m) {
      Subspace base = rank_kernel_image(bp[static_cast<size_t>(m - 1)]).kernel +
                      rank_kernel_image(bp[static_cast<size_t>(m + 1)]).kernel.image_under(nb);
      const RationalMatrix km = rank_kernel_image(bp[static_cast<size_t>(m)]).kernel.basis();
      for (size_t c = 0; c < km.cols(); ++c) {
        const auto t = km.column(c);
        if (base.contains(t)) continue;
        base = base + Subspace::span(column_of(t));
        const auto v = (sq.lifts() * column_of(t)).column(0);
        const RationalMatrix& nm = np[static_cast<size_t>(m)];
        const Subspace allowed = span_upto(before, k - m - 1);
        const RationalMatrix a = RationalMatrix::hstack(nm * ub, allowed.basis() * Rational(-1));
        std::vector<Rational> rhs = (nm * column_of(v) * Rational(-1)).column(0);
        const auto x = solve_particular(a, rhs);
        if (!x) {
          out.certificate = RelativeNonexistence{k, m, v};
          return out;
        }
        RationalMatrix vt = column_of(v);
        for (size_t i = 0; i < ub.cols(); ++i)
          for (size_t r = 0; r < dim; ++r) vt(r, 0) += ub(r, i) * (*x)[i];
        for (int s = 0; s < m; ++s) {
          gens.push_back((np[static_cast<size_t>(s)] * vt).column(0));
          weights.push_back(k + m - 1 - 2 * s);
        }
      }
    }
  }
  if (gens.size() != dim) throw std::logic_error("relative_monodromy_filtration: chain bases are incomplete");
  if (dim == 0) {
    out.flag = Flag::trivial(0, w.lo());
    return out;
  }
  const int lo = *std::min_element(weights.begin(), weights.end());
  const int hi = *std::max_element(weights.begin(), weights.end());
  std::vector<Subspace> steps;
  for (int i = lo; i <= hi; ++i) steps.push_back(span_upto(gens.size(), i));
  out.flag = Flag(dim, lo, std::move(steps));
  if (!satisfies_relative_conditions(n, w, *out.flag))
    throw std::logic_error("relative_monodromy_filtration: constructed flag fails its defining conditions");
  return out;
}

bool satisfies_relative_conditions(const RationalMatrix& n, const Flag& w, const Flag& l) {
  if (l.ambient() != n.rows() || w.ambient() != n.rows()) return false;
  for (int p = l.lo() - 1; p <= l.hi() + 2; ++p)
    if (!l.at(p - 2).contains(l.at(p).image_under(n))) return false;
  for (int k = w.lo(); k <= w.hi(); ++k) {
    const Subquotient sq(w.at(k), w.at(k - 1));
    if (sq.dim() == 0) continue;
    const RationalMatrix nb = subquotient_map(n, sq, sq);
    if (!satisfies_monodromy_conditions(nb, l.induced(sq), k)) return false;
  }
  return true;
}

}  // namespace mhm
