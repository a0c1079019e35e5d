#include "mhm/builders.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mhm/milnor.hpp"
#include "mhm/subspace.hpp"

namespace mhm {

namespace {

long floor_int(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z.get_si();
}

long ceil_int(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z.get_si();
}

int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

Piece make_piece(const Rational& degree, size_t dim, int r) {
  Piece p;
  p.degree = degree;
  p.dim = dim;
  for (int k = 0; k < 2; ++k) {
    p.out_truncated[k].assign(static_cast<size_t>(r), std::vector<bool>(dim, false));
    p.in_truncated[k].assign(static_cast<size_t>(r), std::vector<bool>(dim, false));
  }
  return p;
}

void mark(Piece& p, std::array<std::vector<std::vector<bool>>, 2> Piece::*table, OpKind k, int i, size_t v) {
  (p.*table)[static_cast<int>(k)][i - 1][v] = true;
}

// Monomial-indexed pieces shared by the delta and torus families.
struct MonomialIndex {
  std::map<Rational, std::vector<Exponent>> basis;
  std::map<Rational, std::map<Exponent, size_t>> index;
  void add(const Rational& a, const Exponent& e) {
    index[a][e] = basis[a].size();
    basis[a].push_back(e);
  }
  std::optional<size_t> find(const Rational& a, const Exponent& e) const {
    auto it = index.find(a);
    if (it == index.end()) return std::nullopt;
    auto jt = it->second.find(e);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
  }
};

}  // namespace

MonodromicalModule build_delta(int r, const WindowPolicy& policy) {
  if (r < 1) throw InputError("build_delta: r must be at least 1");
  MonodromicalModule m;
  m.r = r;
  m.name = "delta(" + std::to_string(r) + ")";
  m.has_w = true;
  m.multigraded = true;
  m.integral_degrees = true;
  m.pure_weight = policy.w_offset;
  m.support_hi = Rational(0);

  const long hi = std::min(floor_int(policy.alpha_hi), 0L);
  const long lo = ceil_int(policy.alpha_lo);
  MonomialIndex idx;
  for (long a = hi; a >= lo; --a) {
    const Rational deg(a);
    idx.basis[deg];
    for (const auto& e : monomials_of_degree(r, static_cast<int>(-a))) idx.add(deg, e);
    Piece p = make_piece(deg, idx.basis[deg].size(), r);
    for (const auto& e : idx.basis[deg]) {
      p.f_level.push_back(total(e) + policy.f_offset);
      p.w_level.push_back(policy.w_offset);
      Exponent md(e.size());
      for (size_t i = 0; i < e.size(); ++i) md[i] = -e[i] - 1;
      p.multidegree.push_back(md);
    }
    m.pieces[deg] = std::move(p);
  }
  for (const auto& [deg, basis] : idx.basis) {
    for (int i = 1; i <= r; ++i) {
      const Rational up = deg + 1, down = deg - 1;
      if (m.stored(up)) {
        RationalMatrix t(m.dim(up), basis.size());
        for (size_t c = 0; c < basis.size(); ++c) {
          if (basis[c][i - 1] == 0) continue;
          Exponent e = basis[c];
          --e[i - 1];
          t(*idx.find(up, e), c) = -basis[c][i - 1];
        }
        m.set_op(OpKind::t, i, deg, std::move(t));
      }
      if (m.stored(down)) {
        RationalMatrix dm(m.dim(down), basis.size());
        for (size_t c = 0; c < basis.size(); ++c) {
          Exponent e = basis[c];
          ++e[i - 1];
          dm(*idx.find(down, e), c) = 1;
        }
        m.set_op(OpKind::d, i, deg, std::move(dm));
      }
    }
  }
  m.mark_window_boundary();
  return m;
}

MonodromicalModule build_unit(int f_level, int weight) {
  MonodromicalModule m;
  m.r = 0;
  m.name = "unit";
  m.has_w = true;
  m.multigraded = true;
  m.integral_degrees = true;
  m.pure_weight = weight;
  m.support_lo = Rational(0);
  m.support_hi = Rational(0);
  Piece p = make_piece(0, 1, 0);
  p.f_level = {f_level};
  p.w_level = {weight};
  p.multidegree = {Exponent{}};
  m.pieces[0] = std::move(p);
  return m;
}

MonodromicalModule build_torus(int r, const WindowPolicy& policy) {
  if (r < 1) throw InputError("build_torus: r must be at least 1");
  if (policy.box < 1) throw InputError("build_torus: box bound must be at least 1");
  const int b = policy.box;
  MonodromicalModule m;
  m.r = r;
  m.name = "torus(" + std::to_string(r) + ")";
  m.has_w = true;
  m.multigraded = true;
  m.integral_degrees = true;
  m.support_lo = Rational(r - r * b);
  m.support_hi = Rational(r + r * b);

  const long lo = std::max(ceil_int(policy.alpha_lo), static_cast<long>(r - r * b));
  const long hi = std::min(floor_int(policy.alpha_hi), static_cast<long>(r + r * b));
  MonomialIndex idx;
  for (long a = lo; a <= hi; ++a) idx.basis[Rational(a)];
  // Enumerate the box in lexicographic order.
  Exponent e(static_cast<size_t>(r), -b);
  while (true) {
    const Rational deg(total(e) + r);
    if (idx.basis.count(deg)) idx.add(deg, e);
    size_t k = 0;
    while (k < e.size() && e[k] == b) e[k++] = -b;
    if (k == e.size()) break;
    ++e[k];
  }
  for (const auto& [deg, basis] : idx.basis) {
    Piece p = make_piece(deg, basis.size(), r);
    for (size_t c = 0; c < basis.size(); ++c) {
      const auto& x = basis[c];
      int pen = 0, neg = 0;
      for (int ai : x) {
        pen += std::max(-ai - 1, 0);
        neg += ai < 0 ? 1 : 0;
      }
      p.f_level.push_back(pen + policy.f_offset);
      p.w_level.push_back(neg + policy.w_offset);
      p.multidegree.push_back(x);
      for (int i = 1; i <= r; ++i) {
        if (x[i - 1] == b) {
          mark(p, &Piece::out_truncated, OpKind::t, i, c);
          mark(p, &Piece::in_truncated, OpKind::d, i, c);
        }
        if (x[i - 1] == -b) {
          mark(p, &Piece::out_truncated, OpKind::d, i, c);
          mark(p, &Piece::in_truncated, OpKind::t, i, c);
        }
      }
    }
    m.pieces[deg] = std::move(p);
  }
  for (const auto& [deg, basis] : idx.basis) {
    const Rational up = deg + 1, down = deg - 1;
    for (int i = 1; i <= r; ++i) {
      if (m.stored(up)) {
        RationalMatrix t(m.dim(up), basis.size());
        for (size_t c = 0; c < basis.size(); ++c) {
          Exponent x = basis[c];
          ++x[i - 1];
          if (auto row = idx.find(up, x)) t(*row, c) = 1;
        }
        m.set_op(OpKind::t, i, deg, std::move(t));
      }
      if (m.stored(down)) {
        RationalMatrix dm(m.dim(down), basis.size());
        for (size_t c = 0; c < basis.size(); ++c) {
          if (basis[c][i - 1] == 0) continue;
          Exponent x = basis[c];
          --x[i - 1];
          if (auto row = idx.find(down, x)) dm(*row, c) = basis[c][i - 1];
        }
        m.set_op(OpKind::d, i, deg, std::move(dm));
      }
    }
  }
  m.mark_window_boundary();
  return m;
}

MonodromicalModule external_product(const MonodromicalModule& m1, const MonodromicalModule& m2) {
  const int r1 = m1.r, r2 = m2.r;
  MonodromicalModule m;
  m.r = r1 + r2;
  m.name = m1.name + "*" + m2.name;
  m.has_w = m1.has_w && m2.has_w;
  m.multigraded = m1.multigraded && m2.multigraded;
  m.integral_degrees = m1.integral_degrees && m2.integral_degrees;
  if (m1.pure_weight && m2.pure_weight) m.pure_weight = *m1.pure_weight + *m2.pure_weight;
  if (m1.support_lo && m2.support_lo) m.support_lo = Rational(*m1.support_lo + *m2.support_lo);
  if (m1.support_hi && m2.support_hi) m.support_hi = Rational(*m1.support_hi + *m2.support_hi);

  std::set<Rational> candidates;
  for (const auto& [b, p1] : m1.pieces)
    for (const auto& [g, p2] : m2.pieces) candidates.insert(b + g);
  if (candidates.empty()) throw InputError("external_product: a factor has no stored pieces");

  // offsets[α][β] = first index of the block piece1(β) ⊗ piece2(α - β)
  std::map<Rational, std::map<Rational, size_t>> offsets;
  for (const auto& a : candidates) {
    bool ok = true;
    for (const auto& [b, p1] : m1.pieces) ok = ok && m2.in_window(a - b);
    for (const auto& [g, p2] : m2.pieces) ok = ok && m1.in_window(a - g);
    if (!ok) continue;
    size_t dim = 0;
    auto& off = offsets[a];
    for (const auto& [b, p1] : m1.pieces) {
      const Rational g = a - b;
      if (!m2.stored(g)) continue;
      off[b] = dim;
      dim += p1.dim * m2.piece(g).dim;
    }
    Piece p = make_piece(a, dim, m.r);
    for (const auto& [b, start] : off) {
      const auto& p1 = m1.piece(b);
      const auto& p2 = m2.piece(a - b);
      for (size_t u = 0; u < p1.dim; ++u)
        for (size_t v = 0; v < p2.dim; ++v) {
          const size_t c = start + u * p2.dim + v;
          p.f_level.push_back(p1.f_level[u] + p2.f_level[v]);
          if (m.has_w) p.w_level.push_back(p1.w_level[u] + p2.w_level[v]);
          if (m.multigraded) {
            Exponent md = p1.multidegree[u];
            md.insert(md.end(), p2.multidegree[v].begin(), p2.multidegree[v].end());
            p.multidegree.push_back(md);
          }
          for (int k = 0; k < 2; ++k) {
            const auto kind = static_cast<OpKind>(k);
            for (int i = 1; i <= r1; ++i) {
              p.out_truncated[k][i - 1][c] = m1.out_truncated(kind, i, b, u);
              p.in_truncated[k][i - 1][c] = m1.in_truncated(kind, i, b, u);
            }
            for (int i = 1; i <= r2; ++i) {
              p.out_truncated[k][r1 + i - 1][c] = m2.out_truncated(kind, i, a - b, v);
              p.in_truncated[k][r1 + i - 1][c] = m2.in_truncated(kind, i, a - b, v);
            }
          }
        }
    }
    m.pieces[a] = std::move(p);
  }

  for (const auto& [a, off] : offsets) {
    for (int k = 0; k < 2; ++k) {
      const auto kind = static_cast<OpKind>(k);
      const Rational ta = MonodromicalModule::target(kind, a);
      if (!m.stored(ta)) continue;
      const auto& toff = offsets.at(ta);
      for (int i = 1; i <= m.r; ++i) {
        RationalMatrix op(m.dim(ta), m.dim(a));
        const bool first = i <= r1;
        for (const auto& [b, start] : off) {
          const Rational g = a - b;
          const size_t n2 = m2.piece(g).dim;
          if (first) {
            if (!m1.op_available(kind, i, b)) continue;
            const Rational tb = MonodromicalModule::target(kind, b);
            if (!m1.stored(tb)) continue;
            const RationalMatrix f = m1.op(kind, i, b);
            const size_t tstart = toff.at(tb);
            for (size_t u = 0; u < f.cols(); ++u)
              for (size_t u2 = 0; u2 < f.rows(); ++u2) {
                if (f(u2, u) == 0) continue;
                for (size_t v = 0; v < n2; ++v) op(tstart + u2 * n2 + v, start + u * n2 + v) = f(u2, u);
              }
          } else {
            const int i2 = i - r1;
            if (!m2.op_available(kind, i2, g)) continue;
            const Rational tg = MonodromicalModule::target(kind, g);
            if (!m2.stored(tg)) continue;
            const RationalMatrix f = m2.op(kind, i2, g);
            const size_t tstart = toff.at(b);
            const size_t tn2 = m2.piece(tg).dim;
            const size_t n1 = m1.piece(b).dim;
            for (size_t u = 0; u < n1; ++u)
              for (size_t v = 0; v < f.cols(); ++v)
                for (size_t v2 = 0; v2 < f.rows(); ++v2)
                  if (f(v2, v) != 0) op(tstart + u * tn2 + v2, start + u * n2 + v) = f(v2, v);
          }
        }
        m.set_op(kind, i, a, std::move(op));
      }
    }
  }
  m.mark_window_boundary();
  return m;
}

namespace {

struct LocBasis {
  std::vector<Exponent> monos;  // ambient coordinates: monomials of degree n
  std::map<Exponent, size_t> mono_index;
  std::vector<LocalizationGenerator> gens;
  RationalMatrix inverse;  // ambient coordinates -> basis coordinates
};

std::vector<Rational> poly_coords(const LocBasis& lb, const Polynomial& g) {
  std::vector<Rational> v(lb.monos.size());
  for (const auto& [e, c] : g.terms()) {
    auto it = lb.mono_index.find(e);
    if (it == lb.mono_index.end()) throw PreconditionError("localization: numerator has the wrong degree");
    v[it->second] = c;
  }
  return v;
}

int checked_degree(const Polynomial& f) {
  const int d = f.homogeneous_degree();
  if (d == -2) throw InputError("localization: f is not homogeneous");
  if (d < 2) throw InputError("localization: f must have degree at least 2");
  return d;
}

// Numerator degree of the piece α over the common denominator f^cap, or -1 if the piece is zero.
long numerator_degree(int r, int d, int cap, const Rational& alpha) {
  if (!is_integer(alpha)) return -1;
  const long n = to_long(alpha) - r + static_cast<long>(cap) * d;
  return n < 0 ? -1 : n;
}

LocBasis loc_basis(const Polynomial& f, int d, int cap, const Rational& alpha) {
  const int r = f.nvars();
  LocBasis lb;
  const long n = numerator_degree(r, d, cap, alpha);
  if (n < 0) return lb;
  lb.monos = monomials_of_degree(r, static_cast<int>(n));
  for (size_t c = 0; c < lb.monos.size(); ++c) lb.mono_index[lb.monos[c]] = c;
  Subspace acc(lb.monos.size());
  std::vector<std::vector<Rational>> cols;
  for (int k = 0; k <= cap; ++k) {
    const long nb = n - static_cast<long>(cap - k) * d;
    if (nb < 0) continue;
    const Polynomial fp = f.pow(static_cast<unsigned>(cap - k));
    for (const auto& b : monomials_of_degree(r, static_cast<int>(nb))) {
      const auto v = poly_coords(lb, fp * Polynomial::monomial(r, b));
      if (acc.contains(v)) continue;
      RationalMatrix col(v.size(), 1);
      col.set_column(0, v);
      acc = acc + Subspace::span(col);
      cols.push_back(v);
      lb.gens.push_back({k, b});
    }
    if (acc.is_full()) break;
  }
  RationalMatrix basis(lb.monos.size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c) basis.set_column(c, cols[c]);
  lb.inverse = inverse(basis);
  return lb;
}

std::vector<Rational> to_basis(const LocBasis& lb, const Polynomial& g) {
  return (lb.inverse * [&] {
           const auto v = poly_coords(lb, g);
           RationalMatrix col(v.size(), 1);
           col.set_column(0, v);
           return col;
         }())
      .column(0);
}

}  // namespace

std::vector<LocalizationGenerator> localization_generators(const Polynomial& f, int cap, const Rational& alpha) {
  return loc_basis(f, checked_degree(f), cap, alpha).gens;
}

std::vector<Rational> localization_coords(const Polynomial& f, int cap, const Rational& alpha, const Polynomial& g) {
  const auto lb = loc_basis(f, checked_degree(f), cap, alpha);
  if (lb.monos.empty()) return {};
  return to_basis(lb, g);
}

MonodromicalModule build_isolated_sing_localization(const Polynomial& f, const WindowPolicy& policy,
                                                    FiltrationMode mode,
                                                    const std::map<Rational, std::vector<int>>& user_levels) {
  const int d = checked_degree(f);
  const int r = f.nvars();
  if (r < 1) throw InputError("localization: f needs at least one variable");
  if (policy.cap < 1) throw InputError("localization: pole-order cap must be at least 1");
  if (!has_isolated_singularity(f)) throw InputError("localization: f does not have an isolated singularity at 0");
  const int cap = policy.cap;

  MonodromicalModule m;
  m.r = r;
  m.name = "localization(" + f.to_string(default_variable_names(r)) + ")";
  m.integral_degrees = true;
  m.support_lo = Rational(r - cap * d);

  std::map<Rational, LocBasis> bases;
  for (long a = std::max(ceil_int(policy.alpha_lo), static_cast<long>(r - cap * d)); a <= floor_int(policy.alpha_hi);
       ++a)
    bases[Rational(a)] = loc_basis(f, d, cap, Rational(a));
  if (bases.empty()) throw InputError("localization: the degree window holds no pieces");

  for (const auto& [a, lb] : bases) {
    Piece p = make_piece(a, lb.gens.size(), r);
    if (mode == FiltrationMode::pole_order) {
      for (const auto& g : lb.gens) p.f_level.push_back(g.pole - 1 + policy.f_offset);
    } else {
      auto it = user_levels.find(a);
      if (it == user_levels.end() || it->second.size() != p.dim)
        throw InputError("localization: user-supplied F levels missing or mis-sized at alpha=" + format_rational(a));
      p.f_level = it->second;
    }
    for (size_t c = 0; c < p.dim; ++c)
      for (int i = 1; i <= r; ++i) {
        if (lb.gens[c].pole == cap) mark(p, &Piece::out_truncated, OpKind::d, i, c);
        mark(p, &Piece::in_truncated, OpKind::d, i, c);
        mark(p, &Piece::in_truncated, OpKind::t, i, c);
      }
    m.pieces[a] = std::move(p);
  }

  for (const auto& [a, lb] : bases) {
    const Rational up = a + 1, down = a - 1;
    for (int i = 1; i <= r; ++i) {
      if (bases.count(up)) {
        const auto& tb = bases.at(up);
        RationalMatrix t(tb.gens.size(), lb.gens.size());
        for (size_t c = 0; c < lb.gens.size(); ++c) {
          const auto& g = lb.gens[c];
          Exponent e = g.numerator;
          ++e[i - 1];
          t.set_column(c, to_basis(tb, f.pow(static_cast<unsigned>(cap - g.pole)) * Polynomial::monomial(r, e)));
        }
        m.set_op(OpKind::t, i, a, std::move(t));
      }
      if (bases.count(down)) {
        const auto& db = bases.at(down);
        RationalMatrix dm(db.gens.size(), lb.gens.size());
        const Polynomial fi = f.derivative(i - 1);
        for (size_t c = 0; c < lb.gens.size(); ++c) {
          const auto& g = lb.gens[c];
          if (g.pole == cap) continue;
          const Polynomial xb = Polynomial::monomial(r, g.numerator);
          const Polynomial num = f * xb.derivative(i - 1) - xb * fi * Rational(g.pole);
          dm.set_column(c, to_basis(db, f.pow(static_cast<unsigned>(cap - g.pole - 1)) * num));
        }
        m.set_op(OpKind::d, i, a, std::move(dm));
      }
    }
  }
  m.mark_window_boundary();
  return m;
}

}  // namespace mhm
