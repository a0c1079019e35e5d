#include "mhm/vfiltration.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mhm {

namespace {

std::string deg(const Rational& a) { return "alpha=" + format_rational(a); }

std::string at_loc(const Rational& beta, const Rational& alpha) {
  return "degree=" + format_rational(beta) + " V-index=" + format_rational(alpha);
}

// t_i ∘ ∂_j on the piece of degree beta, or nullopt when some image leaves
// the window.
std::optional<RationalMatrix> t_after_d(const MonodromicalModule& m, int i, int j, const Rational& beta) {
  const size_t n = m.dim(beta);
  const Rational below = beta - 1;
  if (!m.in_window(below)) return std::nullopt;
  for (size_t v = 0; v < n; ++v)
    if (m.out_truncated(OpKind::d, j, beta, v)) return std::nullopt;
  if (!m.stored(below)) return RationalMatrix(n, n);
  if (!m.op_available(OpKind::d, j, beta) || !m.op_available(OpKind::t, i, below)) return std::nullopt;
  return m.op(OpKind::t, i, below) * m.op(OpKind::d, j, beta);
}

struct Generator {
  OpKind kind;
  int i;
  int shift;
};

// Generators of V D with their V-degrees.
std::vector<Generator> generators(const MonodromicalModule& m, const VFiltrationData& v) {
  std::vector<Generator> g;
  for (int i = 1; i <= m.r; ++i) {
    const bool along = !v.direction || *v.direction == i;
    g.push_back({OpKind::t, i, along ? 1 : 0});
    g.push_back({OpKind::d, i, along ? -1 : 0});
  }
  return g;
}

// The pairs (i, j) with t_i ∂_j of V-degree zero that are not products of
// degree-zero generators.
std::vector<std::pair<int, int>> degree_zero_composites(const MonodromicalModule& m, const VFiltrationData& v) {
  std::vector<std::pair<int, int>> out;
  if (v.direction) {
    out.push_back({*v.direction, *v.direction});
  } else {
    for (int i = 1; i <= m.r; ++i)
      for (int j = 1; j <= m.r; ++j) out.push_back({i, j});
  }
  return out;
}

std::vector<Rational> breakpoints(const std::vector<Rational>& jumps, int shift) {
  std::set<Rational> s(jumps.begin(), jumps.end());
  for (const auto& j : jumps) s.insert(j - shift);
  return {s.begin(), s.end()};
}

void check_map(const VFiltrationData& v, const RationalMatrix& a, const Rational& src,
               const Rational& tgt, int shift, const std::string& what, VAxiomReport& rep) {
  for (const auto& alpha : breakpoints(v.jumps, shift)) {
    const Subspace img = v.at(src, alpha).image_under(a);
    if (!v.at(tgt, alpha + shift).contains(img)) {
      rep.violations.push_back({"ii", what + " does not map V^" + format_rational(alpha) + " into V^" +
                                          format_rational(alpha + shift) + " at " + at_loc(src, alpha)});
      return;
    }
  }
}

}  // namespace

Subspace VFiltrationData::at(const Rational& beta, const Rational& alpha) const {
  const auto it = steps.find(beta);
  const auto dt = dims.find(beta);
  if (it == steps.end() || dt == dims.end()) throw InputError("V-filtration: no steps at " + deg(beta));
  const auto k = static_cast<size_t>(std::lower_bound(jumps.begin(), jumps.end(), alpha) - jumps.begin());
  if (k >= it->second.size()) return Subspace(dt->second);
  return it->second[k];
}

Subspace VFiltrationData::above(const Rational& beta, const Rational& alpha) const {
  const auto it = std::upper_bound(jumps.begin(), jumps.end(), alpha);
  if (it == jumps.end()) {
    const auto dt = dims.find(beta);
    if (dt == dims.end()) throw InputError("V-filtration: no steps at " + deg(beta));
    return Subspace(dt->second);
  }
  return at(beta, *it);
}

Subquotient VFiltrationData::gr(const Rational& beta, const Rational& alpha) const {
  return Subquotient(at(beta, alpha), above(beta, alpha));
}

size_t VFiltrationData::gr_dim(const Rational& alpha) const {
  size_t total = 0;
  for (const auto& [beta, s] : steps) total += gr(beta, alpha).dim();
  return total;
}

std::string VAxiomReport::summary() const {
  std::ostringstream os;
  if (ok()) os << "V-filtration axioms: ok";
  else os << "V-filtration axioms: " << violations.size() << " violation(s)";
  for (const auto& x : violations) os << "\n  (" << x.axiom << ") " << x.location;
  if (!exempted.empty()) os << "\n  " << exempted.size() << " boundary exemption(s)";
  return os.str();
}

VAxiomReport v_axioms_check(const MonodromicalModule& m, const VFiltrationData& v,
                            std::optional<Rational> surjectivity_threshold) {
  VAxiomReport rep;
  auto bad = [&](const std::string& ax, const std::string& where) { rep.violations.push_back({ax, where}); };

  // (i): finite exact data, decreasing and exhaustive.
  if (v.direction && (*v.direction < 1 || *v.direction > m.r)) bad("i", "direction out of range");
  for (size_t k = 1; k < v.jumps.size(); ++k)
    if (!(v.jumps[k - 1] < v.jumps[k])) bad("i", "jumps not strictly increasing at index " + std::to_string(k));
  for (const auto& [beta, s] : v.steps)
    if (!m.stored(beta)) bad("i", "steps at " + deg(beta) + " outside the stored pieces");
  for (const auto& [beta, piece] : m.pieces) {
    const auto it = v.steps.find(beta);
    const auto dt = v.dims.find(beta);
    if (it == v.steps.end() || dt == v.dims.end() || dt->second != piece.dim) {
      bad("i", "missing or mis-sized steps at " + deg(beta));
      continue;
    }
    const auto& st = it->second;
    if (st.size() != v.jumps.size()) {
      bad("i", "step count differs from jump count at " + deg(beta));
      continue;
    }
    bool shapes = true;
    for (const auto& s : st)
      if (s.ambient() != piece.dim) shapes = false;
    if (!shapes) {
      bad("i", "subspace ambient mismatch at " + deg(beta));
      continue;
    }
    for (size_t k = 1; k < st.size(); ++k)
      if (!st[k - 1].contains(st[k])) bad("i", "not decreasing at " + at_loc(beta, v.jumps[k]));
    const bool exhaustive = st.empty() ? piece.dim == 0 : st.front().is_full();
    if (!exhaustive) bad("i", "not exhaustive at " + deg(beta));
  }
  if (!rep.ok()) return rep;

  // (ii): generators shift V by their V-degree.
  for (const auto& g : generators(m, v))
    for (const auto& [beta, piece] : m.pieces) {
      const Rational tgt = MonodromicalModule::target(g.kind, beta);
      if (!m.stored(tgt) || !m.op_available(g.kind, g.i, beta)) continue;
      const std::string what = std::string(op_name(g.kind)) + "_" + std::to_string(g.i);
      check_map(v, m.op(g.kind, g.i, beta), beta, tgt, g.shift, what, rep);
    }
  for (const auto& [i, j] : degree_zero_composites(m, v))
    for (const auto& [beta, piece] : m.pieces) {
      const auto e = t_after_d(m, i, j, beta);
      if (!e) {
        rep.exempted.push_back("ii: t_" + std::to_string(i) + "d_" + std::to_string(j) + " at " + deg(beta));
        continue;
      }
      check_map(v, *e, beta, beta, 0, "t_" + std::to_string(i) + "d_" + std::to_string(j), rep);
    }

  // (iii): V^1 D V^α = V^{α+1} above the threshold.
  const Rational threshold = surjectivity_threshold ? *surjectivity_threshold : Rational(v.direction ? 0 : m.r - 1);
  std::vector<int> raising;
  for (int i = 1; i <= m.r; ++i)
    if (!v.direction || *v.direction == i) raising.push_back(i);
  for (const auto& alpha : breakpoints(v.jumps, 1)) {
    if (!(alpha > threshold)) continue;
    for (const auto& [gamma, piece] : m.pieces) {
      const Subspace target = v.at(gamma, alpha + 1);
      if (target.is_zero()) continue;
      const Rational below = gamma - 1;
      if (!m.in_window(below)) {
        rep.exempted.push_back("iii: preimages of " + at_loc(gamma, alpha + 1) + " outside the window");
        continue;
      }
      Subspace img(piece.dim);
      bool available = true;
      if (m.stored(below))
        for (int i : raising) {
          if (!m.op_available(OpKind::t, i, below)) {
            available = false;
            break;
          }
          img = img + v.at(below, alpha).image_under(m.op(OpKind::t, i, below));
        }
      if (!available) {
        rep.exempted.push_back("iii: t unavailable into " + deg(gamma));
        continue;
      }
      if (img.contains(target)) continue;
      std::vector<size_t> cut;
      for (size_t c = 0; c < piece.dim; ++c)
        for (int i : raising)
          if (m.in_truncated(OpKind::t, i, gamma, c)) {
            cut.push_back(c);
            break;
          }
      if ((img + Subspace::coordinate(piece.dim, cut)).contains(target))
        rep.exempted.push_back("iii: " + at_loc(gamma, alpha + 1) + " relies on truncated preimages");
      else
        bad("iii", "t-action not surjective onto V^" + format_rational(alpha + 1) + " at " + at_loc(gamma, alpha + 1));
    }
  }

  // (iv): the Euler-type operator is nilpotent on Gr_V^α.
  for (const auto& alpha : v.jumps)
    for (const auto& [beta, piece] : m.pieces) {
      const Subquotient sq = v.gr(beta, alpha);
      if (sq.dim() == 0) continue;
      std::optional<RationalMatrix> e;
      if (v.direction) {
        e = t_after_d(m, *v.direction, *v.direction, beta);
        if (e) *e = *e - RationalMatrix::identity(piece.dim) * Rational(alpha - 1);
      } else {
        RationalMatrix theta(piece.dim, piece.dim);
        bool ok = true;
        for (int i = 1; i <= m.r && ok; ++i) {
          const auto ti = t_after_d(m, i, i, beta);
          if (ti) theta = theta + *ti;
          else ok = false;
        }
        if (ok) e = theta - RationalMatrix::identity(piece.dim) * Rational(alpha - m.r);
      }
      if (!e) {
        if (!v.direction) {
          // θ - β + r is nilpotent on M'_β, so θ - α + r is nilpotent on a
          // nonzero subquotient of M'_β exactly when β = α.
          rep.exempted.push_back("iv: degree criterion at " + at_loc(beta, alpha));
          if (beta != alpha) bad("iv", "Gr_V nonzero off its degree at " + at_loc(beta, alpha));
        } else {
          rep.exempted.push_back("iv: operator leaves the window at " + at_loc(beta, alpha));
        }
        continue;
      }
      RationalMatrix induced;
      try {
        induced = subquotient_map(*e, sq, sq);
      } catch (const PreconditionError&) {
        bad("iv", "Euler operator does not preserve V at " + at_loc(beta, alpha));
        continue;
      }
      if (nilpotency_order(induced) < 0) bad("iv", "not nilpotent on Gr_V at " + at_loc(beta, alpha));
    }
  return rep;
}

VFiltrationData canonical_v(const MonodromicalModule& m) {
  VFiltrationData v;
  for (const auto& [beta, piece] : m.pieces)
    if (piece.dim > 0) v.jumps.push_back(beta);
  for (const auto& [beta, piece] : m.pieces) {
    v.dims[beta] = piece.dim;
    auto& st = v.steps[beta];
    for (const auto& j : v.jumps) st.push_back(j <= beta ? Subspace::full(piece.dim) : Subspace(piece.dim));
  }
  return v;
}

VFiltrationData vr_monomial(const MonodromicalModule& m, int i0) {
  if (!m.multigraded) throw PreconditionError("vr_monomial: module '" + m.name + "' carries no multigrading");
  if (i0 < 1 || i0 > m.r) throw PreconditionError("vr_monomial: direction out of range");
  VFiltrationData v;
  v.direction = i0;
  std::set<Rational> levels;
  std::map<Rational, std::vector<int>> level_of;
  for (const auto& [beta, piece] : m.pieces) {
    auto& lv = level_of[beta];
    for (const auto& e : piece.multidegree) {
      lv.push_back(e[static_cast<size_t>(i0 - 1)] + 1);
      levels.insert(lv.back());
    }
  }
  v.jumps.assign(levels.begin(), levels.end());
  for (const auto& [beta, piece] : m.pieces) {
    v.dims[beta] = piece.dim;
    auto& st = v.steps[beta];
    for (const auto& j : v.jumps) {
      std::vector<size_t> coords;
      for (size_t c = 0; c < piece.dim; ++c)
        if (level_of[beta][c] >= j) coords.push_back(c);
      st.push_back(Subspace::coordinate(piece.dim, coords));
    }
  }
  return v;
}

}  // namespace mhm
