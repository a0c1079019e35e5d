#include "mhm/module.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mhm {

namespace {

std::string loc(const Rational& a) { return "alpha=" + format_rational(a); }

std::vector<size_t> support(const RationalMatrix& m, size_t col) {
  std::vector<size_t> out;
  for (size_t i = 0; i < m.rows(); ++i)
    if (m(i, col) != 0) out.push_back(i);
  return out;
}

}  // namespace

bool MonodromicalModule::known_zero(const Rational& a) const {
  if (stored(a)) return false;
  if (integral_degrees && !is_integer(a)) return true;
  if (support_hi && a > *support_hi) return true;
  if (support_lo && a < *support_lo) return true;
  return false;
}

size_t MonodromicalModule::dim(const Rational& a) const {
  if (auto it = pieces.find(a); it != pieces.end()) return it->second.dim;
  if (known_zero(a)) return 0;
  throw WindowError("degree " + format_rational(a) + " is outside the stored window of module '" + name + "'");
}

const Piece& MonodromicalModule::piece(const Rational& a) const {
  auto it = pieces.find(a);
  if (it == pieces.end()) throw WindowError("degree " + format_rational(a) + " is not stored");
  return it->second;
}

bool MonodromicalModule::op_available(OpKind k, int i, const Rational& a) const {
  return i >= 1 && i <= r && in_window(a) && in_window(target(k, a));
}

RationalMatrix MonodromicalModule::op(OpKind k, int i, const Rational& a) const {
  if (!op_available(k, i, a))
    throw WindowError(std::string("operator ") + op_name(k) + "_" + std::to_string(i) + " at " + loc(a) +
                      " leaves the stored window");
  if (auto it = ops.find(OpKey{k, i, a}); it != ops.end()) return it->second;
  return RationalMatrix(dim(target(k, a)), dim(a));
}

void MonodromicalModule::set_op(OpKind k, int i, const Rational& a, RationalMatrix m) {
  ops[OpKey{k, i, a}] = std::move(m);
}

bool MonodromicalModule::out_truncated(OpKind k, int i, const Rational& a, size_t v) const {
  const auto& p = piece(a);
  const auto& tab = p.out_truncated[static_cast<int>(k)];
  return static_cast<size_t>(i - 1) < tab.size() && tab[i - 1][v];
}

bool MonodromicalModule::in_truncated(OpKind k, int i, const Rational& a, size_t v) const {
  const auto& p = piece(a);
  const auto& tab = p.in_truncated[static_cast<int>(k)];
  return static_cast<size_t>(i - 1) < tab.size() && tab[i - 1][v];
}

void MonodromicalModule::mark_window_boundary() {
  for (auto& [a, p] : pieces) {
    for (int k = 0; k < 2; ++k) {
      const auto kind = static_cast<OpKind>(k);
      for (auto* tab : {&p.out_truncated[k], &p.in_truncated[k]}) {
        tab->resize(static_cast<size_t>(r));
        for (auto& row : *tab) row.resize(p.dim, false);
      }
      const bool out_gone = !in_window(target(kind, a));
      const bool in_gone = !in_window(source_into(kind, a));
      for (int i = 0; i < r; ++i)
        for (size_t v = 0; v < p.dim; ++v) {
          if (out_gone) p.out_truncated[k][i][v] = true;
          if (in_gone) p.in_truncated[k][i][v] = true;
        }
    }
  }
}

void MonodromicalModule::check_structure() const {
  if (r < 0) throw InputError("module '" + name + "': negative r");
  for (const auto& [a, p] : pieces) {
    if (p.degree != a) throw InputError("module '" + name + "': piece key mismatch at " + loc(a));
    if (p.f_level.size() != p.dim) throw InputError("module '" + name + "': F levels incomplete at " + loc(a));
    if (has_w && p.w_level.size() != p.dim) throw InputError("module '" + name + "': W levels incomplete at " + loc(a));
    if (multigraded) {
      if (p.multidegree.size() != p.dim) throw InputError("module '" + name + "': multigrading incomplete at " + loc(a));
      for (const auto& e : p.multidegree)
        if (static_cast<int>(e.size()) != r) throw InputError("module '" + name + "': multidegree length at " + loc(a));
    }
  }
  for (const auto& [key, m] : ops) {
    if (key.i < 1 || key.i > r) throw InputError("module '" + name + "': operator index out of range");
    if (!op_available(key.kind, key.i, key.source))
      throw InputError(std::string("module '") + name + "': operator " + op_name(key.kind) + "_" +
                       std::to_string(key.i) + " at " + loc(key.source) + " leaves the window");
    if (m.rows() != dim(target(key.kind, key.source)) || m.cols() != dim(key.source))
      throw InputError(std::string("module '") + name + "': operator " + op_name(key.kind) + "_" +
                       std::to_string(key.i) + " at " + loc(key.source) + " has the wrong shape");
  }
}

MonodromicalModule::EulerBlock MonodromicalModule::euler_nilpotent(const Rational& a) const {
  const size_t n = dim(a);
  EulerBlock out;
  if (n == 0) return out;
  std::vector<bool> clean(n, true);
  RationalMatrix theta(n, n);
  bool computable = true;
  for (int i = 1; i <= r && computable; ++i) {
    if (!op_available(OpKind::d, i, a) || !op_available(OpKind::t, i, a - 1)) {
      computable = false;
      break;
    }
    const RationalMatrix di = op(OpKind::d, i, a);
    const Rational below = a - 1;
    for (size_t c = 0; c < n; ++c) {
      if (out_truncated(OpKind::d, i, a, c)) clean[c] = false;
      if (!stored(below)) continue;
      for (auto v : support(di, c))
        if (out_truncated(OpKind::t, i, below, v)) clean[c] = false;
    }
    theta = theta + op(OpKind::t, i, below) * di;
  }
  if (!computable) return out;
  const RationalMatrix nmat = theta - RationalMatrix::identity(n) * (a - r);
  // Shrink to a subset mapped into itself.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t c = 0; c < n; ++c) {
      if (!clean[c]) continue;
      for (auto v : support(nmat, c))
        if (!clean[v]) {
          clean[c] = false;
          changed = true;
          break;
        }
    }
  }
  for (size_t c = 0; c < n; ++c)
    if (clean[c]) out.columns.push_back(c);
  out.n = nmat.select_rows(out.columns).select_cols(out.columns);
  return out;
}

std::vector<std::vector<size_t>> MonodromicalModule::blocks(const Rational& a) const {
  const size_t n = dim(a);
  std::vector<std::vector<size_t>> out;
  if (n == 0) return out;
  if (!multigraded) {
    out.emplace_back(n);
    for (size_t c = 0; c < n; ++c) out[0][c] = c;
    return out;
  }
  std::map<Exponent, size_t> index;
  const auto& p = piece(a);
  for (size_t c = 0; c < n; ++c) {
    auto [it, inserted] = index.emplace(p.multidegree[c], out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(c);
  }
  return out;
}

std::map<std::pair<Rational, int>, size_t> MonodromicalModule::f_dimension_table() const {
  std::map<std::pair<Rational, int>, size_t> table;
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& [a, p] : pieces)
    for (int l : p.f_level) {
      lo = any ? std::min(lo, l) : l;
      hi = any ? std::max(hi, l) : l;
      any = true;
    }
  for (const auto& [a, p] : pieces)
    for (int q = lo - 1; q <= hi; ++q)
      table[{a, q}] = static_cast<size_t>(std::count_if(p.f_level.begin(), p.f_level.end(), [q](int l) { return l <= q; }));
  return table;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (ok() ? "PASS" : "FAIL") << ": " << violations.size() << " violation(s), " << exempted.size()
     << " exemption(s)\n";
  for (const auto& v : violations) os << "  violation [" << v.invariant << "] " << v.location << "\n";
  return os.str();
}

namespace {

struct Validator {
  const MonodromicalModule& m;
  ValidationReport report;
  std::set<std::string> exempt_notes;

  bool stored_and_avail(OpKind k, int i, const Rational& a) const { return m.op_available(k, i, a); }

  // Columns of piece a for which the composite second ∘ first stays in the window.
  std::vector<bool> composite_ok(OpKind first, int fi, OpKind second, int si, const Rational& a) const {
    const size_t n = m.dim(a);
    std::vector<bool> ok(n, true);
    if (!m.op_available(first, fi, a)) return std::vector<bool>(n, false);
    const Rational mid = MonodromicalModule::target(first, a);
    if (!m.op_available(second, si, mid)) return std::vector<bool>(n, false);
    const RationalMatrix f = m.op(first, fi, a);
    for (size_t c = 0; c < n; ++c) {
      if (m.out_truncated(first, fi, a, c)) ok[c] = false;
      if (!m.stored(mid)) continue;
      for (auto v : support(f, c))
        if (m.out_truncated(second, si, mid, v)) ok[c] = false;
    }
    return ok;
  }

  RationalMatrix composite(OpKind first, int fi, OpKind second, int si, const Rational& a) const {
    return m.op(second, si, MonodromicalModule::target(first, a)) * m.op(first, fi, a);
  }

  void check_relation(const std::string& label, OpKind k1, int i1, OpKind k2, int i2, const Rational& a,
                      bool identity_rhs) {
    // label: [k1_i1, k2_i2] = k1 k2 - k2 k1
    auto ok12 = composite_ok(k2, i2, k1, i1, a);  // k1 ∘ k2
    auto ok21 = composite_ok(k1, i1, k2, i2, a);  // k2 ∘ k1
    const size_t n = m.dim(a);
    bool any_exempt = false;
    std::vector<size_t> cols;
    for (size_t c = 0; c < n; ++c) {
      if (ok12[c] && ok21[c]) cols.push_back(c);
      else any_exempt = true;
    }
    if (any_exempt) exempt_notes.insert(loc(a) + ": " + label + " on boundary columns");
    if (cols.empty()) return;
    RationalMatrix diff = composite(k2, i2, k1, i1, a) - composite(k1, i1, k2, i2, a);
    if (identity_rhs) diff = diff - RationalMatrix::identity(n);
    for (auto c : cols) {
      if (!diff.column_is_zero(c)) {
        report.violations.push_back({"commutator", label + " i=" + std::to_string(i1) + " j=" + std::to_string(i2) + " " +
                                                       loc(a) + " column=" + std::to_string(c)});
        return;
      }
    }
  }

  void check_levels(const std::string& what, const std::vector<int> Piece::*levels, int shift_d) {
    for (const auto& [a, p] : m.pieces) {
      for (int k = 0; k < 2; ++k) {
        const auto kind = static_cast<OpKind>(k);
        for (int i = 1; i <= m.r; ++i) {
          if (!m.op_available(kind, i, a)) continue;
          const Rational tgt = MonodromicalModule::target(kind, a);
          if (!m.stored(tgt)) continue;
          const auto& tp = m.piece(tgt);
          const RationalMatrix op = m.op(kind, i, a);
          const int allowed = kind == OpKind::t ? 0 : shift_d;
          for (size_t c = 0; c < p.dim; ++c) {
            if (m.out_truncated(kind, i, a, c)) continue;
            for (auto v : support(op, c)) {
              if ((tp.*levels)[v] > (p.*levels)[c] + allowed) {
                report.violations.push_back({what, std::string(op_name(kind)) + "_" + std::to_string(i) + " " + loc(a) +
                                                       " column=" + std::to_string(c) + " p=" +
                                                       std::to_string((p.*levels)[c])});
                goto next_op;
              }
            }
          }
        next_op:;
        }
      }
    }
  }

  void check_multigrading() {
    for (const auto& [a, p] : m.pieces) {
      for (int k = 0; k < 2; ++k) {
        const auto kind = static_cast<OpKind>(k);
        for (int i = 1; i <= m.r; ++i) {
          if (!m.op_available(kind, i, a)) continue;
          const Rational tgt = MonodromicalModule::target(kind, a);
          if (!m.stored(tgt)) continue;
          const auto& tp = m.piece(tgt);
          const RationalMatrix op = m.op(kind, i, a);
          for (size_t c = 0; c < p.dim; ++c) {
            Exponent want = p.multidegree[c];
            want[i - 1] += kind == OpKind::t ? 1 : -1;
            const auto sup = support(op, c);
            bool bad = false;
            for (auto v : sup)
              if (tp.multidegree[v] != want) bad = true;
            if (bad) {
              report.violations.push_back({"multigrading", std::string(op_name(kind)) + "_" + std::to_string(i) +
                                                               " " + loc(a) + " column=" + std::to_string(c)});
              break;
            }
          }
        }
      }
    }
  }

  void run() {
    m.check_structure();
    for (const auto& [a, p] : m.pieces) {
      if (p.dim == 0) {
        report.nilpotency_order[a] = 0;
        continue;
      }
      for (int i = 1; i <= m.r; ++i)
        for (int j = 1; j <= m.r; ++j) {
          check_relation("[d,t]", OpKind::d, i, OpKind::t, j, a, i == j);
          if (i < j) {
            check_relation("[t,t]", OpKind::t, i, OpKind::t, j, a, false);
            check_relation("[d,d]", OpKind::d, i, OpKind::d, j, a, false);
          }
        }
      const auto eb = m.euler_nilpotent(a);
      if (eb.columns.size() < p.dim) exempt_notes.insert(loc(a) + ": theta on boundary columns");
      const int order = nilpotency_order(eb.n);
      report.nilpotency_order[a] = order;
      if (order < 0) report.violations.push_back({"theta-nilpotency", loc(a)});
    }
    check_levels("F-compatibility", &Piece::f_level, 1);
    if (m.has_w) check_levels("W-compatibility", &Piece::w_level, 0);
    if (m.multigraded) check_multigrading();
    report.exempted.assign(exempt_notes.begin(), exempt_notes.end());
  }
};

}  // namespace

ValidationReport validate(const MonodromicalModule& m) {
  Validator v{m, {}, {}};
  v.run();
  return std::move(v.report);
}

}  // namespace mhm
