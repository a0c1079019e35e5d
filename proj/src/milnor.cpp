#include "mhm/milnor.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace mhm {

namespace {

int checked_degree(const Polynomial& f) {
  const int d = f.homogeneous_degree();
  if (d == -2) throw InputError("milnor: f is not homogeneous");
  if (d < 2) throw InputError("milnor: f must have degree at least 2");
  if (f.nvars() < 1) throw InputError("milnor: f needs at least one variable");
  return d;
}

// Leading columns of an echelon basis of (J_f)_k inside the monomials of
// degree k. The set of leading columns depends only on the span, so its
// complement indexes a monomial basis of the quotient. Generators are sparse,
// so the echelon basis is built incrementally on sparse rows.
struct JacobianDegree {
  std::vector<Exponent> monos;
  std::vector<bool> leading;
  size_t rank = 0;
  bool is_full() const { return rank == monos.size(); }
  std::vector<size_t> complement_coords() const {
    std::vector<size_t> out;
    for (size_t c = 0; c < monos.size(); ++c)
      if (!leading[c]) out.push_back(c);
    return out;
  }
};

using SparseRow = std::map<size_t, Rational>;

// Incremental echelon basis on sparse rows.
class SparseEchelon {
 public:
  // Reduces v against the basis; when independent, stores it and returns its
  // leading column.
  std::optional<size_t> add(SparseRow v) {
    while (!v.empty()) {
      const auto b = basis_.find(v.begin()->first);
      if (b == basis_.end()) break;
      const Rational s = v.begin()->second;
      for (const auto& [col, x] : b->second) {
        Rational& y = v[col];
        y -= s * x;
        if (y == 0) v.erase(col);
      }
    }
    if (v.empty()) return std::nullopt;
    const Rational inv = 1 / v.begin()->second;
    for (auto& [col, x] : v) x *= inv;
    const size_t lead = v.begin()->first;
    basis_.emplace(lead, std::move(v));
    return lead;
  }

 private:
  std::map<size_t, SparseRow> basis_;  // leading column -> row with leading entry 1
};

JacobianDegree jacobian_degree(const Polynomial& f, int d, int k) {
  const int r = f.nvars();
  JacobianDegree out;
  out.monos = monomials_of_degree(r, k);
  out.leading.assign(out.monos.size(), false);
  if (k - d + 1 < 0) return out;
  std::map<Exponent, size_t> index;
  for (size_t c = 0; c < out.monos.size(); ++c) index[out.monos[c]] = c;
  SparseEchelon echelon;
  const auto mult = monomials_of_degree(r, k - d + 1);
  for (int i = 0; i < r && out.rank < out.monos.size(); ++i) {
    const Polynomial fi = f.derivative(i);
    for (const auto& c : mult) {
      SparseRow v;
      const Polynomial prod = fi * Polynomial::monomial(r, c);
      for (const auto& [e, coef] : prod.terms()) v[index.at(e)] = coef;
      const auto lead = echelon.add(std::move(v));
      if (!lead) continue;
      out.leading[*lead] = true;
      ++out.rank;
    }
  }
  return out;
}

}  // namespace

size_t MilnorAlgebra::total() const { return std::accumulate(dims.begin(), dims.end(), size_t{0}); }

size_t MilnorAlgebra::dim_at(int k) const {
  if (k < 0 || k >= static_cast<int>(dims.size())) return 0;
  return dims[static_cast<size_t>(k)];
}

size_t ComplementEntry::total() const {
  size_t t = 0;
  for (const auto& [label, n] : summands) t += n;
  return t;
}

bool has_isolated_singularity(const Polynomial& f) {
  const int d = checked_degree(f);
  const int r = f.nvars();
  const auto jd = jacobian_degree(f, d, r * (d - 2) + 1);
  return jd.is_full();
}

MilnorAlgebra milnor_dims(const Polynomial& f) {
  const int d = checked_degree(f);
  MilnorAlgebra m;
  m.r = f.nvars();
  m.d = d;
  m.f = f;
  const int top = m.r * (d - 2);
  if (!jacobian_degree(f, d, top + 1).is_full())
    throw InputError("milnor: f does not have an isolated singularity (quotient is nonzero in degree " +
                     std::to_string(top + 1) + ")");
  for (int k = 0; k <= top; ++k) {
    const auto jd = jacobian_degree(f, d, k);
    std::vector<Exponent> basis;
    for (size_t c : jd.complement_coords()) basis.push_back(jd.monos[c]);
    m.dims.push_back(basis.size());
    m.bases.push_back(std::move(basis));
  }
  return m;
}

std::map<int, size_t> griffiths_dims(const MilnorAlgebra& m) {
  std::map<int, size_t> out;
  for (int p = 0; p < m.r; ++p) out[p] = m.dim_at((p + 1) * m.d - m.r);
  return out;
}

std::vector<ComplementEntry> complement_cohomology(const MilnorAlgebra& m) {
  if (m.r < 2) throw InputError("complement_cohomology: requires r >= 2");
  size_t n = 0;
  for (const auto& [p, v] : griffiths_dims(m)) n += v;
  std::vector<ComplementEntry> out(static_cast<size_t>(m.r) + 1);
  for (int j = 0; j <= m.r; ++j) out[j].j = j;
  out[0].summands.push_back({"Q", 1});
  out[1].summands.push_back({"Q(-1)", 1});
  out[m.r - 1].summands.push_back({"H^{r-1}(U)", n});
  out[m.r].summands.push_back({"H^{r-1}(U)(-1)", n});
  return out;
}

ExpectedTables expected_restriction_dims(const MilnorAlgebra& m) {
  ExpectedTables out;
  const int r = m.r;
  out.top = griffiths_dims(m);
  for (int p = 0; p < r; ++p) {
    const int k = (p + 1) * m.d - r;  // degree of the coefficient m
    std::vector<Exponent> reps;
    if (k >= 0 && k < static_cast<int>(m.bases.size())) reps = m.bases[static_cast<size_t>(k)];
    out.representatives[p] = reps;
    if (reps.empty()) {
      out.interior[p] = 0;
      continue;
    }
    // Ω^{r-1} in coefficient degree k + 1: coordinates (i, monomial), i the omitted index.
    const auto monos = monomials_of_degree(r, k + 1);
    std::map<Exponent, size_t> index;
    for (size_t c = 0; c < monos.size(); ++c) index[monos[c]] = c;
    auto coord = [&](int i, const Exponent& e) { return static_cast<size_t>(i) * monos.size() + index.at(e); };

    SparseEchelon echelon;
    if (r >= 2 && k + 1 - (m.d - 1) >= 0) {
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          const Polynomial fi = m.f.derivative(i), fj = m.f.derivative(j);
          for (const auto& h : monomials_of_degree(r, k + 1 - (m.d - 1))) {
            SparseRow v;
            const Polynomial hm = Polynomial::monomial(r, h);
            // df ∧ h dx_[i j] = (-1)^i f_i h dx_[j] + (-1)^(j+1) f_j h dx_[i]   (0-based i < j)
            const Rational si = (i % 2 == 0) ? 1 : -1;
            const Rational sj = (j % 2 == 1) ? 1 : -1;
            const Polynomial gi = fi * hm, gj = fj * hm;
            for (const auto& [e, c] : gi.terms()) v[coord(j, e)] += si * c;
            for (const auto& [e, c] : gj.terms()) v[coord(i, e)] += sj * c;
            std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
            echelon.add(std::move(v));
          }
        }
    }
    size_t independent = 0;
    for (const auto& mono : reps) {
      SparseRow v;
      // ι_θ(m dx) = Σ_i (-1)^i m x_i dx_[i]   (0-based)
      for (int i = 0; i < r; ++i) {
        Exponent e = mono;
        ++e[i];
        v[coord(i, e)] += (i % 2 == 0) ? 1 : -1;
      }
      std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
      if (echelon.add(std::move(v))) ++independent;
    }
    out.interior[p] = independent;
  }
  return out;
}

}  // namespace mhm
