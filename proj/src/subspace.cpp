#include "mhm/subspace.hpp"

#include <algorithm>
#include <string>

namespace mhm {

Subspace::Subspace(size_t ambient) : ambient_(ambient), rows_(0, ambient) {}

Subspace Subspace::span(const RationalMatrix& vectors) { return span(vectors.rows(), vectors); }

Subspace Subspace::span(size_t ambient, const RationalMatrix& vectors) {
  if (vectors.cols() == 0) return Subspace(ambient);
  if (vectors.rows() != ambient) throw PreconditionError("Subspace::span: ambient mismatch");
  auto e = row_reduce(vectors.transpose());
  Subspace s(ambient);
  std::vector<size_t> keep(e.pivots.size());
  for (size_t k = 0; k < keep.size(); ++k) keep[k] = k;
  s.rows_ = e.reduced.select_rows(keep);
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::full(size_t ambient) { return span(RationalMatrix::identity(ambient)); }

Subspace Subspace::coordinate(size_t ambient, std::span<const size_t> coords) {
  std::vector<size_t> sorted(coords.begin(), coords.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Subspace s(ambient);
  s.rows_ = RationalMatrix(sorted.size(), ambient);
  for (size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] >= ambient) throw PreconditionError("Subspace::coordinate: index out of range");
    s.rows_(k, sorted[k]) = 1;
  }
  s.pivots_ = std::move(sorted);
  return s;
}

RationalMatrix Subspace::basis() const { return rows_.transpose(); }

std::vector<size_t> Subspace::complement_coords() const {
  std::vector<size_t> out;
  size_t k = 0;
  for (size_t c = 0; c < ambient_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw PreconditionError("Subspace::contains: ambient mismatch");
  std::vector<Rational> w(v.begin(), v.end());
  for (size_t k = 0; k < pivots_.size(); ++k) {
    const Rational f = w[pivots_[k]];
    if (f == 0) continue;
    for (size_t j = pivots_[k]; j < ambient_; ++j) w[j] -= f * rows_(k, j);
  }
  return std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw PreconditionError("Subspace::contains: ambient mismatch");
  if (other.dim() > dim()) return false;
  std::vector<Rational> row(ambient_);
  for (size_t k = 0; k < other.dim(); ++k) {
    for (size_t j = 0; j < ambient_; ++j) row[j] = other.rows_(k, j);
    if (!contains(row)) return false;
  }
  return true;
}

bool Subspace::operator==(const Subspace& other) const {
  return ambient_ == other.ambient_ && pivots_ == other.pivots_ && rows_ == other.rows_;
}

std::vector<Rational> Subspace::quotient_coords(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw PreconditionError("Subspace::quotient_coords: ambient mismatch");
  std::vector<Rational> w(v.begin(), v.end());
  for (size_t k = 0; k < pivots_.size(); ++k) {
    const Rational f = w[pivots_[k]];
    if (f == 0) continue;
    for (size_t j = pivots_[k]; j < ambient_; ++j) w[j] -= f * rows_(k, j);
  }
  std::vector<Rational> out;
  for (auto c : complement_coords()) out.push_back(w[c]);
  return out;
}

RationalMatrix Subspace::quotient_projection() const {
  const auto comp = complement_coords();
  RationalMatrix q(comp.size(), ambient_);
  std::vector<Rational> e(ambient_);
  for (size_t c = 0; c < ambient_; ++c) {
    e.assign(ambient_, Rational(0));
    e[c] = 1;
    const auto col = quotient_coords(e);
    for (size_t i = 0; i < comp.size(); ++i) q(i, c) = col[i];
  }
  return q;
}

RationalMatrix Subspace::complement_lift() const {
  const auto comp = complement_coords();
  RationalMatrix l(ambient_, comp.size());
  for (size_t k = 0; k < comp.size(); ++k) l(comp[k], k) = 1;
  return l;
}

Subspace Subspace::image_under(const RationalMatrix& a) const {
  if (a.cols() != ambient_) throw PreconditionError("Subspace::image_under: shape mismatch");
  if (is_zero()) return Subspace(a.rows());
  return span(a.rows(), a * basis());
}

Subspace Subspace::preimage(const RationalMatrix& a, const Subspace& target) {
  if (a.rows() != target.ambient()) throw PreconditionError("Subspace::preimage: shape mismatch");
  const RationalMatrix q = target.quotient_projection() * a;
  if (q.rows() == 0) return full(a.cols());
  return span(a.cols(), kernel_basis(q));
}

Subspace Subspace::restrict_to(std::span<const size_t> coords) const {
  const Subspace inter = intersect(*this, coordinate(ambient_, coords));
  return span(coords.size(), inter.basis().select_rows(coords));
}

Subspace Subspace::embed(size_t ambient, std::span<const size_t> positions) const {
  if (positions.size() != ambient_) throw PreconditionError("Subspace::embed: position count mismatch");
  RationalMatrix b(ambient, dim());
  for (size_t k = 0; k < dim(); ++k)
    for (size_t j = 0; j < ambient_; ++j) b(positions[j], k) = rows_(k, j);
  return span(ambient, b);
}

Subspace operator+(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw PreconditionError("subspace sum: ambient mismatch");
  if (u.is_zero()) return v;
  if (v.is_zero()) return u;
  return Subspace::span(u.ambient(), RationalMatrix::hstack(u.basis(), v.basis()));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw PreconditionError("subspace intersection: ambient mismatch");
  if (u.is_zero() || v.is_zero()) return Subspace(u.ambient());
  if (v.contains(u)) return u;
  if (u.contains(v)) return v;
  const RationalMatrix ub = u.basis();
  const RationalMatrix k = kernel_basis(RationalMatrix::hstack(ub, v.basis() * Rational(-1)));
  std::vector<size_t> top(u.dim());
  for (size_t i = 0; i < top.size(); ++i) top[i] = i;
  return Subspace::span(u.ambient(), ub * k.select_rows(top));
}

SubspaceRelations subspace_ops(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient())
    throw PreconditionError("subspace_ops: ambient dimensions " + std::to_string(u.ambient()) + " and " +
                            std::to_string(v.ambient()) + " differ");
  return {u + v, intersect(u, v), v.contains(u)};
}

RankKernelImage rank_kernel_image(const RationalMatrix& a) {
  const auto e = row_reduce(a);
  RankKernelImage out;
  out.rank = e.pivots.size();
  out.kernel = Subspace::span(a.cols(), kernel_basis(a));
  out.image = Subspace::span(a.rows(), a.select_cols(e.pivots));
  return out;
}

RationalMatrix induced_quotient_map(const RationalMatrix& a, const Subspace& u_src, const Subspace& u_tgt) {
  if (a.cols() != u_src.ambient() || a.rows() != u_tgt.ambient())
    throw PreconditionError("induced_quotient_map: shape mismatch");
  if (!u_tgt.contains(u_src.image_under(a)))
    throw PreconditionError("induced_quotient_map: map does not carry the source subspace into the target subspace");
  return u_tgt.quotient_projection() * a * u_src.complement_lift();
}

Subquotient::Subquotient(Subspace big, Subspace small) : big_(std::move(big)), small_(std::move(small)) {
  if (!big_.contains(small_)) throw PreconditionError("Subquotient: small is not contained in big");
  Subspace current = small_;
  std::vector<std::vector<Rational>> chosen;
  const RationalMatrix b = big_.basis();
  for (size_t c = 0; c < b.cols() && current.dim() < big_.dim(); ++c) {
    auto col = b.column(c);
    if (current.contains(col)) continue;
    RationalMatrix one(b.rows(), 1);
    one.set_column(0, col);
    current = current + Subspace::span(b.rows(), one);
    chosen.push_back(std::move(col));
  }
  lifts_ = RationalMatrix(big_.ambient(), chosen.size());
  for (size_t k = 0; k < chosen.size(); ++k) lifts_.set_column(k, chosen[k]);
  frame_ = RationalMatrix::hstack(lifts_, small_.basis());
}

RationalMatrix Subquotient::coords(const RationalMatrix& w) const {
  if (w.cols() == 0) return RationalMatrix(dim(), 0);
  if (frame_.cols() == 0) {
    if (!w.is_zero()) throw PreconditionError("Subquotient::coords: vector outside the subquotient");
    return RationalMatrix(0, w.cols());
  }
  const RationalMatrix x = solve(frame_, w);
  std::vector<size_t> top(dim());
  for (size_t i = 0; i < top.size(); ++i) top[i] = i;
  return x.select_rows(top);
}

Subspace Subquotient::image_of(const Subspace& u) const {
  if (!big_.contains(u)) throw PreconditionError("Subquotient::image_of: subspace not contained in big");
  return Subspace::span(dim(), coords(u.basis()));
}

RationalMatrix subquotient_map(const RationalMatrix& a, const Subquotient& src, const Subquotient& tgt) {
  if (a.cols() != src.ambient() || a.rows() != tgt.ambient()) throw PreconditionError("subquotient_map: shape mismatch");
  if (!tgt.big().contains(src.big().image_under(a)) || !tgt.small().contains(src.small().image_under(a)))
    throw PreconditionError("subquotient_map: map is not compatible with the subquotients");
  return tgt.coords(a * src.lifts());
}

Flag::Flag(size_t ambient, int lo, std::vector<Subspace> steps) : ambient_(ambient), lo_(lo), steps_(std::move(steps)) {
  if (steps_.empty()) steps_.push_back(Subspace::full(ambient_));
  for (size_t k = 0; k < steps_.size(); ++k) {
    if (steps_[k].ambient() != ambient_) throw PreconditionError("Flag: ambient mismatch");
    if (k > 0 && !steps_[k].contains(steps_[k - 1])) throw PreconditionError("Flag: steps are not increasing");
  }
  if (!steps_.back().is_full()) throw PreconditionError("Flag: filtration is not exhaustive");
}

Flag Flag::from_levels(size_t ambient, std::span<const int> levels) {
  if (levels.size() != ambient) throw PreconditionError("Flag::from_levels: level count mismatch");
  if (ambient == 0) return Flag(0, 0, {Subspace(0)});
  const int lo = *std::min_element(levels.begin(), levels.end());
  const int hi = *std::max_element(levels.begin(), levels.end());
  std::vector<Subspace> steps;
  for (int p = lo; p <= hi; ++p) {
    std::vector<size_t> coords;
    for (size_t c = 0; c < ambient; ++c)
      if (levels[c] <= p) coords.push_back(c);
    steps.push_back(Subspace::coordinate(ambient, coords));
  }
  return Flag(ambient, lo, std::move(steps));
}

Flag Flag::trivial(size_t ambient, int level) { return Flag(ambient, level, {Subspace::full(ambient)}); }

Subspace Flag::at(int p) const {
  if (p < lo_) return Subspace(ambient_);
  if (p >= hi()) return steps_.back();
  return steps_[static_cast<size_t>(p - lo_)];
}

Flag Flag::direct_sum(size_t ambient, const std::vector<std::pair<Flag, std::vector<size_t>>>& parts) {
  if (parts.empty()) return trivial(ambient, 0);
  int lo = parts.front().first.lo(), hi = parts.front().first.hi();
  for (const auto& [f, pos] : parts) {
    lo = std::min(lo, f.lo());
    hi = std::max(hi, f.hi());
  }
  std::vector<Subspace> steps;
  for (int p = lo; p <= hi; ++p) {
    Subspace s(ambient);
    for (const auto& [f, pos] : parts) s = s + f.at(p).embed(ambient, pos);
    steps.push_back(std::move(s));
  }
  return Flag(ambient, lo, std::move(steps));
}

Flag Flag::shifted(int shift) const { return Flag(ambient_, lo_ - shift, steps_); }

Flag Flag::induced(const Subquotient& sq) const {
  std::vector<Subspace> steps;
  for (int p = lo_; p <= hi(); ++p) steps.push_back(sq.image_of(intersect(at(p), sq.big())));
  return Flag(sq.dim(), lo_, std::move(steps));
}

Flag Flag::restrict_to(std::span<const size_t> coords) const {
  std::vector<Subspace> steps;
  for (const auto& s : steps_) steps.push_back(s.restrict_to(coords));
  return Flag(coords.size(), lo_, std::move(steps));
}

bool Flag::operator==(const Flag& other) const {
  if (ambient_ != other.ambient_) return false;
  const int lo = std::min(lo_, other.lo_) - 1, hi = std::max(this->hi(), other.hi());
  for (int p = lo; p <= hi; ++p)
    if (!(at(p) == other.at(p))) return false;
  return true;
}

AdaptedBasis adapted_basis(const Flag& a, const Flag& b) {
  if (a.ambient() != b.ambient()) throw PreconditionError("adapted_basis: ambient mismatch");
  const size_t n = a.ambient();
  AdaptedBasis out;
  std::vector<std::vector<Rational>> cols;
  for (int p = a.lo(); p <= a.hi(); ++p) {
    for (int k = b.lo(); k <= b.hi(); ++k) {
      const Subspace piece = intersect(a.at(p), b.at(k));
      Subspace current = intersect(a.at(p - 1), b.at(k)) + intersect(a.at(p), b.at(k - 1));
      const RationalMatrix pb = piece.basis();
      for (size_t c = 0; c < pb.cols() && current.dim() < piece.dim(); ++c) {
        auto col = pb.column(c);
        if (current.contains(col)) continue;
        RationalMatrix one(n, 1);
        one.set_column(0, col);
        current = current + Subspace::span(n, one);
        cols.push_back(std::move(col));
        out.level_a.push_back(p);
        out.level_b.push_back(k);
      }
    }
  }
  if (cols.size() != n) throw PreconditionError("adapted_basis: flags do not produce a basis");
  out.basis = RationalMatrix(n, n);
  for (size_t k = 0; k < n; ++k) out.basis.set_column(k, cols[k]);
  return out;
}

}  // namespace mhm
