#include "mhm/generators.hpp"

namespace mhm {

RationalMatrix jordan_matrix(const std::vector<size_t>& blocks) {
  size_t n = 0;
  for (auto b : blocks) n += b;
  RationalMatrix j(n, n);
  size_t off = 0;
  for (auto b : blocks) {
    for (size_t i = 0; i + 1 < b; ++i) j(off + i, off + i + 1) = 1;
    off += b;
  }
  return j;
}

RationalMatrix random_invertible(std::mt19937& rng, size_t n) {
  std::uniform_int_distribution<int> dist(-2, 2);
  while (true) {
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    if (rank(m) == n) return m;
  }
}

PlantedNilpotent random_nilpotent(std::mt19937& rng, size_t max_dim) {
  std::uniform_int_distribution<size_t> dim_dist(1, max_dim);
  size_t left = dim_dist(rng);
  PlantedNilpotent out;
  while (left > 0) {
    std::uniform_int_distribution<size_t> part(1, left);
    const size_t b = part(rng);
    out.blocks.push_back(b);
    left -= b;
  }
  const auto p = random_invertible(rng, jordan_matrix(out.blocks).rows());
  out.n = p * jordan_matrix(out.blocks) * inverse(p);
  return out;
}

std::map<int, size_t> jordan_weight_dims(const std::vector<size_t>& blocks, int center) {
  std::map<int, size_t> out;
  for (auto s : blocks)
    for (size_t k = 0; k < s; ++k) ++out[center - static_cast<int>(s) + 1 + 2 * static_cast<int>(k)];
  return out;
}

}  // namespace mhm
