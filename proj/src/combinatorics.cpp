#include "witnesskit/combinatorics.hpp"

#include <algorithm>
#include <numeric>

namespace witnesskit {

int Partition::sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {
void gen_partitions(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back({cur});
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions(int n) {
  require(n >= 1, "partitions: n must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n, cur, out);
  return out;
}

std::vector<Combination> combinations(int d2, int d1) {
  require(1 <= d1 && d1 <= d2, "combinations: need 1 <= d1 <= d2");
  std::vector<Combination> out;
  std::vector<int> idx(d1);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back({d1, d2, idx});
    int i = d1 - 1;
    while (i >= 0 && idx[i] == d2 - d1 + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int k = i + 1; k < d1; ++k) idx[k] = idx[k - 1] + 1;
  }
  return out;
}

Combination make_combination(int d1, int d2, std::vector<int> indices) {
  require(static_cast<int>(indices.size()) == d1, "combination: wrong subset size");
  require(d1 <= d2, "combination: d1 must not exceed d2");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    require(indices[k] >= 0 && indices[k] < d2, "combination: index out of range");
    if (k) require(indices[k] > indices[k - 1], "combination: indices must be strictly increasing");
  }
  return {d1, d2, std::move(indices)};
}

RealMat embedding_projector(const Combination& c) {
  RealMat p = RealMat::Zero(c.d2, c.d2);
  for (int i : c.indices) p(i, i) = 1.0;
  return p;
}

RealMat embedding_isometry(const Combination& c) {
  RealMat v = RealMat::Zero(c.d2, c.d1);
  for (int k = 0; k < c.d1; ++k) v(c.indices[k], k) = 1.0;
  return v;
}

std::vector<int> complement_indices(const Combination& c) {
  std::vector<int> out;
  std::size_t k = 0;
  for (int i = 0; i < c.d2; ++i) {
    if (k < c.indices.size() && c.indices[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

}  // namespace witnesskit
