#pragma once

#include "witnesskit/common.hpp"

#include <vector>

namespace witnesskit {

/// Integer partition, parts sorted descending.
struct Partition {
  std::vector<int> parts;
  int sum() const;
};

/// A d1-element increasing subset of {0,...,d2-1}; selects the image of the
/// second-factor embedding and the relabeling |i_c> = |indices[i]>.
struct Combination {
  int d1 = 0;
  int d2 = 0;
  std::vector<int> indices;
};

/// All partitions of n in reverse-lexicographic order; size p(n).
std::vector<Partition> partitions(int n);

/// All d1-subsets of {0,...,d2-1} in lexicographic order; size C(d2, d1).
std::vector<Combination> combinations(int d2, int d1);

Combination make_combination(int d1, int d2, std::vector<int> indices);

/// d2 x d2 projector onto the selected subspace.
RealMat embedding_projector(const Combination& c);

/// d2 x d1 isometry mapping |k> to |indices[k]>; V^T V = I exactly.
RealMat embedding_isometry(const Combination& c);

/// Complement of the selection in increasing order (the kernel labels).
std::vector<int> complement_indices(const Combination& c);

}  // namespace witnesskit
