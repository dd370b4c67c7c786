#pragma once

#include "witnesskit/common.hpp"

#include <vector>

namespace witnesskit {

/// Real antisymmetric d x d matrix. Construct through validate_skew so the
/// stored entries are exactly antisymmetric with a zero diagonal.
struct SkewMatrix {
  RealMat m;
  int dim() const { return static_cast<int>(m.rows()); }
};

/// Result of the block decomposition U = Q J Q^T: Q orthogonal, J built from
/// 2x2 blocks [[0,l],[-l,0]] with the invariant factors l sorted descending.
struct CanonicalForm {
  RealMat q;
  std::vector<double> lambdas;
  int rank = 0;  // always even, = 2 * lambdas.size()
};

/// The commuting-structure triple of rank-4n skew matrices on dimension
/// d = 4n + m (0 <= m <= 3); the trailing m coordinates are annihilated.
struct JTriple {
  int d = 0;
  SkewMatrix j, jp, jpp;
};

/// Wraps a square real matrix iff it is antisymmetric within `eps`,
/// symmetrizing exactly. Throws otherwise.
SkewMatrix validate_skew(const RealMat& m, double eps = tol::hermiticity);

/// |<alpha*|U|alpha>| = |alpha^T U alpha| for a unit vector alpha. Identically
/// zero in exact arithmetic for every skew U; exposed as a test oracle.
double orthogonality_identity_check(const SkewMatrix& u, const Vec& alpha);

/// Decomposes U into its canonical form. Always succeeds; the zero matrix
/// yields rank 0 with an empty factor list.
CanonicalForm canonical_decompose(const SkewMatrix& u);

/// Assembles the block-diagonal J with blocks [[0,l],[-l,0]] on coordinate
/// pairs (2i, 2i+1), zero elsewhere. Requires 2*len(lambdas) <= d, l >= 0.
SkewMatrix build_J(int d, const std::vector<double>& lambdas);

RealMat assemble_J(int d, const std::vector<double>& lambdas);

/// Builds the J/J'/J'' triple from the fixed 4x4 blocks, repeated floor(d/4)
/// times. Requires d >= 4.
JTriple build_J_triple(int d);

}  // namespace witnesskit
