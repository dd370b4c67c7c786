#include "witnesskit/skewcanon.hpp"

#include <algorithm>
#include <cmath>

namespace witnesskit {

SkewMatrix validate_skew(const RealMat& m, double eps) {
  require(m.rows() == m.cols(), "validate_skew: matrix must be square");
  const double asym = max_abs(RealMat(m + m.transpose()));
  require(asym <= eps, "validate_skew: matrix is not antisymmetric within tolerance");
  RealMat s = 0.5 * (m - m.transpose());
  s.diagonal().setZero();
  return {std::move(s)};
}

double orthogonality_identity_check(const SkewMatrix& u, const Vec& alpha) {
  require(alpha.size() == u.m.rows(), "orthogonality_identity_check: dimension mismatch");
  require(std::abs(alpha.norm() - 1.0) <= 1e-10, "orthogonality_identity_check: alpha must be a unit vector");
  // <alpha*|U|alpha> = alpha^T U alpha (the bra of the conjugate vector undoes
  // the conjugation).
  const cplx v = alpha.transpose() * u.m.cast<cplx>() * alpha;
  return std::abs(v);
}

RealMat assemble_J(int d, const std::vector<double>& lambdas) {
  require(2 * static_cast<int>(lambdas.size()) <= d, "build_J: too many blocks for dimension");
  RealMat j = RealMat::Zero(d, d);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(lambdas[i] >= 0.0, "build_J: negative invariant factor");
    j(2 * i, 2 * i + 1) = lambdas[i];
    j(2 * i + 1, 2 * i) = -lambdas[i];
  }
  return j;
}

SkewMatrix build_J(int d, const std::vector<double>& lambdas) {
  return {assemble_J(d, lambdas)};
}

CanonicalForm canonical_decompose(const SkewMatrix& u) {
  const int d = u.dim();
  CanonicalForm cf;
  cf.q = RealMat::Identity(d, d);
  if (d == 0) return cf;

  // U^T U is symmetric PSD with the squared invariant factors as doubly
  // degenerate eigenvalues. Each invariant plane is spanned by an eigenvector
  // v and its partner -Uv/l; selecting vectors greedily by residual norm
  // keeps the pairing stable inside degenerate eigenspaces.
  const RealMat s = u.m.transpose() * u.m;
  Eigen::SelfAdjointEigenSolver<RealMat> es(s);
  const RealVec evals = es.eigenvalues();  // ascending
  const RealMat evecs = es.eigenvectors();

  const double sig_max = std::sqrt(std::max(0.0, evals.maxCoeff()));
  const double thresh = 1e-10 * sig_max;

  std::vector<int> nonzero;
  for (int i = d - 1; i >= 0; --i)
    if (std::sqrt(std::max(0.0, evals(i))) > thresh) nonzero.push_back(i);

  const int rank = static_cast<int>(nonzero.size());
  // Rank of a real skew matrix is even; an odd count here would mean a
  // singular value sits exactly on the threshold. Nudge by dropping it.
  std::vector<RealVec> basis;  // chosen plane vectors, in Q column order
  std::vector<double> lambdas;

  auto residual = [&](int idx) {
    RealVec v = evecs.col(idx);
    for (const auto& b : basis) v -= b.dot(v) * b;
    return v;
  };

  std::vector<bool> used(nonzero.size(), false);
  const int planes_wanted = rank / 2;
  struct Plane {
    double lambda;
    RealVec v, w;
  };
  std::vector<Plane> planes;
  while (static_cast<int>(planes.size()) < planes_wanted) {
    // Take the unused candidate with the largest residual.
    int best = -1;
    double best_norm = 0.0;
    RealVec best_res;
    for (std::size_t k = 0; k < nonzero.size(); ++k) {
      if (used[k]) continue;
      RealVec r = residual(nonzero[k]);
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = static_cast<int>(k);
        best_res = std::move(r);
      }
    }
    if (best < 0 || best_norm < 1e-8) break;
    used[best] = true;
    RealVec v = best_res / best_norm;
    RealVec w = -(u.m * v);
    const double lam = w.norm();
    if (lam <= thresh) continue;
    w /= lam;
    for (const auto& b : basis) w -= b.dot(w) * b;  // guard against rounding
    w -= v.dot(w) * v;
    w.normalize();
    basis.push_back(v);
    basis.push_back(w);
    planes.push_back({lam, v, w});
  }
  // Planes are pairwise orthogonal whatever the pick order, so sorting them
  // by factor size is safe and fixes the descending convention.
  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& a, const Plane& b) { return a.lambda > b.lambda; });
  basis.clear();
  for (const auto& pl : planes) {
    basis.push_back(pl.v);
    basis.push_back(pl.w);
    lambdas.push_back(pl.lambda);
  }

  // Kernel eigenvectors fill the trailing columns.
  std::vector<RealVec> kernel;
  for (int i = 0; i < d; ++i) {
    if (std::sqrt(std::max(0.0, evals(i))) > thresh) continue;
    RealVec v = evecs.col(i);
    for (const auto& b : basis) v -= b.dot(v) * b;
    for (const auto& b : kernel) v -= b.dot(v) * b;
    const double nv = v.norm();
    if (nv < 1e-8) continue;
    kernel.push_back(v / nv);
  }

  CanonicalForm out;
  out.rank = 2 * static_cast<int>(lambdas.size());
  out.lambdas = std::move(lambdas);
  out.q = RealMat::Zero(d, d);
  int col = 0;
  for (const auto& b : basis) out.q.col(col++) = b;
  for (const auto& b : kernel) out.q.col(col++) = b;
  // Defensive completion: if rounding starved the kernel sweep, extend to a
  // full orthonormal basis via projected coordinate vectors.
  for (int i = 0; i < d && col < d; ++i) {
    RealVec v = RealVec::Unit(d, i);
    for (int c = 0; c < col; ++c) v -= out.q.col(c).dot(v) * out.q.col(c);
    const double nv = v.norm();
    if (nv < 1e-6) continue;
    out.q.col(col++) = v / nv;
  }
  return out;
}

namespace {
RealMat block_j() {
  RealMat b(4, 4);
  b << 0, 1, 0, 0,
      -1, 0, 0, 0,
       0, 0, 0, 1,
       0, 0, -1, 0;
  return b;
}
RealMat block_jp() {
  RealMat b(4, 4);
  b << 0, 0, 0, 1,
       0, 0, 1, 0,
       0, -1, 0, 0,
      -1, 0, 0, 0;
  return b;
}
RealMat block_jpp() {
  RealMat b(4, 4);
  b << 0, 0, 1, 0,
       0, 0, 0, -1,
      -1, 0, 0, 0,
       0, 1, 0, 0;
  return b;
}

RealMat repeat_block(int d, const RealMat& b) {
  RealMat m = RealMat::Zero(d, d);
  for (int k = 0; 4 * k + 4 <= d; ++k) m.block(4 * k, 4 * k, 4, 4) = b;
  return m;
}
}  // namespace

JTriple build_J_triple(int d) {
  require(d >= 4, "build_J_triple: dimension must be at least 4");
  JTriple t;
  t.d = d;
  t.j = {repeat_block(d, block_j())};
  t.jp = {repeat_block(d, block_jp())};
  t.jpp = {repeat_block(d, block_jpp())};
  return t;
}

}  // namespace witnesskit
