#include "witnesskit/densemat.hpp"

#include <cmath>

namespace witnesskit {

BipartiteOperator::BipartiteOperator(int d1_, int d2_, Mat mat) : d1(d1_), d2(d2_), m(std::move(mat)) {
  require(d1 >= 1 && d2 >= 1, "BipartiteOperator: factor dimensions must be positive");
  require(m.rows() == m.cols() && m.rows() == static_cast<Eigen::Index>(d1) * d2,
          "BipartiteOperator: matrix must be square of size d1*d2");
}

Mat kron(const Mat& a, const Mat& b) {
  Mat z(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      z.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return z;
}

BipartiteOperator partial_transpose(const BipartiteOperator& op, Subsystem s) {
  const int d1 = op.d1, d2 = op.d2;
  Mat out(op.m.rows(), op.m.cols());
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      if (s == Subsystem::A)
        out.block(i * d2, j * d2, d2, d2) = op.m.block(j * d2, i * d2, d2, d2);
      else
        out.block(i * d2, j * d2, d2, d2) = op.m.block(i * d2, j * d2, d2, d2).transpose();
    }
  return {d1, d2, std::move(out)};
}

double min_eigenvalue(const Mat& m, double herm_eps) {
  require(is_hermitian(m, herm_eps), "min_eigenvalue: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const BipartiteOperator& op, double herm_eps) {
  return min_eigenvalue(op.m, herm_eps);
}

double trace_product(const Mat& a, const Mat& b) {
  // For Hermitian a, b: Tr(ab) = sum_ij a_ij conj(b_ij), real up to rounding.
  return a.cwiseProduct(b.conjugate()).sum().real();
}

double expectation(const BipartiteOperator& w, const BipartiteOperator& rho,
                   double herm_eps, double trace_eps) {
  require(w.d1 == rho.d1 && w.d2 == rho.d2, "expectation: dimension mismatch");
  require(is_hermitian(w.m, herm_eps), "expectation: witness is not Hermitian");
  require(is_hermitian(rho.m, herm_eps), "expectation: state is not Hermitian");
  require(std::abs(rho.m.trace().real() - 1.0) <= trace_eps && std::abs(rho.m.trace().imag()) <= trace_eps,
          "expectation: state trace is not 1");
  const cplx t = (w.m * rho.m).trace();
  require(std::abs(t.imag()) <= 1e-10, "expectation: non-negligible imaginary part");
  return t.real();
}

}  // namespace witnesskit
