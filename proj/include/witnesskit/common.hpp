#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace witnesskit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

/// Default numeric tolerances. Operations take these as defaulted arguments
/// so callers (and the CLI) can override them per run.
namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double eigen = 1e-10;
inline constexpr double orthogonality = 1e-10;
inline constexpr double cert = 1e-8;
inline constexpr double ppt = 1e-10;
}  // namespace tol

/// Thrown when an operation's precondition is violated. The CLI maps this
/// to exit code 2.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw precondition_error(msg);
}

inline bool is_hermitian(const Mat& m, double eps = tol::hermiticity) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const RealMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace witnesskit
