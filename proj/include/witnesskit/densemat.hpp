#pragma once

#include "witnesskit/common.hpp"

namespace witnesskit {

/// Operator on a bipartite space H_{d1} ⊗ H_{d2} with the basis ordering
/// |i,j> -> i*d2 + j (first factor is the slow index).
struct BipartiteOperator {
  int d1 = 0;
  int d2 = 0;
  Mat m;

  BipartiteOperator() = default;
  BipartiteOperator(int d1_, int d2_, Mat mat);

  int dim() const { return d1 * d2; }
};

enum class Subsystem { A, B };

Mat kron(const Mat& a, const Mat& b);

/// Partial transpose on the chosen factor. T_A exchanges the d1 x d1 block
/// grid, T_B transposes within each block. Involution; preserves trace and
/// hermiticity.
BipartiteOperator partial_transpose(const BipartiteOperator& op, Subsystem s = Subsystem::A);

/// Smallest eigenvalue of a Hermitian operator. Throws if the input is not
/// Hermitian within `herm_eps`.
double min_eigenvalue(const BipartiteOperator& op, double herm_eps = tol::hermiticity);
double min_eigenvalue(const Mat& m, double herm_eps = tol::hermiticity);

/// Tr(w * rho) for a Hermitian observable against a unit-trace Hermitian
/// state. The imaginary part must be negligible; it is asserted then dropped.
double expectation(const BipartiteOperator& w, const BipartiteOperator& rho,
                   double herm_eps = tol::hermiticity, double trace_eps = tol::trace);

/// Tr(a * b) for Hermitian a, b without the unit-trace requirement
/// (used for unnormalized family operators).
double trace_product(const Mat& a, const Mat& b);

}  // namespace witnesskit
