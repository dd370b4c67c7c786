#include "witnesskit/witnesses.hpp"

#include <cmath>

namespace witnesskit {

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::FromU: return "from-U";
    case WitnessKind::Canonical: return "canonical";
    case WitnessKind::ConjugatedPsi: return "conjugated-psi";
    case WitnessKind::ConjugatedJ: return "conjugated-J";
    case WitnessKind::Partition: return "partition";
    case WitnessKind::Embedded: return "embedded";
    case WitnessKind::Extended: return "extended";
    case WitnessKind::OpcCore: return "opc-core";
  }
  return "unknown";
}

BipartiteOperator max_entangled(int d) {
  require(d >= 1, "max_entangled: dimension must be positive");
  Mat p = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0 / d;
  return {d, d, std::move(p)};
}

namespace {

// d * (K^T x I) |psi><psi|^{T_A} (K x I) for a real generator K on the first
// factor. |psi><psi|^{T_A} = SWAP / d, so the result is
// sum_{k,l} (K^T|k><l|K) x |l><k|.
Mat sandwiched_swap(int d, const RealMat& k) {
  Mat out = Mat::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      // entry <a,l| . |b,k> = K^T(a,k) K(l,b) = K(k,a) K(l,b)
      for (int kk = 0; kk < d; ++kk) {
        if (k(kk, a) == 0.0) continue;
        for (int l = 0; l < d; ++l) {
          const double v = k(kk, a) * k(l, b);
          if (v != 0.0) out(a * d + l, b * d + kk) += v;
        }
      }
    }
  return out;
}

void check_lambdas(const std::vector<double>& lambdas, int d) {
  require(2 * static_cast<int>(lambdas.size()) <= d, "witness: too many invariant factors for dimension");
  for (double l : lambdas)
    require(l >= 0.0 && l <= 1.0 + 1e-12, "witness: invariant factor outside [0,1]");
}

// d |psi><psi| assembled without the 1/d round trip so unit-factor witnesses
// have exact integer entries.
Mat scaled_projector(int d) {
  Mat p = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0;
  return p;
}

Mat witness_matrix(int d, const RealMat& u) {
  return Mat::Identity(d * d, d * d) - scaled_projector(d) - sandwiched_swap(d, u);
}

}  // namespace

Witness witness_from_U(const SkewMatrix& u) {
  const int d = u.dim();
  CanonicalForm cf = canonical_decompose(u);
  for (double l : cf.lambdas)
    require(l <= 1.0 + 1e-12, "witness_from_U: invariant factor above 1 violates the normalization assumption");
  Witness w;
  w.op = {d, d, witness_matrix(d, u.m)};
  w.prov.kind = WitnessKind::FromU;
  w.prov.d1 = w.prov.d2 = d;
  w.prov.lambdas = cf.lambdas;
  w.prov.generator = u.m;
  return w;
}

Witness canonical_witness(int d, const std::vector<double>& lambdas) {
  check_lambdas(lambdas, d);
  Witness w;
  w.op = {d, d, witness_matrix(d, assemble_J(d, lambdas))};
  w.prov.kind = WitnessKind::Canonical;
  w.prov.d1 = w.prov.d2 = d;
  w.prov.lambdas = lambdas;
  return w;
}

Witness canonical_witness_unit(int d, int n) {
  require(2 * n <= d && n >= 0, "canonical_witness_unit: need 2n <= d");
  return canonical_witness(d, std::vector<double>(n, 1.0));
}

namespace {

struct SumBuilder {
  Mat m;
  int d;
  explicit SumBuilder(int dim) : m(Mat::Zero(dim * dim, dim * dim)), d(dim) {}
  // coeff * |i,j><k,l|
  void add(double coeff, int i, int j, int k, int l) { m(i * d + j, k * d + l) += coeff; }
};

}  // namespace

Mat canonical_witness_expanded(int d, const std::vector<double>& lambdas) {
  check_lambdas(lambdas, d);
  const int n = static_cast<int>(lambdas.size());
  SumBuilder b(d);
  for (int i = 0; i < n; ++i) {
    const double c = 1.0 - lambdas[i] * lambdas[i];
    b.add(c, 2 * i, 2 * i + 1, 2 * i, 2 * i + 1);
    b.add(c, 2 * i + 1, 2 * i, 2 * i + 1, 2 * i);
    b.add(-c, 2 * i, 2 * i, 2 * i + 1, 2 * i + 1);
    b.add(-c, 2 * i + 1, 2 * i + 1, 2 * i, 2 * i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      b.add(1, 2 * i, 2 * j, 2 * i, 2 * j);
      b.add(1, 2 * i, 2 * j + 1, 2 * i, 2 * j + 1);
      b.add(1, 2 * i + 1, 2 * j, 2 * i + 1, 2 * j);
      b.add(1, 2 * i + 1, 2 * j + 1, 2 * i + 1, 2 * j + 1);
      b.add(-1, 2 * i, 2 * i, 2 * j, 2 * j);
      b.add(-1, 2 * i, 2 * i, 2 * j + 1, 2 * j + 1);
      b.add(-1, 2 * i + 1, 2 * i + 1, 2 * j, 2 * j);
      b.add(-1, 2 * i + 1, 2 * i + 1, 2 * j + 1, 2 * j + 1);
      const double ll = lambdas[i] * lambdas[j];
      b.add(-ll, 2 * i + 1, 2 * j, 2 * j + 1, 2 * i);
      b.add(ll, 2 * i + 1, 2 * j + 1, 2 * j, 2 * i);
      b.add(ll, 2 * i, 2 * j, 2 * j + 1, 2 * i + 1);
      b.add(-ll, 2 * i, 2 * j + 1, 2 * j, 2 * i + 1);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 2 * n; j < d; ++j) {
      b.add(1, 2 * i, j, 2 * i, j);
      b.add(1, 2 * i + 1, j, 2 * i + 1, j);
      b.add(1, j, 2 * i, j, 2 * i);
      b.add(1, j, 2 * i + 1, j, 2 * i + 1);
      b.add(-1, 2 * i, 2 * i, j, j);
      b.add(-1, 2 * i + 1, 2 * i + 1, j, j);
      b.add(-1, j, j, 2 * i, 2 * i);
      b.add(-1, j, j, 2 * i + 1, 2 * i + 1);
    }
  for (int i = 2 * n; i < d; ++i)
    for (int j = 2 * n; j < d; ++j) {
      b.add(1, i, j, i, j);
      b.add(-1, i, i, j, j);
    }
  return b.m;
}

WitnessSplit split_canonical(int d, int n) {
  require(2 * n <= d && n >= 0, "split_canonical: need 2n <= d");
  SumBuilder o1(d), o2(d), opc(d);
  for (int i = 0; i < n; ++i)
    for (int j = 2 * n; j < d; ++j) {
      o1.add(1, 2 * i, j, 2 * i, j);
      o1.add(1, 2 * i + 1, j, 2 * i + 1, j);
      o1.add(1, j, 2 * i, j, 2 * i);
      o1.add(1, j, 2 * i + 1, j, 2 * i + 1);
      o1.add(-1, 2 * i, 2 * i, j, j);
      o1.add(-1, 2 * i + 1, 2 * i + 1, j, j);
      o1.add(-1, j, j, 2 * i, 2 * i);
      o1.add(-1, j, j, 2 * i + 1, 2 * i + 1);
    }
  for (int i = 2 * n; i < d; ++i)
    for (int j = 2 * n; j < d; ++j) {
      if (i == j) continue;
      o2.add(1, i, j, i, j);
      o2.add(-1, i, i, j, j);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      opc.add(1, 2 * i, 2 * j, 2 * i, 2 * j);
      opc.add(1, 2 * i, 2 * j + 1, 2 * i, 2 * j + 1);
      opc.add(1, 2 * i + 1, 2 * j, 2 * i + 1, 2 * j);
      opc.add(1, 2 * i + 1, 2 * j + 1, 2 * i + 1, 2 * j + 1);
      opc.add(-1, 2 * i, 2 * i, 2 * j, 2 * j);
      opc.add(-1, 2 * i, 2 * i, 2 * j + 1, 2 * j + 1);
      opc.add(-1, 2 * i + 1, 2 * i + 1, 2 * j, 2 * j);
      opc.add(-1, 2 * i + 1, 2 * i + 1, 2 * j + 1, 2 * j + 1);
      opc.add(-1, 2 * i + 1, 2 * j, 2 * j + 1, 2 * i);
      opc.add(1, 2 * i + 1, 2 * j + 1, 2 * j, 2 * i);
      opc.add(1, 2 * i, 2 * j, 2 * j + 1, 2 * i + 1);
      opc.add(-1, 2 * i, 2 * j + 1, 2 * j, 2 * i + 1);
    }
  return {{d, d, std::move(o1.m)}, {d, d, std::move(o2.m)}, {d, d, std::move(opc.m)}};
}

Witness opc_core_witness(int d, int n) {
  WitnessSplit split = split_canonical(d, n);
  Witness w;
  w.op = std::move(split.w_opc);
  w.prov.kind = WitnessKind::OpcCore;
  w.prov.d1 = w.prov.d2 = d;
  w.prov.lambdas.assign(n, 1.0);
  return w;
}

Witness conjugated_witness(int d, const std::vector<double>& lambdas, const RealMat& q,
                           ConjugationMode mode) {
  check_lambdas(lambdas, d);
  require(q.rows() == d && q.cols() == d, "conjugated_witness: q has wrong size");
  require(max_abs(RealMat(q * q.transpose() - RealMat::Identity(d, d))) <= tol::orthogonality,
          "conjugated_witness: q is not orthogonal");
  const RealMat j = assemble_J(d, lambdas);
  const Mat eye = Mat::Identity(d * d, d * d);
  Witness w;
  if (mode == ConjugationMode::J) {
    const RealMat qjq = q * j * q.transpose();
    w.op = {d, d, eye - scaled_projector(d) - sandwiched_swap(d, qjq)};
    w.prov.kind = WitnessKind::ConjugatedJ;
  } else {
    const Mat qi = kron(q.cast<cplx>(), Mat::Identity(d, d));
    // I - d (Q^T x I) P (Q x I) - d (J^T Q^T x I) P^{T_A} (Q J x I)
    const Mat moved_p = qi.transpose() * scaled_projector(d) * qi;
    w.op = {d, d, eye - moved_p - sandwiched_swap(d, RealMat(q * j))};
    w.prov.kind = WitnessKind::ConjugatedPsi;
  }
  w.prov.d1 = w.prov.d2 = d;
  w.prov.lambdas = lambdas;
  w.prov.generator = q;
  return w;
}

namespace {
void check_partition(int d, const std::vector<int>& mu) {
  require(d >= 2 && d % 2 == 0, "partition_witness: dimension must be even");
  int sum = 0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    require(mu[k] >= 1, "partition: parts must be positive");
    if (k) require(mu[k] <= mu[k - 1], "partition: parts must be sorted descending");
    sum += mu[k];
  }
  require(sum == d / 2, "partition: parts must sum to d/2");
}
}  // namespace

Witness partition_witness(int d, const std::vector<int>& mu) {
  check_partition(d, mu);
  Mat m = Mat::Identity(d * d, d * d) - scaled_projector(d);
  int start = 0;
  for (int part : mu) {
    std::vector<double> lam(d / 2, 0.0);
    RealMat u = RealMat::Zero(d, d);
    for (int k = start; k < start + part; ++k) {
      u(2 * k, 2 * k + 1) = 1.0;
      u(2 * k + 1, 2 * k) = -1.0;
    }
    m -= sandwiched_swap(d, u);
    start += part;
  }
  Witness w;
  w.op = {d, d, std::move(m)};
  w.prov.kind = WitnessKind::Partition;
  w.prov.d1 = w.prov.d2 = d;
  w.prov.mu = mu;
  w.prov.lambdas.assign(d / 2, 1.0);
  return w;
}

Mat partition_witness_blocks(int d, const std::vector<int>& mu) {
  check_partition(d, mu);
  const int n = d / 2;
  SumBuilder b(d);
  int lo = 0;
  for (int part : mu) {
    const int hi = lo + part;
    for (int i = lo; i < hi; ++i)
      for (int j = lo; j < hi; ++j) {
        if (i == j) continue;
        b.add(1, 2 * i, 2 * j, 2 * i, 2 * j);
        b.add(1, 2 * i, 2 * j + 1, 2 * i, 2 * j + 1);
        b.add(1, 2 * i + 1, 2 * j, 2 * i + 1, 2 * j);
        b.add(1, 2 * i + 1, 2 * j + 1, 2 * i + 1, 2 * j + 1);
        b.add(-1, 2 * i, 2 * i, 2 * j, 2 * j);
        b.add(-1, 2 * i, 2 * i, 2 * j + 1, 2 * j + 1);
        b.add(-1, 2 * i + 1, 2 * i + 1, 2 * j, 2 * j);
        b.add(-1, 2 * i + 1, 2 * i + 1, 2 * j + 1, 2 * j + 1);
        b.add(-1, 2 * i + 1, 2 * j, 2 * j + 1, 2 * i);
        b.add(1, 2 * i + 1, 2 * j + 1, 2 * j, 2 * i);
        b.add(1, 2 * i, 2 * j, 2 * j + 1, 2 * i + 1);
        b.add(-1, 2 * i, 2 * j + 1, 2 * j, 2 * i + 1);
      }
    // cross terms against every later part
    for (int i = lo; i < hi; ++i)
      for (int j = hi; j < n; ++j) {
        b.add(1, 2 * i, 2 * j, 2 * i, 2 * j);
        b.add(1, 2 * i, 2 * j + 1, 2 * i, 2 * j + 1);
        b.add(1, 2 * i + 1, 2 * j, 2 * i + 1, 2 * j);
        b.add(1, 2 * i + 1, 2 * j + 1, 2 * i + 1, 2 * j + 1);
        b.add(-1, 2 * i, 2 * i, 2 * j, 2 * j);
        b.add(-1, 2 * i, 2 * i, 2 * j + 1, 2 * j + 1);
        b.add(-1, 2 * i + 1, 2 * i + 1, 2 * j, 2 * j);
        b.add(-1, 2 * i + 1, 2 * i + 1, 2 * j + 1, 2 * j + 1);
        b.add(1, 2 * j, 2 * i, 2 * j, 2 * i);
        b.add(1, 2 * j, 2 * i + 1, 2 * j, 2 * i + 1);
        b.add(1, 2 * j + 1, 2 * i, 2 * j + 1, 2 * i);
        b.add(1, 2 * j + 1, 2 * i + 1, 2 * j + 1, 2 * i + 1);
        b.add(-1, 2 * j, 2 * j, 2 * i, 2 * i);
        b.add(-1, 2 * j, 2 * j, 2 * i + 1, 2 * i + 1);
        b.add(-1, 2 * j + 1, 2 * j + 1, 2 * i, 2 * i);
        b.add(-1, 2 * j + 1, 2 * j + 1, 2 * i + 1, 2 * i + 1);
      }
    lo = hi;
  }
  return b.m;
}

Witness embedded_witness(int d1, int d2, const Combination& combo,
                         const std::vector<double>& lambdas) {
  require(d1 <= d2, "embedded_witness: need d1 <= d2");
  require(combo.d1 == d1 && combo.d2 == d2, "embedded_witness: combination shape mismatch");
  check_lambdas(lambdas, d1);
  const Mat v = embedding_isometry(combo).cast<cplx>();
  const Mat lift = kron(Mat::Identity(d1, d1), v);
  Witness inner = canonical_witness(d1, lambdas);
  Witness w;
  w.op = {d1, d2, Mat(lift * inner.op.m * lift.transpose())};
  w.prov.kind = WitnessKind::Embedded;
  w.prov.d1 = d1;
  w.prov.d2 = d2;
  w.prov.lambdas = lambdas;
  w.prov.combo = combo.indices;
  return w;
}

Mat embedded_witness_expanded(int d1, int d2, const Combination& combo, int n1) {
  require(2 * n1 <= d1, "embedded_witness_expanded: need 2n <= d1");
  const auto& c = combo.indices;
  Mat m = Mat::Zero(d1 * d2, d1 * d2);
  // coeff * |i, c[j]> <k, c[l]|
  auto add = [&](double coeff, int i, int j, int k, int l) {
    m(i * d2 + c[j], k * d2 + c[l]) += coeff;
  };
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      if (i == j) continue;
      add(1, 2 * i, 2 * j, 2 * i, 2 * j);
      add(1, 2 * i, 2 * j + 1, 2 * i, 2 * j + 1);
      add(1, 2 * i + 1, 2 * j, 2 * i + 1, 2 * j);
      add(1, 2 * i + 1, 2 * j + 1, 2 * i + 1, 2 * j + 1);
      add(-1, 2 * i, 2 * i, 2 * j, 2 * j);
      add(-1, 2 * i, 2 * i, 2 * j + 1, 2 * j + 1);
      add(-1, 2 * i + 1, 2 * i + 1, 2 * j, 2 * j);
      add(-1, 2 * i + 1, 2 * i + 1, 2 * j + 1, 2 * j + 1);
      add(-1, 2 * i + 1, 2 * j, 2 * j + 1, 2 * i);
      add(1, 2 * i + 1, 2 * j + 1, 2 * j, 2 * i);
      add(1, 2 * i, 2 * j, 2 * j + 1, 2 * i + 1);
      add(-1, 2 * i, 2 * j + 1, 2 * j, 2 * i + 1);
    }
  for (int i = 0; i < n1; ++i)
    for (int j = 2 * n1; j < d1; ++j) {
      add(1, 2 * i, j, 2 * i, j);
      add(1, 2 * i + 1, j, 2 * i + 1, j);
      add(1, j, 2 * i, j, 2 * i);
      add(1, j, 2 * i + 1, j, 2 * i + 1);
      add(-1, 2 * i, 2 * i, j, j);
      add(-1, 2 * i + 1, 2 * i + 1, j, j);
      add(-1, j, j, 2 * i, 2 * i);
      add(-1, j, j, 2 * i + 1, 2 * i + 1);
    }
  for (int i = 2 * n1; i < d1; ++i)
    for (int j = 2 * n1; j < d1; ++j) {
      add(1, i, j, i, j);
      add(-1, i, i, j, j);
    }
  return m;
}

Witness extended_witness(int d) {
  require(d >= 4, "extended_witness: dimension must be at least 4");
  const JTriple t = build_J_triple(d);
  Mat m = Mat::Identity(d * d, d * d) - scaled_projector(d);
  m -= sandwiched_swap(d, t.j.m);
  m -= sandwiched_swap(d, t.jp.m);
  m -= sandwiched_swap(d, t.jpp.m);
  Witness w;
  w.op = {d, d, std::move(m)};
  w.prov.kind = WitnessKind::Extended;
  w.prov.d1 = w.prov.d2 = d;
  w.prov.lambdas.assign(2 * (d / 4), 1.0);
  return w;
}

Mat jamiolkowski_apply(const Witness& w, const Mat& rho) {
  const int d1 = w.op.d1, d2 = w.op.d2;
  require(rho.rows() == d2 && rho.cols() == d2, "jamiolkowski_apply: state dimension mismatch");
  require(is_hermitian(rho), "jamiolkowski_apply: state is not Hermitian");
  require(std::abs(rho.trace().real() - 1.0) <= tol::trace, "jamiolkowski_apply: state trace is not 1");
  require(min_eigenvalue(rho) >= -tol::ppt, "jamiolkowski_apply: state is not positive semidefinite");
  const Mat prod = w.op.m * kron(Mat::Identity(d1, d1), rho.transpose());
  Mat out = Mat::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int k = 0; k < d1; ++k) {
      cplx s = 0.0;
      for (int j = 0; j < d2; ++j) s += prod(i * d2 + j, k * d2 + j);
      out(i, k) = s;
    }
  return out;
}

Mat canonical_map_closed_form(int d, const std::vector<double>& lambdas, const Mat& rho) {
  const Mat j = assemble_J(d, lambdas).cast<cplx>();
  return rho.trace() * Mat::Identity(d, d) - rho - j.transpose() * rho.transpose() * j;
}

}  // namespace witnesskit
