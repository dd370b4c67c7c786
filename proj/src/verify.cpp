#include "witnesskit/verify.hpp"

#include "witnesskit/rng.hpp"

#include <algorithm>
#include <cmath>

namespace witnesskit {

namespace {

Mat effective_second(const Mat& w, const Vec& eta, int d1, int d2) {
  Mat b = Mat::Zero(d2, d2);
  for (int p = 0; p < d1; ++p)
    for (int q = 0; q < d1; ++q) {
      const cplx coeff = std::conj(eta(p)) * eta(q);
      if (coeff == cplx(0.0, 0.0)) continue;
      b.noalias() += coeff * w.block(p * d2, q * d2, d2, d2);
    }
  return b;
}

Mat effective_first(const Mat& w, const Vec& zeta, int d1, int d2) {
  Mat a = Mat::Zero(d1, d1);
  for (int p = 0; p < d1; ++p)
    for (int q = 0; q < d1; ++q)
      a(p, q) = zeta.adjoint() * w.block(p * d2, q * d2, d2, d2) * zeta;
  return a;
}

struct EigMin {
  double value;
  Vec vector;
};

EigMin min_eigpair(const Mat& h, Field field) {
  if (field == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RealMat> es(h.real());
    return {es.eigenvalues()(0), es.eigenvectors().col(0).cast<cplx>()};
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

}  // namespace

CertReport product_minimize(const Witness& w, const SeeSawConfig& cfg) {
  require(cfg.restarts >= 1, "product_minimize: need at least one restart");
  require(cfg.conv_tol > 0.0, "product_minimize: tolerance must be positive");
  require(is_hermitian(w.op.m), "product_minimize: witness is not Hermitian");
  const int d1 = w.op.d1, d2 = w.op.d2;
  const double scale = 1.0 + max_abs(w.op.m);

  CertReport rep;
  rep.cert_tol = cfg.cert_tol;
  rep.min_value = std::numeric_limits<double>::infinity();
  long total_iters = 0;
  rep.restarts.min_iters = cfg.max_iters;

  for (int r = 0; r < cfg.restarts; ++r) {
    auto rng = substream(cfg.seed, static_cast<std::uint64_t>(r));
    Vec eta = (cfg.field == Field::Real) ? Vec(random_real_unit(rng, d1).cast<cplx>())
                                         : random_complex_unit(rng, d1);
    // The first second-factor vector comes from the effective operator of the
    // initial eta rather than a random draw.
    EigMin z = min_eigpair(effective_second(w.op.m, eta, d1, d2), cfg.field);
    Vec zeta = z.vector;
    double val = z.value;
    int iters = 0;
    bool converged = false;
    for (; iters < cfg.max_iters; ++iters) {
      const double prev = val;
      EigMin e = min_eigpair(effective_first(w.op.m, zeta, d1, d2), cfg.field);
      if (e.value > prev + 1e-14 * scale)
        throw std::logic_error("product_minimize: objective increased on first-factor update");
      eta = e.vector;
      EigMin zz = min_eigpair(effective_second(w.op.m, eta, d1, d2), cfg.field);
      if (zz.value > e.value + 1e-14 * scale)
        throw std::logic_error("product_minimize: objective increased on second-factor update");
      zeta = zz.vector;
      val = zz.value;
      if (std::abs(prev - val) <= cfg.conv_tol) {
        converged = true;
        ++iters;
        break;
      }
    }
    total_iters += iters;
    rep.restarts.min_iters = std::min(rep.restarts.min_iters, iters);
    rep.restarts.max_iters = std::max(rep.restarts.max_iters, iters);
    if (converged) ++rep.restarts.converged;
    if (val < rep.min_value) {
      rep.min_value = val;
      rep.eta = eta;
      rep.zeta = zeta;
    }
  }
  rep.restarts.mean_iters = static_cast<double>(total_iters) / cfg.restarts;
  rep.is_ew = rep.min_value >= -cfg.cert_tol;
  return rep;
}

CertReport certify(Witness& w, const SeeSawConfig& cfg) {
  CertReport rep = product_minimize(w, cfg);
  if (rep.is_ew) w.certified = true;
  return rep;
}

PptResult is_ppt(const BipartiteOperator& rho, double eps) {
  require(is_hermitian(rho.m), "is_ppt: state is not Hermitian");
  require(std::abs(rho.m.trace().real() - 1.0) <= 1e-10, "is_ppt: state trace is not 1");
  const double me = min_eigenvalue(partial_transpose(rho, Subsystem::A));
  return {me >= -eps, me};
}

std::string to_string(DetectionClass c) {
  switch (c) {
    case DetectionClass::Undetected: return "undetected";
    case DetectionClass::PptEntangledDetected: return "ppt_entangled_detected";
    case DetectionClass::NptWindow: return "npt_window";
    case DetectionClass::NoBound: return "no-bound";
  }
  return "unknown";
}

std::optional<double> detection_bound(const Provenance& prov) {
  switch (prov.kind) {
    case WitnessKind::Canonical:
      if (prov.n() >= 2) return canonical_detection_bound(prov.d1, prov.n());
      return std::nullopt;
    case WitnessKind::Partition:
      return partition_detection_bound(prov.d1, prov.mu);
    case WitnessKind::Embedded:
      if (prov.n() >= 2) return canonical_detection_bound(prov.d1, prov.n());
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<double> npt_floor(const Provenance& prov) {
  switch (prov.kind) {
    case WitnessKind::Canonical:
      if (prov.n() >= 2) return canonical_npt_floor(prov.d1, prov.n());
      return std::nullopt;
    case WitnessKind::Partition:
      return partition_npt_floor(prov.d1, prov.mu);
    case WitnessKind::Embedded:
      if (prov.n() >= 2) return canonical_npt_floor(prov.d1, prov.n());
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

DetectionReport classify_detection(const Witness& w, const BipartiteOperator& rho) {
  DetectionReport rep;
  rep.value = expectation(w.op, rho);
  rep.ppt = is_ppt(rho);
  rep.bound = detection_bound(w.prov);
  if (rep.bound) rep.margin = rep.value - *rep.bound;
  if (rep.value >= -1e-12) {
    rep.cls = DetectionClass::Undetected;
  } else if (!rep.ppt.ppt) {
    rep.cls = DetectionClass::NptWindow;
  } else if (!rep.bound) {
    // negative on a PPT state but no state-independent bound formula applies
    // (extended kind, or a block count below the bound's domain)
    rep.cls = DetectionClass::NoBound;
  } else {
    rep.cls = DetectionClass::PptEntangledDetected;
  }
  return rep;
}

namespace {

struct KernelCollector {
  const Mat* w;
  int dim;
  std::vector<Vec> vecs;
  double worst = 0.0;

  void push(const Vec& eta, const Vec& zeta) {
    Vec gamma = kron(Mat(eta), Mat(zeta));
    const double nrm = gamma.norm();
    if (nrm < 1e-12) return;
    gamma /= nrm;
    const double expv = std::abs((gamma.adjoint() * (*w) * gamma)(0, 0));
    if (expv > 1e-8)
      throw std::logic_error("kernel_span_rank: sampled product is not a kernel member");
    worst = std::max(worst, expv);
    vecs.push_back(std::move(gamma));
  }
};

// grid of single- and two-coordinate unit vectors over the given support
std::vector<Vec> coordinate_grid(int d, const std::vector<int>& support) {
  std::vector<Vec> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t x = 0; x < support.size(); ++x) {
    Vec e = Vec::Zero(d);
    e(support[x]) = 1.0;
    out.push_back(e);
    for (std::size_t y = x + 1; y < support.size(); ++y) {
      Vec u = Vec::Zero(d), v = Vec::Zero(d), wv = Vec::Zero(d);
      u(support[x]) = s;
      u(support[y]) = s;
      v(support[x]) = s;
      v(support[y]) = -s;
      wv(support[x]) = s;
      wv(support[y]) = cplx(0.0, s);
      out.push_back(u);
      out.push_back(v);
      out.push_back(wv);
    }
  }
  return out;
}

std::vector<std::pair<cplx, cplx>> mixture_grid() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{1.0, 0.0}, {0.0, 1.0}, {s, s}, {s, -s}, {s, cplx(0.0, s)}};
}

Vec random_support_unit(std::mt19937_64& rng, int d, const std::vector<int>& support) {
  Vec v = Vec::Zero(d);
  Vec r = random_complex_unit(rng, static_cast<int>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) v(support[k]) = r(k);
  return v;
}

}  // namespace

KernelSpanReport kernel_span_rank(const Witness& w, int budget, std::uint64_t seed,
                                  const KernelFamilies& fam) {
  require(w.certified, "kernel_span_rank: witness must be certified first");
  const int d1 = w.op.d1, d2 = w.op.d2;
  require(d1 == d2, "kernel_span_rank: supported for equal factor dimensions");
  const int d = d1;
  const int dim = d1 * d2;
  if (budget <= 0) budget = 4 * dim;

  KernelCollector col;
  col.w = &w.op.m;
  col.dim = dim;

  // generators with unit invariant factors, per provenance
  std::vector<RealMat> gens;
  std::vector<std::vector<int>> gen_support;
  const int n = w.prov.n();
  auto block_support = [&](int lo_block, int count) {
    std::vector<int> s;
    for (int k = lo_block; k < lo_block + count; ++k) {
      s.push_back(2 * k);
      s.push_back(2 * k + 1);
    }
    return s;
  };
  switch (w.prov.kind) {
    case WitnessKind::Canonical:
    case WitnessKind::OpcCore: {
      bool unit = true;
      for (double l : w.prov.lambdas) unit = unit && std::abs(l - 1.0) <= 1e-12;
      if (n >= 1 && unit) {
        gens.push_back(assemble_J(d, w.prov.lambdas));
        gen_support.push_back(block_support(0, n));
      }
      break;
    }
    case WitnessKind::Partition: {
      int lo = 0;
      for (int part : w.prov.mu) {
        RealMat u = RealMat::Zero(d, d);
        for (int k = lo; k < lo + part; ++k) {
          u(2 * k, 2 * k + 1) = 1.0;
          u(2 * k + 1, 2 * k) = -1.0;
        }
        gens.push_back(u);
        gen_support.push_back(block_support(lo, part));
        lo += part;
      }
      break;
    }
    default:
      break;
  }

  auto rng = substream(seed, 0x6b65726e);

  if (fam.support_block) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const RealMat& J = gens[g];
      const auto grid = coordinate_grid(d, gen_support[g]);
      for (const Vec& eta : grid)
        for (const auto& [alpha, beta] : mixture_grid()) {
          const Vec jeta = J.cast<cplx>() * eta;
          col.push(eta, Vec(alpha * eta.conjugate() + beta * jeta));
        }
      for (int k = 0; k < budget / 4 + 1; ++k) {
        const Vec eta = random_support_unit(rng, d, gen_support[g]);
        Vec ab = random_complex_unit(rng, 2);
        const Vec jeta = J.cast<cplx>() * eta;
        col.push(eta, Vec(ab(0) * eta.conjugate() + ab(1) * jeta));
      }
    }
  }

  if (fam.conjugate_full) {
    std::vector<int> full(d);
    for (int i = 0; i < d; ++i) full[i] = i;
    const bool real_only = w.prov.kind == WitnessKind::Extended;
    for (const Vec& eta : coordinate_grid(d, full)) {
      if (real_only && max_abs(Mat(eta.imag().cast<cplx>())) > 0) continue;
      col.push(eta, Vec(eta.conjugate()));
    }
    for (int k = 0; k < budget; ++k) {
      const Vec eta = real_only ? Vec(random_real_unit(rng, d).cast<cplx>())
                                : random_complex_unit(rng, d);
      col.push(eta, Vec(eta.conjugate()));
    }
    if (real_only) {
      const JTriple t = build_J_triple(d);
      for (int k = 0; k < budget; ++k) {
        const Vec eta = random_real_unit(rng, d).cast<cplx>();
        for (const RealMat* K : {&t.j.m, &t.jp.m, &t.jpp.m})
          col.push(eta, Vec(K->cast<cplx>() * eta));
      }
    }
  }

  // families for the core supported on the generator blocks: products whose
  // projections onto that subspace obey the kernel relation, with free
  // complement components, plus products inside the complement
  std::vector<int> comp;
  for (int i = 2 * n; i < d; ++i) comp.push_back(i);

  if (fam.opc_projected && n >= 1 && !gens.empty()) {
    const RealMat& J = gens[0];
    const auto& supp = gen_support[0];
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 2 * budget; ++k) {
      Vec etab = random_support_unit(rng, d, supp);
      Vec eta = etab;
      if (!comp.empty() && u01(rng) > 0.3)
        eta = Vec(0.8 * etab + 0.6 * random_support_unit(rng, d, comp));
      Vec ab = random_complex_unit(rng, 2);
      Vec zeta = ab(0) * etab.conjugate() + ab(1) * (J.cast<cplx>() * etab);
      zeta *= (0.25 + u01(rng));
      if (!comp.empty() && u01(rng) > 0.3)
        zeta += 0.7 * random_support_unit(rng, d, comp);
      col.push(eta, zeta);
    }
  }

  if (fam.complement && !comp.empty()) {
    const auto grid = coordinate_grid(d, comp);
    for (const Vec& eta : grid)
      for (const Vec& zeta : grid) col.push(eta, zeta);
    for (int k = 0; k < budget / 2; ++k)
      col.push(random_support_unit(rng, d, comp), random_support_unit(rng, d, comp));
  }

  KernelSpanReport rep;
  rep.dim = dim;
  rep.samples = static_cast<int>(col.vecs.size());
  if (col.vecs.empty()) return rep;
  Mat m(dim, rep.samples);
  for (int k = 0; k < rep.samples; ++k) m.col(k) = col.vecs[k];
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(1e-8);
  rep.rank = static_cast<int>(qr.rank());
  rep.worst_expectation = col.worst;
  Mat q = qr.householderQ() * Mat::Identity(dim, rep.rank);
  rep.basis = std::move(q);
  return rep;
}

KernelSpanReport kernel_span_rank(const Witness& w, int budget, std::uint64_t seed) {
  KernelFamilies fam;
  if (w.prov.kind == WitnessKind::OpcCore) {
    fam.support_block = true;
    fam.conjugate_full = false;
    fam.opc_projected = true;
    fam.complement = true;
  }
  return kernel_span_rank(w, budget, seed, fam);
}

double map_positivity_probe(int d, const std::vector<double>& lambdas, int samples,
                            std::uint64_t seed) {
  require(samples >= 1, "map_positivity_probe: need at least one sample");
  for (double l : lambdas) require(l >= 0.0 && l <= 1.0 + 1e-12, "map_positivity_probe: factor outside [0,1]");
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    auto rng = substream(seed, static_cast<std::uint64_t>(k));
    const Vec x = random_complex_unit(rng, d);
    const Mat rho = x * x.adjoint();
    worst = std::min(worst, min_eigenvalue(canonical_map_closed_form(d, lambdas, rho)));
  }
  return worst;
}

BipartiteOperator sample_ppt_state(int d1, int d2, std::mt19937_64& rng) {
  const int dim = d1 * d2;
  std::normal_distribution<double> g(0.0, 1.0);
  Mat gmat(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) gmat(i, j) = cplx(g(rng), g(rng));
  Mat rho = gmat * gmat.adjoint();
  rho /= rho.trace().real();
  BipartiteOperator op{d1, d2, rho};
  const double lam = min_eigenvalue(partial_transpose(op, Subsystem::A));
  const double target = 1e-6;
  if (lam < target) {
    const double unif = 1.0 / dim;
    double p = (target - lam) / (unif - lam);
    p = std::min(1.0, std::max(0.0, p));
    op.m = (1.0 - p) * op.m + p * unif * Mat::Identity(dim, dim);
  }
  return op;
}

}  // namespace witnesskit
