// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Each criterion pins its tolerances in code.

#include "witnesskit/cli.hpp"
#include "witnesskit/json_io.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <vector>

namespace wk = witnesskit;
using wk::Mat;
using wk::RealMat;
using wk::RealVec;
using wk::Vec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

// 1. decomposition round trip, orthogonality, factor invariance
Outcome criterion_canonical_decomposition() {
  Outcome out;
  auto rng = wk::substream(1001, 0);
  double worst_roundtrip = 0.0, worst_orth = 0.0, worst_invariance = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int d = 2 + (t % 11);  // 2..12
    const wk::SkewMatrix u = wk::validate_skew(wk::random_skew(rng, d));
    const wk::CanonicalForm cf = wk::canonical_decompose(u);
    worst_roundtrip = std::max(
        worst_roundtrip,
        wk::max_abs(RealMat(cf.q * wk::assemble_J(d, cf.lambdas) * cf.q.transpose() - u.m)));
    worst_orth = std::max(worst_orth,
                          wk::max_abs(RealMat(cf.q * cf.q.transpose() - RealMat::Identity(d, d))));
    const RealMat r = wk::random_orthogonal(rng, d);
    const wk::CanonicalForm cf2 =
        wk::canonical_decompose(wk::validate_skew(RealMat(r * u.m * r.transpose()), 1e-9));
    if (cf2.lambdas.size() != cf.lambdas.size()) {
      out.pass = false;
      out.detail << "factor count changed under conjugation at d=" << d << "; ";
      continue;
    }
    for (std::size_t i = 0; i < cf.lambdas.size(); ++i)
      worst_invariance = std::max(worst_invariance, std::abs(cf.lambdas[i] - cf2.lambdas[i]));
  }
  out.pass = out.pass && worst_roundtrip <= 1e-10 && worst_orth <= 1e-10 && worst_invariance <= 1e-9;
  out.detail << "1000 draws d=2..12: roundtrip " << worst_roundtrip << ", orthogonality "
             << worst_orth << ", factor drift " << worst_invariance;
  return out;
}

// 2. conjugate-image orthogonality identity
Outcome criterion_orthogonality_identity() {
  Outcome out;
  auto rng = wk::substream(1002, 0);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int d = 2 + (t % 11);
    const wk::SkewMatrix u = wk::validate_skew(wk::random_skew(rng, d));
    worst = std::max(worst, wk::orthogonality_identity_check(u, wk::random_complex_unit(rng, d)));
  }
  out.pass = worst <= 1e-12;
  out.detail << "10000 draws: worst |<a*|U|a>| = " << worst;
  return out;
}

// 3. see-saw certification of every constructed witness + negative control
Outcome criterion_certification() {
  Outcome out;
  wk::SeeSawConfig cfg;
  cfg.restarts = 200;
  cfg.seed = 1003;
  double worst = 0.0;
  int count = 0;
  auto run = [&](wk::Witness w, wk::Field field, const char* label) {
    cfg.field = field;
    const wk::CertReport rep = wk::product_minimize(w, cfg);
    ++count;
    worst = std::min(worst, rep.min_value);
    if (!rep.is_ew) {
      out.pass = false;
      out.detail << label << " failed certification (" << rep.min_value << "); ";
    }
  };
  for (int d = 2; d <= 8; ++d)
    for (int n = 0; 2 * n <= d; ++n) {
      std::ostringstream label;
      label << "canonical(" << d << "," << n << ")";
      run(wk::canonical_witness_unit(d, n), wk::Field::Complex, label.str().c_str());
    }
  for (int n = 1; n <= 4; ++n)
    for (const auto& part : wk::partitions(n)) {
      std::ostringstream label;
      label << "partition(d=" << 2 * n << ")";
      run(wk::partition_witness(2 * n, part.parts), wk::Field::Complex, label.str().c_str());
    }
  for (const auto& combo : wk::combinations(5, 4))
    run(wk::embedded_witness(4, 5, combo, {1.0, 1.0}), wk::Field::Complex, "embedded(4x5)");
  for (int d : {4, 8}) run(wk::extended_witness(d), wk::Field::Real, "extended-real");

  wk::Witness control = wk::canonical_witness_unit(4, 2);
  control.op.m -= 1e-3 * Mat::Identity(16, 16);
  cfg.field = wk::Field::Complex;
  const wk::CertReport neg = wk::product_minimize(control, cfg);
  if (neg.is_ew || neg.min_value > -5e-4) {
    out.pass = false;
    out.detail << "negative control not caught (" << neg.min_value << "); ";
  }
  out.detail << count << " witnesses certified, worst product minimum " << worst
             << ", shifted control min " << neg.min_value;
  return out;
}

// 4. equality-case members of the canonical family saturate the bound
Outcome criterion_bound_saturation() {
  Outcome out;
  const std::vector<std::tuple<int, int, double>> cases = {
      {4, 2, -0.2}, {6, 3, -1.0 / 7.0}, {6, 2, -0.1}};
  for (const auto& [d, n, expect] : cases) {
    const wk::BipartiteOperator rho = wk::boundary_state(d, n, 1.0);
    const wk::Witness w = wk::canonical_witness_unit(d, n);
    const double t = wk::expectation(w.op, rho);
    const bool ppt = wk::is_ppt(rho).ppt;
    if (std::abs(t - expect) > 1e-12 || !ppt) out.pass = false;
    out.detail << "(" << d << "," << n << "): value " << t << " target " << expect
               << (ppt ? " [ppt] " : " [NOT ppt] ");
  }
  return out;
}

// 5. sampled family draws never undercut the bound; violating draws never
// undercut the window floor
Outcome criterion_bound_inequality() {
  Outcome out;
  const std::vector<std::pair<int, int>> cases = {{4, 2}, {5, 2}, {6, 2}, {6, 3}};
  for (const auto& [d, n] : cases) {
    const wk::Witness w = wk::canonical_witness_unit(d, n);
    const double bound = wk::canonical_detection_bound(d, n);
    const double floor_v = wk::canonical_npt_floor(d, n);
    double tight = std::numeric_limits<double>::infinity();
    double tight_floor = std::numeric_limits<double>::infinity();
    auto rng = wk::substream(1005, 100 * d + n);
    for (int k = 0; k < 2000; ++k) {
      const wk::FamilyParams p = wk::sample_family_params(d, n, 1.0, rng, wk::DrawMode::Valid);
      const wk::ConditionReport rep = wk::check_conditions(p);
      if (!rep.positivity_ok || !rep.ppt_ok) {
        out.pass = false;
        out.detail << "sampler produced an invalid draw at (" << d << "," << n << "); ";
        continue;
      }
      const wk::BipartiteOperator rho = wk::build_family_state(p);
      // the product conditions really are sufficient for the spectra
      if (wk::min_eigenvalue(rho) < -1e-10 ||
          wk::min_eigenvalue(wk::partial_transpose(rho)) < -1e-10) {
        out.pass = false;
        out.detail << "valid draw with a negative spectrum at (" << d << "," << n << "); ";
      }
      const double t = wk::expectation(w.op, rho);
      tight = std::min(tight, t - bound);
      if (t < bound - 1e-10) {
        out.pass = false;
        out.detail << "bound undercut at (" << d << "," << n << "): " << t << " < " << bound << "; ";
      }
    }
    int ppt_violating = 0;
    for (int k = 0; k < 500; ++k) {
      const wk::FamilyParams p = wk::sample_family_params(d, n, 1.0, rng, wk::DrawMode::NptWindow);
      const wk::ConditionReport rep = wk::check_conditions(p);
      if (!rep.positivity_ok) {
        out.pass = false;
        out.detail << "violating sampler broke positivity at (" << d << "," << n << "); ";
        continue;
      }
      if (!rep.ppt_ok) ++ppt_violating;
      const double t = wk::expectation(w.op, wk::build_family_state(p));
      tight_floor = std::min(tight_floor, t - floor_v);
      if (t < floor_v - 1e-10) {
        out.pass = false;
        out.detail << "window floor undercut at (" << d << "," << n << "): " << t << "; ";
      }
    }
    if (ppt_violating < 400) {
      out.pass = false;
      out.detail << "too few transpose-violating draws at (" << d << "," << n << "); ";
    }
    out.detail << "(" << d << "," << n << "): tightest margins " << tight << " / " << tight_floor
               << " (floor " << floor_v << ", " << ppt_violating << "/500 violating); ";
  }
  return out;
}

// 6. partition families at d=8: common denominator, sampled bound, boundary
// saturation, single-part consistency
Outcome criterion_partition_bound() {
  Outcome out;
  const int d = 8;
  for (const auto& part : wk::partitions(4)) {
    std::ostringstream mu_txt;
    for (std::size_t i = 0; i < part.parts.size(); ++i)
      mu_txt << (i ? "," : "(") << part.parts[i];
    mu_txt << ")";
    double denom = 0.0;
    int acc = 0;
    for (int m : part.parts) {
      acc += m;
      denom += 2.0 * m * (2 * m + 1) + 4.0 * m * (d - 2 * acc);
    }
    if (denom != 72.0) {
      out.pass = false;
      out.detail << "denominator " << denom << " for " << mu_txt.str() << "; ";
    }
    const wk::Witness w = wk::partition_witness(d, part.parts);
    const double bound = wk::partition_detection_bound(d, part.parts);
    auto rng = wk::substream(1006, part.parts.size());
    for (int k = 0; k < 500; ++k) {
      const wk::PartitionParams p =
          wk::sample_partition_params(d, part.parts, 1.0, rng, wk::DrawMode::Valid);
      const double t = wk::expectation(w.op, wk::build_partition_state(p));
      if (t < bound - 1e-10) {
        out.pass = false;
        out.detail << "bound undercut for " << mu_txt.str() << ": " << t << "; ";
      }
    }
    const wk::PartitionParams sat = wk::saturating_partition_params(d, part.parts, 1.0);
    const double t_sat = wk::expectation(w.op, wk::build_partition_state(sat));
    const double gap = std::abs(t_sat - bound);
    out.detail << mu_txt.str() << ": boundary value " << t_sat << " vs bound " << bound << "; ";
    if (gap > 1e-12) {
      // Parts of size one carry no coupling term, so the family cannot reach
      // the common bound: the boundary member sits at -2*(sum of parts >= 2)/N.
      out.pass = false;
      out.detail << "boundary does not saturate for " << mu_txt.str() << " (gap " << gap << "); ";
    }
  }
  const double single = wk::partition_detection_bound(8, {4});
  const double full = wk::canonical_detection_bound(8, 4);
  if (std::abs(single - full) > 1e-15 || std::abs(single - (-1.0 / 9.0)) > 1e-15) {
    out.pass = false;
    out.detail << "single-part consistency broken; ";
  } else {
    out.detail << "single-part bound matches the full-rank family (-1/9)";
  }
  return out;
}

// 7. the equality-case member is found as a detected entangled ppt state
Outcome criterion_detection() {
  Outcome out;
  const wk::Witness w = wk::canonical_witness_unit(4, 2);
  const wk::DetectionReport rep = wk::classify_detection(w, wk::boundary_state(4, 2, 1.0));
  out.pass = rep.cls == wk::DetectionClass::PptEntangledDetected && rep.ppt.ppt &&
             std::abs(rep.value + 0.2) <= 1e-12;
  out.detail << "class " << wk::to_string(rep.cls) << ", value " << rep.value << ", transpose floor "
             << rep.ppt.min_eig_ta;
  return out;
}

// 8. map positivity probe and the rank-zero closed form
Outcome criterion_map_positivity() {
  Outcome out;
  const std::vector<std::pair<int, std::vector<double>>> cases = {
      {3, {}}, {2, {1.0}}, {4, {1.0, 1.0}}, {6, {1.0, 1.0, 1.0}}};
  for (const auto& [d, lam] : cases) {
    const double worst = wk::map_positivity_probe(d, lam, 1000, 1008);
    if (worst < -1e-10) out.pass = false;
    out.detail << "d=" << d << " rank " << 2 * lam.size() << ": worst eig " << worst << "; ";
  }
  auto rng = wk::substream(1008, 99);
  const wk::Witness wred = wk::canonical_witness(3, {});
  std::normal_distribution<double> g(0.0, 1.0);
  Mat gm(3, 3);
  for (int i = 0; i < 9; ++i) gm.data()[i] = wk::cplx(g(rng), g(rng));
  Mat rho = gm * gm.adjoint();
  rho /= rho.trace().real();
  const Mat img = wk::jamiolkowski_apply(wred, rho);
  const double err = wk::max_abs(Mat(img - (Mat::Identity(3, 3) - rho)));
  if (err > 1e-12) out.pass = false;
  out.detail << "rank-0 closed-form error " << err;
  return out;
}

// 9. kernel-span optimality evidence
Outcome criterion_kernel_span() {
  Outcome out;
  wk::SeeSawConfig cfg;
  cfg.restarts = 60;
  cfg.seed = 1009;

  wk::Witness w42 = wk::canonical_witness_unit(4, 2);
  wk::certify(w42, cfg);
  const int r42 = wk::kernel_span_rank(w42, 512, 9).rank;

  wk::Witness wred = wk::canonical_witness(4, {});
  wk::certify(wred, cfg);
  const int rred = wk::kernel_span_rank(wred, 512, 10).rank;

  wk::Witness opc = wk::opc_core_witness(6, 2);
  wk::certify(opc, cfg);
  wk::KernelFamilies only_support;
  only_support.conjugate_full = false;
  const int r_restricted = wk::kernel_span_rank(opc, 768, 11, only_support).rank;
  const int r_union = wk::kernel_span_rank(opc, 768, 11).rank;

  out.pass = r42 == 16 && rred == 16 && r_restricted < 36 && r_union == 36;
  out.detail << "rank(4,2)=" << r42 << ", rank(reduction,4)=" << rred
             << ", core(6,2): block family " << r_restricted << " -> union " << r_union;
  return out;
}

// 10. extended witness: reconstruction, saturation, complex violation
Outcome criterion_extended() {
  Outcome out;
  for (int d : {4, 8}) {
    const wk::Witness w = wk::extended_witness(d);
    const wk::JTriple t = wk::build_J_triple(d);
    const Mat p = wk::max_entangled(d).m;
    auto sandwich = [&](const RealMat& k) {
      const Mat ki = wk::kron(k.cast<wk::cplx>(), Mat::Identity(d, d));
      return Mat(static_cast<double>(d) * ki.transpose() *
                 wk::partial_transpose({d, d, p}, wk::Subsystem::A).m * ki);
    };
    const Mat d1ta = sandwich(t.jp.m);
    const Mat d2ta = sandwich(t.jpp.m);
    const double recon = wk::max_abs(
        Mat(wk::canonical_witness_unit(d, 2 * (d / 4)).op.m - (w.op.m + d1ta + d2ta)));
    const double psd1 = wk::min_eigenvalue(wk::partial_transpose({d, d, d1ta}));
    const double psd2 = wk::min_eigenvalue(wk::partial_transpose({d, d, d2ta}));
    if (recon > 1e-12 || psd1 < -1e-10 || psd2 < -1e-10) out.pass = false;
    out.detail << "d=" << d << ": reconstruction " << recon << ", remainders " << psd1 << "/" << psd2
               << "; ";
  }
  const wk::Witness w4 = wk::extended_witness(4);
  const double sat = wk::trace_product(w4.op.m, wk::extended_operator(wk::saturating_extended_params(4, 1.0)));
  if (std::abs(sat - (-4.0)) > 1e-12) out.pass = false;
  out.detail << "equality-case value " << sat << " (target -4); ";

  wk::SeeSawConfig cfg;
  cfg.restarts = 200;
  cfg.seed = 1010;
  cfg.field = wk::Field::Complex;
  const wk::CertReport cplx_rep = wk::product_minimize(w4, cfg);
  if (cplx_rep.min_value > -1e-3) out.pass = false;
  out.detail << "complex-field minimum " << cplx_rep.min_value;
  return out;
}

// 11. counting
Outcome criterion_counting() {
  Outcome out;
  const auto p5 = wk::partitions(5).size();
  const auto c54 = wk::combinations(5, 4).size();
  out.pass = p5 == 7 && c54 == 5;
  out.detail << "p(5)=" << p5 << ", C(5,4)=" << c54;
  return out;
}

// 12. byte-identical reports under equal seeds
Outcome criterion_reproducibility() {
  Outcome out;
  namespace fs = std::filesystem;
  const auto tmp = fs::temp_directory_path();
  const std::string w_file = (tmp / "wk_acc_w.json").string();
  const std::string r1 = (tmp / "wk_acc_r1.json").string();
  const std::string r2 = (tmp / "wk_acc_r2.json").string();
  const std::string s1 = (tmp / "wk_acc_s1.csv").string();
  const std::string s2 = (tmp / "wk_acc_s2.csv").string();
  bool ok = wk::cli_run({"build-witness", "--kind", "canonical", "--d", "4", "--n", "2", "--out",
                         w_file}) == 0;
  for (const std::string* out_path : {&r1, &r2})
    ok = ok && wk::cli_run({"verify-witness", "--in", w_file, "--restarts", "50", "--seed", "42",
                            "--out", *out_path}) == 0;
  for (const std::string* out_path : {&s1, &s2})
    ok = ok && wk::cli_run({"sweep", "--family", "canonical", "--d", "4", "--n", "2", "--draws",
                            "100", "--seed", "42", "--out", *out_path}) == 0;
  const bool verify_same = ok && wk::read_text_file(r1) == wk::read_text_file(r2);
  const bool sweep_same = ok && wk::read_text_file(s1) == wk::read_text_file(s2);
  for (const auto& f : {w_file, r1, r2, s1, s2}) std::remove(f.c_str());
  out.pass = ok && verify_same && sweep_same;
  out.detail << "verify reports identical: " << (verify_same ? "yes" : "NO")
             << ", sweep outputs identical: " << (sweep_same ? "yes" : "NO");
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const std::vector<Entry> criteria = {
      {"canonical decomposition round trip", criterion_canonical_decomposition},
      {"conjugate-image orthogonality identity", criterion_orthogonality_identity},
      {"product-state certification of all witnesses", criterion_certification},
      {"canonical family bound saturation", criterion_bound_saturation},
      {"canonical family bound inequality and window floor", criterion_bound_inequality},
      {"partition family bound", criterion_partition_bound},
      {"detected entangled ppt state", criterion_detection},
      {"map positivity", criterion_map_positivity},
      {"kernel-span optimality evidence", criterion_kernel_span},
      {"extended witness reconstruction and field restriction", criterion_extended},
      {"partition and combination counts", criterion_counting},
      {"seeded reproducibility", criterion_reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << "criterion " << (i + 1) << ": "
              << criteria[i].name << " (" << out.detail.str() << ")" << std::endl;
  }
  if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
  return failures;
}
