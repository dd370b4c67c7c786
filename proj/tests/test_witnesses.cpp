#include "witnesskit/witnesses.hpp"
#include "witnesskit/verify.hpp"

#include <doctest.h>

#include "test_util.hpp"

using namespace witnesskit;

TEST_SUITE_BEGIN("witnesses");

TEST_CASE("entangled projector entries and spectrum under partial transpose") {
  const BipartiteOperator p1 = max_entangled(1);
  CHECK(p1.m(0, 0) == cplx(1.0, 0.0));

  const BipartiteOperator p2 = max_entangled(2);
  for (int r : {0, 3})
    for (int c : {0, 3}) CHECK(p2.m(r, c) == cplx(0.5, 0.0));
  CHECK(std::abs(p2.m.trace() - cplx(1.0, 0.0)) == 0.0);

  for (int d : {2, 3, 4}) {
    const BipartiteOperator ta = partial_transpose(max_entangled(d), Subsystem::A);
    Eigen::SelfAdjointEigenSolver<Mat> es(ta.m);
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      CHECK(std::min(std::abs(es.eigenvalues()(i) - 1.0 / d), std::abs(es.eigenvalues()(i) + 1.0 / d)) <=
            1e-12);
  }
}

TEST_CASE("operator form and expanded sum build the same canonical witness") {
  // every dimension/block-count combination at unit factors
  for (int d = 2; d <= 8; ++d)
    for (int n = 0; 2 * n <= d; ++n) {
      const std::vector<double> lam(n, 1.0);
      const Witness w = canonical_witness(d, lam);
      CHECK(is_hermitian(w.op.m));
      CHECK(max_abs(Mat(w.op.m.imag().cast<cplx>())) == 0.0);
      CHECK(max_abs(Mat(w.op.m - canonical_witness_expanded(d, lam))) <= 1e-12);
    }
  // general invariant factors
  const std::vector<std::pair<int, std::vector<double>>> cases = {
      {5, {1.0, 0.5}}, {6, {0.7, 0.3}}, {7, {1.0, 1.0, 0.2}}, {8, {1.0, 0.25, 0.0}}};
  for (const auto& [d, lam] : cases)
    CHECK(max_abs(Mat(canonical_witness(d, lam).op.m - canonical_witness_expanded(d, lam))) <= 1e-12);

  // all factors zero leaves the bare projector witness: value 1 - d on it
  CHECK(max_abs(Mat(canonical_witness(4, {0.0, 0.0}).op.m - canonical_witness(4, {}).op.m)) == 0.0);
  CHECK(expectation(canonical_witness(4, {0.0, 0.0}).op, max_entangled(4)) ==
        doctest::Approx(-3.0).epsilon(1e-12));

  CHECK_THROWS_AS(canonical_witness(4, {1.5, 1.0}), precondition_error);
}

TEST_CASE("generator-based construction matches the canonical one") {
  // zero generator reduces to the pure projector witness
  const Witness from_zero = witness_from_U(validate_skew(RealMat::Zero(3, 3)));
  const Witness red = canonical_witness(3, {});
  CHECK(max_abs(Mat(from_zero.op.m - red.op.m)) == 0.0);

  const Witness from_j = witness_from_U(build_J(4, {1.0, 1.0}));
  CHECK(max_abs(Mat(from_j.op.m - canonical_witness_unit(4, 2).op.m)) == 0.0);

  // factor above one violates the normalization assumption
  CHECK_THROWS_AS(witness_from_U(build_J(2, {1.5})), precondition_error);
}

TEST_CASE("pinned entries of the expanded witness") {
  const Witness w5 = canonical_witness(5, {1.0, 1.0});
  CHECK(w5.op.m(4 * 5 + 4, 0) == cplx(-1.0, 0.0));  // <4,4|W|0,0>

  const Witness w6 = canonical_witness_unit(6, 2);
  CHECK(w6.op.m(4 * 6 + 0, 4 * 6 + 0) == cplx(1.0, 0.0));  // <4,0|W|4,0>
}

TEST_CASE("canonical split reconstructs the witness with positive parts") {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 2}, {6, 3}, {8, 3}}) {
    const WitnessSplit s = split_canonical(d, n);
    const Witness w = canonical_witness_unit(d, n);
    // both sides are integer-valued, so the reconstruction is exact
    CHECK(max_abs(Mat(s.o1_ta.m + s.o2_ta.m + s.w_opc.m - w.op.m)) == 0.0);
    CHECK(min_eigenvalue(partial_transpose(s.o1_ta)) >= -1e-10);
    CHECK(min_eigenvalue(partial_transpose(s.o2_ta)) >= -1e-10);
  }

  // full rank leaves only the core
  const WitnessSplit s42 = split_canonical(4, 2);
  CHECK(max_abs(s42.o1_ta.m) == 0.0);
  CHECK(max_abs(s42.o2_ta.m) == 0.0);
  CHECK(max_abs(Mat(s42.w_opc.m - canonical_witness_unit(4, 2).op.m)) <= 1e-12);

  // rank two has no core
  const WitnessSplit s41 = split_canonical(4, 1);
  CHECK(max_abs(s41.w_opc.m) == 0.0);

  const WitnessSplit s62 = split_canonical(6, 2);
  CHECK(s62.o2_ta.m(4 * 6 + 5, 4 * 6 + 5) == cplx(1.0, 0.0));  // <4,5|O2|4,5>

  const WitnessSplit s52 = split_canonical(5, 2);
  CHECK(max_abs(s52.o2_ta.m) == 0.0);  // single outer coordinate, empty sum
}

TEST_CASE("conjugated classes are locally equivalent") {
  auto rng = substream(31, 0);
  const std::vector<double> lam{1.0, 0.8};
  for (int trial = 0; trial < 5; ++trial) {
    const RealMat q = random_orthogonal(rng, 4);
    const Witness wpsi = conjugated_witness(4, lam, q, ConjugationMode::Psi);
    const Witness wj = conjugated_witness(4, lam, q, ConjugationMode::J);
    const Mat qi = kron(q.cast<cplx>(), Mat::Identity(4, 4));
    CHECK(max_abs(Mat(qi.transpose() * wj.op.m * qi - wpsi.op.m)) <= 1e-10);

    // the generator-conjugated class is the generic-generator witness
    const RealMat u = q * assemble_J(4, lam) * q.transpose();
    const Witness wu = witness_from_U(validate_skew(u, 1e-9));
    CHECK(max_abs(Mat(wu.op.m - wj.op.m)) <= 1e-12);
  }

  const Witness id_psi = conjugated_witness(4, lam, RealMat::Identity(4, 4), ConjugationMode::Psi);
  const Witness id_j = conjugated_witness(4, lam, RealMat::Identity(4, 4), ConjugationMode::J);
  const Witness wc = canonical_witness(4, lam);
  CHECK(max_abs(Mat(id_psi.op.m - wc.op.m)) == 0.0);
  CHECK(max_abs(Mat(id_j.op.m - wc.op.m)) == 0.0);

  RealMat not_orth = RealMat::Identity(4, 4);
  not_orth(0, 0) = 2.0;
  CHECK_THROWS_AS(conjugated_witness(4, lam, not_orth, ConjugationMode::J), precondition_error);
}

TEST_CASE("partition witness construction paths agree") {
  const std::vector<std::pair<int, std::vector<int>>> cases = {
      {4, {2}}, {4, {1, 1}}, {6, {3}}, {6, {2, 1}}, {8, {2, 2}}, {8, {2, 1, 1}}, {8, {3, 1}}, {8, {1, 1, 1, 1}}};
  for (const auto& [d, mu] : cases) {
    const Witness w = partition_witness(d, mu);
    CHECK(is_hermitian(w.op.m));
    CHECK(max_abs(Mat(w.op.m - partition_witness_blocks(d, mu))) <= 1e-12);
  }

  // the single-part partition is the full-rank canonical witness
  CHECK(max_abs(Mat(partition_witness(4, {2}).op.m - canonical_witness_unit(4, 2).op.m)) <= 1e-12);

  // the all-ones partition has no core: it equals its own cross-term sum and
  // is positive under partial transposition (a decomposable witness)
  const Witness w11 = partition_witness(4, {1, 1});
  CHECK(min_eigenvalue(partial_transpose(w11.op)) >= -1e-10);

  CHECK_THROWS_AS(partition_witness(4, {1, 2}), precondition_error);
  CHECK_THROWS_AS(partition_witness(4, {2, 1}), precondition_error);
  CHECK_THROWS_AS(partition_witness(5, {2}), precondition_error);
}

TEST_CASE("embedded witness equals the conjugated canonical one") {
  const Combination full = make_combination(4, 4, {0, 1, 2, 3});
  const Witness w = embedded_witness(4, 4, full, {1.0, 1.0});
  CHECK(max_abs(Mat(w.op.m - canonical_witness_unit(4, 2).op.m)) == 0.0);

  CHECK(combinations(5, 4).size() == 5);
  for (const auto& combo : combinations(5, 4)) {
    const Witness we = embedded_witness(4, 5, combo, {1.0, 1.0});
    CHECK(is_hermitian(we.op.m));
    CHECK(max_abs(Mat(we.op.m - embedded_witness_expanded(4, 5, combo, 2))) <= 1e-12);
  }

  // second selection relabels the top coordinate: rows and columns touching
  // the dropped second-factor coordinate (index 3) vanish entirely, while the
  // relabeled coordinate (index 4) is in use
  const Combination c2 = make_combination(4, 5, {0, 1, 2, 4});
  const Witness w2 = embedded_witness(4, 5, c2, {1.0, 1.0});
  for (int i = 0; i < 4; ++i) {
    CHECK(w2.op.m.row(i * 5 + 3).norm() == 0.0);
    CHECK(w2.op.m.col(i * 5 + 3).norm() == 0.0);
  }
  CHECK(std::abs(w2.op.m(0 * 5 + 4, 0 * 5 + 4) - cplx(1.0, 0.0)) == 0.0);  // <0,3_c|W|0,3_c>
  CHECK(w2.op.m(3 * 5 + 4, 3 * 5 + 4) == cplx(0.0, 0.0));  // same-block pair stays zero
}

TEST_CASE("extended witness reconstruction and positive remainders") {
  for (int d : {4, 7, 8}) {
    const Witness w = extended_witness(d);
    const JTriple t = build_J_triple(d);
    const Mat p = max_entangled(d).m;
    auto sandwich = [&](const RealMat& k) {
      const Mat ki = kron(k.cast<cplx>(), Mat::Identity(d, d));
      return Mat(static_cast<double>(d) * ki.transpose() *
                 partial_transpose({d, d, p}, Subsystem::A).m * ki);
    };
    const Mat d1ta = sandwich(t.jp.m);
    const Mat d2ta = sandwich(t.jpp.m);
    const Witness wc = canonical_witness_unit(d, 2 * (d / 4));
    CHECK(max_abs(Mat(wc.op.m - (w.op.m + d1ta + d2ta))) <= 1e-12);
    CHECK(min_eigenvalue(partial_transpose({d, d, d1ta})) >= -1e-10);
    CHECK(min_eigenvalue(partial_transpose({d, d, d2ta})) >= -1e-10);
  }
  CHECK_THROWS_AS(extended_witness(3), precondition_error);
}

TEST_CASE("map application reproduces the closed forms") {
  auto rng = substream(32, 0);

  // rank-0 generator: the reduction map Tr(rho) I - rho
  const Witness wred = canonical_witness(3, {});
  for (int trial = 0; trial < 10; ++trial) {
    const Mat rho = random_state(rng, 3, 1).m;
    const Mat img = jamiolkowski_apply(wred, rho);
    CHECK(max_abs(Mat(img - (Mat::Identity(3, 3) - rho))) <= 1e-12);
  }

  // full-rank map on a basis projector: I - |0><0| - |1><1|
  const Witness wc = canonical_witness_unit(4, 2);
  Mat rho0 = Mat::Zero(4, 4);
  rho0(0, 0) = 1.0;
  Mat expect = Mat::Identity(4, 4);
  expect(0, 0) = 0.0;
  expect(1, 1) = 0.0;
  CHECK(max_abs(Mat(jamiolkowski_apply(wc, rho0) - expect)) <= 1e-12);

  // maximally mixed input
  const Mat rho_mix = Mat::Identity(4, 4) / 4.0;
  const Mat j = assemble_J(4, {1.0, 1.0}).cast<cplx>();
  const Mat expect_mix = Mat::Identity(4, 4) - rho_mix - j.transpose() * j / 4.0;
  CHECK(max_abs(Mat(jamiolkowski_apply(wc, rho_mix) - expect_mix)) <= 1e-12);

  // generic witnesses agree with the closed form on random states
  for (auto [d, lam] : std::vector<std::pair<int, std::vector<double>>>{
           {4, {1.0, 1.0}}, {5, {1.0, 0.5}}, {6, {0.9, 0.4, 0.1}}}) {
    const Witness w = canonical_witness(d, lam);
    const Mat rho = random_state(rng, d, 1).m;
    CHECK(max_abs(Mat(jamiolkowski_apply(w, rho) - canonical_map_closed_form(d, lam, rho))) <= 1e-10);
  }
}

TEST_CASE("unit-factor witness dominates the general one on ppt states") {
  auto rng = substream(33, 0);
  const Witness w_gen = canonical_witness(6, {0.8, 0.5});
  const Witness w_unit = canonical_witness_unit(6, 2);
  for (int trial = 0; trial < 500; ++trial) {
    const BipartiteOperator rho = sample_ppt_state(6, 6, rng);
    CHECK(expectation(w_gen.op, rho) >= expectation(w_unit.op, rho) - 1e-10);
  }
}

TEST_CASE("every constructor emits real-entried Hermitian operators") {
  std::vector<Mat> ops;
  ops.push_back(partition_witness(8, {2, 1, 1}).op.m);
  ops.push_back(embedded_witness(4, 5, make_combination(4, 5, {0, 2, 3, 4}), {1.0, 0.5}).op.m);
  ops.push_back(extended_witness(7).op.m);
  ops.push_back(opc_core_witness(6, 2).op.m);
  ops.push_back(witness_from_U(build_J(6, {0.9, 0.2})).op.m);
  for (const Mat& m : ops) {
    CHECK(is_hermitian(m));
    CHECK(max_abs(Mat(m.imag().cast<cplx>())) == 0.0);
  }
}

TEST_CASE("map positivity on random pure states at unit factors") {
  CHECK(map_positivity_probe(4, {1.0, 1.0}, 300, 5) >= -1e-10);
  CHECK(map_positivity_probe(2, {1.0}, 300, 6) >= -1e-10);
  CHECK(map_positivity_probe(3, {}, 300, 7) >= -1e-10);
}

TEST_SUITE_END();
