#pragma once

#include "witnesskit/combinatorics.hpp"
#include "witnesskit/densemat.hpp"
#include "witnesskit/skewcanon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace witnesskit {

enum class WitnessKind {
  FromU,          // generic skew generator
  Canonical,      // block-canonical generator, invariant factors recorded
  ConjugatedPsi,  // orthogonal conjugation applied to the entangled projector
  ConjugatedJ,    // orthogonal conjugation applied to the generator
  Partition,      // direct-sum generators over a partition of d/2
  Embedded,       // canonical witness embedded into a d1 x d2 space
  Extended,       // triple-generator witness (real-field restricted)
  OpcCore,        // the 2n x 2n core of the unit-factor canonical witness
};

std::string to_string(WitnessKind k);

/// Construction record carried with every witness; sufficient to recover the
/// generator and to select the detection-bound formula during verification.
struct Provenance {
  WitnessKind kind = WitnessKind::Canonical;
  int d1 = 0;
  int d2 = 0;
  std::vector<double> lambdas;      // invariant factors of the generator
  std::vector<int> mu;              // partition parts (Partition)
  std::vector<int> combo;           // subspace selection (Embedded)
  std::optional<RealMat> generator; // U (FromU) or Q (Conjugated*)

  int n() const { return static_cast<int>(lambdas.size()); }
};

struct Witness {
  BipartiteOperator op;
  Provenance prov;
  bool certified = false;  // set only by the verification engine
};

/// The three-operator decomposition of the unit-factor canonical witness:
/// two decomposable parts (positive under partial transposition) plus the
/// core supported on the 2n x 2n subspace.
struct WitnessSplit {
  BipartiteOperator o1_ta, o2_ta, w_opc;
};

/// Projector onto the maximally entangled state (1/sqrt d) sum_i |ii>.
BipartiteOperator max_entangled(int d);

/// W = I - d|psi><psi| - d (U^T x I)|psi><psi|^{T_A} (U x I).
/// Requires every invariant factor of U to be <= 1.
Witness witness_from_U(const SkewMatrix& u);

/// Canonical witness from the invariant-factor list (operator form).
/// Each lambda must lie in [0,1] and 2*len(lambdas) <= d.
Witness canonical_witness(int d, const std::vector<double>& lambdas);

/// Same operator assembled term-by-term from the expanded basis sum.
/// Kept as an independent construction path; compared entrywise in tests.
Mat canonical_witness_expanded(int d, const std::vector<double>& lambdas);

/// canonical_witness with all factors equal to one.
Witness canonical_witness_unit(int d, int n);

WitnessSplit split_canonical(int d, int n);

/// The core part of split_canonical wrapped as a witness of its own (it is an
/// entanglement witness on the full space; see the split invariants).
Witness opc_core_witness(int d, int n);

enum class ConjugationMode { Psi, J };

/// The two locally equivalent conjugated classes; q must be orthogonal.
Witness conjugated_witness(int d, const std::vector<double>& lambdas, const RealMat& q,
                           ConjugationMode mode);

/// Witness for a partition of d/2 built from per-part full-rank block
/// generators (operator form). Requires d even, parts descending, sum = d/2.
Witness partition_witness(int d, const std::vector<int>& mu);

/// Block-sum assembly of the same operator (direct-sum cores plus the
/// cross-part decomposable terms); the second construction path.
Mat partition_witness_blocks(int d, const std::vector<int>& mu);

/// Canonical witness on d1 x d1 conjugated into the combo-selected subspace
/// of the second factor of a d1 x d2 space.
Witness embedded_witness(int d1, int d2, const Combination& combo,
                         const std::vector<double>& lambdas);

/// Expanded-sum assembly of the unit-factor embedded witness (second path).
Mat embedded_witness_expanded(int d1, int d2, const Combination& combo, int n1);

/// Triple-generator witness; an entanglement witness over real product
/// states only. Requires d >= 4.
Witness extended_witness(int d);

/// The map rho -> Tr_B(W (I x rho^T)) associated with a witness. rho must be
/// a unit-trace positive operator on the second factor.
Mat jamiolkowski_apply(const Witness& w, const Mat& rho);

/// Closed form of the canonical-witness map: Tr(rho) I - rho - J^T rho^T J.
Mat canonical_map_closed_form(int d, const std::vector<double>& lambdas, const Mat& rho);

}  // namespace witnesskit
