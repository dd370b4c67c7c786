#pragma once

#include "witnesskit/combinatorics.hpp"
#include "witnesskit/densemat.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace witnesskit {

using PairMap = std::map<std::pair<int, int>, double>;

/// Coefficients of the canonical parametric family on d x d: the shared
/// weight a0, one diagonal coefficient per ordered index pair (p,q), p != q,
/// and the n cyclic coupling strengths C_i (present only for n >= 2).
struct FamilyParams {
  int d = 0;
  int n = 0;
  double a0 = 0.0;
  PairMap a;
  std::vector<double> c;

  void validate() const;
  /// Block-cyclic successor: the index pair coupled to block i.
  int succ(int i) const { return (i + 1) % n; }
};

/// Partition variant: per-part cyclic couplings, keyed by canonical block
/// index (only blocks inside parts of size >= 2 carry a coupling).
struct PartitionParams {
  int d = 0;
  std::vector<int> mu;
  double a0 = 0.0;
  PairMap a;
  std::map<int, double> c;

  void validate() const;
  std::vector<int> part_starts() const;  // prefix offsets, size mu.size()+1
};

/// Embedded variant: a d1 x d1 family transported into the combo-selected
/// subspace of the second factor, plus diagonal weights on the kernel sector
/// keyed by (first-factor index, kernel slot).
struct EmbeddedParams {
  int d2 = 0;
  std::vector<int> combo;
  FamilyParams inner;  // inner.d == d1
  PairMap ker;

  void validate() const;
};

/// Extended variant on d = 4n; kept unnormalized to match its bound unless
/// `normalize` is set.
struct ExtendedParams {
  int d = 0;
  double a0 = 0.0;
  PairMap a;
  bool normalize = false;

  void validate() const;
};

enum class ConditionKind { Positivity, Ppt };

struct ConditionMargin {
  ConditionKind kind;
  std::string name;
  double margin;  // lhs - rhs
};

struct ConditionReport {
  bool positivity_ok = true;
  bool ppt_ok = true;
  std::vector<ConditionMargin> violated;
  std::vector<ConditionMargin> margins;
};

// ---- canonical family ----

/// Unnormalized family operator.
Mat family_operator(const FamilyParams& p);
/// Normalization evaluated as the direct coefficient sum (matches the trace).
double family_normalization(const FamilyParams& p);
/// Unit-trace state; errors if the normalization is not positive.
BipartiteOperator build_family_state(const FamilyParams& p);

ConditionReport check_conditions(const FamilyParams& p);

FamilyParams saturating_family_params(int d, int n, double a0);
/// The equality-case member: every pair weight and coupling equal to a0.
/// PPT by construction and saturating the detection bound. Requires n >= 2.
BipartiteOperator boundary_state(int d, int n, double a0);

// ---- partition family ----

Mat partition_operator(const PartitionParams& p);
double partition_normalization(const PartitionParams& p);
BipartiteOperator build_partition_state(const PartitionParams& p);
ConditionReport check_partition_conditions(const PartitionParams& p);
PartitionParams saturating_partition_params(int d, const std::vector<int>& mu, double a0);

// ---- embedded family ----

Mat embedded_operator(const EmbeddedParams& p);
double embedded_normalization(const EmbeddedParams& p);
BipartiteOperator build_embedded_state(const EmbeddedParams& p);
ConditionReport check_embedded_conditions(const EmbeddedParams& p);
EmbeddedParams saturating_embedded_params(int d1, int d2, const Combination& combo, double a0,
                                          double ker_weight);

// ---- extended family ----

Mat extended_operator(const ExtendedParams& p);
double extended_normalization(const ExtendedParams& p);
/// Hermitian operator per the extended construction; unit trace only when
/// p.normalize is set.
BipartiteOperator build_extended_state(const ExtendedParams& p);
ConditionReport check_extended_conditions(const ExtendedParams& p);
ExtendedParams saturating_extended_params(int d, double a0);

// ---- detection bounds ----

/// Lower bound on Tr(W rho) over the condition-valid family (n >= 2).
double canonical_detection_bound(int d, int n);
/// Floor for positivity-valid draws that violate the PPT conditions.
double canonical_npt_floor(int d, int n);
double partition_detection_bound(int d, const std::vector<int>& mu);
double partition_npt_floor(int d, const std::vector<int>& mu);
/// Bound for the unnormalized extended family operator.
double extended_detection_bound(double a0, int n);

// ---- samplers (deterministic in the passed engine state) ----

enum class DrawMode { Valid, NptWindow, Boundary };

FamilyParams sample_family_params(int d, int n, double a0, std::mt19937_64& rng, DrawMode mode);
PartitionParams sample_partition_params(int d, const std::vector<int>& mu, double a0,
                                        std::mt19937_64& rng, DrawMode mode);
ExtendedParams sample_extended_params(int d, double a0, std::mt19937_64& rng, DrawMode mode);
EmbeddedParams sample_embedded_params(int d1, int d2, const Combination& combo, double a0,
                                      std::mt19937_64& rng, DrawMode mode);

}  // namespace witnesskit
