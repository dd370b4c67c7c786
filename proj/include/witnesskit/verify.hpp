#pragma once

#include "witnesskit/pptstates.hpp"
#include "witnesskit/witnesses.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace witnesskit {

enum class Field { Complex, Real };

struct SeeSawConfig {
  int restarts = 200;
  int max_iters = 500;
  double conv_tol = 1e-12;
  double cert_tol = tol::cert;
  std::uint64_t seed = 0;
  Field field = Field::Complex;
};

struct RestartStats {
  int converged = 0;       // restarts that met conv_tol before max_iters
  int min_iters = 0;
  int max_iters = 0;
  double mean_iters = 0.0;
};

struct CertReport {
  double min_value = 0.0;
  Vec eta, zeta;  // argmin product pair
  bool is_ew = false;
  double cert_tol = tol::cert;
  RestartStats restarts;
};

/// Alternating product-state minimization of <eta,zeta|W|eta,zeta>: fixing one
/// factor makes the objective a Hermitian form in the other, minimized by its
/// lowest eigenvector. Best value over seeded restarts. Real field restricts
/// both factors (and all eigenvector phases) to real vectors.
CertReport product_minimize(const Witness& w, const SeeSawConfig& cfg);

/// Runs product_minimize and stamps the witness certified on success.
CertReport certify(Witness& w, const SeeSawConfig& cfg);

struct PptResult {
  bool ppt = false;
  double min_eig_ta = 0.0;
};

/// Positive partial transpose check for a unit-trace Hermitian state.
PptResult is_ppt(const BipartiteOperator& rho, double eps = tol::ppt);

enum class DetectionClass { Undetected, PptEntangledDetected, NptWindow, NoBound };

struct DetectionReport {
  DetectionClass cls = DetectionClass::Undetected;
  double value = 0.0;                  // Tr(w rho)
  std::optional<double> bound;         // family detection bound, when known
  std::optional<double> margin;        // value - bound
  PptResult ppt;
};

std::string to_string(DetectionClass c);

/// Looks up the detection bound the witness provenance supports (absent for
/// the extended kind, whose bound depends on the state parameters, and for
/// block counts below 2).
std::optional<double> detection_bound(const Provenance& prov);
std::optional<double> npt_floor(const Provenance& prov);

DetectionReport classify_detection(const Witness& w, const BipartiteOperator& rho);

/// Which analytic kernel families feed the span probe.
struct KernelFamilies {
  bool support_block = true;   // generator-support products with both mixtures
  bool conjugate_full = true;  // eta (x) eta* over the full space
  bool opc_projected = false;  // relation on the projected part, free complement
  bool complement = false;     // products inside the complementary subspace
};

struct KernelSpanReport {
  int rank = 0;
  int dim = 0;           // d1*d2
  int samples = 0;
  double worst_expectation = 0.0;  // max |<γ|W|γ>| over collected kernel states
  Mat basis;                       // dim x rank, orthonormal basis of the span
};

/// Collects product states with vanishing witness expectation from the
/// analytic kernel families and reports the rank of their span. Full rank is
/// the numerical optimality evidence. Requires a certified witness.
KernelSpanReport kernel_span_rank(const Witness& w, int budget, std::uint64_t seed,
                                  const KernelFamilies& families);
KernelSpanReport kernel_span_rank(const Witness& w, int budget = 0, std::uint64_t seed = 0);

/// Worst minimum eigenvalue of rho -> Tr(rho) I - rho - J^T rho^T J over
/// seeded random pure states.
double map_positivity_probe(int d, const std::vector<double>& lambdas, int samples,
                            std::uint64_t seed = 0);

/// Random density operator pushed inside the PPT cone by mixing with the
/// maximally mixed state (test/sampling utility).
BipartiteOperator sample_ppt_state(int d1, int d2, std::mt19937_64& rng);

}  // namespace witnesskit
