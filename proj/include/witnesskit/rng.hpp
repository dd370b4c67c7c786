#pragma once

#include "witnesskit/common.hpp"

#include <cstdint>
#include <random>

namespace witnesskit {

/// Independent deterministic stream for (seed, index); used so parallel or
/// reordered draws cannot change results.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

inline RealVec random_real_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  RealVec v(d);
  for (int i = 0; i < d; ++i) v(i) = g(rng);
  const double n = v.norm();
  return n > 0 ? RealVec(v / n) : RealVec(RealVec::Unit(d, 0));
}

inline Vec random_complex_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  const double n = v.norm();
  return n > 0 ? Vec(v / n) : Vec(Vec::Unit(d, 0));
}

inline RealMat random_orthogonal(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  RealMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<RealMat> qr(m);
  RealMat q = qr.householderQ();
  // fix the sign ambiguity so equal seeds give equal matrices everywhere
  RealMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

inline RealMat random_skew(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  RealMat m = RealMat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      m(i, j) = g(rng);
      m(j, i) = -m(i, j);
    }
  return m;
}

}  // namespace witnesskit
