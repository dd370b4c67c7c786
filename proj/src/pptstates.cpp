#include "witnesskit/pptstates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace witnesskit {

namespace {

double lookup(const PairMap& a, int p, int q) {
  auto it = a.find({p, q});
  return it == a.end() ? 0.0 : it->second;
}

void check_pair_keys(const PairMap& a, int d, const char* what) {
  for (const auto& [key, v] : a) {
    require(key.first >= 0 && key.first < d && key.second >= 0 && key.second < d,
            std::string(what) + ": pair index out of range");
    require(key.first != key.second, std::string(what) + ": diagonal pair not allowed");
    require(v >= 0.0, std::string(what) + ": negative coefficient");
  }
}

std::string pair_name(const char* fam, int p, int q) {
  std::ostringstream os;
  os << fam << "[" << p << "," << q << "]";
  return os.str();
}

struct MarginCollector {
  ConditionReport rep;
  void add(ConditionKind kind, std::string name, double margin) {
    rep.margins.push_back({kind, name, margin});
    if (margin < 0) {
      rep.violated.push_back({kind, std::move(name), margin});
      (kind == ConditionKind::Positivity ? rep.positivity_ok : rep.ppt_ok) = false;
    }
  }
};

}  // namespace

// ---- canonical family ----

void FamilyParams::validate() const {
  require(d >= 2, "family params: dimension too small");
  require(n >= 1 && 2 * n <= d, "family params: need 1 <= n <= d/2");
  require(a0 >= 0.0, "family params: a0 must be nonnegative");
  check_pair_keys(a, d, "family params");
  if (n >= 2)
    require(static_cast<int>(c.size()) == n, "family params: coupling list must have n entries");
  else
    require(c.empty(), "family params: couplings are undefined for n < 2");
  for (double ci : c) require(ci >= 0.0, "family params: negative coupling");
}

Mat family_operator(const FamilyParams& p) {
  p.validate();
  const int d = p.d, n = p.n;
  Mat rho = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) += p.a0;
  for (int i = 0; i < n; ++i) {
    rho((2 * i) * d + 2 * i, (2 * i) * d + 2 * i) += p.a0;
    rho((2 * i + 1) * d + 2 * i + 1, (2 * i + 1) * d + 2 * i + 1) += p.a0;
    rho((2 * i) * d + 2 * i, (2 * i + 1) * d + 2 * i + 1) -= p.a0;
    rho((2 * i + 1) * d + 2 * i + 1, (2 * i) * d + 2 * i) -= p.a0;
  }
  for (const auto& [key, v] : p.a) rho(key.first * d + key.second, key.first * d + key.second) += v;
  if (n >= 2) {
    for (int i = 0; i < n; ++i) {
      const int ip = p.succ(i);
      const int r = (2 * ip) * d + 2 * i;       // |2i+2, 2i>
      const int s = (2 * i + 1) * d + 2 * ip + 1;  // |2i+1, 2i+3>
      rho(r, s) -= p.c[i];
      rho(s, r) -= p.c[i];
    }
  }
  return rho;
}

double family_normalization(const FamilyParams& p) {
  p.validate();
  double sum = (p.d + 2 * p.n) * p.a0;
  for (const auto& [key, v] : p.a) sum += v;
  return sum;
}

BipartiteOperator build_family_state(const FamilyParams& p) {
  const double norm = family_normalization(p);
  require(norm > 0.0, "build_family_state: normalization must be positive");
  return {p.d, p.d, Mat(family_operator(p) / norm)};
}

namespace {

// The positivity products and the seven partial-transpose product families,
// evaluated on an arbitrary coefficient scope. `blocks` lists canonical block
// indices with a per-scope successor; `bulk` lists the coordinates outside
// the canonical blocks.
void collect_pair_margins(MarginCollector& mc, const PairMap& a, double a0,
                          const std::vector<int>& blocks,
                          const std::vector<int>& bulk,
                          const std::map<int, double>& c,
                          const std::map<int, int>& succ) {
  const double a02 = a0 * a0;
  for (std::size_t x = 0; x < blocks.size(); ++x)
    for (std::size_t y = 0; y < blocks.size(); ++y) {
      const int i = blocks[x], j = blocks[y];
      if (i == j) continue;
      if (x < y) {
        mc.add(ConditionKind::Ppt, pair_name("ppt.ee", 2 * i, 2 * j),
               lookup(a, 2 * i, 2 * j) * lookup(a, 2 * j, 2 * i) - a02);
        mc.add(ConditionKind::Ppt, pair_name("ppt.oo", 2 * i + 1, 2 * j + 1),
               lookup(a, 2 * i + 1, 2 * j + 1) * lookup(a, 2 * j + 1, 2 * i + 1) - a02);
      }
      mc.add(ConditionKind::Ppt, pair_name("ppt.eo", 2 * i, 2 * j + 1),
             lookup(a, 2 * i, 2 * j + 1) * lookup(a, 2 * j + 1, 2 * i) - a02);
    }
  for (const auto& [i, ci] : c) {
    const int ip = succ.at(i);
    mc.add(ConditionKind::Positivity, pair_name("pos.coupling", 2 * ip, 2 * i),
           lookup(a, 2 * i + 1, 2 * ip + 1) * lookup(a, 2 * ip, 2 * i) - ci * ci);
    mc.add(ConditionKind::Ppt, pair_name("ppt.coupling", 2 * i + 1, 2 * i),
           lookup(a, 2 * i + 1, 2 * i) * lookup(a, 2 * ip, 2 * ip + 1) - ci * ci);
  }
  for (int i : bulk)
    for (int j : blocks) {
      mc.add(ConditionKind::Ppt, pair_name("ppt.bulk-even", 2 * j, i),
             lookup(a, 2 * j, i) * lookup(a, i, 2 * j) - a02);
      mc.add(ConditionKind::Ppt, pair_name("ppt.bulk-odd", 2 * j + 1, i),
             lookup(a, 2 * j + 1, i) * lookup(a, i, 2 * j + 1) - a02);
    }
  for (std::size_t x = 0; x < bulk.size(); ++x)
    for (std::size_t y = x + 1; y < bulk.size(); ++y)
      mc.add(ConditionKind::Ppt, pair_name("ppt.bulk", bulk[x], bulk[y]),
             lookup(a, bulk[x], bulk[y]) * lookup(a, bulk[y], bulk[x]) - a02);
}

}  // namespace

ConditionReport check_conditions(const FamilyParams& p) {
  p.validate();
  MarginCollector mc;
  std::vector<int> blocks(p.n), bulk;
  std::iota(blocks.begin(), blocks.end(), 0);
  for (int i = 2 * p.n; i < p.d; ++i) bulk.push_back(i);
  std::map<int, double> c;
  std::map<int, int> succ;
  if (p.n >= 2)
    for (int i = 0; i < p.n; ++i) {
      c[i] = p.c[i];
      succ[i] = p.succ(i);
    }
  collect_pair_margins(mc, p.a, p.a0, blocks, bulk, c, succ);
  return std::move(mc.rep);
}

FamilyParams saturating_family_params(int d, int n, double a0) {
  FamilyParams p;
  p.d = d;
  p.n = n;
  p.a0 = a0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      if (x != y) p.a[{x, y}] = a0;
  if (n >= 2) p.c.assign(n, a0);
  p.validate();
  return p;
}

BipartiteOperator boundary_state(int d, int n, double a0) {
  require(a0 > 0.0, "boundary_state: a0 must be positive");
  require(n >= 2 && 2 * n <= d, "boundary_state: need 2 <= n <= d/2");
  return build_family_state(saturating_family_params(d, n, a0));
}

// ---- partition family ----

std::vector<int> PartitionParams::part_starts() const {
  std::vector<int> s{0};
  for (int m : mu) s.push_back(s.back() + m);
  return s;
}

void PartitionParams::validate() const {
  require(d >= 2 && d % 2 == 0, "partition params: dimension must be even");
  int sum = 0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    require(mu[k] >= 1, "partition params: parts must be positive");
    if (k) require(mu[k] <= mu[k - 1], "partition params: parts must be sorted descending");
    sum += mu[k];
  }
  require(sum == d / 2, "partition params: parts must sum to d/2");
  require(a0 >= 0.0, "partition params: a0 must be nonnegative");
  check_pair_keys(a, d, "partition params");
  auto starts = part_starts();
  for (const auto& [i, ci] : c) {
    require(ci >= 0.0, "partition params: negative coupling");
    bool ok = false;
    for (std::size_t e = 0; e < mu.size(); ++e)
      if (i >= starts[e] && i < starts[e + 1] && mu[e] >= 2) ok = true;
    require(ok, "partition params: coupling index outside any part of size >= 2");
  }
}

namespace {
std::map<int, int> partition_successors(const PartitionParams& p) {
  std::map<int, int> succ;
  auto starts = p.part_starts();
  for (std::size_t e = 0; e < p.mu.size(); ++e) {
    if (p.mu[e] < 2) continue;
    for (int k = starts[e]; k < starts[e + 1]; ++k)
      succ[k] = starts[e] + ((k - starts[e] + 1) % p.mu[e]);
  }
  return succ;
}
}  // namespace

Mat partition_operator(const PartitionParams& p) {
  p.validate();
  const int d = p.d, n = d / 2;
  Mat rho = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) += p.a0;
  for (int i = 0; i < n; ++i) {
    rho((2 * i) * d + 2 * i, (2 * i) * d + 2 * i) += p.a0;
    rho((2 * i + 1) * d + 2 * i + 1, (2 * i + 1) * d + 2 * i + 1) += p.a0;
    rho((2 * i) * d + 2 * i, (2 * i + 1) * d + 2 * i + 1) -= p.a0;
    rho((2 * i + 1) * d + 2 * i + 1, (2 * i) * d + 2 * i) -= p.a0;
  }
  for (const auto& [key, v] : p.a) rho(key.first * d + key.second, key.first * d + key.second) += v;
  const auto succ = partition_successors(p);
  for (const auto& [i, ci] : p.c) {
    const int ip = succ.at(i);
    const int r = (2 * ip) * d + 2 * i;
    const int s = (2 * i + 1) * d + 2 * ip + 1;
    rho(r, s) -= ci;
    rho(s, r) -= ci;
  }
  return rho;
}

double partition_normalization(const PartitionParams& p) {
  p.validate();
  double sum = 2.0 * p.d * p.a0;  // (d + 2n) a0 with 2n = d
  for (const auto& [key, v] : p.a) sum += v;
  return sum;
}

BipartiteOperator build_partition_state(const PartitionParams& p) {
  const double norm = partition_normalization(p);
  require(norm > 0.0, "build_partition_state: normalization must be positive");
  return {p.d, p.d, Mat(partition_operator(p) / norm)};
}

ConditionReport check_partition_conditions(const PartitionParams& p) {
  p.validate();
  MarginCollector mc;
  const double a02 = p.a0 * p.a0;
  const auto starts = p.part_starts();
  const auto succ = partition_successors(p);
  const int n = p.d / 2;
  // within-part products, per part
  for (std::size_t e = 0; e < p.mu.size(); ++e) {
    std::vector<int> blocks;
    for (int k = starts[e]; k < starts[e + 1]; ++k) blocks.push_back(k);
    std::map<int, double> c;
    for (int k : blocks)
      if (auto it = p.c.find(k); it != p.c.end()) c[k] = it->second;
    collect_pair_margins(mc, p.a, p.a0, blocks, {}, c, succ);
  }
  // cross-part products (every later part)
  for (std::size_t e = 0; e < p.mu.size(); ++e)
    for (int i = starts[e]; i < starts[e + 1]; ++i)
      for (int j = starts[e + 1]; j < n; ++j) {
        mc.add(ConditionKind::Ppt, pair_name("ppt.cross-ee", 2 * i, 2 * j),
               lookup(p.a, 2 * i, 2 * j) * lookup(p.a, 2 * j, 2 * i) - a02);
        mc.add(ConditionKind::Ppt, pair_name("ppt.cross-eo", 2 * i, 2 * j + 1),
               lookup(p.a, 2 * i, 2 * j + 1) * lookup(p.a, 2 * j + 1, 2 * i) - a02);
        mc.add(ConditionKind::Ppt, pair_name("ppt.cross-oe", 2 * i + 1, 2 * j),
               lookup(p.a, 2 * i + 1, 2 * j) * lookup(p.a, 2 * j, 2 * i + 1) - a02);
        mc.add(ConditionKind::Ppt, pair_name("ppt.cross-oo", 2 * i + 1, 2 * j + 1),
               lookup(p.a, 2 * i + 1, 2 * j + 1) * lookup(p.a, 2 * j + 1, 2 * i + 1) - a02);
      }
  return std::move(mc.rep);
}

PartitionParams saturating_partition_params(int d, const std::vector<int>& mu, double a0) {
  PartitionParams p;
  p.d = d;
  p.mu = mu;
  p.a0 = a0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      if (x != y) p.a[{x, y}] = a0;
  std::vector<int> starts{0};
  for (int m : mu) starts.push_back(starts.back() + m);
  for (std::size_t e = 0; e < mu.size(); ++e)
    if (mu[e] >= 2)
      for (int k = starts[e]; k < starts[e + 1]; ++k) p.c[k] = a0;
  p.validate();
  return p;
}

// ---- embedded family ----

void EmbeddedParams::validate() const {
  inner.validate();
  const int d1 = inner.d;
  require(d1 <= d2, "embedded params: need d1 <= d2");
  require(static_cast<int>(combo.size()) == d1, "embedded params: combination size must be d1");
  for (std::size_t k = 0; k < combo.size(); ++k) {
    require(combo[k] >= 0 && combo[k] < d2, "embedded params: combination index out of range");
    if (k) require(combo[k] > combo[k - 1], "embedded params: combination must be strictly increasing");
  }
  for (const auto& [key, v] : ker) {
    require(key.first >= 0 && key.first < d1, "embedded params: kernel row out of range");
    require(key.second >= 0 && key.second < d2 - d1, "embedded params: kernel slot out of range");
    require(v >= 0.0, "embedded params: negative kernel coefficient");
  }
}

Mat embedded_operator(const EmbeddedParams& p) {
  p.validate();
  const int d1 = p.inner.d, d2 = p.d2;
  const Combination combo = make_combination(d1, d2, p.combo);
  const Mat v = embedding_isometry(combo).cast<cplx>();
  const Mat lift = kron(Mat::Identity(d1, d1), v);
  Mat rho = lift * family_operator(p.inner) * lift.transpose();
  const auto comp = complement_indices(combo);
  for (const auto& [key, val] : p.ker) {
    const int idx = key.first * d2 + comp[key.second];
    rho(idx, idx) += val;
  }
  return rho;
}

double embedded_normalization(const EmbeddedParams& p) {
  p.validate();
  double sum = family_normalization(p.inner);
  for (const auto& [key, v] : p.ker) sum += v;
  return sum;
}

BipartiteOperator build_embedded_state(const EmbeddedParams& p) {
  const double norm = embedded_normalization(p);
  require(norm > 0.0, "build_embedded_state: normalization must be positive");
  return {p.inner.d, p.d2, Mat(embedded_operator(p) / norm)};
}

ConditionReport check_embedded_conditions(const EmbeddedParams& p) {
  p.validate();
  // Kernel-sector nonnegativity is enforced structurally; the product
  // conditions are those of the inner family.
  return check_conditions(p.inner);
}

EmbeddedParams saturating_embedded_params(int d1, int d2, const Combination& combo, double a0,
                                          double ker_weight) {
  EmbeddedParams p;
  p.d2 = d2;
  p.combo = combo.indices;
  p.inner = saturating_family_params(d1, d1 / 2, a0);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2 - d1; ++j)
      if (ker_weight != 0.0) p.ker[{i, j}] = ker_weight;
  p.validate();
  return p;
}

// ---- extended family ----

void ExtendedParams::validate() const {
  require(d >= 4 && d % 4 == 0, "extended params: dimension must be a positive multiple of 4");
  require(a0 >= 0.0, "extended params: a0 must be nonnegative");
  check_pair_keys(a, d, "extended params");
}

Mat extended_operator(const ExtendedParams& p) {
  p.validate();
  const int d = p.d, n = d / 4;
  Mat rho = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) += p.a0;
  for (int i = 0; i < n; ++i)
    for (int aa = 0; aa < 4; ++aa)
      for (int bb = 0; bb < 4; ++bb) {
        const int pp = 4 * i + aa, qq = 4 * i + bb;
        rho(pp * d + pp, qq * d + qq) += (aa == bb) ? 3.0 * p.a0 : -p.a0;
      }
  for (const auto& [key, v] : p.a) rho(key.first * d + key.second, key.first * d + key.second) += v;
  for (int i = 0; i < n; ++i) {
    const int s1 = (4 * i + 1) * d + 4 * i + 2, t1 = (4 * i + 3) * d + 4 * i;
    const int s2 = (4 * i) * d + 4 * i + 3, t2 = (4 * i + 2) * d + 4 * i + 1;
    rho(s1, t1) += p.a0;
    rho(t1, s1) += p.a0;
    rho(s2, t2) += p.a0;
    rho(t2, s2) += p.a0;
  }
  return rho;
}

double extended_normalization(const ExtendedParams& p) {
  p.validate();
  double sum = 4.0 * p.d * p.a0;
  for (const auto& [key, v] : p.a) sum += v;
  return sum;
}

BipartiteOperator build_extended_state(const ExtendedParams& p) {
  Mat rho = extended_operator(p);
  if (p.normalize) {
    const double norm = extended_normalization(p);
    require(norm > 0.0, "build_extended_state: normalization must be positive");
    rho /= norm;
  }
  return {p.d, p.d, std::move(rho)};
}

ConditionReport check_extended_conditions(const ExtendedParams& p) {
  p.validate();
  MarginCollector mc;
  const double a02 = p.a0 * p.a0;
  const int n = p.d / 4;
  auto av = [&](int pp, int qq) { return lookup(p.a, pp, qq); };
  for (int i = 0; i < n; ++i) {
    mc.add(ConditionKind::Positivity, pair_name("pos.block-a", 4 * i + 1, 4 * i + 2),
           av(4 * i + 1, 4 * i + 2) * av(4 * i + 3, 4 * i) - a02);
    mc.add(ConditionKind::Positivity, pair_name("pos.block-b", 4 * i, 4 * i + 3),
           av(4 * i, 4 * i + 3) * av(4 * i + 2, 4 * i + 1) - a02);
    mc.add(ConditionKind::Ppt, pair_name("ppt.block-a", 4 * i + 1, 4 * i),
           av(4 * i + 1, 4 * i) * av(4 * i + 3, 4 * i + 2) - a02);
    mc.add(ConditionKind::Ppt, pair_name("ppt.block-b", 4 * i, 4 * i + 1),
           av(4 * i, 4 * i + 1) * av(4 * i + 2, 4 * i + 3) - a02);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int aa = 0; aa < 4; ++aa)
        for (int bb = aa; bb < 4; ++bb)
          mc.add(ConditionKind::Ppt, pair_name("ppt.cross", 4 * i + aa, 4 * j + bb),
                 av(4 * i + aa, 4 * j + bb) * av(4 * j + bb, 4 * i + aa) - a02);
    }
  return std::move(mc.rep);
}

ExtendedParams saturating_extended_params(int d, double a0) {
  ExtendedParams p;
  p.d = d;
  p.a0 = a0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      if (x != y) p.a[{x, y}] = a0;
  p.validate();
  return p;
}

// ---- detection bounds ----

double canonical_detection_bound(int d, int n) {
  require(n >= 2 && 2 * n <= d, "canonical_detection_bound: defined for 2 <= n <= d/2");
  return -2.0 * n / (d + 4.0 * n * n + (d - 2.0 * n) * (d + 2.0 * n - 1.0));
}

double canonical_npt_floor(int d, int n) {
  require(n >= 2 && 2 * n <= d, "canonical_npt_floor: defined for 2 <= n <= d/2");
  return -(4.0 * n * (n - 1.0) + (d - 2.0 * n) * (d + 2.0 * n - 1.0)) / (d + 2.0 * n);
}

double partition_detection_bound(int d, const std::vector<int>& mu) {
  double denom = 0.0;
  int acc = 0;
  for (int m : mu) {
    acc += m;
    denom += 2.0 * m * (2.0 * m + 1.0) + 4.0 * m * (d - 2.0 * acc);
  }
  require(denom > 0.0, "partition_detection_bound: empty partition");
  return -d / denom;
}

double partition_npt_floor(int d, const std::vector<int>& mu) {
  double num = 0.0;
  int acc = 0;
  for (int m : mu) {
    acc += m;
    num += 2.0 * m * (m - 1.0) + 2.0 * m * (d - 2.0 * acc);
  }
  return -num / d;
}

double extended_detection_bound(double a0, int n) { return -4.0 * a0 * n; }

// ---- samplers ----

namespace {

// Valid draws follow the equality-case parametrization: each product-
// constrained pair gets a multiplier delta >= 1 and an asymmetry ratio, so
// every product condition holds by construction; couplings are then capped
// by the products that bound them. A fraction of pairs is pinned at the
// boundary so sampled suites cover both the saturating face and the interior.
struct PairDraw {
  double fwd, bwd;
};

PairDraw draw_pair(double a0, std::mt19937_64& rng, DrawMode mode) {
  if (mode == DrawMode::Boundary) return {a0, a0};
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // keep sampled products strictly above the equality face so rounding in the
  // checker cannot flip a margin sign; the Boundary mode covers exact equality
  double delta = 1.0 + 1e-9;
  if (u01(rng) > 0.3) delta = 1.0 + 0.6 * std::abs(gauss(rng));
  const double fwd = a0 * delta * std::exp(0.3 * gauss(rng));
  const double bwd = (a0 * delta) * (a0 * delta) / fwd;
  return {fwd, bwd};
}

// safety factor applied to coupling caps so c*c never exceeds the capping
// product through rounding
constexpr double kCapSlack = 1.0 - 1e-12;

double draw_free(double a0, std::mt19937_64& rng, DrawMode mode) {
  if (mode == DrawMode::Boundary) return a0;
  std::normal_distribution<double> gauss(0.0, 0.4);
  return a0 * std::exp(gauss(rng));
}

}  // namespace

FamilyParams sample_family_params(int d, int n, double a0, std::mt19937_64& rng, DrawMode mode) {
  FamilyParams p;
  p.d = d;
  p.n = n;
  p.a0 = a0;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto same_block_mixed = [&](int x, int y) {
    return x / 2 == y / 2 && x / 2 < n && x != y;
  };
  for (int x = 0; x < d; ++x)
    for (int y = x + 1; y < d; ++y) {
      if (same_block_mixed(x, y)) {
        p.a[{x, y}] = draw_free(a0, rng, mode);
        p.a[{y, x}] = draw_free(a0, rng, mode);
      } else {
        const PairDraw pd = draw_pair(a0, rng, mode);
        p.a[{x, y}] = pd.fwd;
        p.a[{y, x}] = pd.bwd;
      }
    }
  if (n >= 2) {
    p.c.resize(n);
    for (int i = 0; i < n; ++i) {
      const int ip = p.succ(i);
      const double cap =
          std::min(std::sqrt(p.a[{2 * i + 1, 2 * ip + 1}] * p.a[{2 * ip, 2 * i}]),
                   std::sqrt(p.a[{2 * i + 1, 2 * i}] * p.a[{2 * ip, 2 * ip + 1}]));
      p.c[i] = (mode == DrawMode::Boundary) ? cap : kCapSlack * cap * (0.5 + 0.5 * u01(rng));
    }
  }
  if (mode == DrawMode::NptWindow) {
    require(n >= 1, "sampler: invalid n");
    // Break one to three product families while keeping every coefficient
    // nonnegative and the positivity couplings capped.
    std::uniform_int_distribution<int> count_dist(1, 3);
    std::uniform_int_distribution<int> coord(0, d - 1);
    std::uniform_real_distribution<double> frac(0.3, 0.9);
    int to_break = count_dist(rng);
    while (to_break > 0) {
      const int x = coord(rng), y = coord(rng);
      if (x == y) continue;
      if (x / 2 == y / 2 && x / 2 < n) continue;  // no product condition there
      const double v = a0 * frac(rng);
      p.a[{x, y}] = v;
      p.a[{y, x}] = v;
      --to_break;
    }
    if (n >= 2)
      for (int i = 0; i < n; ++i) {
        const int ip = p.succ(i);
        const double cap = std::sqrt(p.a[{2 * i + 1, 2 * ip + 1}] * p.a[{2 * ip, 2 * i}]);
        p.c[i] = std::min(p.c[i], kCapSlack * cap);
      }
  }
  p.validate();
  return p;
}

PartitionParams sample_partition_params(int d, const std::vector<int>& mu, double a0,
                                        std::mt19937_64& rng, DrawMode mode) {
  PartitionParams p;
  p.d = d;
  p.mu = mu;
  p.a0 = a0;
  const int n = d / 2;
  std::vector<int> part_of(n, -1);
  {
    int e = 0, off = 0;
    for (int m : mu) {
      for (int k = 0; k < m; ++k) part_of[off + k] = e;
      off += m;
      ++e;
    }
  }
  auto same_block_mixed = [&](int x, int y) { return x / 2 == y / 2 && x != y; };
  for (int x = 0; x < d; ++x)
    for (int y = x + 1; y < d; ++y) {
      if (same_block_mixed(x, y)) {
        p.a[{x, y}] = draw_free(a0, rng, mode);
        p.a[{y, x}] = draw_free(a0, rng, mode);
      } else {
        const PairDraw pd = draw_pair(a0, rng, mode);
        p.a[{x, y}] = pd.fwd;
        p.a[{y, x}] = pd.bwd;
      }
    }
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<int> starts{0};
  for (int m : mu) starts.push_back(starts.back() + m);
  for (std::size_t e = 0; e < mu.size(); ++e) {
    if (mu[e] < 2) continue;
    for (int k = starts[e]; k < starts[e + 1]; ++k) {
      const int kp = starts[e] + ((k - starts[e] + 1) % mu[e]);
      const double cap =
          std::min(std::sqrt(p.a[{2 * k + 1, 2 * kp + 1}] * p.a[{2 * kp, 2 * k}]),
                   std::sqrt(p.a[{2 * k + 1, 2 * k}] * p.a[{2 * kp, 2 * kp + 1}]));
      p.c[k] = (mode == DrawMode::Boundary) ? cap : kCapSlack * cap * (0.5 + 0.5 * u01(rng));
    }
  }
  if (mode == DrawMode::NptWindow) {
    std::uniform_int_distribution<int> coord(0, d - 1);
    std::uniform_real_distribution<double> frac(0.3, 0.9);
    int to_break = 2;
    while (to_break > 0) {
      const int x = coord(rng), y = coord(rng);
      if (x == y || same_block_mixed(x, y)) continue;
      const double v = a0 * frac(rng);
      p.a[{x, y}] = v;
      p.a[{y, x}] = v;
      --to_break;
    }
    for (auto& [k, ck] : p.c) {
      int e = part_of[k];
      const int kp = starts[e] + ((k - starts[e] + 1) % mu[e]);
      ck = std::min(ck, kCapSlack * std::sqrt(p.a[{2 * k + 1, 2 * kp + 1}] * p.a[{2 * kp, 2 * k}]));
    }
  }
  p.validate();
  return p;
}

ExtendedParams sample_extended_params(int d, double a0, std::mt19937_64& rng, DrawMode mode) {
  ExtendedParams p;
  p.d = d;
  p.a0 = a0;
  const int n = d / 4;
  auto free_within = [&](int x, int y) {
    // the two within-block reversed pairs without any product condition
    if (x / 4 != y / 4) return false;
    const int aa = x % 4, bb = y % 4;
    const int lohi = std::min(aa, bb) * 10 + std::max(aa, bb);
    return lohi == 2 || lohi == 13;  // {0,2} and {1,3}
  };
  // product-constrained partner map within a block: positivity pairs
  // (1,2)&(3,0), (0,3)&(2,1); partial-transpose pairs (1,0)&(3,2), (0,1)&(2,3)
  auto partner = [&](int x, int y, int& px, int& py) {
    const int b = 4 * (x / 4);
    const int aa = x - b, bb = y - b;
    if (aa == 1 && bb == 2) { px = b + 3; py = b + 0; return true; }
    if (aa == 0 && bb == 3) { px = b + 2; py = b + 1; return true; }
    if (aa == 1 && bb == 0) { px = b + 3; py = b + 2; return true; }
    if (aa == 0 && bb == 1) { px = b + 2; py = b + 3; return true; }
    return false;
  };
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      if (x == y || p.a.count({x, y})) continue;
      if (x / 4 != y / 4) {
        // cross-block: paired with the reversed coordinates
        const PairDraw pd = draw_pair(a0, rng, mode);
        p.a[{x, y}] = pd.fwd;
        p.a[{y, x}] = pd.bwd;
      } else if (free_within(x, y)) {
        p.a[{x, y}] = draw_free(a0, rng, mode);
      } else {
        int px, py;
        if (partner(x, y, px, py)) {
          const PairDraw pd = draw_pair(a0, rng, mode);
          p.a[{x, y}] = pd.fwd;
          p.a[{px, py}] = pd.bwd;
        }
      }
    }
  if (mode == DrawMode::NptWindow) {
    std::uniform_real_distribution<double> frac(0.3, 0.9);
    std::uniform_int_distribution<int> block(0, n - 1);
    const int b = 4 * block(rng);
    const double v = a0 * frac(rng);
    p.a[{b + 1, b}] = v;
    p.a[{b + 3, b + 2}] = v;  // breaks a partial-transpose family only
  }
  p.validate();
  return p;
}

EmbeddedParams sample_embedded_params(int d1, int d2, const Combination& combo, double a0,
                                      std::mt19937_64& rng, DrawMode mode) {
  EmbeddedParams p;
  p.d2 = d2;
  p.combo = combo.indices;
  p.inner = sample_family_params(d1, d1 / 2, a0, rng, mode);
  if (mode != DrawMode::Boundary) {
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2 - d1; ++j) p.ker[{i, j}] = draw_free(a0, rng, mode);
  }
  p.validate();
  return p;
}

}  // namespace witnesskit
