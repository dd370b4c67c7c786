#include "witnesskit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace witnesskit {

json matrix_to_json(const Mat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

Mat matrix_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im;
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  require(static_cast<Eigen::Index>(re.size()) == rows * cols, "matrix JSON: re length mismatch");
  require(im.empty() || im.size() == re.size(), "matrix JSON: im length mismatch");
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const std::size_t k = static_cast<std::size_t>(r * cols + c);
      m(r, c) = cplx(re[k], im.empty() ? 0.0 : im[k]);
    }
  return m;
}

json real_matrix_to_json(const RealMat& m) { return matrix_to_json(m.cast<cplx>()); }

json operator_to_json(const BipartiteOperator& op) {
  json j = matrix_to_json(op.m);
  j["d1"] = op.d1;
  j["d2"] = op.d2;
  return j;
}

BipartiteOperator operator_from_json(const json& j) {
  return {j.at("d1").get<int>(), j.at("d2").get<int>(), matrix_from_json(j)};
}

json skew_to_json(const SkewMatrix& u) {
  json j;
  const int d = u.dim();
  j["d"] = d;
  std::vector<double> upper;
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) upper.push_back(u.m(r, c));
  j["upper"] = upper;
  return j;
}

SkewMatrix skew_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  const auto upper = j.at("upper").get<std::vector<double>>();
  require(static_cast<int>(upper.size()) == d * (d - 1) / 2, "skew JSON: upper length mismatch");
  RealMat m = RealMat::Zero(d, d);
  std::size_t k = 0;
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) {
      m(r, c) = upper[k];
      m(c, r) = -upper[k];
      ++k;
    }
  return validate_skew(m);
}

json canonical_form_to_json(const CanonicalForm& cf) {
  json j;
  j["q"] = real_matrix_to_json(cf.q);
  j["lambdas"] = cf.lambdas;
  j["rank"] = cf.rank;
  return j;
}

namespace {
WitnessKind kind_from_string(const std::string& s) {
  if (s == "from-U") return WitnessKind::FromU;
  if (s == "canonical") return WitnessKind::Canonical;
  if (s == "conjugated-psi") return WitnessKind::ConjugatedPsi;
  if (s == "conjugated-J") return WitnessKind::ConjugatedJ;
  if (s == "partition") return WitnessKind::Partition;
  if (s == "embedded") return WitnessKind::Embedded;
  if (s == "extended") return WitnessKind::Extended;
  if (s == "opc-core") return WitnessKind::OpcCore;
  throw precondition_error("unknown witness kind: " + s);
}
}  // namespace

json provenance_to_json(const Provenance& p) {
  json j;
  j["kind"] = to_string(p.kind);
  j["d1"] = p.d1;
  j["d2"] = p.d2;
  j["lambdas"] = p.lambdas;
  if (!p.mu.empty()) j["mu"] = p.mu;
  if (!p.combo.empty()) j["combo"] = p.combo;
  if (p.generator) j["generator"] = real_matrix_to_json(*p.generator);
  return j;
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.kind = kind_from_string(j.at("kind").get<std::string>());
  p.d1 = j.at("d1").get<int>();
  p.d2 = j.at("d2").get<int>();
  p.lambdas = j.at("lambdas").get<std::vector<double>>();
  if (j.contains("mu")) p.mu = j.at("mu").get<std::vector<int>>();
  if (j.contains("combo")) p.combo = j.at("combo").get<std::vector<int>>();
  if (j.contains("generator")) p.generator = matrix_from_json(j.at("generator")).real();
  return p;
}

json witness_to_json(const Witness& w) {
  json j = operator_to_json(w.op);
  j["provenance"] = provenance_to_json(w.prov);
  j["certified"] = w.certified;
  return j;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.op = operator_from_json(j);
  w.prov = provenance_from_json(j.at("provenance"));
  w.certified = j.value("certified", false);
  return w;
}

namespace {
json pair_map_to_json(const PairMap& a) {
  json j = json::object();
  for (const auto& [key, v] : a) {
    std::ostringstream os;
    os << key.first << "," << key.second;
    j[os.str()] = v;
  }
  return j;
}

PairMap pair_map_from_json(const json& j) {
  PairMap a;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto comma = key.find(',');
    require(comma != std::string::npos, "params JSON: pair key must be \"i,j\"");
    const int p = std::stoi(key.substr(0, comma));
    const int q = std::stoi(key.substr(comma + 1));
    a[{p, q}] = it.value().get<double>();
  }
  return a;
}
}  // namespace

json family_params_to_json(const FamilyParams& p) {
  json j;
  j["d"] = p.d;
  j["n"] = p.n;
  j["a0"] = p.a0;
  j["a"] = pair_map_to_json(p.a);
  j["c"] = p.c;
  return j;
}

FamilyParams family_params_from_json(const json& j) {
  FamilyParams p;
  p.d = j.at("d").get<int>();
  p.n = j.at("n").get<int>();
  p.a0 = j.at("a0").get<double>();
  if (j.contains("a")) p.a = pair_map_from_json(j.at("a"));
  if (j.contains("c")) p.c = j.at("c").get<std::vector<double>>();
  p.validate();
  return p;
}

json partition_params_to_json(const PartitionParams& p) {
  json j;
  j["d"] = p.d;
  j["mu"] = p.mu;
  j["a0"] = p.a0;
  j["a"] = pair_map_to_json(p.a);
  json c = json::object();
  for (const auto& [k, v] : p.c) c[std::to_string(k)] = v;
  j["c"] = c;
  return j;
}

PartitionParams partition_params_from_json(const json& j) {
  PartitionParams p;
  p.d = j.at("d").get<int>();
  p.mu = j.at("mu").get<std::vector<int>>();
  p.a0 = j.at("a0").get<double>();
  if (j.contains("a")) p.a = pair_map_from_json(j.at("a"));
  if (j.contains("c"))
    for (auto it = j.at("c").begin(); it != j.at("c").end(); ++it)
      p.c[std::stoi(it.key())] = it.value().get<double>();
  p.validate();
  return p;
}

json embedded_params_to_json(const EmbeddedParams& p) {
  json j;
  j["d1"] = p.inner.d;
  j["d2"] = p.d2;
  j["combo"] = p.combo;
  j["inner"] = family_params_to_json(p.inner);
  j["ker"] = pair_map_to_json(p.ker);
  return j;
}

EmbeddedParams embedded_params_from_json(const json& j) {
  EmbeddedParams p;
  p.d2 = j.at("d2").get<int>();
  p.combo = j.at("combo").get<std::vector<int>>();
  p.inner = family_params_from_json(j.at("inner"));
  if (j.contains("ker")) p.ker = pair_map_from_json(j.at("ker"));
  p.validate();
  return p;
}

json extended_params_to_json(const ExtendedParams& p) {
  json j;
  j["d"] = p.d;
  j["a0"] = p.a0;
  j["a"] = pair_map_to_json(p.a);
  j["normalize"] = p.normalize;
  return j;
}

ExtendedParams extended_params_from_json(const json& j) {
  ExtendedParams p;
  p.d = j.at("d").get<int>();
  p.a0 = j.at("a0").get<double>();
  if (j.contains("a")) p.a = pair_map_from_json(j.at("a"));
  p.normalize = j.value("normalize", false);
  p.validate();
  return p;
}

json condition_report_to_json(const ConditionReport& r) {
  json j;
  j["positivity_ok"] = r.positivity_ok;
  j["ppt_ok"] = r.ppt_ok;
  json viol = json::array();
  for (const auto& v : r.violated)
    viol.push_back({{"kind", v.kind == ConditionKind::Positivity ? "positivity" : "ppt"},
                    {"name", v.name},
                    {"margin", v.margin}});
  j["violated"] = viol;
  double tightest = std::numeric_limits<double>::infinity();
  for (const auto& v : r.margins) tightest = std::min(tightest, v.margin);
  j["tightest_margin"] = r.margins.empty() ? 0.0 : tightest;
  return j;
}

namespace {
json vec_to_json(const Vec& v) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}
}  // namespace

json cert_report_to_json(const CertReport& r) {
  json j;
  j["min_value"] = r.min_value;
  j["is_ew"] = r.is_ew;
  j["cert_tol"] = r.cert_tol;
  j["argmin"] = {{"eta", vec_to_json(r.eta)}, {"zeta", vec_to_json(r.zeta)}};
  j["restart_histogram"] = {{"converged", r.restarts.converged},
                            {"min_iters", r.restarts.min_iters},
                            {"max_iters", r.restarts.max_iters},
                            {"mean_iters", r.restarts.mean_iters}};
  return j;
}

json detection_report_to_json(const DetectionReport& r) {
  json j;
  j["class"] = to_string(r.cls);
  j["value"] = r.value;
  if (r.bound) j["bound"] = *r.bound;
  if (r.margin) j["margin"] = *r.margin;
  j["ppt"] = {{"flag", r.ppt.ppt}, {"min_eig_ta", r.ppt.min_eig_ta}};
  return j;
}

json state_file_to_json(const StateFile& s) {
  json j = operator_to_json(s.op);
  j["provenance"] = s.provenance;
  return j;
}

StateFile state_file_from_json(const json& j) {
  StateFile s;
  s.op = operator_from_json(j);
  if (j.contains("provenance")) s.provenance = j.at("provenance");
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write file: " + path);
  out << content;
}

}  // namespace witnesskit
