#pragma once

#include "witnesskit/pptstates.hpp"
#include "witnesskit/skewcanon.hpp"
#include "witnesskit/verify.hpp"
#include "witnesskit/witnesses.hpp"

#include <json.hpp>

#include <string>

namespace witnesskit {

using json = nlohmann::json;

// matrix schema: {"rows":N,"cols":N,"re":[...],"im":[...]} row-major
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);
json real_matrix_to_json(const RealMat& m);

json operator_to_json(const BipartiteOperator& op);
BipartiteOperator operator_from_json(const json& j);

// skew schema: {"d":N,"upper":[strict upper triangle row-major]}
json skew_to_json(const SkewMatrix& u);
SkewMatrix skew_from_json(const json& j);

json canonical_form_to_json(const CanonicalForm& cf);

json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const json& j);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

// params schema: {"d":N,"n":N,"a0":x,"a":{"i,j":x,...},"c":[...]}
json family_params_to_json(const FamilyParams& p);
FamilyParams family_params_from_json(const json& j);
json partition_params_to_json(const PartitionParams& p);
PartitionParams partition_params_from_json(const json& j);
json embedded_params_to_json(const EmbeddedParams& p);
EmbeddedParams embedded_params_from_json(const json& j);
json extended_params_to_json(const ExtendedParams& p);
ExtendedParams extended_params_from_json(const json& j);

json condition_report_to_json(const ConditionReport& r);
json cert_report_to_json(const CertReport& r);
json detection_report_to_json(const DetectionReport& r);

/// State files carry the family parameters next to the operator so
/// classification can recover the construction.
struct StateFile {
  BipartiteOperator op;
  json provenance;  // family-specific params + condition flags
};

json state_file_to_json(const StateFile& s);
StateFile state_file_from_json(const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace witnesskit
