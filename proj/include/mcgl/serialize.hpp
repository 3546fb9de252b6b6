#pragma once

#include "json.hpp"
#include "mcgl/census.hpp"
#include "mcgl/sod.hpp"
#include "mcgl/terminalize.hpp"

namespace mcgl {

using Json = nlohmann::json;

/// All rationals serialize as "p/q" strings; arrays are emitted in the
/// canonical orders maintained by the library, so output is byte-stable.
Json to_json(const Rat& q);
Json to_json(const Vec& v);
Json to_json(const FanModel& fan);
Json to_json(const CandidateRay& c);
Json to_json(const MMPStep& s);
Json to_json(const TerminalizationResult& t);
Json to_json(const SODComponent& c);
Json to_json(const CensusReport& r);
Json to_json(const ProjectiveCollectionReport& r);
Json to_json(const CaseOneCertificate& c);
Json to_json(const FixedLocusRecord& r);

Rat rat_from_json(const Json& j);
Vec vec_from_json(const Json& j);
FanModel fan_from_json(const Json& j);

/// Canonical dump: 2-space indent, sorted keys (nlohmann default map).
std::string dump_json(const Json& j);

}  // namespace mcgl
