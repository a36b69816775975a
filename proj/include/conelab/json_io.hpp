#pragma once

#include "conelab/certify.hpp"
#include "conelab/convex_set.hpp"
#include "conelab/porosity.hpp"
#include "conelab/survey.hpp"

#include <json.hpp>

#include <string>

namespace conelab {

using Json = nlohmann::json;

// Wire formats (see README): sets are tagged by "type" with fields "points",
// "rays", "generators", "dim", "base", "offset"; maps carry "rows", "cols",
// "entries". Malformed input raises Error("BAD_INPUT").
ConvexSet parse_set(const Json& j);
LinearMap parse_map(const Json& j);
Vector parse_vector(const Json& j);
SetOracle parse_oracle(const Json& j);

Json set_to_json(const ConvexSet& x);
Json map_to_json(const LinearMap& t);
Json vector_to_json(const Vector& v);
Json certificate_to_json(const Certificate& c);
Json preimage_to_json(const PreimageWitness& w);
Json porosity_to_json(const PorosityEstimate& e);
Json preimage_report_to_json(const PreimagePorosityReport& r);
Json survey_summary_to_json(const SurveyReport& r);
Json witness_sequence_to_json(const WitnessSequence& w);

std::string survey_csv(const SurveyReport& r);

Json load_json_file(const std::string& path); // Error("BAD_INPUT") on failure

} // namespace conelab
