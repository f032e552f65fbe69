#pragma once

#include "isoparam/clifford.hpp"
#include "isoparam/focal.hpp"
#include "isoparam/quadforms.hpp"
#include "isoparam/reconstruct.hpp"

#include <json.hpp>

#include <string>

namespace isoparam {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);
Json vector_to_json(const Vec& v);

Json system_to_json(const CliffordSystem& sys);
CliffordSystem system_from_json(const Json& j);

/// Reads a JSON file. Malformed text raises ParseError with the byte offset.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

Json report_to_json(const VerificationReport& rep);
Json tensor_to_json(const Tensor3& t);
Json frame_to_json(const DarbouxFrame& frame, const FrameTensors& tensors);
Json rank_span_to_json(const RankSpanReport& rep);
Json normal_form_to_json(const NormalFormResult& nf);
Json probe_to_json(const ProbeReport& rep);
Json ozeki_takeuchi_to_json(const OzekiTakeuchiReport& rep);
Json enumeration_to_json(const PairEnumeration& e);

}  // namespace isoparam
