#pragma once

#include "ripsbox/relative.hpp"

#include <json.hpp>

#include <string>

namespace ripsbox {

using Json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json segment_to_json(const Segment& s);
Segment segment_from_json(const Json& j);

Json pt_to_json(const Pt& p);
Pt pt_from_json(const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json complex_to_json(const BandComplex& Y);
BandComplex complex_from_json(const Json& j);

std::string complex_to_string(const BandComplex& Y);
BandComplex complex_from_string(const std::string& text);

void save_complex(const BandComplex& Y, const std::string& path);
BandComplex load_complex(const std::string& path);

Json record_to_json(const MoveRecord& r);
MoveRecord record_from_json(const Json& j);

Json pair_to_json(const PairState& P);
PairState pair_from_json(const Json& j);
void save_pair(const PairState& P, const std::string& path);
PairState load_pair(const std::string& path);

/// Trace files are JSONL: a header line, then one line per record
/// ({"type":"move","step":..}) and per step stat.
void write_trace_jsonl(const MachineTrace& trace, const std::string& path);
void write_pair_trace_jsonl(const PairTrace& trace, const std::string& path);

/// Replay the move lines of a trace file against an initial complex.
BandComplex replay_trace(const BandComplex& initial, const std::string& trace_path);

Json classification_to_json(const ClassificationReport& r);
Json pair_report_to_json(const PairComponentReport& r);

}  // namespace ripsbox
