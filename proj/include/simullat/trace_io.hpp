#pragma once

// JSONL trace and alignment files.
//
// Trace record (one object per line):
//   {"id": "s1", "modality": "speech-to-speech", "timeline": "ca",
//    "units": "tokens" | "segments",              // optional, default tokens
//    "source": [{"text": "..", "start": 0, "end": 300}, ...],
//    "target": [{"text": "..", "start": 900, "end": 1200, "g": 1}, ...],
//    "reference": "whitespace separated words",   // optional
//    "spans": [{"kind": "decode", "start": 300, "end": 900}],  // optional
//    "meta": {...}}                               // optional
// Times are integer milliseconds and are omitted on "steps" timelines.
// "units": "segments" marks speech sides whose entries are whole segments
// that still need tau sub-segmentation.
//
// Alignment record:
//   {"id": "s1", "links": [{"src": 1, "tgt": 2, "src_start": 0,
//                           "tgt_start": 900, "verified": true}, ...]}

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "simullat/core.hpp"
#include "simullat/evs.hpp"

namespace simullat {

// Throws DataError naming the offending field.
SessionTrace trace_from_json(const nlohmann::json& j);
nlohmann::json trace_to_json(const SessionTrace& s);

// Blank lines are skipped. Errors carry the 1-based line number.
std::vector<SessionTrace> read_traces(std::istream& in);
void write_traces(std::ostream& out, std::span<const SessionTrace> traces);

struct AlignmentRecord {
  std::string id;
  std::vector<AlignedPair> links;
};

AlignmentRecord alignment_from_json(const nlohmann::json& j);
nlohmann::json alignment_to_json(const AlignmentRecord& r);
std::vector<AlignmentRecord> read_alignments(std::istream& in);
void write_alignments(std::ostream& out, std::span<const AlignmentRecord> records);

}  // namespace simullat
