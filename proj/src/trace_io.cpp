#include "simullat/trace_io.hpp"

#include <cmath>
#include <sstream>

#include "simullat/error.hpp"

namespace simullat {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw DataError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double millis(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw DataError(std::string("field '") + key + "' must be a non-negative integer (ms)");
  }
  return static_cast<double>(v.get<long long>());
}

int positive_int(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw DataError(std::string("field '") + key + "' must be a positive integer");
  }
  return v.get<int>();
}

TimedToken token_from_json(const json& j, bool timed) {
  if (!j.is_object()) throw DataError("token entries must be objects");
  TimedToken tok;
  if (const auto it = j.find("text"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw DataError("field 'text' must be a string");
    tok.text = it->get<std::string>();
  }
  if (timed) {
    tok.end = millis(field(j, "end"), "end");
    const auto it = j.find("start");
    tok.start = it == j.end() ? tok.end : millis(*it, "start");
  }
  return tok;
}

std::vector<TimedToken> side_from_json(const json& j, const char* key, bool timed) {
  const auto& arr = field(j, key);
  if (!arr.is_array()) throw DataError(std::string("field '") + key + "' must be an array");
  std::vector<TimedToken> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    out.push_back(token_from_json(item, timed));
    auto& tok = out.back();
    tok.index = static_cast<int>(out.size());
    if (!timed) tok.start = tok.end = tok.index;
  }
  return out;
}

long long to_ms(double v) { return std::llround(v); }

json token_to_json(const TimedToken& tok, bool timed) {
  json j = json::object();
  if (tok.text) j["text"] = *tok.text;
  if (timed) {
    j["start"] = to_ms(tok.start);
    j["end"] = to_ms(tok.end);
  }
  return j;
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

template <typename Record, typename Parse>
std::vector<Record> read_jsonl(std::istream& in, Parse parse) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

SessionTrace trace_from_json(const json& j) {
  if (!j.is_object()) throw DataError("trace record must be an object");
  SessionTrace s;
  s.id = string_field(j, "id");
  s.modality = parse_modality(string_field(j, "modality"));
  s.timeline = parse_timeline(string_field(j, "timeline"));
  const bool timed = s.is_timed();

  if (const auto it = j.find("units"); it != j.end()) {
    const auto units = it->get<std::string>();
    if (units == "segments") {
      s.segment_units = true;
    } else if (units != "tokens") {
      throw DataError("field 'units' must be 'tokens' or 'segments'");
    }
  }

  s.source = side_from_json(j, "source", timed);
  s.target = side_from_json(j, "target", timed);
  for (const auto& item : field(j, "target")) {
    s.reads.push_back(positive_int(field(item, "g"), "g"));
  }

  if (const auto it = j.find("reference"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      s.reference = split_words(it->get<std::string>());
    } else if (it->is_array()) {
      s.reference = it->get<std::vector<std::string>>();
    } else {
      throw DataError("field 'reference' must be a string or a list of tokens");
    }
  }

  if (const auto it = j.find("spans"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw DataError("field 'spans' must be an array");
    std::vector<ComputationSpan> spans;
    for (const auto& item : *it) {
      ComputationSpan span;
      span.kind = parse_span_kind(string_field(item, "kind"));
      span.start = millis(field(item, "start"), "start");
      span.end = millis(field(item, "end"), "end");
      spans.push_back(span);
    }
    s.spans = std::move(spans);
  }

  if (const auto it = j.find("meta"); it != j.end()) s.meta = *it;
  validate(s);
  return s;
}

json trace_to_json(const SessionTrace& s) {
  const bool timed = s.is_timed();
  json j;
  j["id"] = s.id;
  j["modality"] = std::string(to_string(s.modality));
  j["timeline"] = std::string(to_string(s.timeline));
  if (s.segment_units) j["units"] = "segments";
  j["source"] = json::array();
  for (const auto& tok : s.source) j["source"].push_back(token_to_json(tok, timed));
  j["target"] = json::array();
  for (std::size_t t = 0; t < s.target.size(); ++t) {
    auto tok = token_to_json(s.target[t], timed);
    tok["g"] = s.reads.at(t);
    j["target"].push_back(std::move(tok));
  }
  if (s.reference) j["reference"] = *s.reference;
  if (s.spans) {
    j["spans"] = json::array();
    for (const auto& span : *s.spans) {
      j["spans"].push_back(
          {{"kind", std::string(to_string(span.kind))}, {"start", to_ms(span.start)},
           {"end", to_ms(span.end)}});
    }
  }
  if (!s.meta.is_null() && !s.meta.empty()) j["meta"] = s.meta;
  return j;
}

std::vector<SessionTrace> read_traces(std::istream& in) {
  return read_jsonl<SessionTrace>(in, [](const json& j) { return trace_from_json(j); });
}

void write_traces(std::ostream& out, std::span<const SessionTrace> traces) {
  for (const auto& s : traces) out << trace_to_json(s).dump() << '\n';
}

AlignmentRecord alignment_from_json(const json& j) {
  if (!j.is_object()) throw DataError("alignment record must be an object");
  AlignmentRecord r;
  r.id = string_field(j, "id");
  const auto& links = field(j, "links");
  if (!links.is_array()) throw DataError("field 'links' must be an array");
  for (const auto& item : links) {
    AlignedPair p;
    p.src_index = positive_int(field(item, "src"), "src");
    p.tgt_index = positive_int(field(item, "tgt"), "tgt");
    p.src_start = millis(field(item, "src_start"), "src_start");
    p.tgt_start = millis(field(item, "tgt_start"), "tgt_start");
    const auto& verified = field(item, "verified");
    if (!verified.is_boolean()) throw DataError("field 'verified' must be a boolean");
    p.verified = verified.get<bool>();
    r.links.push_back(p);
  }
  return r;
}

json alignment_to_json(const AlignmentRecord& r) {
  json j;
  j["id"] = r.id;
  j["links"] = json::array();
  for (const auto& p : r.links) {
    j["links"].push_back({{"src", p.src_index},
                          {"tgt", p.tgt_index},
                          {"src_start", to_ms(p.src_start)},
                          {"tgt_start", to_ms(p.tgt_start)},
                          {"verified", p.verified}});
  }
  return j;
}

std::vector<AlignmentRecord> read_alignments(std::istream& in) {
  return read_jsonl<AlignmentRecord>(in, [](const json& j) { return alignment_from_json(j); });
}

void write_alignments(std::ostream& out, std::span<const AlignmentRecord> records) {
  for (const auto& r : records) out << alignment_to_json(r).dump() << '\n';
}

}  // namespace simullat
