#pragma once

// Domain types shared by every metric: tokens on a timeline, session traces
// with their READ schedule g(t), and the re-tokenization helpers that turn
// speech segments or character streams into metric tokens.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace simullat {

enum class Modality { kTextToText, kSpeechToText, kSpeechToSpeech };

// kComputationAware: wall clock including model compute.
// kNonComputationAware: ideal clock with compute removed.
// kUnitStep: no clock; each token occupies one step.
enum class TimelineKind { kComputationAware, kNonComputationAware, kUnitStep };

std::string_view to_string(Modality m);
std::string_view to_string(TimelineKind k);
Modality parse_modality(std::string_view s);
// Accepts "ca", "nca" and "steps".
TimelineKind parse_timeline(std::string_view s);

inline bool has_speech_source(Modality m) { return m != Modality::kTextToText; }
inline bool has_speech_target(Modality m) { return m == Modality::kSpeechToSpeech; }

// One source or target token. Times are milliseconds on timed timelines and
// the token's own 1-based index on unit-step timelines.
struct TimedToken {
  int index = 0;
  std::optional<std::string> text;
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
  bool operator==(const TimedToken&) const = default;
};

enum class SpanKind { kEncode, kDecode, kAsr };

std::string_view to_string(SpanKind k);
SpanKind parse_span_kind(std::string_view s);

// Model computation recorded by the harness that produced a CA trace.
struct ComputationSpan {
  SpanKind kind = SpanKind::kDecode;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const ComputationSpan&) const = default;
};

struct SessionTrace {
  std::string id;
  Modality modality = Modality::kTextToText;
  TimelineKind timeline = TimelineKind::kUnitStep;
  std::vector<TimedToken> source;
  std::vector<TimedToken> target;
  // reads[t-1] = g(t), the number of source tokens read before emitting y_t.
  std::vector<int> reads;
  std::optional<std::vector<std::string>> reference;
  std::optional<std::vector<ComputationSpan>> spans;
  nlohmann::json meta = nlohmann::json::object();
  // Speech sides hold whole segments that have not been split by tau yet.
  bool segment_units = false;

  bool is_timed() const { return timeline != TimelineKind::kUnitStep; }
};

// Checks token ordering, |reads| == |target|, monotone reads bounded by
// [1, |source|]. Empty sides are accepted; metrics reject them later.
void validate(const SessionTrace& s);

// Makes a unit-step token list of `count` tokens with start = end = index.
std::vector<TimedToken> step_tokens(int count);

struct Interval {
  double start = 0.0;
  double end = 0.0;
};

struct SubSegmentConfig {
  double tau = 300.0;
};

// Splits each speech segment into pieces of length tau measured from the
// segment start. The last piece of a segment ends exactly at the segment end
// and may be shorter than tau. Gaps between segments belong to no token.
std::vector<TimedToken> subsegment_speech(std::span<const Interval> segments,
                                          const SubSegmentConfig& cfg);

// Re-expresses a session whose tokens are whole speech segments as tau-long
// sub-segments. Source segments are always split; target segments only for
// speech-to-speech. g(t) is remapped from segment counts to sub-segment
// counts, and each target piece inherits the g of its segment.
SessionTrace subsegment_session(const SessionTrace& s, const SubSegmentConfig& cfg);

struct TokenGranularity {
  enum class Unit { kWord, kCharacterGroup };
  Unit unit = Unit::kWord;
  int group_size = 1;

  // "word" or "char:N".
  static TokenGranularity parse(std::string_view s);
  std::string to_string() const;
};

// One side of a session: tokens plus, for the target side, their reads.
struct TokenSide {
  std::vector<TimedToken> tokens;
  std::vector<int> reads;
  std::vector<std::size_t> chunk_ends;
};

// 1-based index of the last token of each output chunk, where a chunk is a
// maximal run of tokens emitted after the same READ count.
std::vector<std::size_t> chunk_ends_from_reads(std::span<const int> reads);

// Groups consecutive characters inside each chunk into tokens of
// gran.group_size; a shorter remainder at the chunk end becomes its own
// token. The g of a group is the g of its last character. `chunk_ends` are
// 1-based inclusive end indices and must partition side.tokens. Word
// granularity returns the side unchanged.
TokenSide regroup_tokens(const TokenSide& side, const TokenGranularity& gran,
                         std::span<const std::size_t> chunk_ends);

// Splits every token's text into UTF-8 code points, dropping whitespace.
// Each character inherits its token's read count. On timed sides the token
// span is divided evenly; otherwise characters get unit-step times. Tokens
// without text stay whole.
TokenSide split_characters(std::span<const TimedToken> tokens, std::span<const int> reads,
                           bool timed);

std::vector<std::string> split_utf8(std::string_view text);

// Re-tokenizes the target side (and the reference) at the given granularity.
SessionTrace apply_granularity(const SessionTrace& s, const TokenGranularity& gran);

enum class ConcatTiming {
  // b is already on a's clock (streaming capture).
  kAbsolute,
  // b starts at its own zero; shift it past a's last source/target end.
  kRelative,
};

// How far b's times move when appended to a: zero for absolute timing or
// unit-step sessions, otherwise the later of a's last source and last
// target end.
double concat_shift(const SessionTrace& a, ConcatTiming timing);

// Joins two sessions into one evaluation unit: a's tokens then b's, with b's
// reads offset by |a.source|.
SessionTrace concat_sessions(const SessionTrace& a, const SessionTrace& b,
                             ConcatTiming timing = ConcatTiming::kRelative);

}  // namespace simullat
