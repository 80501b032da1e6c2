#include "simullat/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "simullat/error.hpp"

namespace simullat {

namespace {

void renumber(std::vector<TimedToken>& tokens, bool timed) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].index = static_cast<int>(i + 1);
    if (!timed) {
      tokens[i].start = tokens[i].end = static_cast<double>(i + 1);
    }
  }
}

void check_side(const std::vector<TimedToken>& side, const char* name, bool timed) {
  for (std::size_t i = 0; i < side.size(); ++i) {
    const auto& tok = side[i];
    if (tok.end < tok.start) {
      throw DataError(std::string(name) + " token " + std::to_string(i + 1) +
                      ": end precedes start");
    }
    if (timed && tok.start < 0.0) {
      throw DataError(std::string(name) + " token " + std::to_string(i + 1) +
                      ": negative time");
    }
    if (i > 0 && (tok.start < side[i - 1].start || tok.end < side[i - 1].end)) {
      throw DataError(std::string(name) + " token " + std::to_string(i + 1) +
                      ": out of order");
    }
  }
}

bool is_space(std::string_view cp) {
  if (cp.size() == 1) {
    const char c = cp[0];
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }
  // U+3000 ideographic space
  return cp == "\xE3\x80\x80";
}

}  // namespace

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::kTextToText:
      return "text-to-text";
    case Modality::kSpeechToText:
      return "speech-to-text";
    case Modality::kSpeechToSpeech:
      return "speech-to-speech";
  }
  return "text-to-text";
}

std::string_view to_string(TimelineKind k) {
  switch (k) {
    case TimelineKind::kComputationAware:
      return "ca";
    case TimelineKind::kNonComputationAware:
      return "nca";
    case TimelineKind::kUnitStep:
      return "steps";
  }
  return "steps";
}

Modality parse_modality(std::string_view s) {
  if (s == "text-to-text") return Modality::kTextToText;
  if (s == "speech-to-text") return Modality::kSpeechToText;
  if (s == "speech-to-speech") return Modality::kSpeechToSpeech;
  throw DataError("unknown modality '" + std::string(s) + "'");
}

TimelineKind parse_timeline(std::string_view s) {
  if (s == "ca") return TimelineKind::kComputationAware;
  if (s == "nca") return TimelineKind::kNonComputationAware;
  if (s == "steps") return TimelineKind::kUnitStep;
  throw DataError("unknown timeline '" + std::string(s) + "'");
}

std::string_view to_string(SpanKind k) {
  switch (k) {
    case SpanKind::kEncode:
      return "encode";
    case SpanKind::kDecode:
      return "decode";
    case SpanKind::kAsr:
      return "asr";
  }
  return "decode";
}

SpanKind parse_span_kind(std::string_view s) {
  if (s == "encode") return SpanKind::kEncode;
  if (s == "decode") return SpanKind::kDecode;
  if (s == "asr") return SpanKind::kAsr;
  throw DataError("unknown span kind '" + std::string(s) + "'");
}

void validate(const SessionTrace& s) {
  check_side(s.source, "source", s.is_timed());
  check_side(s.target, "target", s.is_timed());
  if (s.reads.size() != s.target.size()) {
    throw DataError("session '" + s.id + "': " + std::to_string(s.reads.size()) +
                    " reads for " + std::to_string(s.target.size()) + " target tokens");
  }
  const auto src_len = static_cast<int>(s.source.size());
  for (std::size_t t = 0; t < s.reads.size(); ++t) {
    const int g = s.reads[t];
    if (g < 1 || g > src_len) {
      throw DataError("session '" + s.id + "': g(" + std::to_string(t + 1) + ") = " +
                      std::to_string(g) + " outside [1, " + std::to_string(src_len) + "]");
    }
    if (t > 0 && g < s.reads[t - 1]) {
      throw DataError("session '" + s.id + "': reads decrease at t = " + std::to_string(t + 1));
    }
  }
  if (s.spans) {
    for (const auto& span : *s.spans) {
      if (span.end < span.start) {
        throw DataError("session '" + s.id + "': computation span ends before it starts");
      }
    }
  }
}

std::vector<TimedToken> step_tokens(int count) {
  std::vector<TimedToken> out(static_cast<std::size_t>(std::max(count, 0)));
  renumber(out, false);
  return out;
}

std::vector<TimedToken> subsegment_speech(std::span<const Interval> segments,
                                          const SubSegmentConfig& cfg) {
  if (!(cfg.tau > 0.0)) throw ConfigError("tau must be positive");
  if (segments.empty()) throw DataError("no input");

  std::vector<TimedToken> out;
  double prev_end = -1.0;
  for (const auto& seg : segments) {
    if (!(seg.end > seg.start)) throw DataError("speech segment with end <= start");
    if (seg.start < prev_end) throw DataError("speech segments overlap or are out of order");
    prev_end = seg.end;
    for (long k = 0;; ++k) {
      const double piece_start = seg.start + static_cast<double>(k) * cfg.tau;
      if (!(piece_start < seg.end)) break;
      TimedToken tok;
      tok.index = static_cast<int>(out.size() + 1);
      tok.start = piece_start;
      tok.end = std::min(seg.start + static_cast<double>(k + 1) * cfg.tau, seg.end);
      out.push_back(std::move(tok));
    }
  }
  return out;
}

SessionTrace subsegment_session(const SessionTrace& s, const SubSegmentConfig& cfg) {
  if (!s.is_timed()) throw DataError("sub-segmentation needs a timed session");
  if (!has_speech_source(s.modality)) throw DataError("sub-segmentation needs speech input");
  validate(s);

  SessionTrace out = s;
  out.segment_units = false;
  // last_piece[i] = number of source sub-segments covering segments 1..i+1
  std::vector<int> last_piece;
  out.source.clear();
  for (const auto& seg : s.source) {
    Interval iv{seg.start, seg.end};
    for (auto& p : subsegment_speech(std::span<const Interval>(&iv, 1), cfg)) {
      p.index = static_cast<int>(out.source.size() + 1);
      out.source.push_back(std::move(p));
    }
    last_piece.push_back(static_cast<int>(out.source.size()));
  }

  const auto remap = [&last_piece](int g) { return last_piece.at(static_cast<std::size_t>(g - 1)); };

  if (has_speech_target(s.modality)) {
    out.target.clear();
    out.reads.clear();
    for (std::size_t t = 0; t < s.target.size(); ++t) {
      Interval iv{s.target[t].start, s.target[t].end};
      auto pieces = subsegment_speech(std::span<const Interval>(&iv, 1), cfg);
      for (auto& p : pieces) {
        p.index = static_cast<int>(out.target.size() + 1);
        out.target.push_back(std::move(p));
        out.reads.push_back(remap(s.reads[t]));
      }
    }
  } else {
    for (auto& g : out.reads) g = remap(g);
  }
  validate(out);
  return out;
}

TokenGranularity TokenGranularity::parse(std::string_view s) {
  if (s == "word") return {};
  constexpr std::string_view prefix = "char:";
  if (s.substr(0, prefix.size()) == prefix) {
    const auto digits = s.substr(prefix.size());
    int n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1) {
      throw ConfigError("group size must be a positive integer in '" + std::string(s) + "'");
    }
    return {Unit::kCharacterGroup, n};
  }
  if (s == "char") return {Unit::kCharacterGroup, 1};
  throw ConfigError("granularity must be 'word' or 'char:N', got '" + std::string(s) + "'");
}

std::string TokenGranularity::to_string() const {
  if (unit == Unit::kWord) return "word";
  return "char:" + std::to_string(group_size);
}

std::vector<std::size_t> chunk_ends_from_reads(std::span<const int> reads) {
  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < reads.size(); ++i) {
    if (i + 1 == reads.size() || reads[i + 1] != reads[i]) ends.push_back(i + 1);
  }
  return ends;
}

TokenSide regroup_tokens(const TokenSide& side, const TokenGranularity& gran,
                         std::span<const std::size_t> chunk_ends) {
  if (gran.group_size < 1) throw ConfigError("group_size must be >= 1");
  const std::size_t n = side.tokens.size();
  if (!side.reads.empty() && side.reads.size() != n) {
    throw DataError("reads do not match token count");
  }
  std::size_t prev = 0;
  for (const auto end : chunk_ends) {
    if (end <= prev || end > n) {
      throw DataError("chunk boundary " + std::to_string(end) + " out of range");
    }
    prev = end;
  }
  if (prev != n) throw DataError("chunk boundaries do not cover all tokens");

  if (gran.unit == TokenGranularity::Unit::kWord) {
    TokenSide same = side;
    same.chunk_ends.assign(chunk_ends.begin(), chunk_ends.end());
    return same;
  }

  const auto size = static_cast<std::size_t>(gran.group_size);
  TokenSide out;
  std::size_t begin = 0;
  for (const auto end : chunk_ends) {
    for (std::size_t i = begin; i < end; i += size) {
      const std::size_t last = std::min(i + size, end) - 1;
      TimedToken tok;
      tok.index = static_cast<int>(out.tokens.size() + 1);
      tok.start = side.tokens[i].start;
      tok.end = side.tokens[last].end;
      std::string text;
      bool any_text = false;
      for (std::size_t j = i; j <= last; ++j) {
        if (side.tokens[j].text) {
          text += *side.tokens[j].text;
          any_text = true;
        }
      }
      if (any_text) tok.text = std::move(text);
      out.tokens.push_back(std::move(tok));
      if (!side.reads.empty()) out.reads.push_back(side.reads[last]);
    }
    out.chunk_ends.push_back(out.tokens.size());
    begin = end;
  }
  return out;
}

std::vector<std::string> split_utf8(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if ((lead & 0xE0) == 0xC0) {
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
    }
    len = std::min(len, text.size() - i);
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

TokenSide split_characters(std::span<const TimedToken> tokens, std::span<const int> reads,
                           bool timed) {
  if (!reads.empty() && reads.size() != tokens.size()) {
    throw DataError("reads do not match token count");
  }
  TokenSide out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    std::vector<std::string> chars;
    if (tok.text) {
      for (auto& cp : split_utf8(*tok.text)) {
        if (!is_space(cp)) chars.push_back(std::move(cp));
      }
    }
    if (chars.empty()) {
      out.tokens.push_back(tok);
      if (!reads.empty()) out.reads.push_back(reads[i]);
      continue;
    }
    const double width = tok.duration() / static_cast<double>(chars.size());
    for (std::size_t c = 0; c < chars.size(); ++c) {
      TimedToken ch;
      ch.text = std::move(chars[c]);
      ch.start = tok.start + width * static_cast<double>(c);
      ch.end = (c + 1 == chars.size()) ? tok.end : tok.start + width * static_cast<double>(c + 1);
      out.tokens.push_back(std::move(ch));
      if (!reads.empty()) out.reads.push_back(reads[i]);
    }
  }
  renumber(out.tokens, timed);
  out.chunk_ends = {out.tokens.size()};
  return out;
}

SessionTrace apply_granularity(const SessionTrace& s, const TokenGranularity& gran) {
  if (gran.unit == TokenGranularity::Unit::kWord) return s;
  if (gran.group_size < 1) throw ConfigError("group_size must be >= 1");

  SessionTrace out = s;
  const auto chars = split_characters(s.target, s.reads, s.is_timed());
  const auto ends = chunk_ends_from_reads(chars.reads);
  auto grouped = regroup_tokens(chars, gran, ends);
  renumber(grouped.tokens, s.is_timed());
  out.target = std::move(grouped.tokens);
  out.reads = std::move(grouped.reads);

  if (s.reference) {
    std::vector<std::string> ref_chars;
    for (const auto& word : *s.reference) {
      for (auto& cp : split_utf8(word)) {
        if (!is_space(cp)) ref_chars.push_back(std::move(cp));
      }
    }
    std::vector<std::string> ref;
    const auto size = static_cast<std::size_t>(gran.group_size);
    for (std::size_t i = 0; i < ref_chars.size(); i += size) {
      std::string group;
      for (std::size_t j = i; j < std::min(i + size, ref_chars.size()); ++j) group += ref_chars[j];
      ref.push_back(std::move(group));
    }
    out.reference = std::move(ref);
  }
  validate(out);
  return out;
}

double concat_shift(const SessionTrace& a, ConcatTiming timing) {
  double shift = 0.0;
  if (a.is_timed() && timing == ConcatTiming::kRelative) {
    if (!a.source.empty()) shift = std::max(shift, a.source.back().end);
    if (!a.target.empty()) shift = std::max(shift, a.target.back().end);
  }
  return shift;
}

SessionTrace concat_sessions(const SessionTrace& a, const SessionTrace& b, ConcatTiming timing) {
  if (b.source.empty() && b.target.empty()) return a;
  if (a.source.empty() && a.target.empty()) return b;
  if (a.modality != b.modality) {
    throw DataError("cannot concatenate '" + a.id + "' (" + std::string(to_string(a.modality)) +
                    ") with '" + b.id + "' (" + std::string(to_string(b.modality)) + ")");
  }
  if (a.timeline != b.timeline) {
    throw DataError("cannot concatenate sessions on different timelines");
  }

  const double shift = concat_shift(a, timing);
  const auto shifted = [shift](TimedToken tok) {
    tok.start += shift;
    tok.end += shift;
    return tok;
  };

  SessionTrace out;
  out.id = a.id + "+" + b.id;
  out.modality = a.modality;
  out.timeline = a.timeline;
  out.source = a.source;
  for (const auto& tok : b.source) out.source.push_back(shifted(tok));
  out.target = a.target;
  for (const auto& tok : b.target) out.target.push_back(shifted(tok));
  renumber(out.source, a.is_timed());
  renumber(out.target, a.is_timed());

  out.reads = a.reads;
  const auto offset = static_cast<int>(a.source.size());
  for (const int g : b.reads) out.reads.push_back(g + offset);

  if (a.reference && b.reference) {
    out.reference = *a.reference;
    out.reference->insert(out.reference->end(), b.reference->begin(), b.reference->end());
  }
  if (a.spans || b.spans) {
    std::vector<ComputationSpan> spans = a.spans.value_or(std::vector<ComputationSpan>{});
    for (auto span : b.spans.value_or(std::vector<ComputationSpan>{})) {
      span.start += shift;
      span.end += shift;
      spans.push_back(span);
    }
    // A side without span annotations makes the union unusable for NCA.
    if (a.spans && b.spans) out.spans = std::move(spans);
  }
  out.meta = {{"parts", {a.id, b.id}}};
  validate(out);
  return out;
}

}  // namespace simullat
