#pragma once

// Wall-clock metrics for sessions on a millisecond timeline.

#include <cstddef>
#include <vector>

#include "simullat/core.hpp"

namespace simullat {

// Average Token Delay: mean over t of end(y_t) - end(x_{a(t)}), with a(t)
// from atd_source_alignment(). CA and NCA sessions are scored the same way;
// the difference lives in the token times. Throws IncompatibleError on
// unit-step sessions.
double atd_timed(const SessionTrace& s);

// First target start minus first source start.
double start_offset(const SessionTrace& s);

// Last target end minus last source end. Negative when the output finishes
// before the input does.
double end_offset(const SessionTrace& s);

// Target tokens (1-based) that start before the end of source token g(t).
// Legal on CA traces from pipelined synthesis but worth a warning.
std::vector<std::size_t> causality_violations(const SessionTrace& s);

// Removes model computation from a CA session. Output chunks (runs of target
// tokens with the same g) move earlier by the computation time recorded
// between the end of their triggering source token and their CA start, but
// never start before the previous chunk has finished speaking. Each chunk
// moves rigidly, so token durations are preserved. Source times are
// untouched. Throws DataError when the session carries no span annotations.
SessionTrace build_nca_timeline(const SessionTrace& s);

}  // namespace simullat
