#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "simullat/core.hpp"
#include "simullat/error.hpp"
#include "simullat/evs.hpp"
#include "simullat/metrics.hpp"
#include "simullat/metrics_step.hpp"
#include "simullat/metrics_time.hpp"
#include "simullat/sim.hpp"
#include "simullat/stats.hpp"
#include "simullat/trace_io.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace simullat;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Latency metrics for simultaneous translation";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::enum_<Modality>(m, "Modality")
      .value("TEXT_TO_TEXT", Modality::kTextToText)
      .value("SPEECH_TO_TEXT", Modality::kSpeechToText)
      .value("SPEECH_TO_SPEECH", Modality::kSpeechToSpeech);

  py::enum_<TimelineKind>(m, "TimelineKind")
      .value("CA", TimelineKind::kComputationAware)
      .value("NCA", TimelineKind::kNonComputationAware)
      .value("STEPS", TimelineKind::kUnitStep);

  py::enum_<LagRatio>(m, "LagRatio")
      .value("HYPOTHESIS", LagRatio::kHypothesis)
      .value("REFERENCE", LagRatio::kReference)
      .value("LENGTH_ADAPTIVE", LagRatio::kLengthAdaptive);

  py::enum_<EvsMode>(m, "EvsMode")
      .value("VERIFIED", EvsMode::kVerifiedOnly)
      .value("AUTOMATIC", EvsMode::kAutomatic);

  py::class_<TimedToken>(m, "TimedToken")
      .def(py::init<>())
      .def(py::init([](double start, double end, std::optional<std::string> text) {
             TimedToken t;
             t.start = start;
             t.end = end;
             t.text = std::move(text);
             return t;
           }),
           py::arg("start"), py::arg("end"), py::arg("text") = py::none())
      .def_readwrite("index", &TimedToken::index)
      .def_readwrite("text", &TimedToken::text)
      .def_readwrite("start", &TimedToken::start)
      .def_readwrite("end", &TimedToken::end)
      .def("__repr__", [](const TimedToken& t) {
        return "TimedToken(index=" + std::to_string(t.index) + ", start=" +
               std::to_string(t.start) + ", end=" + std::to_string(t.end) + ")";
      });

  py::class_<ComputationSpan>(m, "ComputationSpan")
      .def(py::init([](const std::string& kind, double start, double end) {
             return ComputationSpan{parse_span_kind(kind), start, end};
           }),
           py::arg("kind"), py::arg("start"), py::arg("end"))
      .def_readwrite("start", &ComputationSpan::start)
      .def_readwrite("end", &ComputationSpan::end);

  py::class_<SessionTrace>(m, "SessionTrace")
      .def(py::init<>())
      .def_readwrite("id", &SessionTrace::id)
      .def_readwrite("modality", &SessionTrace::modality)
      .def_readwrite("timeline", &SessionTrace::timeline)
      .def_readwrite("source", &SessionTrace::source)
      .def_readwrite("target", &SessionTrace::target)
      .def_readwrite("reads", &SessionTrace::reads)
      .def_readwrite("reference", &SessionTrace::reference)
      .def_readwrite("spans", &SessionTrace::spans)
      .def("validate", [](const SessionTrace& s) { validate(s); });

  py::class_<StepMetricInput>(m, "StepMetricInput")
      .def(py::init([](std::vector<int> reads, int src_len, std::optional<int> tgt_len,
                       std::optional<int> ref_len) {
             StepMetricInput in;
             in.tgt_len = tgt_len.value_or(static_cast<int>(reads.size()));
             in.reads = std::move(reads);
             in.src_len = src_len;
             in.ref_len = ref_len;
             return in;
           }),
           py::arg("reads"), py::arg("src_len"), py::arg("tgt_len") = py::none(),
           py::arg("ref_len") = py::none())
      .def_static("from_session", &StepMetricInput::from_session)
      .def_readwrite("reads", &StepMetricInput::reads)
      .def_readwrite("src_len", &StepMetricInput::src_len)
      .def_readwrite("tgt_len", &StepMetricInput::tgt_len)
      .def_readwrite("ref_len", &StepMetricInput::ref_len);

  py::class_<AlignedPair>(m, "AlignedPair")
      .def(py::init<int, int, double, double, bool>(), py::arg("src_index"),
           py::arg("tgt_index"), py::arg("src_start"), py::arg("tgt_start"),
           py::arg("verified"))
      .def_readwrite("src_index", &AlignedPair::src_index)
      .def_readwrite("tgt_index", &AlignedPair::tgt_index)
      .def_readwrite("src_start", &AlignedPair::src_start)
      .def_readwrite("tgt_start", &AlignedPair::tgt_start)
      .def_readwrite("verified", &AlignedPair::verified);

  m.def("average_lagging", &average_lagging, py::arg("inp"),
        py::arg("ratio") = LagRatio::kHypothesis);
  m.def("differentiable_average_lagging", &differentiable_average_lagging);
  m.def("average_proportion", &average_proportion);
  m.def("consecutive_wait", &consecutive_wait);
  m.def("atd_steps", &atd_steps);
  m.def("atd_source_alignment",
        [](const std::vector<int>& reads) { return atd_source_alignment(reads); });
  m.def("step_emission_times",
        [](const std::vector<int>& reads) { return step_emission_times(reads); });

  m.def("atd_timed", &atd_timed);
  m.def("start_offset", &start_offset);
  m.def("end_offset", &end_offset);
  m.def("build_nca_timeline", &build_nca_timeline);

  m.def(
      "subsegment_speech",
      [](const std::vector<std::pair<double, double>>& segments, double tau) {
        std::vector<Interval> ivs;
        for (const auto& [s, e] : segments) ivs.push_back({s, e});
        return subsegment_speech(ivs, SubSegmentConfig{tau});
      },
      py::arg("segments"), py::arg("tau") = 300.0);
  m.def(
      "apply_granularity",
      [](const SessionTrace& s, const std::string& gran) {
        return apply_granularity(s, TokenGranularity::parse(gran));
      },
      py::arg("session"), py::arg("granularity"));
  m.def(
      "concat_sessions",
      [](const SessionTrace& a, const SessionTrace& b, bool relative) {
        return concat_sessions(a, b, relative ? ConcatTiming::kRelative : ConcatTiming::kAbsolute);
      },
      py::arg("a"), py::arg("b"), py::arg("relative") = true);

  m.def(
      "evaluate",
      [](const std::string& metric, const SessionTrace& s) {
        return evaluate(parse_metric(metric), s);
      },
      py::arg("metric"), py::arg("session"));
  m.def("metric_names", [] {
    std::vector<std::string> names;
    for (const auto metric : all_metrics()) names.emplace_back(metric_name(metric));
    return names;
  });

  m.def(
      "mean_evs",
      [](const std::vector<AlignedPair>& pairs, EvsMode mode) { return mean_evs(pairs, mode); },
      py::arg("pairs"), py::arg("mode") = EvsMode::kVerifiedOnly);

  m.def(
      "spearman",
      [](const std::vector<std::optional<double>>& a, const std::vector<std::optional<double>>& b) {
        const auto r = spearman(std::span<const std::optional<double>>(a),
                                std::span<const std::optional<double>>(b));
        return py::make_tuple(r.rho, r.p_value, r.n);
      },
      py::arg("a"), py::arg("b"), "Returns (rho, p, n); None entries drop the row.");

  m.def("sim_wait_k", &sim::wait_k, py::arg("k"), py::arg("src_len"), py::arg("tgt_len"));
  m.def("sim_chunk_k", &sim::chunk_k, py::arg("k"), py::arg("src_len"), py::arg("tgt_len"));
  m.def("sim_case4", &sim::two_chunk, py::arg("l1"));
  m.def(
      "sim_sweep",
      [](const std::string& metrics, const std::string& strategy, int first, int last,
         int src_len, int tgt_len) {
        std::vector<std::tuple<int, std::string, double>> rows;
        for (const auto& row : sim::sweep(parse_metric_list(metrics), sim::parse_strategy(strategy),
                                          first, last, src_len, tgt_len)) {
          rows.emplace_back(row.parameter, row.metric, row.value);
        }
        return rows;
      },
      py::arg("metrics"), py::arg("strategy"), py::arg("first"), py::arg("last"),
      py::arg("src_len") = 20, py::arg("tgt_len") = 20);

  m.def("parse_trace", [](const std::string& line) {
    try {
      return trace_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("malformed JSON: ") + e.what());
    }
  });
  m.def("dump_trace", [](const SessionTrace& s) { return trace_to_json(s).dump(); });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
