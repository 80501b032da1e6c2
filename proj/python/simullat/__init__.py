"""Latency metrics for simultaneous translation (AL, LAAL, DAL, AP, CW, ATD,
Start/End Offset, EVS) and the schedule simulator, backed by a C++ core."""

from ._core import (  # noqa: F401
    AlignedPair,
    ComputationSpan,
    Error,
    EvsMode,
    LagRatio,
    Modality,
    SessionTrace,
    StepMetricInput,
    TimedToken,
    TimelineKind,
    __version__,
    apply_granularity,
    atd_source_alignment,
    atd_steps,
    atd_timed,
    average_lagging,
    average_proportion,
    build_nca_timeline,
    concat_sessions,
    consecutive_wait,
    differentiable_average_lagging,
    dump_trace,
    end_offset,
    evaluate,
    mean_evs,
    metric_names,
    parse_trace,
    sim_case4,
    sim_chunk_k,
    sim_sweep,
    sim_wait_k,
    spearman,
    start_offset,
    step_emission_times,
    subsegment_speech,
)
