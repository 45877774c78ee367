"""Toolkit for extracting and evaluating temporally bounded anomalous events
from per-frame anomaly-score time series, with multi-annotator ground truth."""

from .dataset import (
    AnnotationRecord,
    Dataset,
    EventInterval,
    Scene,
    ScoreSeries,
    SplitConfig,
    VideoMeta,
    binary_label_vector,
    load_dataset,
    save_dataset,
)
from .aggregation import (
    ConsensusLabel,
    KappaMatrix,
    SoftLabelSeries,
    cohen_kappa,
    consensus_label,
    kappa_matrix,
    soft_labels,
)
from .baseline import (
    BackgroundModel,
    fit_background,
    normalize_scores,
    score_frame,
)
from .selection import (
    Peak,
    SelectionMethod,
    SelectionParams,
    find_local_maxima,
    peak_prominence,
    peak_width,
    select_event,
    select_peak,
    select_threshold,
)
from .metrics import (
    AnnotatorMetrics,
    SweepResult,
    frame_prf,
    mae_vs_soft,
    per_annotator_eval,
    sweep,
    temporal_iou,
)

__version__ = "0.1.0"
