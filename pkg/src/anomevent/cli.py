"""Command-line entry point.

Verbs: score, aggregate, select, sweep, evaluate, serve. All commands are
deterministic for fixed inputs and write outputs atomically; errors exit
nonzero with a one-line `error: <Kind>: <message>` diagnostic on stderr.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import aggregation, baseline, ioutils, metrics
from .dataset import Dataset, EventInterval, Scene, load_dataset, write_score_file
from .errors import MissingConsensus, MissingFile, ToolkitError
from .selection import SelectionMethod, SelectionParams, select_event

NORM_SUFFIX = "-norm"


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _split_of_model(dataset: Dataset, model: str) -> str:
    for split_id in sorted({cfg.split_id for cfg in dataset.splits}):
        if model.endswith(f"-{split_id}"):
            return split_id
    return ""


def _base_models(dataset: Dataset) -> list[str]:
    return [m for m in dataset.score_models() if not m.endswith(NORM_SUFFIX)]


def _normalized_scores(dataset: Dataset, model: str) -> dict[str, np.ndarray]:
    out = {}
    for (vid, m), series in dataset.scores.items():
        if m == model:
            out[vid] = baseline.normalize_scores(series).scores
    return out


def _consensus_by_video(dataset: Dataset) -> dict[str, EventInterval]:
    out = {}
    for vid in dataset.video_ids():
        records = dataset.annotations_for_video(vid)
        if not records:
            raise MissingConsensus(f"no annotations (hence no consensus) for video {vid}")
        out[vid] = aggregation.consensus_label(records).interval
    return out


def cmd_score(args) -> int:
    dataset = load_dataset(args.dataset)
    out = Path(args.out)
    splits = [cfg for cfg in dataset.splits if args.split is None or cfg.split_id == args.split]
    if args.split is not None and not splits:
        raise MissingFile(f"no split config named {args.split!r}")
    for cfg in sorted(splits, key=lambda c: (c.split_id, c.scene.value)):
        train_frames = []
        for vid in cfg.train_video_ids:
            train_frames.extend(
                baseline.load_frame(p) for p in dataset.videos[vid].frame_paths()
            )
        model = baseline.fit_background(train_frames)
        model_id = f"baseline-{cfg.split_id}"
        for vid in dataset.videos_in_scene(cfg.scene):
            series = baseline.score_video(model, dataset.videos[vid].frame_paths(), vid)
            write_score_file(out / "scores", series, model_id)
            write_score_file(out / "scores", baseline.normalize_scores(series),
                             model_id + NORM_SUFFIX)
            print(f"scored {vid} ({len(series)} frames) with {model_id}")
    return 0


def cmd_aggregate(args) -> int:
    dataset = load_dataset(args.dataset)
    out = Path(args.out)

    consensus_rows = []
    for vid in dataset.video_ids():
        records = dataset.annotations_for_video(vid)
        soft = aggregation.soft_labels(records, dataset.videos[vid].frame_count)
        ioutils.write_csv(
            out / "soft_labels" / f"{vid}.csv",
            ["frame", "value"],
            [(i, repr(float(v))) for i, v in enumerate(soft.values)],
        )
        consensus = aggregation.consensus_label(records)
        consensus_rows.append((vid, consensus.interval.start, consensus.interval.end))
    ioutils.write_csv(out / "consensus.csv", ["video", "start", "end"], consensus_rows)

    kappa = aggregation.kappa_matrix(dataset)
    _write_kappa(out / "kappa.csv", kappa)
    print(f"aggregated {len(dataset.video_ids())} videos, "
          f"{len(kappa.annotator_ids)} annotators")
    return 0


def _write_kappa(path: Path, kappa) -> None:
    header = ["annotator", *kappa.annotator_ids]
    rows = [
        (aid, *[repr(float(v)) for v in kappa.values[i]])
        for i, aid in enumerate(kappa.annotator_ids)
    ]
    ioutils.write_csv(path, header, rows)


def _selection_params(method: SelectionMethod, param: float) -> SelectionParams:
    if method == SelectionMethod.THRESHOLD:
        return SelectionParams(method, tau=param)
    return SelectionParams(method, rel_height=param)


def cmd_select(args) -> int:
    dataset = load_dataset(args.dataset)
    method = SelectionMethod(args.method)
    scores = _normalized_scores(dataset, args.model)
    if not scores:
        raise MissingFile(f"no score files for model {args.model!r}")
    params = _selection_params(method, args.param)
    rows = []
    for vid in sorted(scores):
        pred = select_event(scores[vid], params)
        rows.append((vid, "" if pred is None else pred.start,
                     "" if pred is None else pred.end))
    path = Path(args.out) / "predictions" / f"{args.model}.{method.value}.{args.param:.2f}.csv"
    ioutils.write_csv(path, ["video", "start", "end"], rows)
    print(f"wrote {path}")
    return 0


def _sweep_rows(dataset: Dataset) -> tuple[list[tuple], list]:
    """All sweep curves plus the SweepResult objects, in report order."""
    consensus = _consensus_by_video(dataset)
    rows = []
    results = []
    for model in _base_models(dataset):
        split_id = _split_of_model(dataset, model)
        scores = _normalized_scores(dataset, model)
        for method in (SelectionMethod.THRESHOLD, SelectionMethod.FIND_PEAKS):
            for scene in (Scene.A, Scene.B):
                vids = [v for v in dataset.videos_in_scene(scene) if v in scores]
                if not vids:
                    continue
                result = metrics.sweep(scores, consensus, vids, method,
                                       model_id=model, scene=scene, split_id=split_id)
                results.append(result)
                for param, tiou in result.curve:
                    rows.append((split_id, model, method.value, scene.value,
                                 f"{param:.2f}", _fmt(tiou)))
    return rows, results


def cmd_sweep(args) -> int:
    dataset = load_dataset(args.dataset)
    rows, results = _sweep_rows(dataset)
    ioutils.write_csv(Path(args.out) / "reports" / "sweep.csv",
                      ["split", "model", "method", "scene", "param", "tiou"], rows)
    for r in results:
        print(f"{r.model_id} {r.method.value} scene {r.scene.value}: "
              f"best param {r.best_param:.2f}, mean t-IoU {r.best_mean_tiou:.3f}")
    return 0


def cmd_evaluate(args) -> int:
    dataset = load_dataset(args.dataset)
    out = Path(args.out)
    models = _base_models(dataset)
    if not models:
        raise MissingFile("dataset contains no score files to evaluate")

    soft_by_video = {
        vid: aggregation.soft_labels(dataset.annotations_for_video(vid),
                                     dataset.videos[vid].frame_count)
        for vid in dataset.video_ids()
    }

    mae_rows = []
    for model in models:
        split_id = _split_of_model(dataset, model)
        scores = _normalized_scores(dataset, model)
        for scene in (Scene.A, Scene.B):
            vids = [v for v in dataset.videos_in_scene(scene) if v in scores]
            if not vids:
                continue
            values = [metrics.mae_vs_soft(scores[v], soft_by_video[v].values) for v in vids]
            mean, std = metrics.mean_std(values)
            best_i = int(np.argmin(values))
            mae_rows.append((split_id, model, scene.value, _fmt(mean), _fmt(std),
                             vids[best_i], _fmt(values[best_i])))
    ioutils.write_csv(out / "reports" / "mae.csv",
                      ["split", "model", "scene", "mean", "std", "best_video", "best_value"],
                      mae_rows)

    sweep_rows, sweep_results = _sweep_rows(dataset)
    ioutils.write_csv(out / "reports" / "sweep.csv",
                      ["split", "model", "method", "scene", "param", "tiou"], sweep_rows)

    annotator_rows = []
    for scene in (Scene.A, Scene.B):
        candidates = [r for r in sweep_results if r.scene == scene]
        if not candidates:
            continue
        best = max(candidates, key=lambda r: r.best_mean_tiou)
        scores = _normalized_scores(dataset, best.model_id)
        vids = [v for v in dataset.videos_in_scene(scene) if v in scores]
        params = _selection_params(best.method, best.best_param)
        predictions = {vid: select_event(scores[vid], params) for vid in vids}
        frame_counts = {vid: dataset.videos[vid].frame_count for vid in vids}
        for am in metrics.per_annotator_eval(predictions, list(dataset.annotations),
                                             vids, frame_counts, scene):
            annotator_rows.append((scene.value, am.annotator_id, _fmt(am.precision),
                                   _fmt(am.recall), _fmt(am.f1), _fmt(am.tiou)))
    ioutils.write_csv(out / "reports" / "annotator_metrics.csv",
                      ["scene", "annotator", "precision", "recall", "f1", "tiou"],
                      annotator_rows)

    _write_softlabel_heatmap(out / "plots" / "softlabel_heatmap.csv", soft_by_video)
    _write_kappa(out / "plots" / "kappa_heatmap.csv", aggregation.kappa_matrix(dataset))
    print(f"evaluated {len(models)} model(s) over {len(dataset.video_ids())} videos")
    return 0


HEATMAP_BINS = 100


def _write_softlabel_heatmap(path: Path, soft_by_video) -> None:
    # fixed-width grid regardless of video length: nearest-index resampling
    header = ["video", *[f"b{j:02d}" for j in range(HEATMAP_BINS)]]
    rows = []
    for vid in sorted(soft_by_video):
        values = soft_by_video[vid].values
        T = len(values)
        cells = [
            repr(float(values[int(round(j * (T - 1) / (HEATMAP_BINS - 1)))]))
            for j in range(HEATMAP_BINS)
        ]
        rows.append((vid, *cells))
    ioutils.write_csv(path, header, rows)


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = Path(args.ui) if args.ui else None
    if ui_dir is None:
        default_ui = Path.cwd() / "frontend" / "dist"
        if default_ui.is_dir():
            ui_dir = default_ui
    app = create_app(Path(args.dataset), ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anomevent",
        description="Extract and evaluate temporally bounded anomalous events "
                    "from per-frame video anomaly scores.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dataset", required=True, help="dataset root directory")
    common.add_argument("--out", default=None, help="output directory (default: dataset root)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", parents=[common],
                       help="fit the baseline scorer per split and write score CSVs")
    p.add_argument("--split", default=None, help="only this split id")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("aggregate", parents=[common],
                       help="write soft labels, consensus labels and the kappa matrix")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("select", parents=[common],
                       help="run one selector at a fixed parameter and write predictions")
    p.add_argument("--model", required=True)
    p.add_argument("--method", required=True,
                   choices=[m.value for m in SelectionMethod])
    p.add_argument("--param", required=True, type=float)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("sweep", parents=[common],
                       help="dense 101-point parameter sweep for every model/method/scene")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evaluate", parents=[common],
                       help="write all report CSVs and plot-data grids")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", parents=[common],
                       help="run the annotation HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", default=None, help="directory with the static UI bundle")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.out is None:
        args.out = args.dataset
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
