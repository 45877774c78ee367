import sys
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

sys.path.insert(0, str(Path(__file__).parent))

from anomevent import ioutils
from anomevent.synthetic import SyntheticSpec, make_synthetic_dataset


def write_frames(frame_dir: Path, values) -> None:
    """Write one constant-valued 8x8 grayscale PNG per entry of `values`."""
    frame_dir.mkdir(parents=True, exist_ok=True)
    for t, v in enumerate(values):
        arr = np.full((8, 8), v, dtype=np.uint8)
        Image.fromarray(arr, mode="L").save(frame_dir / f"{t:06d}.png")


def make_minimal_root(root: Path, frame_count: int = 8, score_rows: int | None = None) -> Path:
    """One-video dataset with a single score file and annotator."""
    root.mkdir(parents=True, exist_ok=True)
    for sub in ("scores", "annotations", "splits"):
        (root / sub).mkdir(exist_ok=True)
    ioutils.write_csv(root / "videos" / "scenes.csv", ["video", "scene"], [("v01", "A")])
    write_frames(root / "videos" / "v01" / "frames", [10] * frame_count)
    rows = score_rows if score_rows is not None else frame_count
    ioutils.write_csv(root / "scores" / "v01.demo.csv", ["frame", "score"],
                      [(i, 0.1 * i) for i in range(rows)])
    ioutils.write_csv(root / "annotations" / "U01.csv", ["video", "start", "end"],
                      [("v01", 2, 5)])
    (root / "splits" / "split1.cfg").write_text("scene_a = v01\n", encoding="utf-8")
    return root


@pytest.fixture(scope="session")
def toy_dataset(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("toy_dataset")
    make_synthetic_dataset(root, SyntheticSpec(seed=7))
    return root
