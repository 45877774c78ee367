"""Event selection: score sequence -> single predicted event interval.

Two selectors are provided. The threshold selector keeps the longest
contiguous run of frames with score >= tau. The peak selector finds local
maxima, measures each peak's prominence and its width at a relative height
h below the apex, and keeps the widest peak. Ties break to the earliest
candidate in both selectors. Either selector may return None ("no event")
on degenerate signals; downstream metrics score that as t-IoU 0.

The local-maxima / prominence / width machinery is implemented here from
first principles so its exact behavior is pinned by the test oracles:

- A peak is a sample strictly above both neighbors. An interior plateau
  (equal-value run with strictly lower neighbors on both sides) counts as
  one peak at its left-biased midpoint. Endpoints are never peaks.
- Prominence: extend a window from the peak out to the nearest strictly
  higher sample (or the signal end) on each side; each base is the argmin
  of its window, the one closest to the peak winning ties. Prominence is
  the peak height minus the higher base value.
- Width at relative height h: the horizontal extent of the contour at
  height - h * prominence, linearly interpolated between samples and
  clamped at the bases if the signal never crosses the contour.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dataset import EventInterval
from .errors import NotAPeak


class SelectionMethod(str, Enum):
    THRESHOLD = "threshold"
    FIND_PEAKS = "find_peaks"


@dataclass(frozen=True)
class SelectionParams:
    method: SelectionMethod
    tau: float | None = None          # threshold method
    rel_height: float | None = None   # peak method

    def __post_init__(self):
        if self.method == SelectionMethod.THRESHOLD:
            if self.tau is None or self.rel_height is not None:
                raise ValueError("threshold method uses tau only")
        else:
            if self.rel_height is None or self.tau is not None:
                raise ValueError("peak method uses rel_height only")

    @property
    def param(self) -> float:
        return self.tau if self.method == SelectionMethod.THRESHOLD else self.rel_height


@dataclass(frozen=True)
class Peak:
    position: int
    height: float
    left_base: int
    right_base: int
    prominence: float
    width: float
    left_ip: float
    right_ip: float


def select_threshold(scores, tau: float) -> EventInterval | None:
    """Longest run of consecutive frames with score >= tau (earliest on tie)."""
    x = np.asarray(scores, dtype=float)
    best: EventInterval | None = None
    run_start = None
    for t in range(len(x) + 1):
        if t < len(x) and x[t] >= tau:
            if run_start is None:
                run_start = t
        elif run_start is not None:
            if best is None or t - run_start > best.length:
                best = EventInterval(run_start, t - 1)
            run_start = None
    return best


def find_local_maxima(scores) -> list[int]:
    """Indices of interior local maxima; plateaus collapse to their midpoint."""
    x = np.asarray(scores, dtype=float)
    n = len(x)
    out: list[int] = []
    i = 1
    while i < n - 1:
        if x[i] > x[i - 1]:
            j = i
            while j + 1 < n and x[j + 1] == x[i]:
                j += 1
            if j + 1 < n and x[j + 1] < x[i]:
                out.append(i + (j - i) // 2)
            i = j + 1
        else:
            i += 1
    return out


def peak_prominence(scores, peak: int) -> tuple[float, int, int]:
    """Prominence of a detected peak plus its left/right base indices."""
    x = np.asarray(scores, dtype=float)
    if peak not in find_local_maxima(x):
        raise NotAPeak(f"index {peak} is not a local maximum")
    return _prominence(x, peak)


def _prominence(x: np.ndarray, peak: int) -> tuple[float, int, int]:
    # assumes `peak` is a known local maximum; skips the membership check
    height = x[peak]

    left_stop = 0
    for i in range(peak - 1, -1, -1):
        if x[i] > height:
            left_stop = i + 1
            break
    left_base = left_stop
    for i in range(left_stop, peak + 1):
        if x[i] <= x[left_base]:
            left_base = i

    right_stop = len(x) - 1
    for i in range(peak + 1, len(x)):
        if x[i] > height:
            right_stop = i - 1
            break
    right_base = right_stop
    for i in range(right_stop, peak - 1, -1):
        if x[i] <= x[right_base]:
            right_base = i

    prominence = height - max(x[left_base], x[right_base])
    return float(prominence), left_base, right_base


def peak_width(scores, peak: int, prominence: float, left_base: int, right_base: int,
               rel_height: float) -> tuple[float, float, float]:
    """Width of a peak at the contour `height - rel_height * prominence`."""
    x = np.asarray(scores, dtype=float)
    eval_height = x[peak] - rel_height * prominence

    i = peak
    while i > left_base and x[i] > eval_height:
        i -= 1
    if x[i] < eval_height:
        left_ip = i + (eval_height - x[i]) / (x[i + 1] - x[i])
    else:
        left_ip = float(i)

    i = peak
    while i < right_base and x[i] > eval_height:
        i += 1
    if x[i] < eval_height:
        right_ip = i - (eval_height - x[i]) / (x[i - 1] - x[i])
    else:
        right_ip = float(i)

    return float(right_ip - left_ip), float(left_ip), float(right_ip)


def analyze_peaks(scores, rel_height: float) -> list[Peak]:
    """Full peak descriptions (position, bases, prominence, width) at one h."""
    x = np.asarray(scores, dtype=float)
    peaks = []
    for pos in find_local_maxima(x):
        prominence, left_base, right_base = _prominence(x, pos)
        width, left_ip, right_ip = peak_width(x, pos, prominence, left_base, right_base, rel_height)
        peaks.append(Peak(
            position=pos,
            height=float(x[pos]),
            left_base=left_base,
            right_base=right_base,
            prominence=prominence,
            width=width,
            left_ip=left_ip,
            right_ip=right_ip,
        ))
    return peaks


def select_peak(scores, rel_height: float) -> EventInterval | None:
    """Widest peak at relative height h, converted to an inclusive frame interval."""
    x = np.asarray(scores, dtype=float)
    peaks = analyze_peaks(x, rel_height)
    if not peaks:
        return None
    best = peaks[0]
    for p in peaks[1:]:
        if p.width > best.width:
            best = p
    start = max(0, math.ceil(best.left_ip))
    end = min(len(x) - 1, math.floor(best.right_ip))
    if start > end:
        # contour narrower than one frame: fall back to the apex itself
        return EventInterval(best.position, best.position)
    return EventInterval(start, end)


def select_event(scores, params: SelectionParams) -> EventInterval | None:
    if params.method == SelectionMethod.THRESHOLD:
        return select_threshold(scores, params.tau)
    return select_peak(scores, params.rel_height)
