"""Small file helpers: atomic writes and the plain CSV dialect used everywhere.

All files emitted by the toolkit are UTF-8, LF line endings, no quoting.
Writers go through a temp file + rename so a crashed run never leaves a
half-written file behind.
"""

import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_bytes(path: Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def format_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Render rows as plain comma-joined CSV. Cells must not contain commas."""
    lines = [",".join(header)]
    for row in rows:
        cells = ["" if cell is None else str(cell) for cell in row]
        for cell in cells:
            if "," in cell or "\n" in cell:
                raise ValueError(f"cell not representable without quoting: {cell!r}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    atomic_write_text(path, format_csv(header, rows))


def read_csv(path: Path, expected_header: Sequence[str]) -> list[list[str]]:
    """Read a plain CSV written by this toolkit; validates the header."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln != ""]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split(",")
    if list(header) != list(expected_header):
        raise ValueError(f"{path}: expected header {','.join(expected_header)!r}, got {lines[0]!r}")
    return [ln.split(",") for ln in lines[1:]]
