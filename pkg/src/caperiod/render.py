"""Space-time diagrams as text or binary PPM (P6) pixel maps.

Row 0 is the initial configuration.  Pixel colours come from ``PALETTE`` by
letter index; alphabets larger than the palette fall back to a fixed
deterministic colour formula, so output files are bit-stable.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

__all__ = ["PALETTE", "color", "ascii_diagram", "pixmap", "write_ppm"]

PALETTE = (
    (255, 255, 255),
    (0, 0, 0),
    (214, 39, 40),
    (31, 119, 180),
    (44, 160, 44),
    (255, 127, 14),
    (148, 103, 189),
    (140, 86, 75),
)


def color(i: int) -> tuple[int, int, int]:
    if i < len(PALETTE):
        return PALETTE[i]
    return ((i * 97) % 256, (i * 57 + 80) % 256, (i * 31 + 160) % 256)


def ascii_diagram(rows, alphabet, separator: str = "") -> str:
    """One line per time step; multi-character letters are joined by ``separator``."""
    sep = separator if alphabet.single_char or separator else " "
    return "\n".join(sep.join(alphabet.letters[a] for a in r) for r in rows) + "\n"


def pixmap(rows, scale: int = 1) -> np.ndarray:
    """(H, W, 3) uint8 image, each cell a ``scale`` x ``scale`` block."""
    idx = np.asarray(rows, dtype=np.int64)
    if idx.ndim != 2:
        raise ValueError("rows must form a rectangle")
    lut = np.array([color(i) for i in range(int(idx.max(initial=0)) + 1)], dtype=np.uint8)
    img = lut[idx]
    if scale > 1:
        img = img.repeat(scale, axis=0).repeat(scale, axis=1)
    return img


def write_ppm(rows, path, scale: int = 1) -> None:
    img = pixmap(rows, scale)
    h, w, _ = img.shape
    with open(Path(path), "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(img.tobytes())
