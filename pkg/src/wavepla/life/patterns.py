"""Cell pattern files, built-in patterns, trace and PGM export.

Pattern text: one row per line, '.' dead, 'O' live; lines starting with
'#' are comments. Short rows are padded with dead cells.
"""

from pathlib import Path
from typing import Sequence

import numpy as np

from wavepla.life.engine import Boundary, CellGrid

BLINKER = "OOO"

BLOCK = """
OO
OO
"""

GLIDER = """
.O.
..O
OOO
"""

PULSAR = """
..OOO...OOO..
.............
O....O.O....O
O....O.O....O
O....O.O....O
..OOO...OOO..
.............
..OOO...OOO..
O....O.O....O
O....O.O....O
O....O.O....O
.............
..OOO...OOO..
"""

GOSPER_GLIDER_GUN = """
........................O...........
......................O.O...........
............OO......OO............OO
...........O...O....OO............OO
OO........O.....O...OO..............
OO........O...O.OO....O.O...........
..........O.....O.......O...........
...........O...O....................
............OO......................
"""

PATTERNS = {
    "blinker": BLINKER,
    "block": BLOCK,
    "glider": GLIDER,
    "pulsar": PULSAR,
    "gosper": GOSPER_GLIDER_GUN,
}

# grid (height, width) each shipped pattern is centred on
DEFAULT_SIZES = {
    "blinker": (5, 5),
    "block": (4, 4),
    "glider": (6, 6),
    "pulsar": (17, 17),
    "gosper": (50, 50),
}


def parse_pattern(text: str) -> np.ndarray:
    """Parse pattern text into a 0/1 array."""
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip()
        if not line or line.startswith("#"):
            continue
        bad = set(line) - {".", "O"}
        if bad:
            raise ValueError(f"Line {number}: unexpected characters {sorted(bad)}")
        rows.append([1 if ch == "O" else 0 for ch in line])
    if not rows:
        raise ValueError("Pattern has no rows")
    width = max(len(r) for r in rows)
    return np.array([r + [0] * (width - len(r)) for r in rows], dtype=np.uint8)


def format_pattern(cells: np.ndarray) -> str:
    return "\n".join("".join("O" if v else "." for v in row) for row in cells)


def load_pattern(path: str | Path) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Pattern file not found: {path}")
    return parse_pattern(path.read_text(encoding="utf-8"))


def place(
    pattern: np.ndarray,
    height: int,
    width: int,
    boundary: Boundary = "dead",
    origin: tuple[int, int] | None = None,
) -> CellGrid:
    """Put ``pattern`` on an empty grid, centred unless ``origin`` is given."""
    ph, pw = pattern.shape
    if ph > height or pw > width:
        raise ValueError(f"Pattern {ph}x{pw} does not fit a {height}x{width} grid")
    top, left = origin if origin is not None else ((height - ph) // 2, (width - pw) // 2)
    if top < 0 or left < 0 or top + ph > height or left + pw > width:
        raise ValueError(f"Pattern at {(top, left)} falls outside the grid")
    cells = np.zeros((height, width), dtype=np.uint8)
    cells[top : top + ph, left : left + pw] = pattern
    return CellGrid(cells, boundary)


def builtin(name: str, boundary: Boundary = "dead") -> CellGrid:
    """A shipped pattern centred on its default grid."""
    if name not in PATTERNS:
        raise ValueError(f"Unknown pattern: {name}. Available: {list(PATTERNS.keys())}")
    height, width = DEFAULT_SIZES[name]
    return place(parse_pattern(PATTERNS[name]), height, width, boundary)


def write_trace(trace: Sequence[CellGrid], path: str | Path) -> None:
    """One pattern block per generation, separated by blank lines."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blocks = [f"# step {k}\n{format_pattern(g.cells)}" for k, g in enumerate(trace)]
    path.write_text("\n\n".join(blocks) + "\n", encoding="utf-8")


def read_trace(path: str | Path, boundary: Boundary = "dead") -> list[CellGrid]:
    text = Path(path).read_text(encoding="utf-8")
    return [CellGrid(parse_pattern(block), boundary) for block in text.split("\n\n") if block.strip()]


def write_pgm(g: CellGrid, path: str | Path, scale: int = 1) -> None:
    """Plain (P2) greymap, live cells white, each cell ``scale`` pixels wide."""
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pixels = np.kron(g.cells, np.ones((scale, scale), dtype=np.uint8)) * 255
    lines = ["P2", f"{pixels.shape[1]} {pixels.shape[0]}", "255"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in pixels)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
