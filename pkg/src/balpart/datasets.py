"""SNAP dataset lookup and published reference values.

Edge lists are never downloaded. They are looked up in ``$BALPART_DATA``
(default ``./data``) under their SNAP file names, plain or gzipped.
"""

from __future__ import annotations

import os
from pathlib import Path

SNAP_FILES = {
    "pokec": "soc-pokec-relationships.txt",
    "livejournal": "soc-LiveJournal1.txt",
    "orkut": "com-orkut.ungraph.txt",
    "notredame": "web-NotreDame.txt",
    "stanford": "web-Stanford.txt",
    "google": "web-Google.txt",
    "berkstan": "web-BerkStan.txt",
}

# n, m, average degree, LCC fraction
REFERENCE_STATS = {
    "pokec": (1_632_803, 22_301_964, 27.32, 1.00),
    "livejournal": (4_847_571, 43_110_428, 17.79, 0.999),
    "orkut": (3_072_441, 63_464_467, 41.31, 1.00),
    "notredame": (325_729, 1_103_835, 6.78, 1.00),
    "stanford": (281_903, 1_992_636, 14.14, 0.91),
    "google": (875_713, 4_322_051, 9.87, 0.98),
    "berkstan": (685_230, 7_600_595, 19.41, 0.96),
}

# internal edge fraction, k=16, eps=0, 10 iterations; METIS is a literature constant
FRACTION_COLUMNS = ("shp1", "shp2", "klshp", "blp", "random", "cc", "bfs", "degree",
                  "ambivalence", "gain", "metis")
REFERENCE_FRACTIONS = {
    "pokec": (0.578, 0.595, 0.585, 0.532, 0.675, 0.681, 0.698, 0.716, 0.712, 0.618, 0.827),
    "livejournal": (0.626, 0.648, 0.625, 0.617, 0.674, 0.666, 0.731, 0.745, 0.749, 0.671, 0.899),
    "orkut": (0.535, 0.555, 0.534, 0.531, 0.650, 0.628, 0.665, 0.689, 0.679, 0.626, 0.711),
    "notredame": (0.783, 0.635, 0.652, 0.612, 0.882, 0.864, 0.929, 0.902, 0.924, 0.878, 0.982),
    "stanford": (0.737, 0.711, 0.697, 0.629, 0.856, 0.844, 0.891, 0.900, 0.916, 0.793, 0.973),
    "google": (0.670, 0.603, 0.616, 0.606, 0.848, 0.814, 0.868, 0.959, 0.964, 0.799, 0.989),
    "berkstan": (0.701, 0.652, 0.658, 0.585, 0.858, 0.805, 0.895, 0.913, 0.918, 0.766, 0.988),
}

# livejournal by k: Spinner (eps .05), LE/A, LE/C, BLP (eps .05), reLDG-ambivalence (eps 0), METIS
K_SWEEP_COLUMNS = ("spinner", "le_a", "le_c", "blp", "reldg_ambivalence", "metis")
K_SWEEP_REFERENCE = {
    20: (0.62, 0.643, 0.725, 0.600, 0.733, 0.890),
    40: (0.60, 0.592, 0.663, 0.562, 0.691, 0.869),
    60: (0.57, 0.570, 0.634, 0.537, 0.661, 0.857),
    80: (0.56, 0.567, 0.614, 0.520, 0.648, 0.845),
    100: (0.54, 0.550, 0.585, 0.517, 0.636, 0.839),
}


def reference_fraction(graph: str, method: str) -> float:
    return REFERENCE_FRACTIONS[graph][FRACTION_COLUMNS.index(method)]


def data_dir() -> Path:
    return Path(os.environ.get("BALPART_DATA", "data"))


def find_dataset(name: str) -> Path | None:
    base = SNAP_FILES[name]
    for candidate in (base, base + ".gz"):
        path = data_dir() / candidate
        if path.exists():
            return path
    return None
