"""Built-in experiment presets: three 5-oscillator directed-cycle networks.

The frequency matrices are integer-valued fixtures with known verdicts:

* paper-n3: 3-dimensional, W = {0}, no complete synchronization at any gain
* paper-n4: 4-dimensional, dim W = 2, synchronizes from a hemisphere
* paper-n5: 5-dimensional, W = span{e4, e5}, synchronizes from a hemisphere
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import Digraph
from .linalg import SkewMatrix
from .wspace import FrequencyEnsemble


def directed_cycle(m: int) -> Digraph:
    """Unit-weight cycle where oscillator i receives from oscillator i-1."""
    a = np.zeros((m, m))
    for i in range(m):
        a[i, (i - 1) % m] = 1.0
    return Digraph(a)


@dataclass(frozen=True)
class Preset:
    """A named experiment: matrices, topology and default run parameters."""

    name: str
    description: str
    omegas: tuple[tuple[tuple[int, ...], ...], ...]
    k: float
    dt: float
    t_end: float
    stride: int
    margin: float
    seed: int
    p: Optional[tuple[float, ...]] = None

    @property
    def n(self) -> int:
        return len(self.omegas[0])

    @property
    def m(self) -> int:
        return len(self.omegas)

    def ensemble(self) -> FrequencyEnsemble:
        return FrequencyEnsemble(
            tuple(SkewMatrix(np.array(w, dtype=np.float64)) for w in self.omegas)
        )

    def digraph(self) -> Digraph:
        return directed_cycle(self.m)


_OMEGAS_N3 = (
    ((0, 1, 2), (-1, 0, 3), (-2, -3, 0)),
    ((0, 2, -1), (-2, 0, -4), (1, 4, 0)),
    ((0, 4, 1), (-4, 0, -2), (-1, 2, 0)),
    ((0, -3, -2), (3, 0, 1), (2, -1, 0)),
    ((0, 3, -2), (-3, 0, 1), (2, -1, 0)),
)

_OMEGAS_N4 = (
    ((0, 2, 0, 0), (-2, 0, 0, 0), (0, 0, 0, -2), (0, 0, 2, 0)),
    ((0, 3, 1, 0), (-3, 0, 0, -1), (-1, 0, 0, -3), (0, 1, 3, 0)),
    ((0, 4, 2, 0), (-4, 0, 0, -2), (-2, 0, 0, -4), (0, 2, 4, 0)),
    ((0, -1, -3, 0), (1, 0, 0, 3), (3, 0, 0, 1), (0, -3, -1, 0)),
    ((0, 5, 3, 0), (-5, 0, 0, -3), (-3, 0, 0, -5), (0, 3, 5, 0)),
)

_OMEGAS_N5 = (
    (
        (0, 10, -2, 0, 0),
        (-10, 0, 4, 0, 0),
        (2, -4, 0, 0, 0),
        (0, 0, 0, 0, 2),
        (0, 0, 0, -2, 0),
    ),
    (
        (0, 1, -7, 0, 0),
        (-1, 0, 1, 0, 0),
        (7, -1, 0, 0, 0),
        (0, 0, 0, 0, 2),
        (0, 0, 0, -2, 0),
    ),
    (
        (0, 3, 5, 0, 0),
        (-3, 0, 2, 0, 0),
        (-5, -2, 0, 0, 0),
        (0, 0, 0, 0, 2),
        (0, 0, 0, -2, 0),
    ),
    (
        (0, -4, -1, 0, 0),
        (4, 0, -1, 0, 0),
        (1, 1, 0, 0, 0),
        (0, 0, 0, 0, 2),
        (0, 0, 0, -2, 0),
    ),
    (
        (0, 6, 8, 0, 0),
        (-6, 0, -3, 0, 0),
        (-8, 3, 0, 0, 0),
        (0, 0, 0, 0, 2),
        (0, 0, 0, -2, 0),
    ),
)

PRESETS: dict[str, Preset] = {
    "paper-n3": Preset(
        name="paper-n3",
        description="five 3-d oscillators on a directed cycle; W = {0}, no sync",
        omegas=_OMEGAS_N3,
        k=2.0,
        dt=1e-3,
        t_end=50.0,
        stride=50,
        margin=0.05,
        seed=1,
    ),
    "paper-n4": Preset(
        name="paper-n4",
        description="five 4-d oscillators on a directed cycle; dim W = 2, sync",
        omegas=_OMEGAS_N4,
        k=0.9,
        dt=1e-3,
        t_end=100.0,
        stride=100,
        margin=0.05,
        seed=1,
    ),
    "paper-n5": Preset(
        name="paper-n5",
        description="five 5-d oscillators on a directed cycle; W = span{e4, e5}",
        omegas=_OMEGAS_N5,
        k=0.9,
        dt=1e-3,
        t_end=100.0,
        stride=100,
        margin=0.05,
        seed=1,
        p=(0.0, 0.0, 0.0, 1.0, 0.0),
    ),
}
