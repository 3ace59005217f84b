"""Riemann-zeros reference layer.

Euler-Maclaurin evaluation of zeta near the critical strip, the continuously
tracked argument fluctuation S(E), the smooth zero count <N(E)>, zero-table
ingestion, and assembly of the counting comparison against the model.

S(E) follows the convention under which the counting formula
N(E) = <N(E)> + S(E) holds exactly: the argument of zeta is continued from
arg zeta(2) = 0 along the two straight segments 2 -> 2+iE -> 1/2+iE, which
avoid all zeros.  (Continuation along the critical line itself would step
through the zeros, where the argument genuinely jumps.)  Under this
convention S(E) -> -1 as E -> 0+, and S jumps by +multiplicity across each
ordinate.
"""

from __future__ import annotations

import cmath
import io
import math
from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from . import spectrum
from .errors import DomainError, NearZeroError, TableError
from .specfun import riemann_siegel_theta

EM_WINDOW = 200.0       # |Im s| validity window of the truncation below
_EM_TAIL = (            # B_{2j} / (2j)! for j = 1..4
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
)
_NEAR_ZERO_FLOOR = 1e-12
_MAX_ARG_STEP = 0.8     # radians per tracked step of the argument
_MAX_REFINE_DEPTH = 48


def _zeta_euler_maclaurin(s: complex) -> complex:
    # ~2 |Im s| leading terms plus 4 tail corrections; the extra 20-term
    # margin keeps the truncation error under ~1e-12 for 0.4 <= Re s <= 2.5,
    # |Im s| <= 200, so the near-zero floor below stays meaningful.
    if s == 1.0:
        raise DomainError("zeta pole at s = 1")
    cutoff = max(20, math.ceil(2.0 * abs(s.imag)) + 20)
    n = np.arange(1, cutoff)
    total = complex(np.exp(-s * np.log(n)).sum())
    log_cutoff = math.log(cutoff)
    total += 0.5 * cmath.exp(-s * log_cutoff)
    total += cmath.exp((1.0 - s) * log_cutoff) / (s - 1.0)
    pochhammer = 1.0 + 0j
    shift = 0
    for j, coefficient in enumerate(_EM_TAIL, start=1):
        while shift < 2 * j - 1:
            pochhammer *= s + shift
            shift += 1
        total += coefficient * pochhammer * cmath.exp((-s - 2 * j + 1) * log_cutoff)
    return total


def zeta_critical_line(energy: float) -> complex:
    """zeta(1/2 + iE) by Euler-Maclaurin summation; valid for |E| <= 200."""
    energy = float(energy)
    if abs(energy) > EM_WINDOW:
        raise DomainError(
            f"zeta_critical_line: |E| = {abs(energy):g} outside the validity "
            f"window |E| <= {EM_WINDOW:g}"
        )
    return _zeta_euler_maclaurin(0.5 + 1j * energy)


def _tracked_arg(f, s0: complex, s1: complex, v0: complex, v1: complex, depth: int) -> float:
    delta = cmath.phase(v1 / v0)
    if abs(delta) <= _MAX_ARG_STEP:
        return delta
    if depth >= _MAX_REFINE_DEPTH:
        raise NearZeroError(
            f"argument of zeta could not be tracked between {s0} and {s1}"
        )
    mid = 0.5 * (s0 + s1)
    vm = f(mid)
    if abs(vm) < _NEAR_ZERO_FLOOR:
        raise NearZeroError(f"|zeta({mid})| < {_NEAR_ZERO_FLOOR:g} on the tracking path")
    return _tracked_arg(f, s0, mid, v0, vm, depth + 1) + _tracked_arg(
        f, mid, s1, vm, v1, depth + 1
    )


def s_fluctuation(energy: float) -> float:
    """Counting fluctuation S(E) = (1/pi) arg zeta(1/2 + iE), arg tracked
    continuously along 2 -> 2+iE -> 1/2+iE from arg zeta(2) = 0.

    Raises :class:`NearZeroError` when the requested E is so close to an
    ordinate that |zeta| falls under 1e-12 on the path endpoint.
    """
    energy = float(energy)
    if not 0.0 < energy <= EM_WINDOW:
        raise DomainError(
            f"s_fluctuation: need 0 < E <= {EM_WINDOW:g}, got {energy:g}"
        )
    f = _zeta_euler_maclaurin

    points = [complex(2.0, 0.0)]
    n_vertical = max(4, math.ceil(energy / 0.5))
    points += [2.0 + 1j * energy * j / n_vertical for j in range(1, n_vertical + 1)]
    n_horizontal = 30
    points += [
        2.0 - 1.5 * j / n_horizontal + 1j * energy for j in range(1, n_horizontal + 1)
    ]

    values = [f(p) for p in points]
    for p, v in zip(points, values):
        if abs(v) < _NEAR_ZERO_FLOOR:
            raise NearZeroError(f"|zeta({p})| < {_NEAR_ZERO_FLOOR:g}; E is too close to a zero")

    total = 0.0
    for i in range(len(points) - 1):
        total += _tracked_arg(f, points[i], points[i + 1], values[i], values[i + 1], 0)
    return total / math.pi


def n_smooth(energy: float) -> float:
    """Smooth part of the zero-counting staircase: theta(E)/pi + 1."""
    return riemann_siegel_theta(energy) / math.pi + 1.0


@dataclass(frozen=True)
class ZeroTable:
    """Sorted ordinates (imaginary parts) of critical-line zeros."""

    ordinates: tuple[float, ...]
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ordinates", tuple(float(t) for t in self.ordinates))
        for i in range(1, len(self.ordinates)):
            if not self.ordinates[i] > self.ordinates[i - 1]:
                raise TableError(
                    f"ordinates must be strictly increasing; entry {i + 1} "
                    f"({self.ordinates[i]!r}) does not exceed its predecessor",
                    line=i + 1,
                )

    def __len__(self) -> int:
        return len(self.ordinates)


@dataclass(frozen=True)
class CountingSample:
    """One comparison point: model count, smooth count, fluctuation, table count."""

    energy: float
    n_model: float
    n_smooth: float
    s_fluct: float
    n_table: int


def load_zero_table(stream, source: str = "", sanity_check: bool = True) -> ZeroTable:
    """Parse a zero table: one decimal ordinate per line, '#' comments, LF/CRLF.

    ``sanity_check`` gates genuine tables on the first ordinate lying in
    (14, 15); switch it off for synthetic tables (e.g. model eigenvalues fed
    back into calibration).
    """
    if isinstance(stream, bytes):
        try:
            text = stream.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TableError(f"zero table is not UTF-8: {exc}") from exc
    elif isinstance(stream, str):
        text = stream
    else:
        data = stream.read()
        return load_zero_table(data, source=source, sanity_check=sanity_check)

    ordinates: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            value = float(line)
        except ValueError as exc:
            raise TableError(
                f"line {lineno}: not a decimal ordinate: {line!r}", line=lineno
            ) from exc
        if not math.isfinite(value) or value <= 0.0:
            raise TableError(
                f"line {lineno}: ordinates must be finite and > 0, got {line!r}",
                line=lineno,
            )
        if ordinates and value <= ordinates[-1]:
            raise TableError(
                f"line {lineno}: ordinate {value!r} does not exceed its predecessor "
                f"{ordinates[-1]!r}",
                line=lineno,
            )
        ordinates.append(value)

    if sanity_check and ordinates and not 14.0 < ordinates[0] < 15.0:
        raise TableError(
            f"first ordinate {ordinates[0]!r} lies outside (14, 15); pass "
            "sanity_check=False for synthetic tables"
        )
    return ZeroTable(tuple(ordinates), source=source)


def format_zero_table(table: ZeroTable) -> str:
    """Serialize a table back to the file format with full float precision."""
    out = io.StringIO()
    if table.source:
        out.write(f"# source: {table.source}\n")
    for value in table.ordinates:
        out.write(f"{value!r}\n")
    return out.getvalue()


def count_zeros(table: ZeroTable, energy: float) -> int:
    """Number of ordinates <= E (closed upper bound), by binary search."""
    return bisect_right(table.ordinates, energy)


def compare_counting(
    config: spectrum.SpectralConfig,
    table: ZeroTable,
    e_grid: list[float],
) -> list[CountingSample]:
    """One :class:`CountingSample` per grid point, combining the model's
    smooth count, the counting-formula pieces, and the table count."""
    samples = []
    for energy in e_grid:
        samples.append(
            CountingSample(
                energy=float(energy),
                n_model=spectrum.counting_model(energy, config),
                n_smooth=n_smooth(energy),
                s_fluct=s_fluctuation(energy),
                n_table=count_zeros(table, energy),
            )
        )
    return samples
