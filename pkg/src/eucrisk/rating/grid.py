"""Batch rating over arrays of assessment inputs.

The scalar functions in :mod:`eucrisk.rating.engine` are the single source
of truth; this module reproduces their integer arithmetic over numpy arrays
so exhaustive sweeps (every grade/impact/questionnaire combination) and
whole-inventory what-if scans run in milliseconds. Questionnaires travel as
13-bit masks, one bit per answer in declaration order.

The hot loop is compiled with numba when available; set EUCRISK_NO_NUMBA=1
to force the pure-numpy path. ``benchmarks/bench_rating_grid.py`` compares
the two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from eucrisk.rating.types import CONTROL_FIELDS, DATA_FIELDS, ControlAnswers

NO_NUMBA_ENV = "EUCRISK_NO_NUMBA"

FIELD_BITS = {name: i for i, name in enumerate(CONTROL_FIELDS + DATA_FIELDS)}
MASK_BITS = len(FIELD_BITS)
CONTROL_MASK = (1 << len(CONTROL_FIELDS)) - 1

_ACCESS_BIT = FIELD_BITS["access_restricted"]
_INTEGRITY_BIT = FIELD_BITS["integrity_protected"]
_SENSITIVE_BIT = FIELD_BITS["holds_sensitive_personal_data"]

# Band rank per impact cap: impact 1 caps at Green, 2-3 at Amber, 4-6 uncapped.
_IMPACT_CAP = np.array([1, 2, 2, 3, 3, 3], dtype=np.uint8)

_POPCOUNT = np.array([bin(i).count("1") for i in range(CONTROL_MASK + 1)], dtype=np.uint8)

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


def encode_controls(controls: ControlAnswers) -> int:
    """Pack a questionnaire into its 13-bit mask (bit set = answered yes)."""
    mask = 0
    for name, bit in FIELD_BITS.items():
        if getattr(controls, name):
            mask |= 1 << bit
    return mask


def decode_controls(mask: int) -> ControlAnswers:
    """Inverse of :func:`encode_controls`."""
    return ControlAnswers(**{name: bool(mask >> bit & 1) for name, bit in FIELD_BITS.items()})


@dataclass(frozen=True)
class RatedBatch:
    """Column-wise results for one batch; all arrays share one length."""

    failures: np.ndarray
    depth: np.ndarray
    score: np.ndarray
    band: np.ndarray  # rank 0..3, Blue..Red
    escalated: np.ndarray
    clamped: np.ndarray


def _rate_numpy(complexity, materiality, mask, impact) -> RatedBatch:
    failures = (len(CONTROL_FIELDS) - _POPCOUNT[mask & CONTROL_MASK]).astype(np.uint8)
    tripled = failures.astype(np.int32) * 3
    depth = np.where(tripled < 11, 1, np.where(tripled < 22, 2, 3)).astype(np.uint8)
    score = (complexity.astype(np.int32) * materiality.astype(np.int32) * depth).astype(np.int32)
    band = np.searchsorted(np.array([2, 6, 12]), score, side="left").astype(np.uint8)

    sensitive = (mask >> _SENSITIVE_BIT & 1).astype(bool)
    unguarded = ((mask >> _ACCESS_BIT & 1) == 0) | ((mask >> _INTEGRITY_BIT & 1) == 0)
    escalated = sensitive & unguarded & (band < 3)
    band = band + escalated.astype(np.uint8)

    cap = _IMPACT_CAP[impact - 1]
    clamped = band > cap
    band = np.minimum(band, cap)
    return RatedBatch(failures, depth, score, band, escalated, clamped)


if _HAVE_NUMBA:

    @njit(cache=True)
    def _rate_loop(complexity, materiality, mask, impact,
                   failures, depth, score, band, escalated, clamped):  # pragma: no cover - compiled
        for i in range(mask.shape[0]):
            m = mask[i]
            fails = 0
            for bit in range(11):
                if m >> bit & 1 == 0:
                    fails += 1
            failures[i] = fails
            if fails * 3 < 11:
                k = 1
            elif fails * 3 < 22:
                k = 2
            else:
                k = 3
            depth[i] = k
            s = complexity[i] * materiality[i] * k
            score[i] = s
            if s <= 2:
                b = 0
            elif s <= 6:
                b = 1
            elif s <= 12:
                b = 2
            else:
                b = 3
            esc = False
            if m >> 12 & 1 and (m >> 7 & 1 == 0 or m >> 8 & 1 == 0):
                if b < 3:
                    b += 1
                    esc = True
            escalated[i] = esc
            imp = impact[i]
            if imp == 1:
                cap = 1
            elif imp <= 3:
                cap = 2
            else:
                cap = 3
            if b > cap:
                band[i] = cap
                clamped[i] = True
            else:
                band[i] = b
                clamped[i] = False


def _rate_numba(complexity, materiality, mask, impact) -> RatedBatch:
    n = mask.shape[0]
    out = RatedBatch(
        failures=np.empty(n, dtype=np.uint8),
        depth=np.empty(n, dtype=np.uint8),
        score=np.empty(n, dtype=np.int32),
        band=np.empty(n, dtype=np.uint8),
        escalated=np.empty(n, dtype=np.bool_),
        clamped=np.empty(n, dtype=np.bool_),
    )
    _rate_loop(
        complexity.astype(np.int32), materiality.astype(np.int32),
        mask.astype(np.int32), impact.astype(np.int32),
        out.failures, out.depth, out.score, out.band, out.escalated, out.clamped,
    )
    return out


def active_backend() -> str:
    """Which implementation ``rate_many`` will dispatch to right now."""
    if _HAVE_NUMBA and not os.environ.get(NO_NUMBA_ENV):
        return "numba"
    return "numpy"


def rate_many(complexity: np.ndarray, materiality: np.ndarray,
              mask: np.ndarray, impact: np.ndarray) -> RatedBatch:
    """Rate a batch of (complexity, materiality, questionnaire mask, impact) rows."""
    arrays = [np.asarray(a) for a in (complexity, materiality, mask, impact)]
    if len({a.shape for a in arrays}) != 1:
        raise ValueError("batch columns must share one shape")
    if active_backend() == "numba":
        return _rate_numba(*arrays)
    return _rate_numpy(*arrays)


def exhaustive_inputs() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Every (complexity, materiality, questionnaire, impact) combination.

    3 x 3 x 2^13 x 6 rows = 442,368, the full assessment input space.
    """
    grades = np.arange(1, 4, dtype=np.int32)
    masks = np.arange(1 << MASK_BITS, dtype=np.int32)
    impacts = np.arange(1, 7, dtype=np.int32)
    c, m, q, i = np.meshgrid(grades, grades, masks, impacts, indexing="ij")
    return c.ravel(), m.ravel(), q.ravel(), i.ravel()
