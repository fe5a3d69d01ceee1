"""Linear-time degree statistics of a symmetric relation.

Every statistic here is a weighted count of walks along a short spine:

* ``star_norm(p)``          sum over vertices a of d(a)^p  (p-th power of the
  degree-sequence p-norm; equals the weighted number of p-leaf stars).
* ``bistar_moment(p, q)``   sum over directed rows (a, b) of
  d(a)^(p-1) d(b)^(q-1)  (two stars joined by an edge).
* ``cat_v(p, q, r)``        sum over 3-vertex spines a-b-c (a, c neighbors of
  b, coincidence allowed) of d(a)^p d(b)^q d(c)^r.
* ``cat_n(p, q, r, s)``     sum over 4-vertex spines a-b-c-d.
* ``cat_w(p, q, r, s, t)``  sum over 5-vertex spines a-b-c-d-e.

For integer exponents these count graph homomorphisms from caterpillars
(a path spine with leaves attached) into the relation; the exponent at a
spine position is the number of leaves hanging there.  All are computed by
message passing over the adjacency structure in O(|R|) time: first the
per-vertex power tables, then one neighbor-sum pass per spine hop.

Numeric policy: with integer exponents on desk-scale graphs the sums are
accumulated in exact Python integers; otherwise in float64.  When float64
overflows, the natural log of the statistic is recomputed with max-shifted
(log-sum-exp style) passes, so ``StatRecord.log_value`` stays finite and
authoritative while ``raw_value`` saturates to +inf.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "StatKind",
    "Orientation",
    "StatKey",
    "StatRecord",
    "star_norm",
    "bistar_moment",
    "cat_v",
    "cat_n",
    "cat_w",
    "max_degree",
    "compute_stat",
]

# Above this many directed rows the exact integer path is skipped even for
# integer exponents; float64 message passing keeps the linear-time contract.
EXACT_PATH_MAX_ROWS = 200_000


class StatKind(enum.Enum):
    DOMAIN_SIZE = "domain_size"
    EDGE_COUNT = "edge_count"
    MAX_DEGREE = "max_degree"
    STAR = "star"
    BISTAR = "bistar"
    CAT_V = "cat_v"
    CAT_N = "cat_n"
    CAT_W = "cat_w"


PARAM_ARITY = {
    StatKind.DOMAIN_SIZE: 0,
    StatKind.EDGE_COUNT: 0,
    StatKind.MAX_DEGREE: 0,
    StatKind.STAR: 1,
    StatKind.BISTAR: 2,
    StatKind.CAT_V: 3,
    StatKind.CAT_N: 4,
    StatKind.CAT_W: 5,
}


class Orientation(enum.Enum):
    FORWARD = "forward"
    TRANSPOSED = "transposed"


@dataclass(frozen=True)
class StatKey:
    """A statistic kind with its real exponents and relation orientation.

    Orientation says which side of the relation plays the row-first role;
    for the symmetrized relations built by this package the two orientations
    have equal values, but they emit different bound constraints.
    """

    kind: StatKind
    params: tuple[float, ...] = ()
    orientation: Orientation = Orientation.FORWARD

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        arity = PARAM_ARITY[self.kind]
        if len(self.params) != arity:
            raise ValueError(
                f"{self.kind.value} takes {arity} parameter(s), got {len(self.params)}"
            )
        if not all(math.isfinite(p) for p in self.params):
            raise ValueError(f"{self.kind.value} parameters must be finite")
        if self.kind is StatKind.STAR and self.params[0] < 0:
            raise ValueError("star exponent must be >= 0")
        if self.kind is StatKind.BISTAR and min(self.params) < 1:
            raise ValueError("bistar exponents must be >= 1")
        if self.kind in (StatKind.CAT_V, StatKind.CAT_N, StatKind.CAT_W):
            if min(self.params) < 0:
                raise ValueError(f"{self.kind.value} exponents must be >= 0")

    def transposed(self) -> "StatKey":
        flip = (
            Orientation.TRANSPOSED
            if self.orientation is Orientation.FORWARD
            else Orientation.FORWARD
        )
        return StatKey(self.kind, self.params, flip)

    def describe(self) -> str:
        if self.params:
            inner = ",".join(f"{p:g}" for p in self.params)
            text = f"{self.kind.value}({inner})"
        else:
            text = self.kind.value
        if self.orientation is Orientation.TRANSPOSED:
            text += "^T"
        return text


@dataclass(frozen=True)
class StatRecord:
    """A computed statistic.  ``log_value`` (natural log) is authoritative;
    ``raw_value`` may saturate to +inf for large exponents."""

    key: StatKey
    log_value: float
    raw_value: float


# ---------------------------------------------------------------------------
# shared passes

def _edge_src(g: Graph) -> np.ndarray:
    return g.edge_src


def _nbr_sum_f(g: Graph, vals: np.ndarray) -> np.ndarray:
    """out[v] = sum of vals[u] over neighbors u of v (float64 pass)."""
    return np.bincount(_edge_src(g), weights=vals[g.indices], minlength=g.vertex_count)


def _nbr_sum_i(g: Graph, vals: list[int]) -> list[int]:
    """Exact integer neighbor sums (Python ints, no overflow)."""
    indptr = g.indptr
    idx = g.indices.tolist()
    out = [0] * g.vertex_count
    for v in range(g.vertex_count):
        lo, hi = int(indptr[v]), int(indptr[v + 1])
        out[v] = sum(vals[idx[j]] for j in range(lo, hi))
    return out


def _use_exact(g: Graph, params: tuple[float, ...]) -> bool:
    if g.directed_edge_count > EXACT_PATH_MAX_ROWS:
        return False
    return all(p.is_integer() for p in map(float, params))


def _ipow(degs: list[int], e: int) -> list[int]:
    if e == 0:
        return [1] * len(degs)
    return [d ** e for d in degs]


def _fdeg(g: Graph) -> np.ndarray:
    return g.degrees.astype(np.float64)


def _fpow(d: np.ndarray, e: float) -> np.ndarray:
    if e == 0:
        return np.ones_like(d)
    return d ** e


def _check_params(kind: StatKind, params) -> tuple[float, ...]:
    # route validation through StatKey so value functions and keys agree
    return StatKey(kind, tuple(params)).params


# ---------------------------------------------------------------------------
# log-domain (max-shifted) passes, used only after float64 overflow

def _logsumexp(a: np.ndarray) -> float:
    m = np.max(a, initial=-np.inf)
    if not np.isfinite(m):
        return float(m)
    return float(m + np.log(np.exp(a - m).sum()))


def _xlogd(e: float, logd: np.ndarray) -> np.ndarray:
    # e * ln d with the 0^0 = 1 convention (avoids 0 * -inf = nan)
    if e == 0:
        return np.zeros_like(logd)
    return e * logd


def _nbr_logsum(g: Graph, logvals: np.ndarray) -> np.ndarray:
    """out[v] = ln sum of exp(logvals[u]) over neighbors u of v."""
    gathered = logvals[g.indices]
    m = np.max(gathered, initial=-np.inf)
    if not np.isfinite(m):
        return np.full(g.vertex_count, -np.inf)
    sums = np.bincount(_edge_src(g), weights=np.exp(gathered - m),
                       minlength=g.vertex_count)
    with np.errstate(divide="ignore"):
        return np.log(sums) + m


def _logd(g: Graph) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(_fdeg(g))


def _star_log(g: Graph, p: float) -> float:
    if p == 0:
        return math.log(g.vertex_count) if g.vertex_count else -math.inf
    ld = _logd(g)
    return _logsumexp(p * ld[g.degrees > 0])


def _bistar_log(g: Graph, p: float, q: float) -> float:
    ld = _logd(g)
    lp = _xlogd(p - 1, ld)
    lq = _xlogd(q - 1, ld)
    return _logsumexp(lp + _nbr_logsum(g, lq))


def _catv_log(g: Graph, p: float, q: float, r: float) -> float:
    ld = _logd(g)
    lmp = _nbr_logsum(g, _xlogd(p, ld))
    lmr = lmp if r == p else _nbr_logsum(g, _xlogd(r, ld))
    return _logsumexp(_xlogd(q, ld) + lmp + lmr)


def _catn_log(g: Graph, p: float, q: float, r: float, s: float) -> float:
    ld = _logd(g)
    lmp = _nbr_logsum(g, _xlogd(p, ld))
    lms = lmp if s == p else _nbr_logsum(g, _xlogd(s, ld))
    inner = _nbr_logsum(g, _xlogd(q, ld) + lmp)
    return _logsumexp(_xlogd(r, ld) + lms + inner)


def _catw_log(g: Graph, p: float, q: float, r: float, s: float, t: float) -> float:
    ld = _logd(g)
    lmp = _nbr_logsum(g, _xlogd(p, ld))
    lmt = lmp if t == p else _nbr_logsum(g, _xlogd(t, ld))
    la = _nbr_logsum(g, _xlogd(q, ld) + lmp)
    lb = la if (q, p) == (s, t) else _nbr_logsum(g, _xlogd(s, ld) + lmt)
    return _logsumexp(_xlogd(r, ld) + la + lb)


# ---------------------------------------------------------------------------
# statistics

def star_norm(g: Graph, p: float) -> float:
    """Sum of d(a)^p over all vertices, with 0^0 = 1 (so p = 0 gives the
    domain size and p = 1 the directed row count)."""
    (p,) = _check_params(StatKind.STAR, (p,))
    if p == 0:
        return g.vertex_count
    if _use_exact(g, (p,)):
        e = int(p)
        return sum(d ** e for d in g.degrees.tolist())
    with np.errstate(over="ignore"):
        return float(_fpow(_fdeg(g), p).sum())


def bistar_moment(g: Graph, p: float, q: float) -> float:
    """Sum over directed rows (a, b) of d(a)^(p-1) d(b)^(q-1); p, q >= 1."""
    p, q = _check_params(StatKind.BISTAR, (p, q))
    if _use_exact(g, (p, q)):
        degs = g.degrees.tolist()
        vp = _ipow(degs, int(p) - 1)
        vq = _ipow(degs, int(q) - 1)
        mq = _nbr_sum_i(g, vq)
        return sum(a * b for a, b in zip(vp, mq))
    with np.errstate(over="ignore"):
        d = _fdeg(g)
        vp = _fpow(d, p - 1)
        vq = _fpow(d, q - 1)
        return float((vp * _nbr_sum_f(g, vq)).sum())


def cat_v(g: Graph, p: float, q: float, r: float) -> float:
    """Sum over 3-vertex spines a-b-c of d(a)^p d(b)^q d(c)^r.

    One neighbor-sum pass per outer exponent, then a weighted vertex sum:
    V = sum_b d(b)^q * (sum_{a in N(b)} d(a)^p) * (sum_{c in N(b)} d(c)^r).
    """
    p, q, r = _check_params(StatKind.CAT_V, (p, q, r))
    if _use_exact(g, (p, q, r)):
        degs = g.degrees.tolist()
        mp = _nbr_sum_i(g, _ipow(degs, int(p)))
        mr = mp if r == p else _nbr_sum_i(g, _ipow(degs, int(r)))
        dq = _ipow(degs, int(q))
        return sum(w * a * c for w, a, c in zip(dq, mp, mr) if a)
    with np.errstate(over="ignore"):
        d = _fdeg(g)
        mp = _nbr_sum_f(g, _fpow(d, p))
        mr = mp if r == p else _nbr_sum_f(g, _fpow(d, r))
        return float((_fpow(d, q) * mp * mr)[g.degrees > 0].sum())


def cat_n(g: Graph, p: float, q: float, r: float, s: float) -> float:
    """Sum over 4-vertex spines a-b-c-d of d(a)^p d(b)^q d(c)^r d(d)^s."""
    p, q, r, s = _check_params(StatKind.CAT_N, (p, q, r, s))
    if _use_exact(g, (p, q, r, s)):
        degs = g.degrees.tolist()
        mp = _nbr_sum_i(g, _ipow(degs, int(p)))
        ms = mp if s == p else _nbr_sum_i(g, _ipow(degs, int(s)))
        dq = _ipow(degs, int(q))
        inner = _nbr_sum_i(g, [w * a for w, a in zip(dq, mp)])
        dr = _ipow(degs, int(r))
        return sum(w * b * i for w, b, i in zip(dr, ms, inner) if i)
    with np.errstate(over="ignore"):
        d = _fdeg(g)
        mp = _nbr_sum_f(g, _fpow(d, p))
        ms = mp if s == p else _nbr_sum_f(g, _fpow(d, s))
        inner = _nbr_sum_f(g, _fpow(d, q) * mp)
        return float((_fpow(d, r) * ms * inner)[g.degrees > 0].sum())


def cat_w(g: Graph, p: float, q: float, r: float, s: float, t: float) -> float:
    """Sum over 5-vertex spines a-b-c-d-e of the five degree powers."""
    p, q, r, s, t = _check_params(StatKind.CAT_W, (p, q, r, s, t))
    if _use_exact(g, (p, q, r, s, t)):
        degs = g.degrees.tolist()
        mp = _nbr_sum_i(g, _ipow(degs, int(p)))
        mt = mp if t == p else _nbr_sum_i(g, _ipow(degs, int(t)))
        dq = _ipow(degs, int(q))
        aa = _nbr_sum_i(g, [w * a for w, a in zip(dq, mp)])
        ds = _ipow(degs, int(s))
        bb = aa if (int(q), int(p)) == (int(s), int(t)) else _nbr_sum_i(
            g, [w * e for w, e in zip(ds, mt)]
        )
        dr = _ipow(degs, int(r))
        return sum(w * a * b for w, a, b in zip(dr, aa, bb) if a)
    with np.errstate(over="ignore"):
        d = _fdeg(g)
        mp = _nbr_sum_f(g, _fpow(d, p))
        mt = mp if t == p else _nbr_sum_f(g, _fpow(d, t))
        aa = _nbr_sum_f(g, _fpow(d, q) * mp)
        bb = aa if (q, p) == (s, t) else _nbr_sum_f(g, _fpow(d, s) * mt)
        return float((_fpow(d, r) * aa * bb)[g.degrees > 0].sum())


def max_degree(g: Graph) -> int:
    """Largest vertex degree; 0 for an edgeless graph."""
    if g.vertex_count == 0:
        return 0
    return int(g.degrees.max())


_VALUE_FN = {
    StatKind.STAR: star_norm,
    StatKind.BISTAR: bistar_moment,
    StatKind.CAT_V: cat_v,
    StatKind.CAT_N: cat_n,
    StatKind.CAT_W: cat_w,
}

_LOG_FN = {
    StatKind.STAR: _star_log,
    StatKind.BISTAR: _bistar_log,
    StatKind.CAT_V: _catv_log,
    StatKind.CAT_N: _catn_log,
    StatKind.CAT_W: _catw_log,
}


def compute_stat(g: Graph, key: StatKey) -> StatRecord:
    """Evaluate a statistic and return it with its natural log.

    Transposed orientation swaps the two sides of the relation, which is a
    value no-op here because the stored relation is symmetric; the key keeps
    the orientation for constraint emission.
    """
    if key.kind is StatKind.DOMAIN_SIZE:
        value = g.vertex_count
    elif key.kind is StatKind.EDGE_COUNT:
        value = g.directed_edge_count
    elif key.kind is StatKind.MAX_DEGREE:
        value = max_degree(g)
    else:
        value = _VALUE_FN[key.kind](g, *key.params)

    if isinstance(value, int):
        log_value = math.log(value) if value > 0 else -math.inf
        try:
            raw = float(value)  # may round; log_value is exact
        except OverflowError:
            raw = math.inf
    elif math.isinf(value):
        log_value = _LOG_FN[key.kind](g, *key.params)
        raw = math.inf
    elif value > 0:
        log_value = math.log(value)
        raw = value
    else:
        log_value = -math.inf
        raw = value
    return StatRecord(key=key, log_value=log_value, raw_value=raw)
