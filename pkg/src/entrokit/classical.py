"""Classical distributions: finite vectors, lazy sequences, majorization, mixing.

Entropies are computed as h(sum phi(p_i)) for a functional pair from
entrokit.functionals.  Finite sums are evaluated in sorted order so results
are invariant under permutation of the input, bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .functionals import EntropicFunctional, FunctionalCase

ENTRY_TOL = 1e-12
SUM_TOL = 1e-9
PARTIAL_SUM_TOL = 1e-12
ROW_SUM_TOL = 1e-10
UNITARY_TOL = 1e-8
STOP_WINDOW = 64  # trailing-window length for sequence truncation


class ProbVector:
    """A validated finite probability vector.

    Entries in [-ENTRY_TOL, 0) are clipped to zero; anything more negative is
    rejected.  The total must be within ``sum_tol`` of one.  Renormalization
    is off by default because silently rescaling masks data errors; pass
    renormalize=True to opt in.  Entries are stored read-only.
    """

    __slots__ = ("entries", "entry_tol", "sum_tol")

    def __init__(
        self,
        values,
        renormalize: bool = False,
        entry_tol: float = ENTRY_TOL,
        sum_tol: float = SUM_TOL,
    ):
        arr = np.array(values, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("probability vector must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("probability vector entries must be finite")
        low = float(arr.min())
        if low < -entry_tol:
            raise ValueError(f"entry {low} is below the negativity tolerance -{entry_tol}")
        arr = np.where(arr < 0.0, 0.0, arr)
        total = float(arr.sum())
        if renormalize:
            if total <= 0.0:
                raise ValueError("cannot renormalize a vector with non-positive total")
            arr = arr / total
        elif abs(total - 1.0) > sum_tol:
            raise ValueError(f"entries sum to {total!r}, outside 1 +/- {sum_tol}")
        arr.setflags(write=False)
        self.entries = arr
        self.entry_tol = entry_tol
        self.sum_tol = sum_tol

    @classmethod
    def from_computation(cls, values, negative_floor: float = 1e-9) -> "ProbVector":
        """Wrap an internally computed vector, absorbing bounded roundoff.

        Negative entries down to ``-negative_floor`` are clipped to zero, and
        the vector is renormalized only when the drift |sum - 1| exceeds
        PARTIAL_SUM_TOL.  Intended for spectra, pinched diagonals, and other
        arithmetic products, not for user data.
        """
        arr = np.asarray(values, dtype=float).ravel()
        low = float(arr.min()) if arr.size else 0.0
        if low < -negative_floor:
            raise ValueError(f"computed entry {low} below floor -{negative_floor}")
        arr = np.where(arr < 0.0, 0.0, arr)
        total = float(arr.sum())
        if total <= 0.0:
            raise ValueError("computed vector has non-positive total")
        if abs(total - 1.0) > PARTIAL_SUM_TOL:
            arr = arr / total
        return cls(arr)

    def __len__(self) -> int:
        return int(self.entries.size)

    def __repr__(self) -> str:
        return f"ProbVector({np.array2string(self.entries, threshold=8)})"

    def sorted_desc(self) -> np.ndarray:
        return np.sort(self.entries)[::-1]


class EntropyStatus(Enum):
    EXACT = "exact"
    TRUNCATED_ESTIMATE = "truncated_estimate"
    DECLARED_DIVERGENT = "declared_divergent"


@dataclass(frozen=True)
class EntropyResult:
    """Entropy value plus the accounting of how it was reached.

    ``increment_at_stop`` is the trailing-window increment (or the certified
    tail remainder) observed when iteration stopped; it is zero for finite
    inputs.
    """

    value: float
    status: EntropyStatus
    terms_used: int
    increment_at_stop: float = 0.0


def entropy_finite(p, F: EntropicFunctional) -> EntropyResult:
    """h(sum phi(p_i)) for a finite vector; always status Exact."""
    if not isinstance(p, ProbVector):
        p = ProbVector(p)
    terms = np.sort(np.asarray(F.phi(p.entries)))
    value = float(F.h(float(np.sum(terms))))
    return EntropyResult(value, EntropyStatus.EXACT, terms_used=len(p), increment_at_stop=0.0)


@dataclass(frozen=True)
class GeometricTail:
    """Closed-form tail sums for the geometric family p_i = (1-r) r^i.

    remainder(F, n) returns sum_{i >= n} phi(p_i) exactly for the built-in
    families, None for functionals it cannot certify.
    """

    r: float

    def power_sum_tail(self, beta: float, n: int) -> float:
        r = self.r
        return (1.0 - r) ** beta * r ** (beta * n) / (1.0 - r**beta)

    def remainder(self, F: EntropicFunctional, n: int) -> float | None:
        r = self.r
        if F.family == "shannon":
            # sum_{i>=n} p_i ln p_i in closed form, negated.
            return -(r**n * math.log(1.0 - r) + math.log(r) * r**n * (n + r / (1.0 - r)))
        if F.family == "renyi":
            return self.power_sum_tail(F.params["alpha"], n)
        if F.family == "tsallis":
            q = F.params["q"]
            return (self.power_sum_tail(1.0, n) - self.power_sum_tail(q, n)) / (q - 1.0)
        if F.family == "kaniadakis":
            k = F.params["kappa"]
            return (self.power_sum_tail(1.0 - k, n) - self.power_sum_tail(1.0 + k, n)) / (2.0 * k)
        return None


@dataclass(frozen=True)
class FiniteTail:
    """Exact tail for a sequence with known finite support."""

    values: tuple

    def remainder(self, F: EntropicFunctional, n: int) -> float:
        rest = np.asarray(self.values[n:], dtype=float)
        if rest.size == 0:
            return 0.0
        return float(np.sum(F.phi(rest)))


def _log_square_normalizer(offset: int) -> float:
    # sum_{i>=0} 1/((i+offset) ln^2(i+offset)) by direct summation plus an
    # Euler-Maclaurin tail; accurate to ~1e-12, enough for a probe source.
    n = 1 << 21
    i = np.arange(n, dtype=float) + offset
    total = float(np.sum(1.0 / (i * np.log(i) ** 2)))
    x = float(n + offset)
    return total + 1.0 / math.log(x) + 0.5 / (x * math.log(x) ** 2)


_LOG_SQUARE_CACHE: dict = {}


class SequenceSource:
    """A lazily indexed probability sequence p_0, p_1, ...

    ``fn`` maps an index array to values when ``vectorized`` is true, or a
    single index to a value otherwise.  ``declared_monotone`` promises
    nonincreasing values and is probed on every block actually read.  ``tail``
    optionally supplies certified remainders of sum phi(p_i).
    """

    def __init__(
        self,
        fn: Callable,
        declared_monotone: bool = False,
        tail=None,
        name: str = "custom",
        vectorized: bool = False,
    ):
        self._fn = fn
        self._vectorized = vectorized
        self.declared_monotone = bool(declared_monotone)
        self.tail = tail
        self.name = name

    def value(self, i: int) -> float:
        return float(self.values(i, i + 1)[0])

    def values(self, start: int, stop: int) -> np.ndarray:
        if start < 0 or stop < start:
            raise ValueError("invalid index range")
        idx = np.arange(start, stop, dtype=np.int64)
        if self._vectorized:
            vals = np.asarray(self._fn(idx), dtype=float)
        else:
            vals = np.array([float(self._fn(int(i))) for i in idx], dtype=float)
        if vals.size and (float(vals.min()) < -1e-15 or float(vals.max()) > 1.0 + 1e-15):
            raise ValueError(f"sequence {self.name!r} produced a value outside [0, 1]")
        vals = np.clip(vals, 0.0, 1.0)
        if self.declared_monotone and vals.size:
            if start > 0:
                if self._vectorized:
                    prev = float(self._fn(np.array([start - 1], dtype=np.int64))[0])
                else:
                    prev = float(self._fn(start - 1))
                block = np.concatenate([[min(max(prev, 0.0), 1.0)], vals])
            else:
                block = vals
            if np.any(np.diff(block) > 1e-15):
                raise ValueError(f"sequence {self.name!r} is declared monotone but increased")
        return vals

    @classmethod
    def geometric(cls, r: float) -> "SequenceSource":
        """p_i = (1 - r) r^i with 0 < r < 1; ships closed-form tails."""
        r = float(r)
        if not 0.0 < r < 1.0:
            raise ValueError(f"geometric ratio must satisfy 0 < r < 1, got {r}")
        return cls(
            fn=lambda idx: (1.0 - r) * np.power(r, idx.astype(float)),
            declared_monotone=True,
            tail=GeometricTail(r),
            name=f"geometric:r={r:g}",
            vectorized=True,
        )

    @classmethod
    def heavy_tail(cls, offset: int = 2) -> "SequenceSource":
        """p_i proportional to 1/((i+offset) ln^2(i+offset)); no tail descriptor.

        The normalized sequence sums to one but its Shannon-type entropy sums
        diverge, so truncated evaluation must end in DeclaredDivergent.
        """
        offset = int(offset)
        if offset < 2:
            raise ValueError("offset must be at least 2")
        if offset not in _LOG_SQUARE_CACHE:
            _LOG_SQUARE_CACHE[offset] = _log_square_normalizer(offset)
        c = _LOG_SQUARE_CACHE[offset]

        def fn(idx):
            x = idx.astype(float) + offset
            return 1.0 / (c * x * np.log(x) ** 2)

        return cls(
            fn=fn,
            declared_monotone=True,
            tail=None,
            name=f"heavytail:offset={offset}",
            vectorized=True,
        )

    @classmethod
    def from_vector(cls, values) -> "SequenceSource":
        """Embed a finite vector as a sequence padded with zeros."""
        vec = np.asarray(values, dtype=float).ravel()
        if vec.size == 0:
            raise ValueError("finite sequence must be non-empty")
        frozen = tuple(float(v) for v in vec)
        monotone = bool(np.all(np.diff(vec) <= 1e-15))

        def fn(idx):
            out = np.zeros(idx.shape, dtype=float)
            inside = idx < vec.size
            out[inside] = vec[idx[inside]]
            return out

        return cls(
            fn=fn,
            declared_monotone=monotone,
            tail=FiniteTail(frozen),
            name="finite",
            vectorized=True,
        )


def sequence_from_spec(spec: str) -> SequenceSource:
    """Build a named sequence family from a spec string like ``geometric:r=0.5``."""
    name, _, rest = spec.strip().partition(":")
    name = name.strip().lower()
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"malformed parameter {item!r} in spec {spec!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError:
                raise ValueError(f"non-numeric value for {key.strip()!r} in spec {spec!r}") from None
    if name == "geometric":
        if set(params) != {"r"}:
            raise ValueError("geometric takes exactly the parameter r")
        return SequenceSource.geometric(params["r"])
    if name == "heavytail":
        if not set(params) <= {"offset"}:
            raise ValueError("heavytail takes at most the parameter offset")
        return SequenceSource.heavy_tail(int(params.get("offset", 2)))
    raise ValueError(f"unknown sequence family {name!r} (known: geometric, heavytail)")


def entropy_sequence(
    src: SequenceSource,
    F: EntropicFunctional,
    max_terms: int = 10_000,
    increment_tol: float = 1e-12,
) -> EntropyResult:
    """Evaluate h(sum phi(p_i)) over a lazy sequence with explicit stopping.

    Stops when a tail descriptor certifies the remaining phi-sum below
    ``increment_tol`` (status Exact, remainder folded into the value), when
    the phi-sum increment over a trailing window of STOP_WINDOW terms falls
    below ``increment_tol`` (status TruncatedEstimate), or when ``max_terms``
    is exhausted.  At exhaustion an increasing/concave functional without a
    certified tail is reported DeclaredDivergent with value +inf; for a
    decreasing/convex functional the phi-sum is bounded, so the truncated
    estimate is returned instead.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    if not increment_tol > 0.0:
        raise ValueError("increment_tol must be positive")
    partial = 0.0
    n = 0
    last_chunk = math.inf
    while n < max_terms:
        stop = min(n + STOP_WINDOW, max_terms)
        vals = src.values(n, stop)
        chunk = float(np.sum(np.asarray(F.phi(vals))))
        partial += chunk
        full_window = stop - n == STOP_WINDOW
        n = stop
        last_chunk = abs(chunk)
        if src.tail is not None:
            rem = src.tail.remainder(F, n)
            if rem is not None and abs(rem) < increment_tol:
                return EntropyResult(
                    float(F.h(partial + rem)), EntropyStatus.EXACT, n, abs(rem)
                )
        if full_window and last_chunk < increment_tol:
            return EntropyResult(
                float(F.h(partial)), EntropyStatus.TRUNCATED_ESTIMATE, n, last_chunk
            )
    if src.tail is not None:
        rem = src.tail.remainder(F, n)
        if rem is not None:
            status = EntropyStatus.EXACT if abs(rem) < increment_tol else EntropyStatus.TRUNCATED_ESTIMATE
            return EntropyResult(float(F.h(partial + rem)), status, n, abs(rem))
    if F.case is FunctionalCase.INCREASING_CONCAVE:
        return EntropyResult(math.inf, EntropyStatus.DECLARED_DIVERGENT, n, last_chunk)
    return EntropyResult(float(F.h(partial)), EntropyStatus.TRUNCATED_ESTIMATE, n, last_chunk)


def majorizes(p, q, total_tol: float = SUM_TOL, partial_tol: float = PARTIAL_SUM_TOL) -> bool:
    """True iff q is majorized by p (every partial sum of sorted q is below p's).

    Inputs are sorted defensively in nonincreasing order and zero-padded to a
    common length.  Totals must agree within ``total_tol``; a mismatch is a
    domain error, not a False verdict.
    """
    a = np.sort(np.asarray(p, dtype=float).ravel())[::-1]
    b = np.sort(np.asarray(q, dtype=float).ravel())[::-1]
    if a.size == 0 or b.size == 0:
        raise ValueError("majorization needs non-empty inputs")
    size = max(a.size, b.size)
    a = np.pad(a, (0, size - a.size))
    b = np.pad(b, (0, size - b.size))
    if abs(float(a.sum()) - float(b.sum())) > total_tol:
        raise ValueError(
            f"totals differ beyond {total_tol}: {float(a.sum())!r} vs {float(b.sum())!r}"
        )
    return bool(np.all(np.cumsum(b) <= np.cumsum(a) + partial_tol))


class BistochasticMatrix:
    """A square nonnegative matrix with unit row and column sums."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol: float = ROW_SUM_TOL):
        Q = np.array(matrix, dtype=float)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise ValueError("bistochastic matrix must be square")
        if Q.size == 0:
            raise ValueError("bistochastic matrix must be non-empty")
        if float(Q.min()) < 0.0:
            raise ValueError("bistochastic matrix entries must be nonnegative")
        rows = np.abs(Q.sum(axis=1) - 1.0)
        cols = np.abs(Q.sum(axis=0) - 1.0)
        if float(rows.max()) > tol or float(cols.max()) > tol:
            raise ValueError(f"row/column sums deviate from 1 beyond {tol}")
        Q.setflags(write=False)
        self.matrix = Q

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def bistochastic_from_unitary(U, tol: float = UNITARY_TOL) -> BistochasticMatrix:
    """|U_ij|^2 for a unitary U; rejects matrices with ||U*U - I||_max > tol."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("unitary must be square")
    gram = U.conj().T @ U
    dev = float(np.max(np.abs(gram - np.eye(U.shape[0]))))
    if dev > tol:
        raise ValueError(f"matrix is not unitary within {tol} (deviation {dev:.3e})")
    return BistochasticMatrix(np.abs(U) ** 2)


def apply_bistochastic(Q: BistochasticMatrix, p: ProbVector) -> ProbVector:
    """Return Q p as a probability vector; the result is majorized by p."""
    if not isinstance(Q, BistochasticMatrix):
        Q = BistochasticMatrix(Q)
    if not isinstance(p, ProbVector):
        p = ProbVector(p)
    if Q.n != len(p):
        raise ValueError(f"dimension mismatch: matrix is {Q.n}, vector is {len(p)}")
    return ProbVector.from_computation(Q.matrix @ p.entries)


def jensen_step_oracle(q_row, p, F: EntropicFunctional):
    """Integrate the step function behind one row of a bistochastic mix.

    The row lengths Q_ik partition [0, 1]; the step function takes value p_k
    on the k-th segment.  Returns (integral_f, integral_phi_f, discrete_q_i,
    discrete_sum) where the integrals are computed from partition boundaries
    and the discrete values from dot products; the pairs agree within 1e-12
    and Jensen's inequality relates phi(q_i) to the discrete phi-sum in the
    direction fixed by F.case.
    """
    row = np.asarray(q_row, dtype=float).ravel()
    if row.size == 0:
        raise ValueError("row must be non-empty")
    if float(row.min()) < 0.0:
        raise ValueError("row entries must be nonnegative")
    if abs(float(row.sum()) - 1.0) > ROW_SUM_TOL:
        raise ValueError(f"row must sum to 1 within {ROW_SUM_TOL}")
    if not isinstance(p, ProbVector):
        p = ProbVector(p)
    if row.size != len(p):
        raise ValueError("row and vector dimensions differ")
    vals = p.entries
    phis = np.asarray(F.phi(vals))
    bounds = np.concatenate([[0.0], np.cumsum(row)])
    lengths = np.diff(bounds)
    integral_f = float(np.sum(lengths * vals))
    integral_phi_f = float(np.sum(lengths * phis))
    discrete_q_i = float(np.dot(row, vals))
    discrete_sum = float(np.dot(row, phis))
    return integral_f, integral_phi_f, discrete_q_i, discrete_sum
