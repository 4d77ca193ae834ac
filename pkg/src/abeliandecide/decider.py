"""End-to-end decision: is the fixed point of ``mu`` Abelian k-power free?"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .exactlinalg import det, frequency_matrix, inverse_norm_estimate, sylvester_minors
from .oracle import PowerOccurrence, find_abelian_power
from .templates import (
    EPSILON,
    InstanceOccurrence,
    ancestor_closure,
    delta,
    find_instance_at,
)
from .words import Morphism, Word, factors_of_length, fixed_point_prefix, max_image_length, prefix_parikh, validate


class Status(enum.Enum):
    FREE = "free"
    CONTAINS = "contains"
    PRECONDITION_FAILED = "precondition-failed"

    @property
    def exit_code(self) -> int:
        return {"free": 0, "contains": 1, "precondition-failed": 2}[self.value]


@dataclass(frozen=True)
class DecideConfig:
    max_closure: int = 10**6
    bound: str = "derived"  # or "short"
    max_witness_prefix: int = 2**16
    scan_margin: int = 0  # added to the scan length; any margin >= 0 is sound


@dataclass
class Stats:
    N: int | None = None
    det: int | None = None
    sylvester_minors: tuple[int, ...] | None = None
    norm_estimate: float | None = None
    ancestor_count: int | None = None
    generation_sizes: tuple[int, ...] | None = None
    delta: int | None = None
    derived_bound: int | None = None
    short_bound: int | None = None
    scan_bound: int | None = None
    factors_scanned: int | None = None


@dataclass
class Verdict:
    status: Status
    stats: Stats = field(default_factory=Stats)
    reasons: list[str] = field(default_factory=list)
    witness: PowerOccurrence | None = None
    witness_word: Word | None = None
    instance: InstanceOccurrence | None = None
    instance_factor: Word | None = None


def length_bound(N: int, k: int, m: int, delta: int) -> int:
    """Longest instance that can have a block of length <= N-2.

    k+1 borders, one short block of at most N-2 letters, and k-1 blocks of at
    most N-2+mk*delta letters each. Longer instances have a strictly shorter
    parent instance, so a shortest ancestor instance is at most this long.
    """
    return (k + 1) + (N - 2) + (k - 1) * (N - 2 + m * k * delta)


def short_length_bound(N: int, k: int, m: int, delta: int) -> int:
    """The printed variant ``N+k-2+(k-2)(N-2+mk*delta)``; kept for comparison."""
    return N + k - 2 + (k - 2) * (N - 2 + m * k * delta)


def check_preconditions(mu: Morphism, stats: Stats | None = None) -> list[str]:
    """Every failed precondition, as human-readable reasons."""
    stats = Stats() if stats is None else stats
    report = validate(mu)
    reasons = report.reasons()
    if not report.letters_in_range:
        return reasons
    M = frequency_matrix(mu)
    stats.N = max_image_length(mu)
    stats.det = det(M)
    if stats.det == 0:
        reasons.append("singular frequency matrix (det = 0)")
        return reasons
    stats.sylvester_minors = sylvester_minors(M)
    stats.norm_estimate = inverse_norm_estimate(M)
    if not all(x > 0 for x in stats.sylvester_minors):
        reasons.append(
            f"norm: |M^-1| < 1 fails; minors of M^T M - I are {stats.sylvester_minors}, not all positive"
        )
    return reasons


def extract_witness(mu: Morphism, k: int, max_prefix: int = 2**16) -> tuple[PowerOccurrence, Word]:
    """First Abelian k-power of the fixed point, found by doubling a prefix."""
    n = 2**10
    while True:
        w = fixed_point_prefix(mu, n)
        occ = find_abelian_power(w, k)
        if occ is not None:
            return occ, w[: occ.end]
        if n >= max_prefix:
            raise RuntimeError(f"no Abelian {k}-power in a prefix of length {n}")
        n = min(2 * n, max_prefix)


def scan_reference(factors, templates) -> tuple[Word, InstanceOccurrence] | None:
    """First ``(factor, instance)`` with an instance anchored at position 0.

    Every factor is a prefix of a longer factor of the infinite word, so
    instances at start 0 of the length-B factors cover all instances of
    length <= B anywhere in the fixed point.
    """
    for u in factors:
        P = prefix_parikh(u, templates[0].m)
        for t in templates:
            occ = find_instance_at(u, t, 0, P)
            if occ is not None:
                return u, occ
    return None


def _anchored_hits(F, P, t) -> np.ndarray:
    """Boolean mask over factors: does ``t`` have an instance at position 0?

    All factors share one length, so for a given ``|X_1|`` the border and
    block positions are the same in every factor; test all factors and all
    ``|X_1|`` at once.
    """
    nf, n = F.shape
    k = t.k
    offsets = np.cumsum([0] + [sum(d) for d in t.diffs])
    nb = sum(1 for a in t.borders if a != EPSILON)
    lo = max(0, -int(offsets.min()))
    hi = (n - nb - int(offsets.sum())) // k
    if hi < lo:
        return np.zeros(nf, dtype=bool)
    L = np.arange(lo, hi + 1)
    ok = np.ones((nf, len(L)), dtype=bool)
    pos = np.zeros(len(L), dtype=np.int64)
    spans = []
    for i in range(k + 1):
        a = t.borders[i]
        if a != EPSILON:
            ok &= F[:, pos] == a
            pos = pos + 1
        if i < k:
            end = pos + L + offsets[i]
            spans.append((pos, end))
            pos = end
    if nb == 0 and not offsets.any():
        ok[:, L == 0] = False  # empty instance
    for i, d in enumerate(t.diffs):
        (s0, e0), (s1, e1) = spans[i], spans[i + 1]
        diff = P[:, e1] - P[:, s1] - P[:, e0] + P[:, s0]
        ok &= np.all(diff == np.asarray(d), axis=2)
    return ok.any(axis=1)


def scan(factors, templates) -> tuple[Word, InstanceOccurrence] | None:
    """Same result as :func:`scan_reference`, vectorised over factors."""
    if not factors:
        return None
    m = templates[0].m
    F = np.array(factors, dtype=np.int64)
    onehot = (F[:, :, None] == np.arange(1, m + 1)).astype(np.int64)
    P = np.concatenate([np.zeros((len(F), 1, m), dtype=np.int64), np.cumsum(onehot, axis=1)], axis=1)
    best = None  # (factor index, template index)
    for ti, t in enumerate(templates):
        hits = np.flatnonzero(_anchored_hits(F, P, t))
        if hits.size and (best is None or hits[0] < best[0]):
            best = (int(hits[0]), ti)
    if best is None:
        return None
    u = factors[best[0]]
    P_u = prefix_parikh(u, m)
    for t in templates:
        occ = find_instance_at(u, t, 0, P_u)
        if occ is not None:
            return u, occ
    raise AssertionError("vectorised and reference scans disagree")


def decide(mu: Morphism, k: int, config: DecideConfig | None = None) -> Verdict:
    config = DecideConfig() if config is None else config
    if k < 2:
        raise ValueError("k must be >= 2")
    if config.bound not in ("derived", "short"):
        raise ValueError(f"unknown bound {config.bound!r}")
    stats = Stats()
    reasons = check_preconditions(mu, stats)
    if reasons:
        return Verdict(Status.PRECONDITION_FAILED, stats, reasons)

    # Letter-only parent borders: allowing empty ones admits instances with
    # every block empty, whose images are empty and prove nothing.
    closure = ancestor_closure(mu, k, config.max_closure)
    ts = closure.templates
    stats.ancestor_count = len(ts)
    stats.generation_sizes = tuple(len(g) for g in closure.generations)
    stats.delta = delta(ts)
    stats.derived_bound = length_bound(stats.N, k, mu.m, stats.delta)
    stats.short_bound = short_length_bound(stats.N, k, mu.m, stats.delta)
    stats.scan_bound = (stats.derived_bound if config.bound == "derived" else stats.short_bound) + config.scan_margin

    factors = sorted(factors_of_length(mu, stats.scan_bound))
    stats.factors_scanned = len(factors)
    hit = scan(factors, ts)
    if hit is None:
        return Verdict(Status.FREE, stats)
    occ, prefix = extract_witness(mu, k, config.max_witness_prefix)
    return Verdict(
        Status.CONTAINS, stats, witness=occ, witness_word=prefix,
        instance=hit[1], instance_factor=hit[0],
    )
