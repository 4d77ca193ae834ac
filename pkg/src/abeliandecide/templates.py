"""k-templates, the parent relation, ancestor closure and instance search.

A k-template is ``[a_1..a_{k+1}, d_1..d_{k-1}]``. Borders are letters or
:data:`EPSILON` (0); diffs are integer vectors. An instance in a word is a
nonempty factor ``a_1 X_1 a_2 ... a_k X_k a_{k+1}`` with
``parikh(X_{i+1}) - parikh(X_i) == d_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .exactlinalg import RowSolver, frequency_matrix, inverse_norm_estimate, inverse_norm_lt_one
from .words import Morphism, ParikhVector, Word, parikh, prefix_parikh, vadd, vsub, word_str

EPSILON = 0


class ClosureOverflowError(RuntimeError):
    """The ancestor closure grew past its cap."""


@dataclass(frozen=True, order=True)
class Template:
    borders: tuple[int, ...]
    diffs: tuple[ParikhVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "borders", tuple(self.borders))
        object.__setattr__(self, "diffs", tuple(tuple(d) for d in self.diffs))
        if len(self.borders) < 3 or len(self.diffs) != len(self.borders) - 2:
            raise ValueError("a k-template needs k+1 borders and k-1 diffs, k >= 2")
        if len({len(d) for d in self.diffs}) > 1:
            raise ValueError("diff vectors must share one length")

    @property
    def k(self) -> int:
        return len(self.borders) - 1

    @property
    def m(self) -> int:
        return len(self.diffs[0])

    def __str__(self) -> str:
        b = ",".join("e" if a == EPSILON else str(a) for a in self.borders)
        d = ",".join("(" + ",".join(map(str, v)) + ")" for v in self.diffs)
        return f"[{b}; {d}]"


def power_template(k: int, m: int) -> Template:
    """The template whose instances are exactly the Abelian k-powers."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    return Template((EPSILON,) * (k + 1), ((0,) * m,) * (k - 1))


def _border_options(a: int, mu: Morphism, empty_borders: bool):
    """Distinct ``(A, parikh(a'), parikh(a''))`` with ``mu(A) = a' a a''``."""
    m = mu.m
    opts = set()
    if a == EPSILON:
        if empty_borders:
            opts.add((EPSILON, (0,) * m, (0,) * m))
        for b, img in enumerate(mu.images, 1):
            for j in range(len(img) + 1):
                opts.add((b, parikh(img[:j], m), parikh(img[j:], m)))
    else:
        for b, img in enumerate(mu.images, 1):
            for j, x in enumerate(img):
                if x == a:
                    opts.add((b, parikh(img[:j], m), parikh(img[j + 1 :], m)))
    return sorted(opts)


def parents(
    t: Template,
    mu: Morphism,
    M=None,
    *,
    empty_borders: bool = False,
    solver: RowSolver | None = None,
) -> list[Template]:
    """All parents of ``t`` under ``mu``, sorted and duplicate-free.

    A parent ``[A_1..A_{k+1}, D_1..D_{k-1}]`` has ``mu(A_i) = a_i' a_i a_i''``
    and ``D_i M = d_i + psi(a_i'' a_{i+1}') - psi(a_{i+1}'' a_{i+2}')`` with
    ``D_i`` integral. By default an epsilon border in ``t`` is matched only
    against letters ``A_i``; a cut between two images can always be charged
    to one of the neighbouring letters, so ``A_i = epsilon`` is never needed.
    ``empty_borders=True`` also allows ``A_i = epsilon`` (the self-derivation
    of the power template is dropped). Those extra parents can have instances
    whose blocks are all empty and whose images are therefore empty, so the
    decision procedure does not use them.
    """
    if solver is None:
        solver = RowSolver(frequency_matrix(mu) if M is None else M)
    k = t.k
    options = [_border_options(a, mu, empty_borders) for a in t.borders]
    # state: (A prefix, D prefix, psi(a''_{j-1}), psi(a'_j), psi(a''_j));
    # the first prefix and the last suffix never enter an equation.
    states = {((A,), (), None, None, suf) for A, _, suf in options[0]}
    for j in range(1, k + 1):
        last = j == k
        nxt = set()
        for As, Ds, suf_prev, pre_cur, suf_cur in states:
            for A, pre, suf in options[j]:
                if j >= 2:
                    # equation for D_{j-2} uses borders j-2, j-1, j
                    rhs = vsub(vadd(t.diffs[j - 2], vadd(suf_prev, pre_cur)), vadd(suf_cur, pre))
                    D = solver.solve(rhs)
                    if D is None:
                        continue
                    Ds2 = Ds + (D,)
                else:
                    Ds2 = Ds
                nxt.add((As + (A,), Ds2, suf_cur, pre, None if last else suf))
        states = nxt
    out = {Template(As, Ds) for As, Ds, *_ in states}
    if empty_borders and all(a == EPSILON for a in t.borders):
        out.discard(t)
    return sorted(out)


@dataclass(frozen=True)
class AncestorClosure:
    """Breadth-first ancestor closure; ``generations[0]`` is the start template."""

    generations: tuple[tuple[Template, ...], ...]

    @property
    def templates(self) -> tuple[Template, ...]:
        return tuple(sorted(t for gen in self.generations for t in gen))

    def __len__(self) -> int:
        return sum(len(g) for g in self.generations)


def ancestor_closure(
    mu: Morphism,
    k: int,
    cap: int = 10**6,
    *,
    start: Template | None = None,
    empty_borders: bool = False,
) -> AncestorClosure:
    M = frequency_matrix(mu)
    if not inverse_norm_lt_one(M):
        raise ValueError("|M^-1| < 1 fails; the ancestor closure need not be finite")
    solver = RowSolver(M)
    start = power_template(k, mu.m) if start is None else start
    seen = {start}
    generations = [(start,)]
    frontier = [start]
    while frontier:
        new: set[Template] = set()
        for t in frontier:
            for p in parents(t, mu, empty_borders=empty_borders, solver=solver):
                if p not in seen:
                    new.add(p)
        seen |= new
        if len(seen) > cap:
            raise ClosureOverflowError(f"ancestor closure exceeded cap {cap}")
        frontier = sorted(new)
        if frontier:
            generations.append(tuple(frontier))
    return AncestorClosure(tuple(generations))


def ancestors(mu: Morphism, k: int, cap: int = 10**6, **kw) -> tuple[Template, ...]:
    """The least template set containing the power template and closed under parents."""
    return ancestor_closure(mu, k, cap, **kw).templates


def delta(ts: Iterable[Template]) -> int:
    """Floor of the largest Euclidean norm among all diff vectors."""
    best = 0
    seen_any = False
    for t in ts:
        seen_any = True
        for d in t.diffs:
            best = max(best, sum(x * x for x in d))
    if not seen_any:
        raise ValueError("empty template set")
    return math.isqrt(best)


def c_star(mu: Morphism) -> float:
    """Largest norm of ``psi(a''b') - psi(c''e')``; suffixes ``a'', c''`` and prefixes ``b', e'`` of images."""
    m = mu.m
    sufs = {parikh(img[j:], m) for img in mu.images for j in range(len(img) + 1)}
    pres = {parikh(img[:j], m) for img in mu.images for j in range(len(img) + 1)}
    pts = np.array(sorted({vadd(s, p) for s in sufs for p in pres}), dtype=np.int64)
    best = 0
    for i in range(0, len(pts), 512):
        diff = pts[i : i + 512, None, :] - pts[None, :, :]
        best = max(best, int((diff * diff).sum(axis=2).max()))
    return math.sqrt(best)


def radius(c_star_value: float, inv_norm: float) -> float:
    if inv_norm >= 1:
        raise ValueError("radius is unbounded unless |M^-1| < 1")
    return c_star_value / (1.0 - inv_norm)


def radius_bound(mu: Morphism, M=None) -> float:
    """Radius of a ball holding every diff vector of every ancestor of the power template."""
    M = frequency_matrix(mu) if M is None else M
    if not inverse_norm_lt_one(M):
        raise ValueError("radius is unbounded unless |M^-1| < 1")
    return radius(c_star(mu), min(inverse_norm_estimate(M) + 1e-6, 1 - 1e-12))


@dataclass(frozen=True)
class InstanceOccurrence:
    """``border_positions[i]`` is ``None`` for an epsilon border; ``blocks`` are half-open spans."""

    template: Template
    start: int
    end: int
    border_positions: tuple[int | None, ...]
    blocks: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return self.end - self.start

    def verify(self, w: Sequence[int]) -> bool:
        t = self.template
        if self.length < 1 or not (0 <= self.start <= self.end <= len(w)):
            return False
        for a, p in zip(t.borders, self.border_positions):
            if (a == EPSILON) != (p is None) or (p is not None and w[p] != a):
                return False
        ps = [parikh(w[s:e], t.m) for s, e in self.blocks]
        return all(vsub(ps[i + 1], ps[i]) == d for i, d in enumerate(t.diffs))

    def render(self, w: Sequence[int]) -> str:
        parts = []
        for i, (s, e) in enumerate(self.blocks):
            p = self.border_positions[i]
            if p is not None:
                parts.append(f"<{w[p]}>")
            parts.append(word_str(w[s:e]) or "()")
        p = self.border_positions[-1]
        if p is not None:
            parts.append(f"<{w[p]}>")
        return " ".join(parts)


@dataclass(frozen=True)
class _Compiled:
    borders: tuple[int, ...]
    offsets: tuple[int, ...]  # |X_i| - |X_1|
    diffs: tuple[ParikhVector, ...]
    lo: int  # least |X_1| keeping every block length >= 0
    fixed: int  # instance length minus k * |X_1|


@lru_cache(maxsize=None)
def _compile(t: Template) -> _Compiled:
    offsets = [0]
    for d in t.diffs:
        offsets.append(offsets[-1] + sum(d))
    nb = sum(1 for a in t.borders if a != EPSILON)
    return _Compiled(t.borders, tuple(offsets), t.diffs, max(0, -min(offsets)), nb + sum(offsets))


def _match(w, P, c: _Compiled, t: Template, s: int, l1: int):
    k = len(c.offsets)
    pos = s
    bpos = []
    blocks = []
    for i in range(k):
        a = c.borders[i]
        if a != EPSILON:
            if w[pos] != a:
                return None
            bpos.append(pos)
            pos += 1
        else:
            bpos.append(None)
        e = pos + l1 + c.offsets[i]
        blocks.append((pos, e))
        pos = e
    a = c.borders[k]
    if a != EPSILON:
        if w[pos] != a:
            return None
        bpos.append(pos)
        pos += 1
    else:
        bpos.append(None)
    if pos == s:
        return None
    for i, d in enumerate(c.diffs):
        (s0, e0), (s1, e1) = blocks[i], blocks[i + 1]
        P0s, P0e, P1s, P1e = P[s0], P[e0], P[s1], P[e1]
        for j in range(len(d)):
            if P1e[j] - P1s[j] - P0e[j] + P0s[j] != d[j]:
                return None
    return InstanceOccurrence(t, s, pos, tuple(bpos), tuple(blocks))


def find_instance_at(w: Sequence[int], t: Template, start: int, P=None) -> InstanceOccurrence | None:
    """Least-``|X_1|`` instance of ``t`` beginning exactly at ``start``."""
    c = _compile(t)
    if P is None:
        P = prefix_parikh(w, t.m)
    room = len(w) - start
    hi = (room - c.fixed) // (t.k)
    for l1 in range(c.lo, hi + 1):
        occ = _match(w, P, c, t, start, l1)
        if occ is not None:
            return occ
    return None


def find_instance(w: Sequence[int], t: Template) -> InstanceOccurrence | None:
    """The instance of ``t`` in ``w`` with least ``(start, |X_1|)``, if any."""
    w = tuple(w)
    P = prefix_parikh(w, t.m)
    for s in range(len(w)):
        occ = find_instance_at(w, t, s, P)
        if occ is not None:
            return occ
    return None


def realizes(w: Sequence[int], t: Template) -> bool:
    return find_instance(w, t) is not None

