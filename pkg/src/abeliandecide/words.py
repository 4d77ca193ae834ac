"""Words over {1..m}, Parikh vectors, morphisms and fixed-point factors.

Words are plain tuples of ints. Letters are 1-based; there is no symbolic
alphabet layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]
ParikhVector = tuple[int, ...]


def word(letters: Iterable[int] | str) -> Word:
    """Build a word from ints or from a digit string such as ``"1123"``."""
    if isinstance(letters, str):
        return tuple(int(c) for c in letters if not c.isspace())
    return tuple(letters)


def word_str(w: Sequence[int]) -> str:
    """Compact rendering; digits are concatenated when every letter is < 10."""
    if all(0 <= a < 10 for a in w):
        return "".join(map(str, w))
    return " ".join(map(str, w))


def parikh(w: Sequence[int], m: int) -> ParikhVector:
    counts = [0] * m
    for a in w:
        counts[a - 1] += 1
    return tuple(counts)


def vadd(u: Sequence[int], v: Sequence[int]) -> ParikhVector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Sequence[int], v: Sequence[int]) -> ParikhVector:
    return tuple(x - y for x, y in zip(u, v))


def prefix_parikh(w: Sequence[int], m: int) -> list[ParikhVector]:
    """``out[i]`` is the Parikh vector of ``w[:i]``."""
    out = [(0,) * m]
    cur = [0] * m
    for a in w:
        cur[a - 1] += 1
        out.append(tuple(cur))
    return out


@dataclass(frozen=True)
class ValidationReport:
    prolongable: bool
    images_expand: bool
    letters_in_range: bool

    @property
    def ok(self) -> bool:
        return self.prolongable and self.images_expand and self.letters_in_range

    def reasons(self) -> list[str]:
        out = []
        if not self.letters_in_range:
            out.append("letters out of range: some image uses a letter outside 1..m")
        if not self.prolongable:
            out.append("not prolongable: mu(1) must be 1x with x nonempty")
        if not self.images_expand:
            out.append("image length: every image must have length >= 2")
        return out


@dataclass(frozen=True)
class Morphism:
    """A morphism on {1..m}; ``images[a - 1]`` is the image of letter ``a``."""

    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(img) for img in self.images))

    @classmethod
    def from_strings(cls, *images: str) -> "Morphism":
        return cls(tuple(word(s) for s in images))

    @property
    def m(self) -> int:
        return len(self.images)

    def image(self, a: int) -> Word:
        return self.images[a - 1]

    def __call__(self, w: Sequence[int]) -> Word:
        return apply(self, w)

    def __str__(self) -> str:
        return ", ".join(f"{a}->{word_str(img)}" for a, img in enumerate(self.images, 1))


def apply(mu: Morphism, w: Sequence[int]) -> Word:
    out: list[int] = []
    for a in w:
        out.extend(mu.images[a - 1])
    return tuple(out)


def validate(mu: Morphism) -> ValidationReport:
    m = mu.m
    in_range = m >= 1 and all(1 <= a <= m for img in mu.images for a in img)
    prolongable = m >= 1 and len(mu.images[0]) >= 2 and mu.images[0][0] == 1
    expand = m >= 1 and all(len(img) >= 2 for img in mu.images)
    return ValidationReport(prolongable, expand, in_range)


def max_image_length(mu: Morphism) -> int:
    return max(len(img) for img in mu.images)


def _require_valid(mu: Morphism) -> None:
    report = validate(mu)
    if not report.ok:
        raise ValueError(f"invalid morphism {mu}: {'; '.join(report.reasons())}")


def fixed_point_prefix(mu: Morphism, n: int) -> Word:
    """First ``n`` letters of the fixed point of ``mu`` starting with 1."""
    _require_valid(mu)
    w: Word = (1,)
    while len(w) < n:
        w = apply(mu, w)
    return w[:n]


def factors_of_length(mu: Morphism, length: int) -> frozenset[Word]:
    """All factors of exactly ``length`` letters of the fixed point.

    Worklist closure: seed with the prefix of that length, then add every
    length-``length`` factor of ``mu(w)`` for each known factor ``w``. The
    first occurrence of any factor at position p > 0 lies inside the image
    of a factor starting at a position <= p/2, so the closure is complete.
    """
    _require_valid(mu)
    if length < 1:
        raise ValueError("length must be >= 1")
    seed = fixed_point_prefix(mu, length)
    found = {seed}
    todo = [seed]
    while todo:
        img = apply(mu, todo.pop())
        for i in range(len(img) - length + 1):
            u = img[i : i + length]
            if u not in found:
                found.add(u)
                todo.append(u)
    return frozenset(found)


def factors_of(w: Sequence[int], max_len: int) -> set[Word]:
    """Nonempty factors of ``w`` of length at most ``max_len``."""
    w = tuple(w)
    return {
        w[i : i + n]
        for n in range(1, min(max_len, len(w)) + 1)
        for i in range(len(w) - n + 1)
    }


def factor_set(mu: Morphism, max_len: int) -> frozenset[Word]:
    """All nonempty factors of the fixed point of length at most ``max_len``."""
    out: set[Word] = set()
    for u in factors_of_length(mu, max_len):
        out |= factors_of(u, max_len)
    return frozenset(out)
