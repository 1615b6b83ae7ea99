"""Set partitions as canonical words (restricted growth strings).

A partition of [n] with blocks B_1/B_2/.../B_k ordered by minima is stored as
the tuple (w_1, ..., w_n) with w_i = j iff i is in B_j.  Letters are 1-based.
Plain tuples of ints are the working representation everywhere; the helpers
here parse, format, validate and transform them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

Word = tuple[int, ...]
WordLike = Union[str, Sequence[int]]

RESTRICTED = "restricted"
UNRESTRICTED = "unrestricted"
MODES = (RESTRICTED, UNRESTRICTED)

NOT_LAYERED = "not_layered"
LAYERED_ONLY = "layered_only"
MONOTONE_INCR = "monotone_layered_incr"
MONOTONE_DECR = "monotone_layered_decr"


class WordParseError(ValueError):
    """Bad word syntax; ``position`` is the 1-based offending character."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"cannot parse word {text!r}: {reason} at position {position}")


def parse_word(text: str) -> Word:
    """Parse ``"1231123"`` or ``"1,2,10,3"`` into a tuple of letters."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        letters = []
        pos = 1
        for field in text.split(","):
            stripped = field.strip()
            if not stripped.isdigit() or int(stripped) < 1:
                raise WordParseError(text, pos, f"expected a positive integer, got {field!r}")
            letters.append(int(stripped))
            pos += len(field) + 1
        return tuple(letters)
    for pos, ch in enumerate(text, start=1):
        if ch not in "123456789":
            raise WordParseError(text, pos, f"unexpected character {ch!r}")
    return tuple(int(ch) for ch in text)


def format_word(w: Sequence[int]) -> str:
    if any(x > 9 for x in w):
        return ",".join(str(x) for x in w)
    return "".join(str(x) for x in w)


def as_word(w: WordLike) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    return tuple(int(x) for x in w)


def validate_canonical(w: WordLike) -> bool:
    """True iff ``w`` is a restricted growth string (the empty word included)."""
    top = 0
    for x in as_word(w):
        if x < 1 or x > top + 1:
            return False
        top = max(top, x)
    return True


def canonize(w: WordLike) -> Word:
    """Relabel letters by order of first occurrence."""
    labels: dict[int, int] = {}
    out = []
    for x in as_word(w):
        if x not in labels:
            labels[x] = len(labels) + 1
        out.append(labels[x])
    return tuple(out)


def num_blocks(p: Sequence[int]) -> int:
    return max(p, default=0)


def from_blocks(blocks: Iterable[Iterable[int]]) -> Word:
    """Canonical word of a block family covering [n]; block order is irrelevant."""
    family = [sorted(set(b)) for b in blocks]
    if any(not b for b in family):
        raise ValueError("blocks must be nonempty")
    n = sum(len(b) for b in family)
    seen = sorted(x for b in family for x in b)
    if seen != list(range(1, n + 1)):
        raise ValueError("blocks must be disjoint and cover 1..n")
    family.sort(key=lambda b: b[0])
    word = [0] * n
    for j, block in enumerate(family, start=1):
        for i in block:
            word[i - 1] = j
    return tuple(word)


def to_blocks(p: WordLike) -> tuple[frozenset[int], ...]:
    p = as_word(p)
    if not validate_canonical(p):
        raise ValueError(f"{format_word(p)} is not a canonical word")
    blocks: list[set[int]] = [set() for _ in range(num_blocks(p))]
    for i, x in enumerate(p, start=1):
        blocks[x - 1].add(i)
    return tuple(frozenset(b) for b in blocks)


def format_blocks(blocks: Iterable[Iterable[int]]) -> str:
    """Slash notation, e.g. ``145/26/37``."""
    parts = []
    for b in blocks:
        items = sorted(b)
        sep = "" if all(x <= 9 for x in items) else ","
        parts.append(sep.join(str(x) for x in items))
    return "/".join(parts)


def is_order_isomorphic(u: WordLike, w: WordLike) -> bool:
    """u_i <= u_j iff w_i <= w_j for every pair of positions."""
    u, w = as_word(u), as_word(w)
    if len(u) != len(w):
        raise ValueError(f"lengths differ: {len(u)} != {len(w)}")
    n = len(u)
    for i in range(n):
        for j in range(n):
            if i != j and (u[i] <= u[j]) != (w[i] <= w[j]):
                return False
    return True


def reverse_canonize(p: WordLike) -> Word:
    return canonize(tuple(reversed(as_word(p))))


def block_structure(p: WordLike) -> tuple[int, ...]:
    """Block sizes as a nondecreasing tuple."""
    return tuple(sorted(Counter(as_word(p)).values()))


def layer_sizes(p: WordLike) -> list[int] | None:
    """Run lengths left to right if ``p`` is layered, else None."""
    p = as_word(p)
    sizes: list[int] = []
    prev = None
    for x in p:
        if x == prev:
            sizes[-1] += 1
        elif prev is None or x == prev + 1:
            sizes.append(1)
        else:
            return None
        prev = x
    return sizes


def classify_layering(p: WordLike) -> str:
    p = as_word(p)
    sizes = layer_sizes(p)
    if sizes is None or (p and p[0] != 1):
        return NOT_LAYERED
    pairs = list(zip(sizes, sizes[1:]))
    if all(a <= b for a, b in pairs):
        return MONOTONE_INCR
    if all(a >= b for a, b in pairs):
        return MONOTONE_DECR
    return LAYERED_ONLY


def alternating(n: int) -> Word:
    """1212... of length n."""
    if n <= 0:
        raise ValueError("alternating word needs n >= 1")
    return tuple(1 + (i % 2) for i in range(n))


@dataclass(frozen=True)
class PatternSet:
    """Distinct canonical patterns of one common length, counted in one mode."""

    patterns: tuple[Word, ...]
    mode: str = UNRESTRICTED

    def __post_init__(self):
        pats = tuple(as_word(p) for p in self.patterns)
        if not pats:
            raise ValueError("pattern set must be nonempty")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if len(set(pats)) != len(pats):
            raise ValueError("patterns must be distinct")
        if len({len(p) for p in pats}) != 1 or not pats[0]:
            raise ValueError("patterns must share one length m >= 1")
        for p in pats:
            if not validate_canonical(p):
                raise ValueError(f"pattern {format_word(p)} is not canonical")
        object.__setattr__(self, "patterns", tuple(sorted(pats)))

    @classmethod
    def of(cls, *patterns: WordLike, mode: str = UNRESTRICTED) -> "PatternSet":
        return cls(tuple(as_word(p) for p in patterns), mode)

    @property
    def m(self) -> int:
        return len(self.patterns[0])

    def with_mode(self, mode: str) -> "PatternSet":
        return PatternSet(self.patterns, mode)

    def key(self) -> str:
        return "+".join(format_word(p) for p in self.patterns)

    def __str__(self) -> str:
        return f"{{{self.key()}}} ({self.mode})"


def as_pattern_set(S, mode: str | None = None) -> PatternSet:
    """Coerce a PatternSet, a single word or an iterable of words."""
    if isinstance(S, PatternSet):
        return S if mode is None or mode == S.mode else S.with_mode(mode)
    mode = mode or UNRESTRICTED
    if isinstance(S, str):
        return PatternSet((parse_word(S),), mode)
    items = list(S)
    if items and isinstance(items[0], int):
        return PatternSet((tuple(items),), mode)
    return PatternSet(tuple(as_word(p) for p in items), mode)
