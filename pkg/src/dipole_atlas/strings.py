r"""
Binary strings over the two corner marks, their rotation classes, and
string compositions.

Strings are plain Python ``str`` objects over the alphabet ``"B"`` (black,
a corner in Region 1) and ``"W"`` (white, a corner in Region 2). The empty
string plays the role of `\epsilon`. A rotation class is represented by its
lexicographically least rotation; since ``"B" < "W"`` this puts black first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

BLACK = "B"
WHITE = "W"
ALPHABET = frozenset((BLACK, WHITE))


class Symbol(str, enum.Enum):
    BLACK = BLACK
    WHITE = WHITE

    def __str__(self):
        return self.value


def check_string(word: str) -> str:
    """Validate ``word`` as a binary string and return it."""
    if not isinstance(word, str) or not set(word) <= ALPHABET:
        raise ValueError(f"not a binary string over B/W: {word!r}")
    return word


def symbol_at(word: str, i: int) -> str:
    """The symbol `R_i`, with 1-based indexing."""
    if not 1 <= i <= len(word):
        raise IndexError(f"position {i} outside 1..{len(word)}")
    return word[i - 1]


def counts(word: str) -> tuple[int, int]:
    """Return ``(#WHITE, #BLACK)`` of ``word``."""
    nb = word.count(BLACK)
    return len(word) - nb, nb


def rotations(word: str) -> list[str]:
    """All rotations of ``word`` as a multiset (length ``len(word)``)."""
    return [word[i:] + word[:i] for i in range(len(word))]


@lru_cache(maxsize=None)
def canonical(word: str) -> str:
    """Least rotation of ``word``; the key used for rotation classes."""
    if len(word) < 2:
        return word
    return min(rotations(word))


@dataclass(frozen=True, order=True)
class CyclicString:
    r"""
    Rotation class of a binary string.

    EXAMPLES::

        >>> canonicalize("WBWB")
        CyclicString('BWBW')
        >>> str(canonicalize("WWB"))
        '(BWW)'
    """

    representative: str

    def __post_init__(self):
        check_string(self.representative)
        if canonical(self.representative) != self.representative:
            raise ValueError(f"{self.representative!r} is not a canonical representative")

    @property
    def length(self) -> int:
        return len(self.representative)

    def __len__(self):
        return len(self.representative)

    def __str__(self):
        return f"({self.representative})"

    def __repr__(self):
        return f"CyclicString({self.representative!r})"


def canonicalize(word: str) -> CyclicString:
    return CyclicString(canonical(check_string(word)))


def parse_cyclic(text: str) -> CyclicString:
    """Parse the ``"(BWW)"`` text form; any rotation is accepted."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"cyclic string must be parenthesised: {text!r}")
    return canonicalize(text[1:-1])


def string_compositions(word: str, i: int) -> list[tuple[str, ...]]:
    r"""
    All compositions of ``word`` into exactly ``i`` nonempty parts.

    The order follows the cut positions lexicographically.

    EXAMPLES::

        >>> string_compositions("BWW", 2)
        [('B', 'WW'), ('BW', 'W')]
    """
    check_string(word)
    if not word:
        raise ValueError("the empty string has no compositions")
    if i < 1:
        raise ValueError("number of parts must be positive")
    return list(_compositions(word, i))


@lru_cache(maxsize=4096)
def _compositions(word, i):
    out = []
    for cuts in combinations(range(1, len(word)), i - 1):
        bounds = (0,) + cuts + (len(word),)
        out.append(tuple(word[bounds[t]:bounds[t + 1]] for t in range(i)))
    return tuple(out)


def all_compositions(word: str):
    """Compositions of ``word`` into any number of parts."""
    for i in range(1, len(word) + 1):
        yield from _compositions(word, i)


def iota(comp) -> int:
    """Number of parts after the first whose first symbol is black."""
    return sum(1 for part in comp[1:] if part[0] == BLACK)


def binary_strings(length: int):
    """All binary strings of the given length, black-first lexicographic."""
    if length == 0:
        yield ""
        return
    for head in (BLACK, WHITE):
        for tail in binary_strings(length - 1):
            yield head + tail
