"""
Braid words, permutations, closure combinatorics, and Markov moves.

Strand indices are 1-based throughout, so letter +i / -i is the positive
or negative half twist on strands (i, i+1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from braidfloer.errors import GeneratorOutOfRange, MalformedWord


@dataclass(frozen=True)
class BraidWord:
    """A braid group element as a signed generator sequence."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise MalformedWord(f"strand count must be positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if a == 0:
                raise MalformedWord("letter 0 is not a braid generator")
            if abs(a) >= self.strands:
                raise GeneratorOutOfRange(
                    f"letter {a} needs at least {abs(a) + 1} strands, word has {self.strands}"
                )

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise MalformedWord("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for s in range(1, self.size + 1):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            j = self(s)
            while j != s:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out


_TOKEN = re.compile(r"s(-?\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str, strands: int) -> BraidWord:
    """
    Parse `s1 s2^-1`-style words or bare signed integer lists.

    The two grammars may not be mixed.  Empty text is the identity braid.
    """
    text = text.strip()
    if not text:
        return BraidWord(strands, ())
    tokens = text.replace(",", " ").split()
    letters: list[int] = []
    styles = set()
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m:
            styles.add("s")
            idx = int(m.group(1))
            if idx <= 0:
                raise MalformedWord(f"generator index must be positive in {tok!r}")
            power = int(m.group(2)) if m.group(2) is not None else 1
            if power == 0:
                continue
            step = 1 if power > 0 else -1
            letters.extend([idx * step] * abs(power))
        else:
            try:
                v = int(tok)
            except ValueError:
                raise MalformedWord(f"unrecognized token {tok!r}")
            styles.add("int")
            if v == 0:
                raise MalformedWord("letter 0 is not a braid generator")
            letters.append(v)
    if len(styles) > 1:
        raise MalformedWord("cannot mix s-notation and bare integers in one word")
    return BraidWord(strands, tuple(letters))


def print_braid(b: BraidWord) -> str:
    """Canonical printer: `s1^-3 s2 s1^2 s2` form with merged runs."""
    if not b.letters:
        return ""
    parts = []
    i = 0
    while i < len(b.letters):
        a = b.letters[i]
        j = i
        while j < len(b.letters) and b.letters[j] == a:
            j += 1
        count = j - i
        power = count if a > 0 else -count
        if power == 1:
            parts.append(f"s{abs(a)}")
        else:
            parts.append(f"s{abs(a)}^{power}")
        i = j
    return " ".join(parts)


def underlying_permutation(b: BraidWord) -> Permutation:
    """
    The permutation of strand positions: position i at the bottom ends at
    position images[i-1] at the top.  Letter signs are irrelevant.
    """
    pos = list(range(1, b.strands + 1))  # pos[p-1] = strand currently at position p
    for a in b.letters:
        i = abs(a)
        pos[i - 1], pos[i] = pos[i], pos[i - 1]
    # strand at final position p is pos[p-1]; strand s ends where pos.index(s)+1
    images = [0] * b.strands
    for p, s in enumerate(pos, start=1):
        images[s - 1] = p
    return Permutation(tuple(images))


def closure_component_count(b: BraidWord) -> int:
    """Number of connected components of the braid closure."""
    return len(underlying_permutation(b).cycles())


def markov_stabilize(b: BraidWord, sign: int) -> BraidWord:
    """Markov stabilization on the last strand: b on k strands -> b * s_k^(+-1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k = b.strands
    return BraidWord(k + 1, tuple(b.letters) + (sign * k,))
