"""Alphabets, words, eventually periodic configurations and exact language
membership for the shift families handled by the package.

Symbols are small integers (their index in an :class:`Alphabet`); words are
tuples of symbols.  Every shift family is an immutable :class:`ShiftSpec`
subclass exposing ``alphabet`` and ``member(word)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

Word = tuple


class SpecError(ValueError):
    """Raised for malformed shift descriptions or words outside an alphabet."""


class HorizonError(SpecError):
    """A lazily validated digit stream failed (or ran out) at a queried index."""


# ---------------------------------------------------------------------------
# Alphabets and words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbol names; symbol ``i`` is ``names[i]``."""

    names: tuple

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise SpecError(f"duplicate symbol names in {self.names!r}")
        if not self.names:
            raise SpecError("alphabet must be nonempty")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.names)}

    def code(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SpecError(f"symbol {name!r} not in alphabet {self.names!r}") from None

    @property
    def single_char(self) -> bool:
        return all(len(n) == 1 for n in self.names)

    def parse(self, text: str) -> Word:
        """Parse a word; one character per symbol when every name is a single
        character, whitespace-separated tokens otherwise."""
        text = text.strip()
        if self.single_char and not any(ch.isspace() for ch in text):
            tokens = list(text)
        else:
            tokens = text.split()
        return tuple(self.code(t) for t in tokens)

    def format(self, word: Iterable[int]) -> str:
        sep = "" if self.single_char else " "
        return sep.join(self.names[s] for s in word)

    def check(self, word: Sequence[int]) -> Word:
        n = len(self.names)
        for s in word:
            if not (isinstance(s, int) and 0 <= s < n):
                raise SpecError(f"symbol {s!r} outside alphabet of size {n}")
        return tuple(word)


def product_alphabet(left: Alphabet, right: Alphabet) -> Alphabet:
    """Pair alphabet; the pair ``(a, b)`` has code ``a * len(right) + b``."""
    return Alphabet(tuple(a + b for a in left.names for b in right.names)
                    if left.single_char and right.single_char
                    else tuple(f"{a},{b}" for a in left.names for b in right.names))


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------


def _primitive_root(word: Word) -> Word:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def _least_rotation(word: Word) -> Word:
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True, eq=False)
class Configuration:
    """Eventually periodic bi-infinite sequence.

    ``core`` occupies indices ``offset .. offset+len(core)-1``; the last symbol
    of ``left_period`` sits at ``offset-1`` and the pattern repeats leftwards;
    ``right_period`` starts at ``offset+len(core)`` and repeats rightwards.
    """

    left_period: Word
    core: Word
    right_period: Word
    offset: int = 0

    def __post_init__(self):
        if not self.left_period or not self.right_period:
            raise SpecError("periods must be nonempty")
        object.__setattr__(self, "left_period", tuple(self.left_period))
        object.__setattr__(self, "core", tuple(self.core))
        object.__setattr__(self, "right_period", tuple(self.right_period))

    @classmethod
    def periodic(cls, word: Sequence[int]) -> "Configuration":
        """``w^Z`` with ``w`` starting at index 0."""
        w = tuple(word)
        return cls(w, (), w, 0)

    @property
    def end(self) -> int:
        return self.offset + len(self.core)

    def __getitem__(self, i: int) -> int:
        if i < self.offset:
            return self.left_period[(i - self.offset) % len(self.left_period)]
        if i >= self.end:
            return self.right_period[(i - self.end) % len(self.right_period)]
        return self.core[i - self.offset]

    def window(self, lo: int, hi: int) -> Word:
        """``x[lo..hi]`` inclusive."""
        if hi < lo - 1:
            raise ValueError("window requires lo <= hi + 1")
        out = []
        start, end = self.offset, self.end
        if lo < start:
            lp = self.left_period
            n = len(lp)
            top = min(hi + 1, start)
            r = (lo - start) % n
            need = top - lo
            reps = (r + need) // n + 1
            out.extend((lp * reps)[r:r + need])
        a, b = max(lo, start), min(hi + 1, end)
        if a < b:
            out.extend(self.core[a - start:b - start])
        if hi >= end:
            rp = self.right_period
            n = len(rp)
            a = max(lo, end)
            r = (a - end) % n
            need = hi + 1 - a
            reps = (r + need) // n + 1
            out.extend((rp * reps)[r:r + need])
        return tuple(out)

    def shift(self, k: int = 1) -> "Configuration":
        """``sigma^k(x)``, i.e. ``y[i] = x[i+k]``."""
        return Configuration(self.left_period, self.core, self.right_period, self.offset - k)

    def _comparison_window(self, other: "Configuration") -> tuple[int, int]:
        lcm = math.lcm(len(self.left_period), len(other.left_period),
                       len(self.right_period), len(other.right_period))
        lo = min(self.offset, other.offset) - lcm
        hi = max(self.end, other.end) + lcm
        return lo, hi

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        lo, hi = self._comparison_window(other)
        return self.window(lo, hi) == other.window(lo, hi)

    def __hash__(self):
        return hash((_least_rotation(_primitive_root(self.left_period)),
                     _least_rotation(_primitive_root(self.right_period))))

    def map(self, fn) -> "Configuration":
        return Configuration(tuple(map(fn, self.left_period)), tuple(map(fn, self.core)),
                             tuple(map(fn, self.right_period)), self.offset)


def window(config: Configuration, lo: int, hi: int) -> Word:
    return config.window(lo, hi)


def shift(config: Configuration, k: int) -> Configuration:
    return config.shift(k)


# ---------------------------------------------------------------------------
# Dyck monoid
# ---------------------------------------------------------------------------

DYCK_ZERO = None  # normal form of the monoid zero

_BRACKETS = ["()", "[]", "{}", "<>"]


def dyck_alphabet(n: int) -> Alphabet:
    """alpha_i has code 2i-2, beta_i has code 2i-1."""
    if n <= len(_BRACKETS):
        names = [ch for pair in _BRACKETS[:n] for ch in pair]
    else:
        names = [f"{kind}{i}" for i in range(1, n + 1) for kind in ("a", "b")]
    return Alphabet(tuple(names))


@dataclass(frozen=True)
class DyckNormalForm:
    """Nonzero Dyck monoid element ``closers . openers`` (beta block, alpha block)."""

    closers: Word
    openers: Word

    @property
    def is_identity(self) -> bool:
        return not self.closers and not self.openers


def dyck_reduce(word: Sequence[int], n: int) -> Optional[DyckNormalForm]:
    """Reduce ``word`` in the Dyck monoid on ``n`` bracket pairs.

    Returns ``None`` for the zero element, else the normal form.
    """
    closers: list[int] = []
    stack: list[int] = []
    for s in word:
        if not (isinstance(s, int) and 0 <= s < 2 * n):
            raise SpecError(f"symbol {s!r} is not a Dyck symbol for n={n}")
        if s % 2 == 0:
            stack.append(s)
        elif stack:
            if stack[-1] + 1 != s:
                return DYCK_ZERO
            stack.pop()
        else:
            closers.append(s)
    return DyckNormalForm(tuple(closers), tuple(stack))


# ---------------------------------------------------------------------------
# Gap sets and digit streams
# ---------------------------------------------------------------------------


class GapSet:
    """Strictly increasing set of naturals with membership and iteration."""

    name: str = "gaps"
    infinite: bool = True

    def __contains__(self, n: int) -> bool:
        raise NotImplementedError

    def __iter__(self) -> Iterator[int]:
        raise NotImplementedError

    @property
    def max(self) -> Optional[int]:
        return None


class PowersOfTwo(GapSet):
    """``{2^i | i >= 0}``."""

    name = "pow2"

    def __contains__(self, n):
        return n > 0 and n & (n - 1) == 0

    def __iter__(self):
        k = 1
        while True:
            yield k
            k *= 2

    def __eq__(self, other):
        return isinstance(other, PowersOfTwo)

    def __hash__(self):
        return hash("pow2")


class FiniteGapSet(GapSet):
    infinite = False

    def __init__(self, values: Iterable[int]):
        vals = sorted(set(int(v) for v in values))
        if not vals or vals[0] < 0:
            raise SpecError("gap set must be a nonempty set of naturals")
        self.values = tuple(vals)
        self.name = ",".join(map(str, vals))

    def __contains__(self, n):
        return n in self.values

    def __iter__(self):
        return iter(self.values)

    @property
    def max(self):
        return self.values[-1]

    def __eq__(self, other):
        return isinstance(other, FiniteGapSet) and other.values == self.values

    def __hash__(self):
        return hash(self.values)


class DigitStream:
    """Lazily validated expansion stream ``x_beta``.

    Subclasses implement ``_raw(i)``.  Every query ``digit(i)`` validates the
    stream up to ``i``: ``x[0] > 0`` and each suffix window is
    lexicographically at most the prefix window of equal length.
    """

    name: str = "digits"

    def __init__(self):
        self._checked = -1
        self._digits: list[int] = []

    def _raw(self, i: int) -> int:
        raise NotImplementedError

    def digit(self, i: int) -> int:
        if i > self._checked:
            self._extend(i)
        return self._digits[i]

    def prefix(self, n: int) -> Word:
        """First ``n`` digits."""
        if n <= 0:
            return ()
        self.digit(n - 1)
        return tuple(self._digits[:n])

    def _extend(self, i: int):
        while len(self._digits) <= i:
            self._digits.append(self._raw(len(self._digits)))
        d = self._digits
        if d[0] <= 0:
            raise HorizonError("x_beta[0] must be positive")
        for h in range(self._checked + 1, i + 1):
            if not 0 <= d[h] <= d[0]:
                raise HorizonError(f"digit {d[h]} at index {h} out of range")
            # suffixes ending at h: compare d[j..h] with d[0..h-j]
            for j in range(1, h + 1):
                if d[j:h + 1] > d[0:h - j + 1]:
                    raise HorizonError(
                        f"suffix starting at {j} exceeds x_beta at horizon {h}")
        self._checked = i

    @property
    def base(self) -> int:
        """Alphabet size ``x_beta[0] + 1``."""
        return self.digit(0) + 1


class LiteralDigits(DigitStream):
    """Finite known prefix; queries beyond it raise :class:`HorizonError`."""

    def __init__(self, digits: str):
        super().__init__()
        text = digits.strip().rstrip(".").rstrip("…")
        if not text or not text.isdigit():
            raise SpecError(f"bad digit string {digits!r}")
        self.values = tuple(int(c) for c in text)
        if self.values[0] == 1 and len(self.values) > 1 and not any(self.values[1:]):
            raise SpecError("digit string reads as 10^inf, which is not an admissible x_beta")
        self.name = text

    def _raw(self, i):
        if i >= len(self.values):
            raise HorizonError(f"digit stream {self.name!r} exhausted at index {i}")
        return self.values[i]


class SampleBetaDigits(DigitStream):
    """``2210200102`` followed by ``prod_{k>=1} 0^k 1`` (``221020010201001...``).

    The continuation has no factor ``22`` after index 0, so every suffix is
    below the stream, and it is not eventually periodic.
    """

    name = "fig3"
    HEAD = (2, 2, 1, 0, 2, 0, 0, 1, 0, 2)

    def __init__(self):
        super().__init__()
        self._tail: list[int] = []
        self._k = 0

    def _raw(self, i):
        if i < len(self.HEAD):
            return self.HEAD[i]
        j = i - len(self.HEAD)
        while len(self._tail) <= j:
            self._k += 1
            self._tail.extend([0] * self._k + [1])
        return self._tail[j]

    def __eq__(self, other):
        return isinstance(other, SampleBetaDigits)

    def __hash__(self):
        return hash("fig3")


# ---------------------------------------------------------------------------
# Shift families
# ---------------------------------------------------------------------------


class ShiftSpec:
    """Base class of shift descriptions."""

    family: str = ""
    alphabet: Alphabet

    def member(self, word: Sequence[int]) -> bool:
        raise NotImplementedError

    def fixed_point(self) -> Optional[int]:
        return None

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def format(self, word) -> str:
        return self.alphabet.format(word)

    def words(self, length: int) -> Iterator[Word]:
        """All member words of ``length``, in lexicographic symbol order."""
        def grow(prefix):
            if len(prefix) == length:
                yield prefix
                return
            for a in self.alphabet:
                w = prefix + (a,)
                if self.member(w):
                    yield from grow(w)
        yield from grow(())

    def to_doc(self) -> dict:
        raise NotImplementedError

    def shorthand(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class SFT(ShiftSpec):
    """Shift of finite type given by a finite forbidden-word list.

    Membership is exact: a word belongs to the language iff it labels a path
    in the essential part of the higher-block (de Bruijn) presentation, so
    words that avoid the forbidden list but cannot be extended to a
    bi-infinite point are rejected.
    """

    alphabet: Alphabet
    forbidden: frozenset
    family = "sft"

    def __post_init__(self):
        fb = frozenset(tuple(w) for w in self.forbidden)
        for w in fb:
            if not w:
                raise SpecError("forbidden words must be nonempty")
            self.alphabet.check(w)
        object.__setattr__(self, "forbidden", fb)

    @property
    def memory(self) -> int:
        return max((len(w) for w in self.forbidden), default=1) - 1

    def _locally_allowed(self, word) -> bool:
        n = len(word)
        for f in self.forbidden:
            k = len(f)
            for i in range(n - k + 1):
                if word[i:i + k] == f:
                    return False
        return True

    @cached_property
    def _essential(self) -> tuple[frozenset, dict]:
        """Essential vertices and successor map of the k-block graph."""
        k = max(self.memory, 1)
        verts = {w for w in itertools.product(range(len(self.alphabet)), repeat=k)
                 if self._locally_allowed(w)}
        succ = {v: {v[1:] + (a,) for a in self.alphabet
                    if v[1:] + (a,) in verts and self._locally_allowed(v + (a,))}
                for v in verts}
        changed = True
        while changed:
            changed = False
            pred_ok = {w for v in verts for w in succ[v] if w in verts}
            keep = {v for v in verts if v in pred_ok and succ[v] & verts}
            if keep != verts:
                verts, changed = keep, True
        return frozenset(verts), {v: frozenset(succ[v] & verts) for v in verts}

    def member(self, word):
        word = self.alphabet.check(word)
        if not self._locally_allowed(word):
            return False
        verts, succ = self._essential
        k = max(self.memory, 1)
        if not verts:
            return False
        if len(word) < k:
            return any(v[k - len(word):] == word or v[:len(word)] == word for v in verts) \
                if word else True
        current = word[:k]
        if current not in verts:
            return False
        for a in word[k:]:
            nxt = current[1:] + (a,)
            if nxt not in succ[current]:
                return False
            current = nxt
        return True

    def fixed_point(self):
        reps = max(self.memory, 1) + 1
        for a in self.alphabet:
            if self.member((a,) * reps):
                return a
        return None

    def to_doc(self):
        return {"family": "sft", "alphabet": list(self.alphabet.names),
                "forbidden": sorted(self.alphabet.format(w) for w in self.forbidden)}

    def shorthand(self):
        if self == golden_mean():
            return "golden"
        return "sft:" + "".join(self.alphabet.names) + ":" + ",".join(
            sorted(self.alphabet.format(w) for w in self.forbidden))

    def __eq__(self, other):
        return isinstance(other, SFT) and (self.alphabet, self.forbidden) == (
            other.alphabet, other.forbidden)

    def __hash__(self):
        return hash((self.alphabet, self.forbidden))


def golden_mean() -> SFT:
    """Binary SFT forbidding ``11``."""
    return SFT(Alphabet(("0", "1")), frozenset({(1, 1)}))


@dataclass(frozen=True)
class Dyck(ShiftSpec):
    n: int
    family = "dyck"

    def __post_init__(self):
        if self.n < 2:
            raise SpecError("Dyck shifts need n >= 2")

    @cached_property
    def alphabet(self):
        return dyck_alphabet(self.n)

    def member(self, word):
        return dyck_reduce(word, self.n) is not DYCK_ZERO

    def fixed_point(self):
        return 0  # alpha_1

    def to_doc(self):
        return {"family": "dyck", "n": self.n}

    def shorthand(self):
        return f"dyck:{self.n}"


@dataclass(frozen=True)
class SGap(ShiftSpec):
    gaps: GapSet
    family = "sgap"

    @cached_property
    def alphabet(self):
        return Alphabet(("0", "1"))

    def member(self, word):
        word = self.alphabet.check(word)
        zeros = [i for i, s in enumerate(word) if s == 0]
        bound = self.gaps.max
        if not zeros:
            return bound is None or len(word) <= bound
        for a, b in zip(zeros, zeros[1:]):
            if b - a - 1 not in self.gaps:
                return False
        if bound is not None:
            if zeros[0] > bound or len(word) - 1 - zeros[-1] > bound:
                return False
        return True

    def fixed_point(self):
        if self.gaps.infinite:
            return 1
        return 0 if 0 in self.gaps else None

    def to_doc(self):
        if isinstance(self.gaps, PowersOfTwo):
            return {"family": "sgap", "gaps": "pow2"}
        return {"family": "sgap", "gaps": list(self.gaps)}

    def shorthand(self):
        return f"sgap:{self.gaps.name}"


@dataclass(frozen=True)
class Beta(ShiftSpec):
    digits: DigitStream
    family = "beta"

    @cached_property
    def alphabet(self):
        return Alphabet(tuple(str(i) for i in range(self.digits.base)))

    def member(self, word):
        word = self.alphabet.check(word)
        n = len(word)
        ref = self.digits.prefix(n)
        return all(word[j:] <= ref[:n - j] for j in range(n))

    def fixed_point(self):
        return 0

    def to_doc(self):
        return {"family": "beta", "digits": self.digits.name}

    def shorthand(self):
        return f"beta:{self.digits.name}"


@dataclass(frozen=True)
class Product(ShiftSpec):
    left: ShiftSpec
    right: ShiftSpec
    family = "product"

    @cached_property
    def alphabet(self):
        return product_alphabet(self.left.alphabet, self.right.alphabet)

    def split(self, word) -> tuple[Word, Word]:
        k = len(self.right.alphabet)
        word = self.alphabet.check(word)
        return tuple(s // k for s in word), tuple(s % k for s in word)

    def pair(self, a: int, b: int) -> int:
        return a * len(self.right.alphabet) + b

    def member(self, word):
        lw, rw = self.split(word)
        return self.left.member(lw) and self.right.member(rw)

    def words(self, length):
        # the language of a product is the set of zipped pairs of factor words
        k = len(self.right.alphabet)
        rights = list(self.right.words(length))
        out = [tuple(a * k + b for a, b in zip(lw, rw))
               for lw in self.left.words(length) for rw in rights]
        out.sort()
        return iter(out)

    def fixed_point(self):
        a, b = self.left.fixed_point(), self.right.fixed_point()
        if a is None or b is None:
            return None
        return self.pair(a, b)

    def to_doc(self):
        return {"family": "product", "left": self.left.to_doc(), "right": self.right.to_doc()}

    def shorthand(self):
        return f"product:({self.left.shorthand()})x({self.right.shorthand()})"


@dataclass(frozen=True)
class Star(ShiftSpec):
    """Star-studded version of ``inner``: the star is the last symbol code."""

    inner: ShiftSpec
    family = "star"

    @cached_property
    def alphabet(self):
        return Alphabet(tuple(self.inner.alphabet.names) + ("*",))

    @property
    def star(self) -> int:
        return len(self.inner.alphabet)

    def member(self, word):
        word = self.alphabet.check(word)
        s = self.star
        for a, b in zip(word, word[1:]):
            if a == s and b == s:
                return False
        return self.inner.member(erase_stars(word, s))

    def fixed_point(self):
        return self.inner.fixed_point()

    def to_doc(self):
        return {"family": "star", "inner": self.inner.to_doc()}

    def shorthand(self):
        return f"star:{self.inner.shorthand()}"


def erase_stars(word: Sequence[int], star: int) -> Word:
    """Image under the substitution deleting ``star`` and fixing every other symbol."""
    return tuple(s for s in word if s != star)


def member(spec: ShiftSpec, word: Sequence[int]) -> bool:
    return spec.member(word)


def fixed_point(spec: ShiftSpec) -> Optional[int]:
    return spec.fixed_point()
