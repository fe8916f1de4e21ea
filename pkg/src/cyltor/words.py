"""Free-group words, the rational group ring, and Fox's free calculus.

Generators of a rank-n free group are numbered 1..n.  The plain-text form of
a word is whitespace-separated tokens ``g3`` / ``G3``, uppercase meaning the
inverse letter; ``1`` denotes the empty word.  Presentations use the same
syntax over named generators, with ``name.swapcase()`` as the inverse token.

A :class:`RingElement` is a finite rational combination of words.  Together
with the bar anti-involution and the Fox derivatives this is everything the
torsion matrix construction consumes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError

__all__ = [
    "GroupWord",
    "RingElement",
    "bar",
    "fox_derivative",
    "fox_matrix",
    "parse_word",
    "format_word",
]


class GroupWord:
    """A freely reduced word in a free group.

    Letters are pairs ``(i, s)`` with generator index ``i >= 1`` and sign
    ``s in {+1, -1}``.  Construction cancels adjacent inverse pairs with a
    stack pass, so equal group elements carry identical letter tuples.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        stack: list[tuple[int, int]] = []
        for i, s in letters:
            if i < 1:
                raise ValueError(f"generator index must be >= 1, got {i}")
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {s}")
            if stack and stack[-1][0] == i and stack[-1][1] == -s:
                stack.pop()
            else:
                stack.append((i, s))
        self.letters = tuple(stack)

    @classmethod
    def _reduced(cls, letters: tuple[tuple[int, int], ...]) -> "GroupWord":
        w = cls.__new__(cls)
        w.letters = letters
        return w

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls._reduced(())

    @classmethod
    def generator(cls, i: int, sign: int = 1) -> "GroupWord":
        return cls(((i, sign),))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if not isinstance(other, GroupWord):
            return NotImplemented
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord._reduced(tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "GroupWord":
        if n == 0:
            return GroupWord.identity()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def commutator(self, other: "GroupWord") -> "GroupWord":
        return self * other * self.inverse() * other.inverse()

    def max_index(self) -> int:
        return max((i for i, _ in self.letters), default=0)

    def exponent_sum(self, i: int) -> int:
        return sum(s for j, s in self.letters if j == i)

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"GroupWord({format_word(self)!r})"


def parse_word(text: str, names: Sequence[str] | None = None) -> GroupWord:
    """Parse the whitespace-separated token syntax.

    With ``names`` given, each token must be a declared (lowercase) name or
    its swapcase inverse and maps to that generator's 1-based position.
    """
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        if names is not None:
            if tok in names:
                letters.append((names.index(tok) + 1, 1))
            elif tok.swapcase() in names:
                letters.append((names.index(tok.swapcase()) + 1, -1))
            else:
                raise ParseError(f"unknown generator token {tok!r}")
        else:
            sign = 1 if tok[:1] == "g" else -1 if tok[:1] == "G" else 0
            if sign == 0 or not tok[1:].isdigit() or int(tok[1:]) < 1:
                raise ParseError(f"bad word token {tok!r} (expected gN or GN)")
            letters.append((int(tok[1:]), sign))
    return GroupWord(letters)


def format_word(w: GroupWord, names: Sequence[str] | None = None) -> str:
    if not w.letters:
        return "1"
    toks = []
    for i, s in w.letters:
        if names is not None:
            name = names[i - 1]
            toks.append(name if s > 0 else name.swapcase())
        else:
            toks.append(f"g{i}" if s > 0 else f"G{i}")
    return " ".join(toks)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class RingElement:
    """Finite rational linear combination of free-group words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[GroupWord, Fraction] | None = None):
        self.terms: dict[GroupWord, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = _as_fraction(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def zero(cls) -> "RingElement":
        return cls()

    @classmethod
    def one(cls) -> "RingElement":
        return cls({GroupWord.identity(): Fraction(1)})

    @classmethod
    def from_word(cls, w: GroupWord, c=1) -> "RingElement":
        return cls({w: _as_fraction(c)})

    def __add__(self, other: "RingElement") -> "RingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Fraction(0)) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        r = RingElement()
        r.terms = out
        return r

    def __neg__(self) -> "RingElement":
        r = RingElement()
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            r = RingElement()
            if c:
                r.terms = {w: v * c for w, v in self.terms.items()}
            return r
        if isinstance(other, GroupWord):
            other = RingElement.from_word(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        out: dict[GroupWord, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                s = out.get(w, Fraction(0)) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        r = RingElement()
        r.terms = out
        return r

    def __rmul__(self, other) -> "RingElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, GroupWord):
            return RingElement.from_word(other) * self
        return NotImplemented

    def augmentation(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def bar(self) -> "RingElement":
        """The anti-involution induced by inverting every word."""
        out: dict[GroupWord, Fraction] = {}
        for w, c in self.terms.items():
            wi = w.inverse()
            s = out.get(wi, Fraction(0)) + c
            if s:
                out[wi] = s
            else:
                out.pop(wi, None)
        r = RingElement()
        r.terms = out
        return r

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, RingElement) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"RingElement({self.to_str()!r})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w.letters), w.letters)):
            c = self.terms[w]
            body = f"{abs(c)}*{format_word(w, names)}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str, names: Sequence[str] | None = None) -> "RingElement":
        """Inverse of :meth:`to_str`: ``p/q*word`` terms joined by +/-."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        out = cls.zero()
        sign = 1
        # terms are separated by standalone +/- tokens; the leading sign may
        # be glued to the first coefficient
        for chunk in text.replace("+ ", "+\x00").replace("- ", "-\x00").split("\x00"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if chunk in ("+", "-"):
                sign = 1 if chunk == "+" else -1
                continue
            if chunk.endswith("+") or chunk.endswith("-"):
                nxt = 1 if chunk.endswith("+") else -1
                chunk = chunk[:-1].strip()
            else:
                nxt = 1
            if "*" not in chunk:
                raise ParseError(f"bad ring-element term {chunk!r}")
            coeff, word = chunk.split("*", 1)
            try:
                c = Fraction(coeff)
            except ValueError as exc:
                raise ParseError(f"bad coefficient {coeff!r}") from exc
            out = out + cls.from_word(parse_word(word, names), sign * c)
            sign = nxt
        return out


def bar(v: RingElement) -> RingElement:
    """Module-level alias for :meth:`RingElement.bar`."""
    return v.bar()


def fox_derivative(w, i: int) -> RingElement:
    """Fox free derivative with respect to generator ``i``.

    Satisfies d(uv) = du + u.dv, d(g_i) = 1, d(g_j) = 0 for j != i and
    d(g_i^-1) = -g_i^-1; extended linearly to ring elements.
    """
    if isinstance(w, RingElement):
        out = RingElement.zero()
        for word, c in w.terms.items():
            out = out + fox_derivative(word, i) * c
        return out
    if not isinstance(w, GroupWord):
        raise TypeError("fox_derivative expects a GroupWord or RingElement")
    terms: dict[GroupWord, Fraction] = {}
    prefix = GroupWord.identity()
    for j, s in w.letters:
        if j == i:
            key = prefix if s > 0 else prefix * GroupWord.generator(i, -1)
            c = Fraction(1 if s > 0 else -1)
            tot = terms.get(key, Fraction(0)) + c
            if tot:
                terms[key] = tot
            else:
                terms.pop(key, None)
        prefix = prefix * GroupWord.generator(j, s)
    return RingElement(terms)


def fox_matrix(relators: Sequence[GroupWord], gens: Sequence[int]) -> list[list[RingElement]]:
    """Barred Fox matrix: entry (i, j) is bar(d r_j / d gens[i])."""
    return [[fox_derivative(r, i).bar() for r in relators] for i in gens]
