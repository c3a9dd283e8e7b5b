"""Words over an alphabet, degree-lex monomial orders, and free-algebra polynomials.

Words are plain tuples of generator indices (the empty tuple is the unit
monomial).  A polynomial is a canonical dict word -> scalar with no zero
coefficients.  Tensor products of algebras live over a combined alphabet whose
letters remember which factor they came from, so one rewriting engine serves
the plain algebras and all their tensor powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

__all__ = [
    "AlphabetError",
    "Alphabet",
    "MonomialOrder",
    "NCPolynomial",
    "tensor_alphabet",
    "tensor_embed",
    "split_tensor_word",
]

Word = tuple  # tuple[int, ...]
EMPTY_WORD: Word = ()


class AlphabetError(ValueError):
    """Mismatched or malformed alphabets."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of generator names, optionally tagged tensor copies.

    For a tensor alphabet, `factors` holds the constituent alphabets and
    `factor_of[i]` / `local_index[i]` locate letter i inside its copy
    (factors are numbered from 1).
    """

    names: tuple
    factors: tuple = ()
    factor_of: tuple = ()
    local_index: tuple = ()

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise AlphabetError("generator names must be unique: %r" % (self.names,))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlphabetError("unknown generator %r" % name) from None

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def word_str(self, w: Word) -> str:
        return "*".join(self.names[i] for i in w) if w else "1"


def tensor_alphabet(factors: Sequence[Alphabet], sep: str = "_") -> Alphabet:
    """Disjoint union of tagged copies; copy k letters are named name_k."""
    names = []
    factor_of = []
    local = []
    for k, alph in enumerate(factors, start=1):
        for i, n in enumerate(alph.names):
            names.append("%s%s%d" % (n, sep, k))
            factor_of.append(k)
            local.append(i)
    return Alphabet(
        names=tuple(names),
        factors=tuple(factors),
        factor_of=tuple(factor_of),
        local_index=tuple(local),
    )


class MonomialOrder:
    """Degree-lexicographic order induced by a precedence list (largest first).

    Shorter words are smaller; words of equal length compare letter-wise,
    where a letter earlier in the precedence list is the larger one.  This is
    total, multiplicative and well-founded per degree.
    """

    __slots__ = ("alphabet", "precedence", "rank")

    def __init__(self, alphabet: Alphabet, precedence: Sequence[str] | None = None):
        self.alphabet = alphabet
        if precedence is None:
            precedence = alphabet.names
        precedence = tuple(precedence)
        if sorted(precedence) != sorted(alphabet.names):
            raise AlphabetError(
                "precedence %r is not a permutation of the alphabet" % (precedence,)
            )
        self.precedence = precedence
        rank = [0] * alphabet.size
        for pos, name in enumerate(precedence):
            rank[alphabet.index(name)] = pos
        self.rank = tuple(rank)

    def sort_key(self, w: Word):
        """Key so that bigger words get bigger keys (max() picks the leader)."""
        rank = self.rank
        return (len(w), tuple(-rank[i] for i in w))

    def compare(self, u: Word, v: Word) -> int:
        """-1, 0, 1 for u < v, u = v, u > v."""
        if len(u) != len(v):
            return -1 if len(u) < len(v) else 1
        rank = self.rank
        for a, b in zip(u, v):
            if a != b:
                return 1 if rank[a] < rank[b] else -1
        return 0


class NCPolynomial:
    """A finite scalar combination of words, canonical (no zero coefficients)."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet: Alphabet, field, terms=None):
        self.alphabet = alphabet
        self.field = field
        self.terms = terms if terms is not None else {}

    # construction ----------------------------------------------------------

    @staticmethod
    def zero(alphabet, field) -> "NCPolynomial":
        return NCPolynomial(alphabet, field, {})

    @staticmethod
    def unit(alphabet, field, coeff=None) -> "NCPolynomial":
        c = field.one if coeff is None else coeff
        return NCPolynomial(alphabet, field, {EMPTY_WORD: c} if c else {})

    @staticmethod
    def from_word(alphabet, field, w: Word, coeff=None) -> "NCPolynomial":
        c = field.one if coeff is None else coeff
        return NCPolynomial(alphabet, field, {tuple(w): c} if c else {})

    def generator(self, name: str) -> "NCPolynomial":
        return NCPolynomial.from_word(self.alphabet, self.field, (self.alphabet.index(name),))

    # predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit_multiple(self) -> bool:
        return not self.terms or set(self.terms) == {EMPTY_WORD}

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def support_letters(self) -> set:
        out = set()
        for w in self.terms:
            out.update(w)
        return out

    def _check(self, other: "NCPolynomial"):
        if self.alphabet is not other.alphabet and self.alphabet.names != other.alphabet.names:
            raise AlphabetError("polynomials over different alphabets")

    # arithmetic ------------------------------------------------------------

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s:
                terms[w] = s
            elif w in terms:
                del terms[w]
        return NCPolynomial(self.alphabet, self.field, terms)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial(self.alphabet, self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            return self.scale(other)
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = terms.get(w)
                s = c if s is None else s + c
                if s:
                    terms[w] = s
                elif w in terms:
                    del terms[w]
        return NCPolynomial(self.alphabet, self.field, terms)

    def __rmul__(self, other) -> "NCPolynomial":
        return self.scale(other)

    def scale(self, c) -> "NCPolynomial":
        if not c:
            return NCPolynomial(self.alphabet, self.field, {})
        return NCPolynomial(self.alphabet, self.field, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.alphabet.names == other.alphabet.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet.names, frozenset(self.terms.items())))

    def coefficient(self, w: Word):
        return self.terms.get(tuple(w), self.field.zero)

    def leading_word(self, order: MonomialOrder) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self.terms, key=order.sort_key)

    # presentation ----------------------------------------------------------

    def format(self, order: MonomialOrder | None = None) -> str:
        """Canonical text: terms descending, coefficients in front."""
        if not self.terms:
            return "0"
        words = sorted(
            self.terms,
            key=(order.sort_key if order else (lambda w: (len(w), w))),
            reverse=True,
        )
        out = []
        for w in words:
            sign, text, atomic = self.field.format_coefficient(self.terms[w])
            if not atomic:
                text = "(%s)" % text
            if w:
                body = self.alphabet.word_str(w) if text == "1" else "%s*%s" % (text, self.alphabet.word_str(w))
            else:
                body = text
            if not out:
                out.append(body if sign > 0 else "-" + body)
            else:
                out.append((" + " if sign > 0 else " - ") + body)
        return "".join(out)

    def __repr__(self):
        return "NCPolynomial(%s)" % self.format()


def tensor_embed(f: NCPolynomial, factor: int, target: Alphabet) -> NCPolynomial:
    """Re-tag f's letters into copy `factor` of the tensor alphabet.

    Simple tensors f (x) g arise as tensor_embed(f, 1) * tensor_embed(g, 2);
    higher tensor powers use the same map per factor.
    """
    if not target.factors:
        raise AlphabetError("target is not a tensor alphabet")
    if factor < 1 or factor > len(target.factors):
        raise AlphabetError("tensor factor %d out of range" % factor)
    if target.factors[factor - 1].names != f.alphabet.names:
        raise AlphabetError(
            "factor %d of the target does not match the source alphabet" % factor
        )
    offset = 0
    for k in range(factor - 1):
        offset += target.factors[k].size
    terms = {tuple(i + offset for i in w): c for w, c in f.terms.items()}
    return NCPolynomial(target, f.field, terms)


def split_tensor_word(w: Word, target: Alphabet):
    """Decompose a sorted tensor word into its per-factor local words.

    Only valid on words whose letters appear factor-block by factor-block
    (the normal form in every tensor presentation).
    """
    k = len(target.factors)
    parts = [[] for _ in range(k)]
    last = 0
    for i in w:
        f = target.factor_of[i]
        if f < last:
            raise AlphabetError("word is not factor-sorted: %r" % (w,))
        last = f
        parts[f - 1].append(target.local_index[i])
    return tuple(tuple(x) for x in parts)
