"""Normal forms modulo oriented relations, diamond-lemma checks, bounded completion.

A rewrite system is a finite set of oriented rules lhs -> rhs where lhs is a
single word, the rhs is a polynomial all of whose words are strictly smaller
than lhs, and the lhs coefficient has been normalized away (always possible
over a field).  Systems are interreduced at construction: no lhs contains
another lhs as a factor, and every rhs is in normal form with respect to the
other rules.

Reduction replaces one occurrence of a lhs inside a word by the rhs.  Because
the order is multiplicative and well-founded per degree, reduction terminates;
uniqueness of normal forms is exactly local confluence, which
`check_local_confluence` tests by resolving every overlap and inclusion
ambiguity up to a degree bound.  `complete` turns failing ambiguities into new
rules (bounded Knuth-Bendix), flagging any derived relation supported on a
designated coinvariant subalphabet, which is the collapse detector used by the
swapped-parameter regression.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .ncpoly import Alphabet, MonomialOrder, NCPolynomial, Word

__all__ = [
    "RuleAdmissionError",
    "RewriteRule",
    "RewriteSystem",
    "Ambiguity",
    "ConfluenceReport",
    "CompletionResult",
    "normal_form",
    "reduce_randomized",
    "enumerate_ambiguities",
    "check_local_confluence",
    "complete",
]


class RuleAdmissionError(ValueError):
    """A relation cannot be oriented into an admissible rule."""


@dataclass(frozen=True)
class RewriteRule:
    """Oriented rule lhs -> rhs with unit leading coefficient."""

    lhs: Word
    rhs: tuple  # tuple[(Word, scalar)] frozen for hashability
    provenance: str = "declared"

    def rhs_terms(self) -> dict:
        return dict(self.rhs)

    def as_polynomial(self, alphabet, field) -> NCPolynomial:
        terms = {self.lhs: field.one}
        for w, c in self.rhs:
            terms[w] = terms.get(w, field.zero) - c
            if not terms[w]:
                del terms[w]
        return NCPolynomial(alphabet, field, terms)


@dataclass(frozen=True)
class Ambiguity:
    """A superposition word admitting two one-step reductions.

    Overlap: a proper suffix of left_rule's lhs equals a prefix of
    right_rule's lhs.  Inclusion: right_rule's lhs is a proper factor of
    left_rule's lhs.  `offset` locates right_rule's lhs inside the word.
    """

    kind: str  # "overlap" | "inclusion"
    left_rule: int
    right_rule: int
    word: Word
    offset: int


@dataclass
class ConfluenceReport:
    passed: bool
    ambiguity_count: int
    failures: list  # [(Ambiguity, nf_left, nf_right)]

    def witness(self):
        if self.passed:
            return None
        amb, nf1, nf2 = self.failures[0]
        return {"word": amb.word, "left_nf": nf1, "right_nf": nf2}


@dataclass
class CompletionResult:
    system: "RewriteSystem"
    derived: list  # derived RewriteRules present in the final system
    contamination: list  # derived rules whose lhs lives in the coinvariant letters
    resolved: bool  # no failing ambiguity remained below the bound
    unit_collapse: bool = False  # a constant relation was derived (algebra is 0)


class RewriteSystem:
    """An immutable, interreduced, indexed set of rewrite rules."""

    def __init__(self, alphabet: Alphabet, order: MonomialOrder, field, rules: Sequence[RewriteRule]):
        self.alphabet = alphabet
        self.order = order
        self.field = field
        self.rules = tuple(rules)
        self.max_lhs_len = max((len(r.lhs) for r in rules), default=0)
        index = {}
        for idx, r in enumerate(self.rules):
            index.setdefault(r.lhs[0], []).append((r.lhs, idx))
        for bucket in index.values():
            bucket.sort(key=lambda e: (-len(e[0]), e[0]))
        self._index = index

    # construction ----------------------------------------------------------

    @staticmethod
    def orient(poly: NCPolynomial, order: MonomialOrder, provenance="declared") -> RewriteRule:
        """Divide by the leading coefficient and point the leading word at the rest."""
        if poly.is_zero():
            raise RuleAdmissionError("cannot orient the zero relation")
        lead = poly.leading_word(order)
        if lead == ():
            raise RuleAdmissionError("relation reduces to a nonzero constant")
        lc = poly.terms[lead]
        rhs = []
        for w, c in poly.terms.items():
            if w == lead:
                continue
            if len(w) > len(lead):
                raise RuleAdmissionError("rule is not degree-non-increasing")
            rhs.append((w, -c / lc))
        rhs.sort(key=lambda t: (len(t[0]), t[0]))
        return RewriteRule(lhs=lead, rhs=tuple(rhs), provenance=provenance)

    @staticmethod
    def from_relations(
        alphabet: Alphabet,
        order: MonomialOrder,
        field,
        relations: Iterable[NCPolynomial],
        provenance="declared",
    ) -> "RewriteSystem":
        tagged = []
        for rel in relations:
            if rel.is_zero():
                continue
            tagged.append((rel, provenance))
        return RewriteSystem._from_tagged(alphabet, order, field, tagged)

    @staticmethod
    def _from_tagged(alphabet, order, field, tagged) -> "RewriteSystem":
        """Orient and mutually interreduce tagged (polynomial, provenance) pairs.

        Relations are revisited one at a time against all the others, so a
        relation implied by the rest is dropped without taking its duplicate
        down with it.
        """
        work = [(p, tag) for p, tag in tagged if not p.is_zero()]
        for _ in range(100000):
            rules = [RewriteSystem.orient(p, order, tag) for p, tag in work]
            changed = False
            for i, (p, tag) in enumerate(work):
                others = RewriteSystem(
                    alphabet, order, field, rules[:i] + rules[i + 1 :]
                )
                red = normal_form(p, others)
                if red.is_zero():
                    del work[i]
                    changed = True
                    break
                if red.terms != p.terms:
                    work[i] = (red, tag)
                    changed = True
                    break
            if not changed:
                return RewriteSystem(alphabet, order, field, rules)
        raise RuleAdmissionError("interreduction did not stabilize")

    # queries ---------------------------------------------------------------

    def find_match(self, w: Word):
        """Leftmost position carrying a match; longest lhs wins there."""
        index = self._index
        n = len(w)
        for i in range(n):
            bucket = index.get(w[i])
            if not bucket:
                continue
            for lhs, ridx in bucket:
                if w[i : i + len(lhs)] == lhs:
                    return i, ridx
        return None

    def all_matches(self, w: Word):
        out = []
        index = self._index
        for i in range(len(w)):
            bucket = index.get(w[i])
            if not bucket:
                continue
            for lhs, ridx in bucket:
                if w[i : i + len(lhs)] == lhs:
                    out.append((i, ridx))
        return out

    def is_normal_word(self, w: Word) -> bool:
        return self.find_match(w) is None

    def normal_words(self, max_len: int):
        """All normal-form words of length <= max_len, shortest first.

        Words are grown letter by letter; only a match ending at the freshly
        appended letter can make an extension reducible.
        """
        out = [()]
        layer = [()]
        for _ in range(max_len):
            nxt = []
            for w in layer:
                for i in range(self.alphabet.size):
                    cand = w + (i,)
                    if self._suffix_clean(cand):
                        nxt.append(cand)
            out.extend(nxt)
            layer = nxt
            if not layer:
                break
        return out

    def _suffix_clean(self, w: Word) -> bool:
        index = self._index
        n = len(w)
        lo = max(0, n - self.max_lhs_len)
        for i in range(lo, n):
            bucket = index.get(w[i])
            if not bucket:
                continue
            for lhs, _ in bucket:
                if n - i == len(lhs) and w[i:] == lhs:
                    return False
        return True

    def poly(self, terms) -> NCPolynomial:
        return NCPolynomial(self.alphabet, self.field, terms)


def _apply_rule_at(w: Word, rule: RewriteRule, pos: int):
    """Replacement terms for rewriting w at pos by rule."""
    prefix = w[:pos]
    suffix = w[pos + len(rule.lhs) :]
    return [(prefix + rw + suffix, rc) for rw, rc in rule.rhs]


def normal_form(f: NCPolynomial, system: RewriteSystem) -> NCPolynomial:
    """Unique normal form of f when the system is locally confluent.

    Words are processed largest first (heap); at each word the leftmost
    occurrence of the longest matching lhs is replaced.  Every replacement
    produces strictly smaller words, so the loop terminates.
    """
    field = f.field
    work = dict(f.terms)
    key = system.order.sort_key
    heap = [(-len(w), tuple(system.order.rank[i] for i in w), w) for w in work]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None or not c:
            continue
        m = system.find_match(w)
        if m is None:
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
            continue
        pos, ridx = m
        for nw, rc in _apply_rule_at(w, system.rules[ridx], pos):
            s = work.get(nw)
            if s is None:
                work[nw] = c * rc
                heapq.heappush(
                    heap, (-len(nw), tuple(system.order.rank[i] for i in nw), nw)
                )
            else:
                s = s + c * rc
                if s:
                    work[nw] = s
                else:
                    del work[nw]
    return NCPolynomial(f.alphabet, field, out)


def reduce_randomized(f: NCPolynomial, system: RewriteSystem, rng) -> NCPolynomial:
    """Fully reduce f applying randomly chosen matches in random term order.

    Strategy independence of `normal_form` on confluent systems is a theorem
    (the diamond lemma); this reducer exists so the test suite can observe it
    rather than assume it.
    """
    terms = dict(f.terms)
    while True:
        reducible = []
        for w in terms:
            ms = system.all_matches(w)
            if ms:
                reducible.append((w, ms))
        if not reducible:
            return NCPolynomial(f.alphabet, f.field, terms)
        reducible.sort(key=lambda e: e[0])
        w, ms = reducible[rng.randrange(len(reducible))]
        pos, ridx = ms[rng.randrange(len(ms))]
        c = terms.pop(w)
        for nw, rc in _apply_rule_at(w, system.rules[ridx], pos):
            s = terms.get(nw, f.field.zero) + c * rc
            if s:
                terms[nw] = s
            elif nw in terms:
                del terms[nw]


def enumerate_ambiguities(system: RewriteSystem, max_degree: int):
    """All overlap and inclusion ambiguities with superposition length <= max_degree."""
    out = []
    rules = system.rules
    for i, r1 in enumerate(rules):
        l1 = r1.lhs
        for j, r2 in enumerate(rules):
            l2 = r2.lhs
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k :] == l2[:k]:
                    word = l1 + l2[k:]
                    if len(word) <= max_degree:
                        out.append(
                            Ambiguity("overlap", i, j, word, offset=len(l1) - k)
                        )
            if i != j and len(l2) < len(l1) and len(l1) <= max_degree:
                for off in range(len(l1) - len(l2) + 1):
                    if l1[off : off + len(l2)] == l2:
                        out.append(Ambiguity("inclusion", i, j, l1, offset=off))
    out.sort(key=lambda a: (len(a.word), a.word, a.left_rule, a.right_rule, a.offset))
    return out


def resolve_ambiguity(system: RewriteSystem, amb: Ambiguity):
    """Normal forms of the two one-step resolutions of the superposition."""
    field = system.field
    r1 = system.rules[amb.left_rule]
    r2 = system.rules[amb.right_rule]
    res1 = {}
    for w, c in _apply_rule_at(amb.word, r1, 0):
        res1[w] = res1.get(w, field.zero) + c
    res2 = {}
    for w, c in _apply_rule_at(amb.word, r2, amb.offset):
        res2[w] = res2.get(w, field.zero) + c
    nf1 = normal_form(system.poly(res1), system)
    nf2 = normal_form(system.poly(res2), system)
    return nf1, nf2


def check_local_confluence(system: RewriteSystem, max_degree: int, executor=None) -> ConfluenceReport:
    """Resolve every ambiguity below the bound; pass iff all pairs agree.

    Failures are data, not errors: each carries the superposition and both
    distinct normal forms.  Ambiguities are independent, so an executor can
    map over them; the report order stays deterministic either way.
    """
    ambs = enumerate_ambiguities(system, max_degree)
    if executor is None:
        resolved = [resolve_ambiguity(system, a) for a in ambs]
    else:
        resolved = list(executor.map(lambda a: resolve_ambiguity(system, a), ambs))
    failures = [
        (a, nf1, nf2) for a, (nf1, nf2) in zip(ambs, resolved) if nf1 != nf2
    ]
    return ConfluenceReport(passed=not failures, ambiguity_count=len(ambs), failures=failures)


def complete(
    system: RewriteSystem,
    max_degree: int = 4,
    coinvariant_letters=None,
    max_rounds: int = 60,
) -> CompletionResult:
    """Bounded Knuth-Bendix: absorb failing ambiguities as derived rules.

    Stops when no ambiguity with superposition length <= max_degree fails, or
    when the round budget runs out.  Derived relations whose lhs is a word
    over `coinvariant_letters` signal that the quotient collapsed into the
    would-be coinvariant subalgebra ("subalgebra contamination").
    """
    alphabet, order, field = system.alphabet, system.order, system.field
    tagged = [
        (r.as_polynomial(alphabet, field), r.provenance) for r in system.rules
    ]
    current = system
    unit_collapse = False
    resolved = False
    for _ in range(max_rounds):
        report = check_local_confluence(current, max_degree)
        if report.passed:
            resolved = True
            break
        progressed = False
        for amb, nf1, nf2 in report.failures:
            diff = nf1 - nf2
            if diff.is_zero():
                continue
            if diff.leading_word(order) == ():
                # a nonzero constant lies in the ideal: the algebra is zero
                unit_collapse = True
                continue
            tagged.append((diff, "derived"))
            progressed = True
        if not progressed:
            break
        try:
            current = RewriteSystem._from_tagged(alphabet, order, field, tagged)
        except RuleAdmissionError:
            # interreduction exposed a constant relation
            unit_collapse = True
            break
        tagged = [
            (r.as_polynomial(alphabet, field), r.provenance) for r in current.rules
        ]
    derived = [r for r in current.rules if r.provenance == "derived"]
    contamination = []
    if coinvariant_letters is not None:
        letters = set(coinvariant_letters)
        contamination = [r for r in derived if set(r.lhs) <= letters]
    return CompletionResult(
        system=current,
        derived=derived,
        contamination=contamination,
        resolved=resolved,
        unit_collapse=unit_collapse,
    )
