"""Comodule-algebra structure, coinvariants, cleaving maps, and section bases.

Everything here revolves around one smash-product extension: the plane sits
inside the total algebra as the coinvariants of the right coaction, the
quantum group coacts through its coproduct, and the embedding of the quantum
group is a cleaving map whose convolution inverse goes through the antipode.

Colinear maps out of the two-dimensional comodule are stored as their value
pair on the canonical basis.  The section bases of the associated bundles
come from the free-module isomorphism evaluated on the dual basis of the
plane: for the fundamental corepresentation this gives the cotangent
sections, for its antipode-transpose the tangent sections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ncpoly import NCPolynomial
from .presentations import Algebra, GenMap, Registry
from .hopf import (
    HopfStructure,
    ConvolutionMap,
    build_gl2_hopf,
    check_convolution_inverse,
)

__all__ = [
    "SmashContext",
    "build_frame_context",
    "delta_left",
    "delta_right",
    "coinvariant_check",
    "coinvariant_basis_report",
    "canonical_map",
    "check_cleaving",
    "check_galois_onesided",
    "check_coaction_axioms",
    "Corepresentation2",
    "corep_fundamental",
    "corep_antipode_transpose",
    "corep_antipode_plain",
    "ColinearMap",
    "sigma_basis",
    "psi",
    "tangent_basis",
    "decompose_in_psi_basis",
]


class SmashContext:
    """The Hopf-Galois data of the smash-product extension."""

    def __init__(self, registry: Registry, swap_params: bool = False):
        self.registry = registry
        self.swap = swap_params
        self.B = registry.algebra("quantum_plane")
        self.hopf = build_gl2_hopf(registry, swap_params)
        self.H = self.hopf.algebra
        self.P = registry.algebra("frame_bundle", swap_params)
        self.PH = registry.algebra("frame_tensor_H", swap_params)
        P, H, PH = self.P, self.H, self.PH
        self.embed_B = GenMap(self.B, P, {g: P.gen(g) for g in ("x", "y")}, "hom", name="plane_into_total")
        self.embed_H = GenMap(H, P, {g: P.gen(g) for g in H.presentation.generators}, "hom", name="group_into_total")
        images = {}
        for g in ("x", "y"):
            images[g] = PH.parse("%s_1" % g)
        for g, expr in (
            ("a", "a_1*a_2 + b_1*c_2"),
            ("b", "a_1*b_2 + b_1*d_2"),
            ("c", "c_1*a_2 + d_1*c_2"),
            ("d", "c_1*b_2 + d_1*d_2"),
            ("Dinv", "Dinv_1*Dinv_2"),
        ):
            images[g] = PH.parse(expr)
        self.coaction = GenMap(P, PH, images, "hom", name="right_coaction")
        self.j = ConvolutionMap.from_genmap(self.hopf, self.embed_H, name="cleaving")
        self.j_inv = ConvolutionMap.from_genmap(
            self.hopf, self.embed_H.compose(self.hopf.antipode), name="cleaving_inverse"
        )
        self._b_letters = frozenset(P.alphabet.index(g) for g in ("x", "y"))

    def embed1(self, poly: NCPolynomial) -> NCPolynomial:
        return self.PH.embed(poly, 1)

    def embed2(self, poly: NCPolynomial) -> NCPolynomial:
        return self.PH.embed(poly, 2)

    def to_plane(self, poly: NCPolynomial) -> NCPolynomial:
        """Read a coinvariant total-algebra element back as a plane element."""
        idx = {self.P.alphabet.index(g): self.B.alphabet.index(g) for g in ("x", "y")}
        terms = {}
        for w, c in poly.terms.items():
            if not set(w) <= self._b_letters:
                raise ValueError("element is not supported on the plane letters")
            terms[tuple(idx[i] for i in w)] = c
        return NCPolynomial(self.B.alphabet, self.B.field, terms)


def build_frame_context(registry: Registry, swap_params: bool = False) -> SmashContext:
    return SmashContext(registry, swap_params)


def delta_left(registry: Registry) -> GenMap:
    """Left coaction of the quantum group on the plane."""
    B = registry.algebra("quantum_plane")
    target = registry.algebra("gl2_tensor_quantum_plane")
    return GenMap(
        B,
        target,
        {"x": target.parse("a_1*x_2 + b_1*y_2"), "y": target.parse("c_1*x_2 + d_1*y_2")},
        "hom",
        name="delta_left",
    )


def delta_right(registry: Registry) -> GenMap:
    """Right coaction of the mirrored quantum group on the plane."""
    B = registry.algebra("quantum_plane")
    target = registry.algebra("quantum_plane_tensor_gl2_pq")
    return GenMap(
        B,
        target,
        {"x": target.parse("x_1*a_2 + y_1*c_2"), "y": target.parse("x_1*b_2 + y_1*d_2")},
        "hom",
        name="delta_right",
    )


# -- coinvariants and the canonical map ----------------------------------------


def coinvariant_check(ctx: SmashContext, e: NCPolynomial) -> bool:
    """True iff the coaction sends e to e (x) 1."""
    return ctx.coaction.apply(e) == ctx.PH.nf(ctx.embed1(e))


@dataclass
class CoinvariantReport:
    passed: bool
    words_checked: int
    failures: list  # [(word, expected_coinvariant, got)]


def coinvariant_basis_report(ctx: SmashContext, max_degree: int = 4) -> CoinvariantReport:
    """Both inclusions of "coinvariants = plane words" on the normal basis:
    every plane word must be coinvariant, every other normal word must not be.
    """
    failures = []
    words = ctx.P.normal_words(max_degree)
    for w in words:
        poly = NCPolynomial.from_word(ctx.P.alphabet, ctx.P.field, w)
        expected = set(w) <= ctx._b_letters
        got = coinvariant_check(ctx, poly)
        if got != expected:
            failures.append((ctx.P.alphabet.word_str(w), expected, got))
    return CoinvariantReport(passed=not failures, words_checked=len(words), failures=failures)


def canonical_map(ctx: SmashContext, f: NCPolynomial, f2: NCPolynomial) -> NCPolynomial:
    """f (x)_B f' -> sum f f'_(0) (x) f'_(1), landing in the tensor presentation."""
    return ctx.PH.nf(ctx.embed1(f) * ctx.coaction.apply(f2))


@dataclass
class GaloisReport:
    passed: bool
    pairs_checked: int
    failures: list


def check_cleaving(ctx: SmashContext, max_degree: int = 3):
    """Colinearity of the cleaving map plus convolution invertibility."""
    failures = []
    words = ctx.H.normal_words(max_degree)
    for w in words:
        lhs = ctx.coaction.apply(ctx.j.value_word(w))
        rhs = ctx.PH.zero()
        for c, (w1, w2) in ctx.hopf.sweedler(w, 2):
            rhs = rhs + (
                ctx.embed1(ctx.j.value_word(w1))
                * ctx.embed2(NCPolynomial.from_word(ctx.H.alphabet, ctx.H.field, w2))
            ).scale(c)
        rhs = ctx.PH.nf(rhs)
        if lhs != rhs:
            failures.append(("colinearity", ctx.H.alphabet.word_str(w)))
    conv = check_convolution_inverse(ctx.j, ctx.j_inv, max_degree)
    if not conv.passed:
        failures.extend(("convolution", w, d) for w, d, _ in conv.failures)
    return GaloisReport(passed=not failures, pairs_checked=len(words), failures=failures)


def check_galois_onesided(ctx: SmashContext, max_degree: int = 3) -> GaloisReport:
    """The translation-map composite is the identity on spanning pairs.

    For f a plane word and h a group word, the composite
    sum f j^-1(h_1) (j(h_2))_(0) (x) (j(h_2))_(1) must return f (x) h.
    """
    failures = []
    pairs = 0
    bwords = ctx.B.normal_words(max_degree)
    hwords = ctx.H.normal_words(max_degree)
    for bw in bwords:
        fP = ctx.embed_B.apply(NCPolynomial.from_word(ctx.B.alphabet, ctx.B.field, bw))
        for hw in hwords:
            pairs += 1
            total = ctx.PH.zero()
            for c, (h1, h2) in ctx.hopf.sweedler(hw, 2):
                left = ctx.P.nf(fP * ctx.j_inv.value_word(h1))
                total = total + (ctx.embed1(left) * ctx.coaction.apply(ctx.j.value_word(h2))).scale(c)
            total = ctx.PH.nf(total)
            expect = ctx.PH.nf(
                ctx.embed1(fP)
                * ctx.embed2(NCPolynomial.from_word(ctx.H.alphabet, ctx.H.field, hw))
            )
            if total != expect:
                failures.append(
                    (
                        ctx.B.alphabet.word_str(bw),
                        ctx.H.alphabet.word_str(hw),
                        ctx.PH.format(total),
                    )
                )
    return GaloisReport(passed=not failures, pairs_checked=pairs, failures=failures)


# -- coaction axioms -------------------------------------------------------------


@dataclass
class CoactionReport:
    passed: bool
    words_checked: int
    failures: list


def check_coaction_axioms(
    coaction: GenMap, hopf: HopfStructure, registry: Registry, side: str, max_degree: int = 3
) -> CoactionReport:
    """Coassociativity against the coproduct, and the counit law.

    `side` says where the group slot sits: "right" for maps into src (x) H,
    "left" for maps into H (x) src.
    """
    src = coaction.source
    H = hopf.algebra
    field = src.field
    if side == "right":
        triple = registry.tensor((src, H, H), "%s_coassoc_r" % src.name)
        n0, n1 = src.alphabet.size, H.alphabet.size
    else:
        triple = registry.tensor((H, H, src), "%s_coassoc_l" % src.name)
        n0, n1 = H.alphabet.size, H.alphabet.size
    failures = []
    words = src.normal_words(max_degree)
    for w in words:
        image = coaction.apply_word(w)
        lhs = {}
        rhs = {}
        ok_counit = src.zero()
        for tw, c in image.terms.items():
            from .ncpoly import split_tensor_word

            parts = split_tensor_word(tw, coaction.target.alphabet)
            if side == "right":
                ws, wh = parts
                inner = coaction.apply_word(ws)
                for tw2, c2 in inner.terms.items():
                    ws2, wh2 = split_tensor_word(tw2, coaction.target.alphabet)
                    key = ws2 + tuple(i + n0 for i in wh2) + tuple(i + n0 + n1 for i in wh)
                    _acc(lhs, key, c * c2, field)
                for c2, (v1, v2) in hopf.sweedler(wh, 2):
                    key = ws + tuple(i + n0 for i in v1) + tuple(i + n0 + n1 for i in v2)
                    _acc(rhs, key, c * c2, field)
                ok_counit = ok_counit + NCPolynomial.from_word(src.alphabet, field, ws, c * hopf.eps_word(wh))
            else:
                wh, ws = parts
                for c2, (v1, v2) in hopf.sweedler(wh, 2):
                    key = v1 + tuple(i + n0 for i in v2) + tuple(i + n0 + n1 for i in ws)
                    _acc(lhs, key, c * c2, field)
                inner = coaction.apply_word(ws)
                for tw2, c2 in inner.terms.items():
                    wh2, ws2 = split_tensor_word(tw2, coaction.target.alphabet)
                    key = wh + tuple(i + n0 for i in wh2) + tuple(i + n0 + n1 for i in ws2)
                    _acc(rhs, key, c * c2, field)
                ok_counit = ok_counit + NCPolynomial.from_word(src.alphabet, field, ws, c * hopf.eps_word(wh))
        if lhs != rhs:
            failures.append(("coassociativity", src.alphabet.word_str(w)))
        if ok_counit != src.nf_word(w):
            failures.append(("counit", src.alphabet.word_str(w)))
    return CoactionReport(passed=not failures, words_checked=len(words), failures=failures)


def _acc(d, key, val, field):
    s = d.get(key)
    s = val if s is None else s + val
    if s:
        d[key] = s
    elif key in d:
        del d[key]


# -- corepresentations and colinear maps -----------------------------------------


class Corepresentation2:
    """A 2x2 matrix of group elements, with rho(e_i) = sum_j e_j (x) m_ji."""

    def __init__(self, hopf: HopfStructure, entries):
        self.hopf = hopf
        self.m = [[hopf.algebra.nf(entries[i][j]) for j in range(2)] for i in range(2)]

    def check_comatrix(self):
        """Delta(m_ij) = sum_k m_ik (x) m_kj and eps(m_ij) = delta_ij."""
        H = self.hopf.algebra
        sq = self.hopf.square
        failures = []
        for i in range(2):
            for j in range(2):
                lhs = self.hopf.delta(self.m[i][j])
                rhs = sq.zero()
                for k in range(2):
                    rhs = rhs + sq.embed(self.m[i][k], 1) * sq.embed(self.m[k][j], 2)
                rhs = sq.nf(rhs)
                if lhs != rhs:
                    failures.append(("coproduct", i, j))
                eps = self.hopf.eps(self.m[i][j])
                expect = H.field.one if i == j else H.field.zero
                if eps != expect:
                    failures.append(("counit", i, j))
        return GaloisReport(passed=not failures, pairs_checked=4, failures=failures)


def corep_fundamental(ctx: SmashContext) -> Corepresentation2:
    H = ctx.H
    return Corepresentation2(ctx.hopf, [[H.gen("a"), H.gen("b")], [H.gen("c"), H.gen("d")]])


def corep_antipode_transpose(ctx: SmashContext) -> Corepresentation2:
    """Entrywise antipode of the fundamental matrix, then transposed."""
    S = ctx.hopf.antipode
    H = ctx.H
    return Corepresentation2(
        ctx.hopf,
        [
            [S.apply(H.gen("a")), S.apply(H.gen("c"))],
            [S.apply(H.gen("b")), S.apply(H.gen("d"))],
        ],
    )


def corep_antipode_plain(ctx: SmashContext) -> Corepresentation2:
    """Entrywise antipode without the transpose: the rejected convention.

    Kept so the suite can demonstrate that this choice breaks the tangent
    bimodule relations.
    """
    S = ctx.hopf.antipode
    H = ctx.H
    return Corepresentation2(
        ctx.hopf,
        [
            [S.apply(H.gen("a")), S.apply(H.gen("b"))],
            [S.apply(H.gen("c")), S.apply(H.gen("d"))],
        ],
    )


@dataclass
class ColinearMap:
    """A map out of the 2-dimensional comodule, stored by its basis values."""

    ctx: SmashContext
    corep: Corepresentation2
    value_e: NCPolynomial
    value_f: NCPolynomial

    def normalized(self) -> "ColinearMap":
        return ColinearMap(self.ctx, self.corep, self.ctx.P.nf(self.value_e), self.ctx.P.nf(self.value_f))

    def is_colinear(self) -> bool:
        ctx = self.ctx
        m = self.corep.m
        vals = (self.value_e, self.value_f)
        for i in range(2):
            lhs = ctx.coaction.apply(vals[i])
            rhs = ctx.PH.zero()
            for j in range(2):
                rhs = rhs + ctx.embed1(vals[j]) * ctx.embed2(m[j][i])
            if lhs != ctx.PH.nf(rhs):
                return False
        return True

    def left_mul(self, b: NCPolynomial) -> "ColinearMap":
        bp = self.ctx.embed_B.apply(b)
        return ColinearMap(
            self.ctx,
            self.corep,
            self.ctx.P.nf(bp * self.value_e),
            self.ctx.P.nf(bp * self.value_f),
        )

    def right_mul(self, b: NCPolynomial) -> "ColinearMap":
        bp = self.ctx.embed_B.apply(b)
        return ColinearMap(
            self.ctx,
            self.corep,
            self.ctx.P.nf(self.value_e * bp),
            self.ctx.P.nf(self.value_f * bp),
        )

    def add(self, other: "ColinearMap") -> "ColinearMap":
        return ColinearMap(self.ctx, self.corep, self.value_e + other.value_e, self.value_f + other.value_f)

    def __eq__(self, other):
        return (
            isinstance(other, ColinearMap)
            and self.value_e == other.value_e
            and self.value_f == other.value_f
        )

    def is_zero(self) -> bool:
        return self.value_e.is_zero() and self.value_f.is_zero()

    def format(self) -> str:
        return "(%s, %s)" % (self.ctx.P.format(self.value_e), self.ctx.P.format(self.value_f))


def sigma_basis(ctx: SmashContext):
    """The dual basis of the plane: sigma_x = (1, 0), sigma_y = (0, 1)."""
    return (ctx.B.one(), ctx.B.zero()), (ctx.B.zero(), ctx.B.one())


def psi(ctx: SmashContext, u, corep: Corepresentation2) -> ColinearMap:
    """Free-module isomorphism: (Psi(u))(basis_i) = sum_j u(basis_j) j(m_ji)."""
    u_e, u_f = u
    vals = []
    for i in range(2):
        total = ctx.P.zero()
        for j, uj in enumerate((u_e, u_f)):
            total = total + ctx.embed_B.apply(uj) * ctx.j.value(corep.m[j][i])
        vals.append(ctx.P.nf(total))
    return ColinearMap(ctx, corep, vals[0], vals[1])


def tangent_basis(ctx: SmashContext, alt_convention: bool = False):
    """Section basis of the tangent bundle from the antipode-transpose
    corepresentation; `alt_convention` selects the rejected untransposed one."""
    corep = corep_antipode_plain(ctx) if alt_convention else corep_antipode_transpose(ctx)
    sx, sy = sigma_basis(ctx)
    return psi(ctx, sx, corep), psi(ctx, sy, corep)


def decompose_in_psi_basis(ctx: SmashContext, ell: ColinearMap):
    """Recover plane coefficients with ell = b1 . Psi(sigma_x) + b2 . Psi(sigma_y).

    Works by stripping the single trailing group letter of the e-slot (words
    end in the first-column corepresentation letters), then verifying the
    claimed decomposition on both slots; returns None when verification fails.
    """
    P, B = ctx.P, ctx.B
    a_idx, c_idx = P.alphabet.index("a"), P.alphabet.index("c")
    b1_terms = {}
    b2_terms = {}
    for w, c in P.nf(ell.value_e).terms.items():
        if not w:
            return None
        head, last = w[:-1], w[-1]
        if last == a_idx:
            b1_terms[head] = c
        elif last == c_idx:
            b2_terms[head] = c
        else:
            return None
    try:
        b1 = ctx.to_plane(NCPolynomial(P.alphabet, P.field, b1_terms))
        b2 = ctx.to_plane(NCPolynomial(P.alphabet, P.field, b2_terms))
    except ValueError:
        return None
    sx, sy = sigma_basis(ctx)
    corep = ell.corep
    rebuilt = psi(ctx, sx, corep).left_mul(b1).add(psi(ctx, sy, corep).left_mul(b2)).normalized()
    if rebuilt != ell.normalized():
        return None
    return b1, b2
