"""Hopf structure maps, axiom verification, and the convolution algebra Hom(H, P).

The coproduct lands in the tensor-square algebra, the counit in the trivial
algebra (scalars), and the antipode is an anti-homomorphism of the algebra
into itself.  None of the axioms are assumed: `check_hopf_axioms` verifies
coassociativity, the counit laws and both antipode identities word by word up
to a degree bound, reporting the offending word and both sides whenever
something fails.

Sweedler expansion is computed, never symbolic: an iterated coproduct is
normalized in the tensor power and read off slot by slot, iterating on the
left slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .ncpoly import NCPolynomial
from .presentations import Algebra, GenMap, Registry

__all__ = [
    "HopfStructure",
    "ConvolutionMap",
    "build_gl2_hopf",
    "check_hopf_axioms",
    "convolve",
    "check_convolution_inverse",
    "HopfAxiomReport",
]


class HopfStructure:
    """An algebra with verified-on-demand coproduct, counit and antipode."""

    def __init__(self, registry: Registry, algebra: Algebra, square: Algebra,
                 coproduct: GenMap, counit: GenMap, antipode: GenMap):
        self.registry = registry
        self.algebra = algebra
        self.square = square
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode
        self._sweedler_cache = {}

    # structure maps ----------------------------------------------------------

    def delta(self, poly: NCPolynomial) -> NCPolynomial:
        return self.coproduct.apply(poly)

    def eps_word(self, w):
        out = self.counit.apply_word(w)
        return out.terms.get((), self.algebra.field.zero)

    def eps(self, poly: NCPolynomial):
        total = self.algebra.field.zero
        for w, c in poly.terms.items():
            total = total + c * self.eps_word(w)
        return total

    def S(self, poly: NCPolynomial) -> NCPolynomial:
        return self.antipode.apply(poly)

    def sweedler(self, w, n: int):
        """Terms of the (n-1)-fold coproduct of the word w.

        Returns [(coeff, (w_1, ..., w_n))] with every slot word in normal
        form; iteration happens on the left slot.
        """
        key = (w, n)
        cached = self._sweedler_cache.get(key)
        if cached is not None:
            return cached
        if n == 1:
            out = []
            nf = self.algebra.nf(NCPolynomial.from_word(self.algebra.alphabet, self.algebra.field, w))
            for ww, c in nf.terms.items():
                out.append((c, (ww,)))
        elif n == 2:
            out = []
            d = self.coproduct.apply_word(w)
            for tw, c in d.terms.items():
                out.append((c, self._split2(tw)))
        else:
            out = []
            for c, (w1, w2) in self.sweedler(w, 2):
                for c2, rest in self.sweedler(w1, n - 1):
                    out.append((c * c2, rest + (w2,)))
        self._sweedler_cache[key] = out
        return out

    def _split2(self, tw):
        from .ncpoly import split_tensor_word

        return split_tensor_word(tw, self.square.alphabet)

    def sweedler_poly(self, poly: NCPolynomial, n: int):
        out = []
        for w, c in poly.terms.items():
            for c2, slots in self.sweedler(w, n):
                out.append((c * c2, slots))
        return out


@dataclass
class HopfAxiomReport:
    passed: bool
    words_checked: int
    failures: list  # [(axiom, word, lhs_str, rhs_str)]


def check_hopf_axioms(h: HopfStructure, max_degree: int = 3, executor=None) -> HopfAxiomReport:
    """Coassociativity, counit laws and antipode laws on all normal words."""
    words = h.algebra.normal_words(max_degree)
    jobs = [(w,) for w in words]

    def check_word(w):
        fails = []
        alg, field = h.algebra, h.algebra.field
        cube = h.registry.tensor_power(alg, 3)
        n1 = alg.alphabet.size
        # coassociativity via the cube's factor-sorted words
        lhs = {}
        rhs = {}
        for c, (w1, w2) in h.sweedler(w, 2):
            for c2, (u1, u2) in h.sweedler(w1, 2):
                key = u1 + tuple(i + n1 for i in u2) + tuple(i + 2 * n1 for i in w2)
                s = lhs.get(key, field.zero) + c * c2
                if s:
                    lhs[key] = s
                elif key in lhs:
                    del lhs[key]
            for c2, (u1, u2) in h.sweedler(w2, 2):
                key = w1 + tuple(i + n1 for i in u1) + tuple(i + 2 * n1 for i in u2)
                s = rhs.get(key, field.zero) + c * c2
                if s:
                    rhs[key] = s
                elif key in rhs:
                    del rhs[key]
        if lhs != rhs:
            fails.append(("coassociativity", w,
                          NCPolynomial(cube.alphabet, field, lhs).format(cube.order),
                          NCPolynomial(cube.alphabet, field, rhs).format(cube.order)))
        # counit laws
        word_poly = alg.nf(NCPolynomial.from_word(alg.alphabet, field, w))
        left = alg.zero()
        right = alg.zero()
        for c, (w1, w2) in h.sweedler(w, 2):
            left = left + NCPolynomial.from_word(alg.alphabet, field, w2, c * h.eps_word(w1))
            right = right + NCPolynomial.from_word(alg.alphabet, field, w1, c * h.eps_word(w2))
        if left != word_poly:
            fails.append(("counit_left", w, alg.format(left), alg.format(word_poly)))
        if right != word_poly:
            fails.append(("counit_right", w, alg.format(right), alg.format(word_poly)))
        # antipode laws
        target = alg.one(h.eps_word(w))
        san = alg.zero()
        nas = alg.zero()
        for c, (w1, w2) in h.sweedler(w, 2):
            san = san + (h.antipode.apply_word(w1) * NCPolynomial.from_word(alg.alphabet, field, w2)).scale(c)
            nas = nas + (NCPolynomial.from_word(alg.alphabet, field, w1) * h.antipode.apply_word(w2)).scale(c)
        san = alg.nf(san)
        nas = alg.nf(nas)
        if san != target:
            fails.append(("antipode_left", w, alg.format(san), alg.format(target)))
        if nas != target:
            fails.append(("antipode_right", w, alg.format(nas), alg.format(target)))
        return fails

    if executor is None:
        all_fails = [check_word(w) for (w,) in jobs]
    else:
        all_fails = list(executor.map(lambda j: check_word(j[0]), jobs))
    failures = [f for fl in all_fails for f in fl]
    return HopfAxiomReport(passed=not failures, words_checked=len(words), failures=failures)


class ConvolutionMap:
    """A linear map out of H into an algebra, stored lazily per normal word.

    The cache fill is idempotent (values are deterministic), so shared use
    from several threads at worst recomputes a value.
    """

    def __init__(self, hopf: HopfStructure, target: Algebra, fn, name=""):
        self.hopf = hopf
        self.target = target
        self.fn = fn
        self.name = name
        self._cache = {}

    def value_word(self, w) -> NCPolynomial:
        got = self._cache.get(w)
        if got is None:
            got = self.target.nf(self.fn(w))
            self._cache[w] = got
        return got

    def value(self, poly: NCPolynomial) -> NCPolynomial:
        out = self.target.zero()
        for w, c in poly.terms.items():
            out = out + self.value_word(w).scale(c)
        return out

    @staticmethod
    def from_genmap(hopf: HopfStructure, gm: GenMap, name="") -> "ConvolutionMap":
        return ConvolutionMap(hopf, gm.target, gm.apply_word, name=name)

    @staticmethod
    def unit(hopf: HopfStructure, target: Algebra, name="unit") -> "ConvolutionMap":
        return ConvolutionMap(
            hopf, target, lambda w: target.one(hopf.eps_word(w)), name=name
        )


def convolve(f: ConvolutionMap, g: ConvolutionMap, name="") -> ConvolutionMap:
    """(f * g)(h) = sum f(h_1) g(h_2), through coproduct expansion."""
    if f.hopf is not g.hopf or f.target is not g.target:
        raise ValueError("convolution needs a shared source and target")

    def fn(w):
        out = f.target.zero()
        for c, (w1, w2) in f.hopf.sweedler(w, 2):
            out = out + (f.value_word(w1) * g.value_word(w2)).scale(c)
        return out

    return ConvolutionMap(f.hopf, f.target, fn, name=name or "(%s*%s)" % (f.name, g.name))


@dataclass
class ConvolutionReport:
    passed: bool
    words_checked: int
    failures: list  # [(word, direction, value_str)]


def check_convolution_inverse(f: ConvolutionMap, g: ConvolutionMap, max_degree: int = 3) -> ConvolutionReport:
    """Assert f * g = g * f = unit on every normal word up to the bound."""
    fg = convolve(f, g)
    gf = convolve(g, f)
    unit = ConvolutionMap.unit(f.hopf, f.target)
    failures = []
    words = f.hopf.algebra.normal_words(max_degree)
    for w in words:
        expect = unit.value_word(w)
        got = fg.value_word(w)
        if got != expect:
            failures.append((w, "f*g", f.target.format(got)))
        got = gf.value_word(w)
        if got != expect:
            failures.append((w, "g*f", f.target.format(got)))
    return ConvolutionReport(passed=not failures, words_checked=len(words), failures=failures)


def build_gl2_hopf(registry: Registry, swap_params: bool = False) -> HopfStructure:
    """The quantum-group Hopf structure: matrix coproduct, matrix counit,
    antipode through the inverse determinant."""
    field = registry.field
    hfield = field.parameters_swapped() if swap_params else field
    H = registry.algebra("gl2", swap_params)
    sq = registry.algebra("gl2_tensor_square", swap_params)

    def t(expr):
        return sq.parse(expr)

    coproduct = GenMap(
        H,
        sq,
        {
            "a": t("a_1*a_2 + b_1*c_2"),
            "b": t("a_1*b_2 + b_1*d_2"),
            "c": t("c_1*a_2 + d_1*c_2"),
            "d": t("c_1*b_2 + d_1*d_2"),
            "Dinv": t("Dinv_1*Dinv_2"),
        },
        "hom",
        name="coproduct",
    )
    triv = registry.trivial()
    counit = GenMap(
        H,
        triv,
        {
            "a": triv.one(),
            "b": triv.zero(),
            "c": triv.zero(),
            "d": triv.one(),
            "Dinv": triv.one(),
        },
        "hom",
        name="counit",
    )
    qq = hfield.q
    antipode = GenMap(
        H,
        H,
        {
            "a": H.parse("d*Dinv"),
            "b": H.gen("b") * H.gen("Dinv") * (-(field.one / qq)),
            "c": H.gen("c") * H.gen("Dinv") * (-qq),
            "d": H.parse("a*Dinv"),
            "Dinv": H.gen("a") * H.gen("d") - (H.gen("b") * H.gen("c")).scale(qq),
        },
        "anti",
        name="antipode",
    )
    return HopfStructure(registry, H, sq, coproduct, counit, antipode)
