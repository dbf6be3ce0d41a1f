"""Skew PBW presentations and normal-form arithmetic.

Variables are ordered x_1 < ... < x_n and standard monomials are written
with indices increasing left to right.  For i < j the presentation stores

    x_j x_i = c_ij x_i x_j + r0 + r1 x_1 + ... + rn x_n

and coefficients pass to the left through x_i r = sigma_i(r) x_i + delta_i(r).

Normal forms are computed by folding a word from the right: each letter
left-multiplies an already-normal polynomial.  A variable meeting a
smaller variable is rewritten with its relation; a variable meeting a
coefficient uses the coefficient-passing rule.  Pair expansions
``x_i * x^m`` and the coefficient images are memoised per presentation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .errors import CapExceeded, PresentationError
from .finring import OK, FiniteRing, Ideal, ValidationResult
from .sigdelta import (
    SigmaDeltaSystem,
    induced_quotient_system,
    is_invariant_ideal,
)

Monomial = tuple[int, ...]


# ---------------------------------------------------------------------------
# Monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """deglex (default) or lex; earlier coordinates are more significant."""

    kind: str = "deglex"

    def __post_init__(self):
        if self.kind not in ("deglex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, alpha: Monomial) -> tuple:
        if self.kind == "deglex":
            return (sum(alpha), tuple(alpha))
        return tuple(alpha)

    def greater(self, alpha: Monomial, beta: Monomial) -> bool:
        return self.key(alpha) > self.key(beta)

    def sort_desc(self, monos: Iterable[Monomial]) -> list[Monomial]:
        return sorted(monos, key=self.key, reverse=True)


DEGLEX = MonomialOrder("deglex")
LEX = MonomialOrder("lex")


def unit_vector(n: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(n))


def mono_add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomials_up_to(n: int, max_deg: int, order: MonomialOrder = DEGLEX) -> list[Monomial]:
    """All exponent vectors of total degree <= max_deg, ascending in ``order``."""
    out: list[Monomial] = []

    def rec(prefix, left, k):
        if k == n:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e, k + 1)

    rec([], max_deg, 0)
    return sorted(out, key=order.key)


# ---------------------------------------------------------------------------
# Coefficient domains


class FiniteCoefficients:
    """Coefficient arithmetic over a tabulated ring with its sigma/delta maps."""

    def __init__(self, ring: FiniteRing, system: SigmaDeltaSystem):
        self.ring = ring
        self.zero = ring.zero
        self.one = ring.one
        self._add = ring.add_table.tolist()
        self._mul = ring.mul_table.tolist()
        self._neg = ring.neg_table.tolist()
        self._sig = [list(s.image) for s in system.sigmas]
        self._del = [list(d.image) for d in system.deltas]

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sigma(self, i: int, a):
        return self._sig[i][a]

    def delta(self, i: int, a):
        return self._del[i][a]

    def fmt(self, a) -> str:
        return self.ring.label(a)


# ---------------------------------------------------------------------------
# Polynomials


class SkewPoly:
    """A normal-form element: exponent tuples mapped to nonzero coefficients."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: "PolyAlgebra", terms: Mapping[Monomial, Any]):
        self.alg = alg
        dom = alg.coeffs
        self.terms = {tuple(m): c for m, c in terms.items() if not dom.is_zero(c)}
        for m in self.terms:
            if len(m) != alg.n:
                raise ValueError(f"monomial {m} has arity {len(m)}, expected {alg.n}")
        self._hash = None

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and other.alg is self.alg and other.terms == self.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        return self.alg.add(self, other)

    def __neg__(self) -> "SkewPoly":
        return self.alg.neg(self)

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self.alg.add(self, self.alg.neg(other))

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.alg.mul(self, other)

    def __pow__(self, k: int) -> "SkewPoly":
        return self.alg.power(self, k)

    def coeff(self, m: Monomial):
        return self.terms.get(tuple(m), self.alg.coeffs.zero)

    def coefficients(self) -> list:
        """Coefficients in decreasing monomial order."""
        return [self.terms[m] for m in self.monomials()]

    def monomials(self) -> list[Monomial]:
        return self.alg.order.sort_desc(self.terms)

    def items(self) -> list[tuple[Monomial, Any]]:
        return [(m, self.terms[m]) for m in self.monomials()]

    @property
    def degree(self) -> int | None:
        return max((sum(m) for m in self.terms), default=None)

    def __str__(self):
        return self.alg.format(self)

    def __repr__(self):
        return f"SkewPoly({self.alg.format(self)!r})"


@dataclass(frozen=True)
class Leading:
    """Leading data; for the zero polynomial lm, exp and deg are None and lc is zero."""

    lm: Monomial | None
    lc: Any
    lt: SkewPoly
    exp: Monomial | None
    deg: int | None

    @property
    def is_zero(self) -> bool:
        return self.lm is None


@dataclass(frozen=True)
class ProductDecomposition:
    """x^alpha r = r_alpha x^alpha + p  (or x^alpha x^beta = c x^(alpha+beta) + p)."""

    monomial: Monomial
    leading_coeff: Any
    tail: SkewPoly


class PolyAlgebra:
    """Shared normal-form engine over an abstract coefficient domain."""

    def __init__(self, n: int, var_names: Sequence[str], coeffs, order: MonomialOrder,
                 relations: Mapping[tuple[int, int], tuple[Any, Sequence[Any]]], name: str = ""):
        self.n = n
        self.var_names = tuple(var_names)
        self.coeffs = coeffs
        self.order = order
        self.name = name
        # 0-based (i, j), i < j  ->  (c, (r0, r1, ..., rn))
        self._rel = {k: (v[0], tuple(v[1])) for k, v in relations.items()}
        self._var_mono: dict[tuple[int, Monomial], dict] = {}
        self._mono_coeff: dict[tuple[Monomial, Any], dict] = {}
        self._mono_mono: dict[tuple[Monomial, Monomial], dict] = {}
        self._zero_m = (0,) * n

    # -- dict-level helpers --------------------------------------------------

    def _axpy(self, acc: dict, a, poly: Mapping) -> None:
        """acc += a * poly (a on the left)."""
        dom = self.coeffs
        if dom.is_zero(a):
            return
        one = a == dom.one if not hasattr(a, "alg") else False
        for m, c in poly.items():
            v = c if one else dom.mul(a, c)
            if m in acc:
                acc[m] = dom.add(acc[m], v)
            else:
                acc[m] = v

    def _clean(self, d: dict) -> dict:
        z = self.coeffs.is_zero
        return {m: c for m, c in d.items() if not z(c)}

    def _var_times_mono(self, i: int, m: Monomial) -> dict:
        key = (i, m)
        hit = self._var_mono.get(key)
        if hit is not None:
            return hit
        dom = self.coeffs
        j = next((k for k, e in enumerate(m) if e), None)
        if j is None or j >= i:
            out = {mono_add(m, unit_vector(self.n, i)): dom.one}
        else:
            c, tail = self._rel[(j, i)]
            m1 = tuple(e - 1 if k == j else e for k, e in enumerate(m))
            out: dict = {}
            self._axpy(out, c, self._left_var(j, self._var_times_mono(i, m1)))
            self._axpy(out, tail[0], {m1: dom.one})
            for k in range(self.n):
                self._axpy(out, tail[k + 1], self._var_times_mono(k, m1))
            out = self._clean(out)
        self._var_mono[key] = out
        return out

    def _left_var(self, i: int, poly: Mapping) -> dict:
        """x_i * poly."""
        dom = self.coeffs
        out: dict = {}
        for m, c in poly.items():
            s = dom.sigma(i, c)
            if not dom.is_zero(s):
                self._axpy(out, s, self._var_times_mono(i, m))
            d = dom.delta(i, c)
            if not dom.is_zero(d):
                out[m] = dom.add(out[m], d) if m in out else d
        return self._clean(out)

    def _left_coeff(self, r, poly: Mapping) -> dict:
        out: dict = {}
        self._axpy(out, r, poly)
        return self._clean(out)

    def _mono_times_coeff(self, alpha: Monomial, r) -> dict:
        key = (alpha, r)
        hit = self._mono_coeff.get(key)
        if hit is None:
            poly = {self._zero_m: r} if not self.coeffs.is_zero(r) else {}
            for i in range(self.n - 1, -1, -1):
                for _ in range(alpha[i]):
                    poly = self._left_var(i, poly)
            hit = self._mono_coeff[key] = poly
        return hit

    def _mono_times_mono(self, alpha: Monomial, beta: Monomial) -> dict:
        key = (alpha, beta)
        hit = self._mono_mono.get(key)
        if hit is None:
            poly = {beta: self.coeffs.one}
            for i in range(self.n - 1, -1, -1):
                for _ in range(alpha[i]):
                    poly = self._left_var(i, poly)
            hit = self._mono_mono[key] = poly
        return hit

    # -- public arithmetic -----------------------------------------------------

    def poly(self, terms: Mapping[Monomial, Any] | None = None) -> SkewPoly:
        return SkewPoly(self, terms or {})

    def zero(self) -> SkewPoly:
        return SkewPoly(self, {})

    def one(self) -> SkewPoly:
        return SkewPoly(self, {self._zero_m: self.coeffs.one})

    def const(self, r) -> SkewPoly:
        return SkewPoly(self, {self._zero_m: r})

    def var(self, i: int) -> SkewPoly:
        """The variable x_i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} outside 1..{self.n}")
        return SkewPoly(self, {unit_vector(self.n, i - 1): self.coeffs.one})

    def monomial(self, alpha: Sequence[int], coeff=None) -> SkewPoly:
        c = self.coeffs.one if coeff is None else coeff
        return SkewPoly(self, {tuple(alpha): c})

    def _check(self, *polys: SkewPoly) -> None:
        for f in polys:
            if f.alg is not self:
                raise ValueError("polynomials belong to different presentations")

    def add(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        self._check(f, g)
        dom = self.coeffs
        out = dict(f.terms)
        for m, c in g.terms.items():
            out[m] = dom.add(out[m], c) if m in out else c
        return SkewPoly(self, out)

    def neg(self, f: SkewPoly) -> SkewPoly:
        self._check(f)
        return SkewPoly(self, {m: self.coeffs.neg(c) for m, c in f.terms.items()})

    def scale(self, r, f: SkewPoly) -> SkewPoly:
        """r * f with r a coefficient on the left."""
        self._check(f)
        return SkewPoly(self, self._left_coeff(r, f.terms))

    def mul(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        """Normal form of f*g: each term pair is the word a x^alpha b x^beta."""
        self._check(f, g)
        dom = self.coeffs
        out: dict = {}
        for alpha, a in f.terms.items():
            for beta, b in g.terms.items():
                for gamma, d in self._mono_times_coeff(alpha, b).items():
                    self._axpy(out, dom.mul(a, d), self._mono_times_mono(gamma, beta))
        return SkewPoly(self, self._clean(out))

    def power(self, f: SkewPoly, k: int) -> SkewPoly:
        if k < 0:
            raise ValueError("negative power")
        out = self.one()
        for _ in range(k):
            out = self.mul(out, f)
        return out

    def product(self, *polys: SkewPoly) -> SkewPoly:
        out = self.one()
        for p in polys:
            out = self.mul(out, p)
        return out

    def normal_form(self, word: Sequence[tuple[str, Any]]) -> SkewPoly:
        """Normal form of a word of letters ("c", coeff) and ("x", i) with 1-based i."""
        poly: dict = {self._zero_m: self.coeffs.one}
        for kind, v in reversed(tuple(word)):
            if kind == "c":
                poly = self._left_coeff(v, poly)
            elif kind == "x":
                if not 1 <= v <= self.n:
                    raise IndexError(f"variable index {v} outside 1..{self.n}")
                poly = self._left_var(v - 1, poly)
            else:
                raise ValueError(f"unknown letter {kind!r}")
        return SkewPoly(self, poly)

    def normal_form_sum(self, words: Iterable[Sequence[tuple[str, Any]]]) -> SkewPoly:
        out = self.zero()
        for w in words:
            out = out + self.normal_form(w)
        return out

    def var_times_coeff(self, i: int, r) -> SkewPoly:
        """x_i r = sigma_i(r) x_i + delta_i(r)."""
        return self.normal_form([("x", i), ("c", r)])

    def mono_times_coeff(self, alpha: Sequence[int], r) -> ProductDecomposition:
        alpha = tuple(alpha)
        poly = SkewPoly(self, self._mono_times_coeff(alpha, r))
        lead = poly.coeff(alpha)
        tail = SkewPoly(self, {m: c for m, c in poly.terms.items() if m != alpha})
        return ProductDecomposition(alpha, lead, tail)

    def mono_times_mono(self, alpha: Sequence[int], beta: Sequence[int]) -> ProductDecomposition:
        alpha, beta = tuple(alpha), tuple(beta)
        target = mono_add(alpha, beta)
        poly = SkewPoly(self, self._mono_times_mono(alpha, beta))
        lead = poly.coeff(target)
        tail = SkewPoly(self, {m: c for m, c in poly.terms.items() if m != target})
        return ProductDecomposition(target, lead, tail)

    def leading(self, f: SkewPoly) -> Leading:
        self._check(f)
        if f.is_zero:
            return Leading(None, self.coeffs.zero, self.zero(), None, None)
        lm = max(f.terms, key=self.order.key)
        lc = f.terms[lm]
        return Leading(lm, lc, SkewPoly(self, {lm: lc}), lm, f.degree)

    def relation(self, i: int, j: int) -> tuple[Any, tuple]:
        """(c_ij, (r0, r1..rn)) for 1-based i < j."""
        return self._rel[(i - 1, j - 1)]

    # -- printing ----------------------------------------------------------------

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.var_names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def format(self, f: SkewPoly) -> str:
        dom = self.coeffs
        if f.is_zero:
            return f"[{dom.fmt(dom.zero)}]"
        out = []
        for m, c in f.items():
            mono = self.format_monomial(m)
            if not mono:
                out.append(f"[{dom.fmt(c)}]")
            elif c == dom.one:
                out.append(mono)
            else:
                out.append(f"[{dom.fmt(c)}]*{mono}")
        return " + ".join(out)

    def parse(self, text: str) -> SkewPoly:
        from .exprparse import parse_expr

        return parse_expr(self, text)


# ---------------------------------------------------------------------------
# Finite-coefficient presentations


@dataclass(frozen=True)
class PresentationFlags:
    quasi_commutative: bool
    endomorphism_type: bool
    bijective: bool
    c_central: bool
    tails_central: bool


class PBWPresentation(PolyAlgebra):
    """sigma(R)<x_1..x_n> over a tabulated ring.

    ``c`` and ``tails`` are keyed by 1-based pairs (i, j) with i < j; a
    missing c defaults to 1 and a missing tail to zero.
    """

    def __init__(self, ring: FiniteRing, var_names: Sequence[str], system: SigmaDeltaSystem | None = None,
                 c: Mapping[tuple[int, int], int] | None = None,
                 tails: Mapping[tuple[int, int], Sequence[int]] | None = None,
                 order: MonomialOrder | str = DEGLEX, name: str = ""):
        n = len(var_names)
        if len(set(var_names)) != n:
            raise PresentationError("variable names must be distinct")
        if system is None:
            system = SigmaDeltaSystem.trivial(ring, n)
        if system.ring is not ring:
            raise PresentationError("system acts on a different ring")
        if system.n != n:
            raise PresentationError(f"system has {system.n} maps for {n} variables")
        if isinstance(order, str):
            order = MonomialOrder(order)
        c = dict(c or {})
        tails = dict(tails or {})
        for key in list(c) + list(tails):
            i, j = key
            if not 1 <= i < j <= n:
                raise PresentationError(f"relation pair {key} must satisfy 1 <= i < j <= {n}")
        self.ring = ring
        self.system = system
        self.c = {(i, j): int(c.get((i, j), ring.one)) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        self.tails = {}
        for key in self.c:
            t = tuple(int(v) for v in tails.get(key, (ring.zero,) * (n + 1)))
            if len(t) != n + 1:
                raise PresentationError(f"tail for {key} needs {n + 1} constants (r0..r{n})")
            self.tails[key] = t
        relations = {(i - 1, j - 1): (self.c[(i, j)], self.tails[(i, j)]) for (i, j) in self.c}
        super().__init__(n, var_names, FiniteCoefficients(ring, system), order, relations, name)

    def __repr__(self):
        return f"PBWPresentation(name={self.name!r}, ring={self.ring.name!r}, vars={self.var_names})"

    def with_order(self, order: MonomialOrder | str) -> "PBWPresentation":
        return PBWPresentation(self.ring, self.var_names, self.system, self.c, self.tails, order, self.name)

    @cached_property
    def flags(self) -> PresentationFlags:
        R = self.ring
        delta_zero = self.system.all_delta_zero
        tails_zero = all(v == R.zero for t in self.tails.values() for v in t)
        return PresentationFlags(
            quasi_commutative=delta_zero and tails_zero,
            endomorphism_type=delta_zero,
            bijective=all(s.is_bijective for s in self.system.sigmas) and all(v in R.units for v in self.c.values()),
            c_central=all(R.is_central(v) for v in self.c.values()),
            tails_central=all(R.is_central(v) for t in self.tails.values() for v in t),
        )

    def var_index(self, name: str) -> int:
        try:
            return self.var_names.index(name) + 1
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def relation_words(self, i: int, j: int) -> list[list[tuple[str, Any]]]:
        """Right-hand side of x_j x_i as a list of words (1-based i < j)."""
        c, tail = self.relation(i, j)
        out = [[("c", c), ("x", i), ("x", j)], [("c", tail[0])]]
        out += [[("c", tail[k]), ("x", k)] for k in range(1, self.n + 1)]
        return out


def check_presentation(P: PBWPresentation) -> ValidationResult:
    """Diamond-lemma check: resolve every overlap ambiguity of the reduction system.

    Witness tuples: c_invertible (i, j); O1 (i, j, k); O2 (i, j, r); O3 (i, r, s).
    The message carries both normal forms of a failing overlap.
    """
    res = P.system.validate()
    if not res:
        return ValidationResult(False, "system", res.witness, f"{res.axiom} {res.message}".strip())
    R = P.ring
    for (i, j), c in sorted(P.c.items()):
        if c not in R.units:
            return ValidationResult(False, "c_invertible", (i, j), f"c_{i},{j} = {R.label(c)} is not invertible")
    n = P.n

    def times_right(words, tail_letters):
        return [list(w) + list(tail_letters) for w in words]

    def differ(tag, wit, left, right):
        return ValidationResult(False, tag, wit, f"{P.format(left)} != {P.format(right)}")

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                left = P.normal_form_sum(times_right(P.relation_words(j, k), [("x", i)]))
                right = P.normal_form_sum([[("x", k)] + w for w in P.relation_words(i, j)])
                if left != right:
                    return differ("O1", (i, j, k), left, right)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for r in R.elements:
                left = P.normal_form_sum(times_right(P.relation_words(i, j), [("c", r)]))
                right = P.normal_form_sum([
                    [("x", j), ("c", P.system.sigma(i)(r)), ("x", i)],
                    [("x", j), ("c", P.system.delta(i)(r))],
                ])
                if left != right:
                    return differ("O2", (i, j, r), left, right)
    for i in range(1, n + 1):
        s_i, d_i = P.system.sigma(i), P.system.delta(i)
        for r in R.elements:
            for s in R.elements:
                left = P.normal_form_sum([[("c", s_i(r)), ("x", i), ("c", s)], [("c", d_i(r)), ("c", s)]])
                rs = R.mul(r, s)
                right = P.normal_form_sum([[("c", s_i(rs)), ("x", i)], [("c", d_i(rs))]])
                if left != right:
                    return differ("O3", (i, r, s), left, right)
    return OK


def require_valid(P: PBWPresentation) -> None:
    res = check_presentation(P)
    if not res:
        raise PresentationError(f"presentation {P.name or ''} fails {res.axiom} at {res.witness}: {res.message}")


# ---------------------------------------------------------------------------
# Independent word rewriting (strategy-parameterised)


def rewrite_word(P: PBWPresentation, word: Sequence[tuple[str, Any]], strategy: str = "leftmost") -> SkewPoly:
    """Reduce a word by single rewriting steps until no redex remains.

    ``strategy`` picks the leftmost or rightmost redex at each step.  This
    is deliberately naive (no memoisation) and serves as an oracle for the
    folding engine.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    R = P.ring
    S = P.system
    start = tuple(word)
    if not start or start[0][0] != "c":
        start = (("c", R.one),) + start
    pending: Counter = Counter({start: 1})
    done: Counter = Counter()

    def redexes(w):
        for p in range(len(w) - 1):
            (k1, v1), (k2, v2) = w[p], w[p + 1]
            if k1 == "c" and k2 == "c":
                yield p
            elif k1 == "x" and k2 == "c":
                yield p
            elif k1 == "x" and k2 == "x" and v1 > v2:
                yield p

    while pending:
        w, mult = pending.popitem()
        if any(k == "c" and v == R.zero for k, v in w):
            continue
        found = list(redexes(w))
        if not found:
            done[w] += mult
            continue
        p = found[0] if strategy == "leftmost" else found[-1]
        (k1, v1), (k2, v2) = w[p], w[p + 1]
        pre, post = w[:p], w[p + 2:]
        if k1 == "c":
            repl = [(("c", R.mul(v1, v2)),)]
        elif k2 == "c":
            repl = [(("c", S.sigma(v1)(v2)), ("x", v1)), (("c", S.delta(v1)(v2)),)]
        else:
            repl = [tuple(tuple(x) for x in rw) for rw in P.relation_words(v2, v1)]
        for rw in repl:
            pending[pre + tuple(rw) + post] += mult

    out: dict = {}
    for w, mult in done.items():
        coeff = w[0][1]
        m = [0] * P.n
        for _, v in w[1:]:
            m[v - 1] += 1
        m = tuple(m)
        for _ in range(mult):
            out[m] = R.add(out.get(m, R.zero), coeff)
    return P.poly(out)


def word_of_term(alpha: Sequence[int], coeff=None) -> list[tuple[str, Any]]:
    """The word (coeff) x_1^a1 ... x_n^an."""
    w: list[tuple[str, Any]] = [] if coeff is None else [("c", coeff)]
    for i, a in enumerate(alpha, start=1):
        w += [("x", i)] * a
    return w


# ---------------------------------------------------------------------------
# Extended maps on A


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    witness: tuple | None = None
    note: str = ""


@dataclass
class ExtendedMaps:
    """Coefficientwise sigma-bar / delta-bar on A, available only when ``ok``."""

    presentation: PBWPresentation
    hypotheses: list[Hypothesis]

    @property
    def ok(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    def _require(self):
        if not self.ok:
            failed = ", ".join(h.name for h in self.hypotheses if not h.holds)
            raise PresentationError(f"extended maps unavailable; failing hypotheses: {failed}")

    def sigma_bar(self, k: int, f: SkewPoly) -> SkewPoly:
        self._require()
        s = self.presentation.system.sigma(k)
        return self.presentation.poly({m: s(c) for m, c in f.terms.items()})

    def delta_bar(self, k: int, f: SkewPoly) -> SkewPoly:
        self._require()
        d = self.presentation.system.delta(k)
        return self.presentation.poly({m: d(c) for m, c in f.terms.items()})


def extend_maps(P: PBWPresentation) -> ExtendedMaps:
    """Check the hypotheses under which sigma_k, delta_k extend coefficientwise to A."""
    R, S, n = P.ring, P.system, P.n
    hyps: list[Hypothesis] = []

    def sweep(name, test):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for r in R.elements:
                    if not test(i, j, r):
                        hyps.append(Hypothesis(name, False, (i, j, r)))
                        return
        hyps.append(Hypothesis(name, True))

    sweep("sigma_delta_commute", lambda i, j, r: S.sigma(i)(S.delta(j)(r)) == S.delta(j)(S.sigma(i)(r)))
    sweep("delta_delta_commute", lambda i, j, r: S.delta(i)(S.delta(j)(r)) == S.delta(j)(S.delta(i)(r)))
    wit = next(((k, i, j) for k in range(1, n + 1) for (i, j), c in sorted(P.c.items())
                if S.delta(k)(c) != R.zero), None)
    hyps.append(Hypothesis("delta_kills_c", wit is None, wit))
    wit = next(((k, i, j, l) for k in range(1, n + 1) for (i, j), t in sorted(P.tails.items())
                for l, r in enumerate(t) if S.delta(k)(r) != R.zero), None)
    hyps.append(Hypothesis("delta_kills_tails", wit is None, wit))
    return ExtendedMaps(P, hyps)


# ---------------------------------------------------------------------------
# Quotient extensions


@dataclass
class QuotientExtension:
    """A/IA as a presentation over R/I, with the coefficientwise projection."""

    source: PBWPresentation
    ideal: Ideal
    presentation: PBWPresentation
    projection: tuple[int, ...]
    intersection: frozenset[int] = field(default_factory=frozenset)

    def project(self, f: SkewPoly) -> SkewPoly:
        p = self.projection
        out: dict = {}
        Q = self.presentation.ring
        for m, c in f.terms.items():
            out[m] = Q.add(out.get(m, Q.zero), p[c])
        return self.presentation.poly(out)


def quotient_extension(P: PBWPresentation, I: Ideal) -> QuotientExtension:
    if I.ring is not P.ring:
        raise PresentationError("ideal belongs to a different ring")
    if not I.is_proper:
        raise PresentationError("the ideal must be proper")
    for flavor in ("both", "sigma_onto"):
        res = is_invariant_ideal(P.system, I, flavor)
        if not res:
            a, i, kind = res.witness
            raise PresentationError(f"ideal fails {flavor} invariance: {kind}_{i} at {P.ring.label(a)}")
    T, proj = induced_quotient_system(P.system, I)
    Q = T.ring
    c = {k: proj[v] for k, v in P.c.items()}
    tails = {k: tuple(proj[v] for v in t) for k, t in P.tails.items()}
    Pq = PBWPresentation(Q, P.var_names, T, c, tails, P.order, f"{P.name}/I" if P.name else "")
    require_valid(Pq)
    qe = QuotientExtension(P, I, Pq, proj)
    inter = frozenset(r for r in P.ring.elements if qe.project(P.const(r)).is_zero)
    if inter != I.members:
        raise PresentationError("IA ∩ R differs from I")
    qe.intersection = inter
    return qe


# ---------------------------------------------------------------------------
# Tower A' = sigma(A)<x'_1..x'_n>


DEFAULT_TOWER_MAX_DEGREE = 8
DEFAULT_TOWER_MAX_TERMS = 64


class PolyCoefficients:
    """Coefficients drawn from A itself, with caps on degree and term count."""

    def __init__(self, maps: ExtendedMaps, max_degree: int, max_terms: int):
        self.base = maps.presentation
        self.maps = maps
        self.zero = self.base.zero()
        self.one = self.base.one()
        self.max_degree = max_degree
        self.max_terms = max_terms

    def _capped(self, f: SkewPoly) -> SkewPoly:
        if len(f) > self.max_terms or (f.degree or 0) > self.max_degree:
            raise CapExceeded(
                f"tower coefficient exceeds cap (degree {f.degree} / {self.max_degree}, "
                f"terms {len(f)} / {self.max_terms})"
            )
        return f

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return self._capped(a * b)

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero

    def sigma(self, i: int, a):
        return self.maps.sigma_bar(i + 1, a)

    def delta(self, i: int, a):
        return self.maps.delta_bar(i + 1, a)

    def fmt(self, a) -> str:
        return str(a)


class TowerPresentation(PolyAlgebra):
    """Deferred-evaluation extension of A with the coefficientwise extended maps.

    Relations between the new variables reuse c_ij and the tail constants of
    A, embedded as constant polynomials.  Only capped arithmetic is offered.
    """

    def __init__(self, base: PBWPresentation, maps: ExtendedMaps,
                 max_degree: int = DEFAULT_TOWER_MAX_DEGREE, max_terms: int = DEFAULT_TOWER_MAX_TERMS):
        self.base = base
        self.maps = maps
        dom = PolyCoefficients(maps, max_degree, max_terms)
        relations = {
            (i - 1, j - 1): (base.const(base.c[(i, j)]), tuple(base.const(v) for v in base.tails[(i, j)]))
            for (i, j) in base.c
        }
        names = [f"{v}'" for v in base.var_names]
        super().__init__(base.n, names, dom, base.order, relations, f"{base.name}'" if base.name else "")

    def lift(self, f: SkewPoly) -> SkewPoly:
        """Embed an element of A as a constant of A'."""
        return self.const(f)


def tower_presentation(P: PBWPresentation, max_degree: int = DEFAULT_TOWER_MAX_DEGREE,
                       max_terms: int = DEFAULT_TOWER_MAX_TERMS) -> TowerPresentation:
    maps = extend_maps(P)
    if not maps.ok:
        failed = [h for h in maps.hypotheses if not h.holds]
        raise PresentationError(
            "cannot build the tower: " + ", ".join(f"{h.name} fails at {h.witness}" for h in failed)
        )
    return TowerPresentation(P, maps, max_degree, max_terms)


def iter_box(P: PolyAlgebra, max_terms: int, max_deg: int, coefficients: Sequence | None = None) -> Iterator[SkewPoly]:
    """Every polynomial with at most ``max_terms`` terms of degree <= ``max_deg``.

    Deterministic order: term count, then monomial combination, then coefficients.
    """
    import itertools

    monos = monomials_up_to(P.n, max_deg, P.order)
    if coefficients is None:
        coefficients = [r for r in P.ring.elements if r != P.ring.zero]
    yield P.zero()
    for k in range(1, max_terms + 1):
        for combo in itertools.combinations(monos, k):
            for coeffs in itertools.product(coefficients, repeat=k):
                yield P.poly(dict(zip(combo, coeffs)))


def box_size(P: PolyAlgebra, max_terms: int, max_deg: int) -> int:
    from math import comb

    m = len(monomials_up_to(P.n, max_deg))
    q = P.ring.order - 1
    return sum(comb(m, k) * q**k for k in range(0, max_terms + 1))
