"""Fully tabulated finite unital rings.

Elements are the integers ``0..order-1``; addition and multiplication are
lookup tables.  Compound rings (truncated polynomials, products, 2x2
upper-triangular matrices) are encoded little-endian: the first component
is the least significant digit of the element index.  With that encoding
``(1,0)`` precedes ``(0,1)`` and ``t`` in ``Z/2[t]/(t^d)`` is index 2.

Every quantifier check here is exhaustive, so the default predicate cap
keeps the O(order^3) sweeps at desk scale.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import CapExceeded, RingSpecError

DEFAULT_SIZE_CAP = 4096
DEFAULT_PREDICATE_CAP = 64
PREDICATE_CAP_ENV = "SKEWPBW_PREDICATE_CAP"

PROPERTIES = (
    "reduced",
    "symmetric",
    "reversible",
    "semicommutative",
    "weak_symmetric",
    "abelian",
    "commutative",
)


def predicate_cap(cap: int | None = None) -> int:
    """Resolve the predicate cap: explicit value, environment, or default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get(PREDICATE_CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_PREDICATE_CAP


def check_cap(ring: "FiniteRing", cap: int | None) -> None:
    limit = predicate_cap(cap)
    if ring.order > limit:
        raise CapExceeded(
            f"ring {ring.name or '<anonymous>'} has order {ring.order} > predicate cap {limit}"
        )


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of a structural check: ok, or the first failing axiom."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = ValidationResult(True)


def _first(mask: np.ndarray) -> tuple | None:
    """Lexicographically smallest index where ``mask`` is true."""
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


@dataclass(frozen=True, eq=False)
class FiniteRing:
    add_table: np.ndarray
    mul_table: np.ndarray
    zero: int
    one: int
    labels: tuple[str, ...]
    name: str = ""
    spec: "RingSpec | None" = field(default=None, repr=False)

    def __post_init__(self):
        for tab in ("add_table", "mul_table"):
            arr = np.array(getattr(self, tab), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, tab, arr)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    def __repr__(self):
        return f"FiniteRing(name={self.name!r}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = int(self.mul_table[r, a])
        return r

    def prod(self, factors: Iterable[int]) -> int:
        r = self.one
        for f in factors:
            r = int(self.mul_table[r, f])
        return r

    def total(self, terms: Iterable[int]) -> int:
        r = self.zero
        for t in terms:
            r = int(self.add_table[r, t])
        return r

    def label(self, a: int) -> str:
        return self.labels[a]

    def element(self, label: str | int) -> int:
        """Element index for a label (ints are accepted as indices)."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.order:
                return int(label)
            raise KeyError(f"element index {label} out of range for order {self.order}")
        key = str(label).replace(" ", "")
        try:
            return self._label_index[key]
        except KeyError:
            raise KeyError(f"unknown element label {label!r} in ring {self.name or '<anonymous>'}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab.replace(" ", ""): i for i, lab in enumerate(self.labels)}

    @cached_property
    def neg_table(self) -> np.ndarray:
        hits = self.add_table == self.zero
        out = np.argmax(hits, axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def nil_index(self) -> np.ndarray:
        """Least m >= 1 with r^m = 0, or 0 when r is not nilpotent.

        The power sequence of r cycles within ``order`` steps, so checking
        exponents up to ``order`` is exhaustive.
        """
        idx = np.zeros(self.order, dtype=np.int64)
        p = np.arange(self.order)
        base = np.arange(self.order)
        for m in range(1, self.order + 1):
            hit = (p == self.zero) & (idx == 0)
            idx[hit] = m
            p = self.mul_table[p, base]
        idx.setflags(write=False)
        return idx

    @cached_property
    def nil_mask(self) -> np.ndarray:
        mask = self.nil_index > 0
        mask.setflags(write=False)
        return mask

    def is_nilpotent(self, a: int) -> bool:
        return bool(self.nil_mask[a])

    @cached_property
    def units(self) -> frozenset[int]:
        left = self.mul_table == self.one
        both = left & left.T
        return frozenset(int(a) for a in np.nonzero(both.any(axis=1))[0])

    def inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.mul_table[a, b] == self.one and self.mul_table[b, a] == self.one:
                return b
        raise ValueError(f"{self.label(a)} is not invertible")

    def is_left_invertible(self, a: int) -> bool:
        return bool((self.mul_table[:, a] == self.one).any())

    def is_central(self, a: int) -> bool:
        return bool((self.mul_table[a, :] == self.mul_table[:, a]).all())


# ---------------------------------------------------------------------------
# Specs


@dataclass(frozen=True)
class RingSpec:
    """Recipe for a finite ring.

    ``kind`` is one of ``zn``, ``trunc_poly``, ``product``, ``ut2``, ``table``.
    """

    kind: str
    params: Mapping[str, Any]

    @classmethod
    def zn(cls, n: int) -> "RingSpec":
        return cls("zn", {"n": int(n)})

    @classmethod
    def trunc_poly(cls, base: "RingSpec", degree: int, var: str = "t") -> "RingSpec":
        return cls("trunc_poly", {"base": base, "degree": int(degree), "var": var})

    @classmethod
    def product(cls, *factors: "RingSpec") -> "RingSpec":
        return cls("product", {"factors": tuple(factors)})

    @classmethod
    def ut2(cls, base: "RingSpec") -> "RingSpec":
        return cls("ut2", {"base": base})

    @classmethod
    def table(cls, add, mul, zero=0, one=None, labels=None) -> "RingSpec":
        return cls("table", {"add": add, "mul": mul, "zero": zero, "one": one, "labels": labels})

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], resolve=None) -> "RingSpec":
        """Build a spec from a parsed config tree.

        ``resolve`` maps a string reference to a spec (used for named bases).
        """
        if isinstance(data, RingSpec):
            return data
        if isinstance(data, str):
            if resolve is None:
                raise RingSpecError(f"cannot resolve ring reference {data!r}")
            return resolve(data)
        if not isinstance(data, Mapping) or "kind" not in data:
            raise RingSpecError(f"ring spec needs a 'kind' field: {data!r}")
        kind = data["kind"]
        sub = lambda d: cls.from_mapping(d, resolve)  # noqa: E731
        try:
            if kind == "zn":
                return cls.zn(data["n"])
            if kind == "trunc_poly":
                return cls.trunc_poly(sub(data["base"]), data["degree"], data.get("var", "t"))
            if kind == "product":
                return cls.product(*[sub(f) for f in data["factors"]])
            if kind == "ut2":
                return cls.ut2(sub(data["base"]))
            if kind == "table":
                return cls.table(
                    data["add"], data["mul"], data.get("zero", 0), data.get("one"), data.get("labels")
                )
        except KeyError as exc:
            raise RingSpecError(f"ring spec of kind {kind!r} is missing field {exc}") from None
        raise RingSpecError(f"unknown ring kind {kind!r}")

    def to_mapping(self) -> dict:
        p = self.params
        if self.kind == "zn":
            return {"kind": "zn", "n": p["n"]}
        if self.kind == "trunc_poly":
            out = {"kind": "trunc_poly", "base": p["base"].to_mapping(), "degree": p["degree"]}
            if p.get("var", "t") != "t":
                out["var"] = p["var"]
            return out
        if self.kind == "product":
            return {"kind": "product", "factors": [f.to_mapping() for f in p["factors"]]}
        if self.kind == "ut2":
            return {"kind": "ut2", "base": p["base"].to_mapping()}
        out = {"kind": "table", "add": [list(r) for r in p["add"]], "mul": [list(r) for r in p["mul"]]}
        for key in ("zero", "one", "labels"):
            if p.get(key) is not None:
                out[key] = list(p[key]) if key == "labels" else p[key]
        return out

    def expected_order(self) -> int:
        p = self.params
        if self.kind == "zn":
            return p["n"]
        if self.kind == "trunc_poly":
            return p["base"].expected_order() ** p["degree"]
        if self.kind == "product":
            return int(np.prod([f.expected_order() for f in p["factors"]]))
        if self.kind == "ut2":
            return p["base"].expected_order() ** 3
        return len(p["add"])

    def describe(self) -> str:
        p = self.params
        if self.kind == "zn":
            return f"Z/{p['n']}"
        if self.kind == "trunc_poly":
            v = p.get("var", "t")
            return f"{p['base'].describe()}[{v}]/({v}^{p['degree']})"
        if self.kind == "product":
            return "x".join(f.describe() for f in p["factors"])
        if self.kind == "ut2":
            return f"UT2({p['base'].describe()})"
        return f"table({len(p['add'])})"


def _wrap(label: str) -> str:
    return f"({label})" if any(ch in label for ch in "+*,") else label


def _digits(radices: Sequence[int]) -> np.ndarray:
    """All digit vectors, row i being the little-endian expansion of i."""
    grids = itertools.product(*[range(r) for r in reversed(radices)])
    return np.array([tuple(reversed(g)) for g in grids], dtype=np.int64).reshape(-1, len(radices))


def _encode(digits: np.ndarray, radices: Sequence[int]) -> np.ndarray:
    weights = np.cumprod([1] + list(radices[:-1]))
    return (digits * weights).sum(axis=-1)


def _tabulate(radices, add_digits, mul_digits):
    d = _digits(radices)
    left, right = d[:, None, :], d[None, :, :]
    return d, _encode(add_digits(left, right), radices), _encode(mul_digits(left, right), radices)


def ring_of_spec(spec: RingSpec | Mapping, cap: int = DEFAULT_SIZE_CAP, name: str = "") -> FiniteRing:
    """Expand a spec into a validated FiniteRing.

    Raises RingSpecError when the order would exceed ``cap`` or an
    explicit table violates a ring axiom.  The other constructions are
    rings by construction and skip the cubic axiom sweep.
    """
    if not isinstance(spec, RingSpec):
        spec = RingSpec.from_mapping(spec)
    size = spec.expected_order()
    if size > cap:
        raise RingSpecError(f"{spec.describe()} has order {size}, above the size cap {cap}")
    if size < 1:
        raise RingSpecError("a ring needs at least one element")
    ring = _build(spec, cap, name or spec.describe())
    if spec.kind != "table":
        return ring
    result = validate_ring(ring)
    if not result:
        raise RingSpecError(
            f"{spec.describe()} is not a ring: {result.axiom} fails at {result.witness}"
            + (f" ({result.message})" if result.message else "")
        )
    return ring


def _build(spec: RingSpec, cap: int, name: str) -> FiniteRing:
    p = spec.params
    kind = spec.kind
    if kind == "zn":
        n = p["n"]
        if n < 1:
            raise RingSpecError("zn needs n >= 1")
        i = np.arange(n)
        return FiniteRing(
            (i[:, None] + i[None, :]) % n, (i[:, None] * i[None, :]) % n, 0, 1 % n,
            [str(v) for v in range(n)], name, spec,
        )
    if kind == "table":
        add = np.array(p["add"], dtype=np.int64)
        mul = np.array(p["mul"], dtype=np.int64)
        n = add.shape[0] if add.ndim == 2 else 0
        labels = p.get("labels") or [str(v) for v in range(n)]
        one = p.get("one")
        if one is None:
            one = _find_identity(mul)
        if one is None:
            one = -1
        return FiniteRing(add, mul, int(p.get("zero", 0) or 0), int(one), labels, name, spec)

    if kind == "trunc_poly":
        base = ring_of_spec(p["base"], cap)
        deg = p["degree"]
        if deg < 1:
            raise RingSpecError("trunc_poly needs degree >= 1")
        B = base.order
        ba, bm = base.add_table, base.mul_table

        def add_d(u, v):
            return ba[u, v]

        def mul_d(u, v):
            shape = np.broadcast_shapes(u.shape, v.shape)
            out = np.full(shape, base.zero, dtype=np.int64)
            for i in range(deg):
                for j in range(deg - i):
                    out[..., i + j] = ba[out[..., i + j], bm[u[..., i], v[..., j]]]
            return out

        digits, add, mul = _tabulate([B] * deg, add_d, mul_d)
        var = p.get("var", "t")
        labels = [_poly_label(base, row, var) for row in digits]
        one = int(_encode(np.array([base.one] + [base.zero] * (deg - 1)), [B] * deg))
        zero = int(_encode(np.array([base.zero] * deg), [B] * deg))
        return FiniteRing(add, mul, zero, one, labels, name, spec)

    if kind == "product":
        factors = [ring_of_spec(f, cap) for f in p["factors"]]
        if not factors:
            raise RingSpecError("product needs at least one factor")
        radices = [f.order for f in factors]

        def add_d(u, v):
            return np.stack([f.add_table[u[..., k], v[..., k]] for k, f in enumerate(factors)], axis=-1)

        def mul_d(u, v):
            return np.stack([f.mul_table[u[..., k], v[..., k]] for k, f in enumerate(factors)], axis=-1)

        digits, add, mul = _tabulate(radices, add_d, mul_d)
        labels = ["(" + ",".join(f.label(int(d)) for f, d in zip(factors, row)) + ")" for row in digits]
        one = int(_encode(np.array([f.one for f in factors]), radices))
        zero = int(_encode(np.array([f.zero for f in factors]), radices))
        return FiniteRing(add, mul, zero, one, labels, name, spec)

    if kind == "ut2":
        base = ring_of_spec(p["base"], cap)
        B = base.order
        ba, bm = base.add_table, base.mul_table

        def add_d(u, v):
            return ba[u, v]

        def mul_d(u, v):
            a, b, c = u[..., 0], u[..., 1], u[..., 2]
            a2, b2, c2 = v[..., 0], v[..., 1], v[..., 2]
            return np.stack([bm[a, a2], ba[bm[a, b2], bm[b, c2]], bm[c, c2]], axis=-1)

        digits, add, mul = _tabulate([B] * 3, add_d, mul_d)
        z = base.label(base.zero)
        labels = [
            f"[[{base.label(int(a))},{base.label(int(b))}],[{z},{base.label(int(c))}]]" for a, b, c in digits
        ]
        one = int(_encode(np.array([base.one, base.zero, base.one]), [B] * 3))
        zero = int(_encode(np.array([base.zero] * 3), [B] * 3))
        return FiniteRing(add, mul, zero, one, labels, name, spec)

    raise RingSpecError(f"unknown ring kind {kind!r}")


def _poly_label(base: FiniteRing, coeffs, var: str) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[k])
        if c == base.zero:
            continue
        if k == 0:
            parts.append(base.label(c))
            continue
        mono = var if k == 1 else f"{var}^{k}"
        parts.append(mono if c == base.one else f"{_wrap(base.label(c))}*{mono}")
    return "+".join(parts) if parts else base.label(base.zero)


def _find_identity(mul: np.ndarray) -> int | None:
    if mul.ndim != 2:
        return None
    n = mul.shape[0]
    ident = np.arange(n)
    for e in range(n):
        if (mul[e] == ident).all() and (mul[:, e] == ident).all():
            return e
    return None


# ---------------------------------------------------------------------------
# Validation


def validate_ring(R: FiniteRing) -> ValidationResult:
    """Check every ring axiom exhaustively; report the first failure."""
    add, mul = R.add_table, R.mul_table
    n = len(R.labels)
    if add.shape != (n, n) or mul.shape != (n, n):
        return ValidationResult(False, "shape", None, f"tables must be {n}x{n}")
    if n and (add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n):
        return ValidationResult(False, "shape", None, "table entry out of range")
    if not (0 <= R.zero < n):
        return ValidationResult(False, "shape", None, "zero out of range")
    seen: dict[str, int] = {}
    for i, lab in enumerate(R.labels):
        if lab in seen:
            return ValidationResult(False, "labels", (seen[lab], i), f"duplicate label {lab!r}")
        seen[lab] = i

    e = np.arange(n)
    z = R.zero
    w = _first((add[:, z] != e) | (add[z, :] != e))
    if w is not None:
        return ValidationResult(False, "additive_identity", w)
    w = _first(add != add.T)
    if w is not None:
        return ValidationResult(False, "additive_commutativity", w)
    w = _first(add[add[:, :, None], e[None, None, :]] != add[e[:, None, None], add[None, :, :]])
    if w is not None:
        return ValidationResult(False, "additive_associativity", w)
    w = _first(~(add == z).any(axis=1))
    if w is not None:
        return ValidationResult(False, "additive_inverse", w)
    if not (0 <= R.one < n) or (mul[R.one] != e).any() or (mul[:, R.one] != e).any():
        return ValidationResult(False, "unity", (R.one,) if 0 <= R.one < n else None,
                                "no two-sided multiplicative identity")
    w = _first(mul[mul[:, :, None], e[None, None, :]] != mul[e[:, None, None], mul[None, :, :]])
    if w is not None:
        return ValidationResult(False, "multiplicative_associativity", w)
    # a(b+c) vs ab+ac, indexed (a, b, c)
    left = mul[e[:, None, None], add[None, :, :]]
    right = add[mul[:, :, None], mul[:, None, :]]
    w = _first(left != right)
    if w is not None:
        return ValidationResult(False, "left_distributivity", w)
    # (a+b)c vs ac+bc, indexed (a, b, c)
    left = mul[add[:, :, None], e[None, None, :]]
    right = add[mul[:, None, :], mul[None, :, :]]
    w = _first(left != right)
    if w is not None:
        return ValidationResult(False, "right_distributivity", w)
    return OK


# ---------------------------------------------------------------------------
# Element sets and properties


def nilpotents(R: FiniteRing) -> frozenset[int]:
    return frozenset(int(i) for i in np.nonzero(R.nil_mask)[0])


def idempotents(R: FiniteRing) -> frozenset[int]:
    e = np.arange(R.order)
    return frozenset(int(i) for i in np.nonzero(R.mul_table[e, e] == e)[0])


def _triple(mul):
    """abc over axes (a, b, c)."""
    return mul[mul[:, :, None], np.arange(mul.shape[0])[None, None, :]]


def property_witness(R: FiniteRing, prop: str, cap: int | None = None) -> tuple | None:
    """Smallest tuple violating ``prop``, or None when the property holds.

    Witness shapes: reduced (r,), commutative/reversible (a, b),
    symmetric/weak_symmetric (a, b, c), semicommutative (a, b, r),
    abelian (e, r).
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown ring property {prop!r}; expected one of {', '.join(PROPERTIES)}")
    check_cap(R, cap)
    mul, z = R.mul_table, R.zero
    e = np.arange(R.order)
    if prop == "reduced":
        return _first((mul[e, e] == z) & (e != z))
    if prop == "commutative":
        return _first(mul != mul.T)
    if prop == "reversible":
        return _first((mul == z) & (mul.T != z))
    abc = _triple(mul)
    acb = abc.transpose(0, 2, 1)
    if prop == "symmetric":
        return _first((abc == z) & (acb != z))
    if prop == "weak_symmetric":
        nil = R.nil_mask
        return _first(nil[abc] & ~nil[acb])
    if prop == "semicommutative":
        # abc read as (a, r, b): a r b
        arb = abc.transpose(0, 2, 1)  # axes (a, b, r)
        return _first((mul == z)[:, :, None] & (arb != z))
    # abelian
    idem = mul[e, e] == e
    return _first(idem[:, None] & (mul != mul.T))


def ring_property(R: FiniteRing, prop: str, cap: int | None = None) -> bool:
    return property_witness(R, prop, cap) is None


# ---------------------------------------------------------------------------
# Ideals and quotients


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(m) for m in self.members))

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring is self.ring and other.members == self.members

    def __hash__(self):
        return hash((id(self.ring), self.members))

    @property
    def is_proper(self) -> bool:
        return self.ring.one not in self.members

    def labels(self) -> list[str]:
        return [self.ring.label(m) for m in sorted(self.members)]

    def validate(self) -> ValidationResult:
        R = self.ring
        mem = self.members
        if R.zero not in mem:
            return ValidationResult(False, "contains_zero", (R.zero,))
        for a in sorted(mem):
            if R.neg(a) not in mem:
                return ValidationResult(False, "negation", (a,))
            for b in sorted(mem):
                if R.add(a, b) not in mem:
                    return ValidationResult(False, "addition", (a, b))
            for r in R.elements:
                if R.mul(r, a) not in mem:
                    return ValidationResult(False, "left_absorption", (r, a))
                if R.mul(a, r) not in mem:
                    return ValidationResult(False, "right_absorption", (a, r))
        return OK


def ideal_generated(R: FiniteRing, gens: Iterable[int]) -> Ideal:
    """Smallest two-sided ideal containing ``gens`` (closure to a fixed point)."""
    members = {R.zero} | {int(g) for g in gens}
    for g in members:
        if not 0 <= g < R.order:
            raise ValueError(f"generator {g} is not an element of the ring")
    while True:
        cur = np.array(sorted(members))
        grown = set(members)
        grown.update(int(v) for v in R.add_table[np.ix_(cur, cur)].ravel())
        grown.update(int(v) for v in R.neg_table[cur])
        grown.update(int(v) for v in R.mul_table[:, cur].ravel())
        grown.update(int(v) for v in R.mul_table[cur, :].ravel())
        if grown == members:
            return Ideal(R, frozenset(members))
        members = grown


def quotient(R: FiniteRing, I: Ideal) -> tuple[FiniteRing, tuple[int, ...]]:
    """Quotient ring on minimal coset representatives, plus the projection."""
    if I.ring is not R:
        raise ValueError("ideal belongs to a different ring")
    check = I.validate()
    if not check:
        raise ValueError(f"not an ideal: {check.axiom} fails at {check.witness}")
    mem = np.array(sorted(I.members))
    rep_of = [int(R.add_table[r, mem].min()) for r in R.elements]
    reps = sorted(set(rep_of))
    new_index = {r: k for k, r in enumerate(reps)}
    proj = tuple(new_index[rep_of[r]] for r in R.elements)
    p = np.array(proj)
    rp = np.array(reps)
    add = p[R.add_table[np.ix_(rp, rp)]]
    mul = p[R.mul_table[np.ix_(rp, rp)]]
    Q = FiniteRing(add, mul, proj[R.zero], proj[R.one], [R.label(r) for r in reps],
                   f"{R.name}/({','.join(I.labels())})")
    return Q, proj


def representatives(R: FiniteRing, I: Ideal) -> tuple[int, ...]:
    """Representative (minimal index) of each quotient element, in quotient order."""
    mem = np.array(sorted(I.members))
    return tuple(sorted({int(R.add_table[r, mem].min()) for r in R.elements}))


def is_homomorphism(R: FiniteRing, S: FiniteRing, f: Sequence[int]) -> tuple | None:
    """First (a, b) breaking f(a+b)=f(a)+f(b) or f(ab)=f(a)f(b); (one,) if f(1) != 1."""
    if f[R.one] != S.one:
        return (R.one,)
    fa = np.asarray(f)
    w = _first((fa[R.add_table] != S.add_table[fa[:, None], fa[None, :]])
               | (fa[R.mul_table] != S.mul_table[fa[:, None], fa[None, :]]))
    return w


def find_isomorphism(R: FiniteRing, S: FiniteRing, max_order: int = 9) -> tuple[int, ...] | None:
    """Brute-force search for a ring isomorphism R -> S (small orders only)."""
    if R.order != S.order:
        return None
    if R.order > max_order:
        raise CapExceeded(f"isomorphism search limited to order {max_order}")
    rest_r = [a for a in R.elements if a not in (R.zero, R.one)]
    rest_s = [a for a in S.elements if a not in (S.zero, S.one)]
    if R.order == 1:
        return (0,)
    for perm in itertools.permutations(rest_s):
        f = [0] * R.order
        f[R.zero], f[R.one] = S.zero, S.one
        for a, b in zip(rest_r, perm):
            f[a] = b
        if is_homomorphism(R, S, f) is None:
            return tuple(f)
    return None


# ---------------------------------------------------------------------------
# Built-in instances

BUILTIN_RINGS: dict[str, RingSpec] = {
    "z2": RingSpec.zn(2),
    "z4": RingSpec.zn(4),
    "z5": RingSpec.zn(5),
    "z8": RingSpec.zn(8),
    "z2xz2": RingSpec.product(RingSpec.zn(2), RingSpec.zn(2)),
    "z2t2": RingSpec.trunc_poly(RingSpec.zn(2), 2),
    "z2t4": RingSpec.trunc_poly(RingSpec.zn(2), 4),
    "ut2z2": RingSpec.ut2(RingSpec.zn(2)),
}


@lru_cache(maxsize=None)
def builtin_ring(name: str) -> FiniteRing:
    try:
        spec = BUILTIN_RINGS[name]
    except KeyError:
        raise RingSpecError(f"no built-in ring named {name!r}") from None
    return ring_of_spec(spec, name=name)
