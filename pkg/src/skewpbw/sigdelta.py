"""Endomorphism families, sigma-derivations, and the predicates built on them.

A *word* is a tuple of letters ``("sigma", i)`` / ``("delta", i)`` with
1-based ``i``.  Words compose like functions: ``apply_word(S, (w1, w2), r)``
is ``w1(w2(r))``, so the multi-index power sigma^alpha is the word
``sigma_1^a1 ... sigma_n^an`` with sigma_n applied first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import MapValidationError, NotInvariantError
from .finring import (
    OK,
    FiniteRing,
    Ideal,
    ValidationResult,
    _first,
    check_cap,
    quotient,
    representatives,
)

DEFAULT_WORD_LENGTH = 3

Letter = tuple[str, int]
Word = tuple[Letter, ...]


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict with the smallest witness when it is false."""

    holds: bool
    witness: tuple | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# Maps


@dataclass(frozen=True, eq=False)
class RingEndo:
    ring: FiniteRing
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))

    def __call__(self, r: int) -> int:
        return self.image[r]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.image, dtype=np.int64)
        a.setflags(write=False)
        return a

    @property
    def is_identity(self) -> bool:
        return self.image == tuple(self.ring.elements)

    @property
    def is_bijective(self) -> bool:
        return len(set(self.image)) == self.ring.order

    def validate(self) -> ValidationResult:
        R, f = self.ring, self.array
        if len(self.image) != R.order:
            return ValidationResult(False, "shape", None, "image length differs from ring order")
        if f[R.one] != R.one:
            return ValidationResult(False, "unital", (R.one,))
        w = _first(f[R.add_table] != R.add_table[f[:, None], f[None, :]])
        if w is not None:
            return ValidationResult(False, "additive", w)
        w = _first(f[R.mul_table] != R.mul_table[f[:, None], f[None, :]])
        if w is not None:
            return ValidationResult(False, "multiplicative", w)
        if not self.is_bijective:
            seen: dict[int, int] = {}
            for r, v in enumerate(self.image):
                if v in seen:
                    return ValidationResult(False, "injective", (seen[v], r))
                seen[v] = r
        return OK


@dataclass(frozen=True, eq=False)
class SigmaDerivation:
    ring: FiniteRing
    partner: RingEndo
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))

    def __call__(self, r: int) -> int:
        return self.image[r]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.image, dtype=np.int64)
        a.setflags(write=False)
        return a

    @property
    def is_zero(self) -> bool:
        return all(v == self.ring.zero for v in self.image)

    def validate(self) -> ValidationResult:
        R, d, s = self.ring, self.array, self.partner.array
        if len(self.image) != R.order:
            return ValidationResult(False, "shape", None, "image length differs from ring order")
        if self.partner.ring is not R:
            return ValidationResult(False, "partner", None, "partner acts on another ring")
        w = _first(d[R.add_table] != R.add_table[d[:, None], d[None, :]])
        if w is not None:
            return ValidationResult(False, "additive", w)
        # delta(ab) = sigma(a) delta(b) + delta(a) b
        rhs = R.add_table[R.mul_table[s[:, None], d[None, :]], R.mul_table[d[:, None], np.arange(R.order)[None, :]]]
        w = _first(d[R.mul_table] != rhs)
        if w is not None:
            return ValidationResult(False, "leibniz", w)
        if d[R.one] != R.zero:
            return ValidationResult(False, "unit_to_zero", (R.one,))
        return OK


def identity_endo(R: FiniteRing) -> RingEndo:
    return RingEndo(R, tuple(R.elements))


def zero_derivation(R: FiniteRing, sigma: RingEndo) -> SigmaDerivation:
    return SigmaDerivation(R, sigma, (R.zero,) * R.order)


def _close(R: FiniteRing, seed: dict[int, int], add_rule, mul_rule, what: str) -> tuple[int, ...]:
    known = dict(seed)
    while True:
        items = sorted(known.items())
        new: dict[int, int] = {}
        for (x, fx), (y, fy) in itertools.product(items, repeat=2):
            for z, fz in ((R.add(x, y), add_rule(x, fx, y, fy)), (R.mul(x, y), mul_rule(x, fx, y, fy))):
                prev = known.get(z, new.get(z))
                if prev is None:
                    new[z] = fz
                elif prev != fz:
                    raise MapValidationError(
                        f"{what} is not well defined: {R.label(z)} would map to both "
                        f"{R.label(prev)} and {R.label(fz)}"
                    )
        if not new:
            break
        known.update(new)
    if len(known) != R.order:
        missing = [R.label(r) for r in R.elements if r not in known][:5]
        raise MapValidationError(f"generators do not generate the ring; no image for {missing}")
    return tuple(known[r] for r in R.elements)


def endo_from_generators(R: FiniteRing, images: Mapping) -> RingEndo:
    """Extend generator images (by label or index) to a ring endomorphism."""
    seed = {R.zero: R.zero, R.one: R.one}
    for k, v in images.items():
        a, b = R.element(k), R.element(v)
        if seed.get(a, b) != b:
            raise MapValidationError(f"conflicting image for {R.label(a)}")
        seed[a] = b
    img = _close(
        R, seed,
        lambda x, fx, y, fy: R.add(fx, fy),
        lambda x, fx, y, fy: R.mul(fx, fy),
        "endomorphism",
    )
    endo = RingEndo(R, img)
    _raise_if_invalid(endo.validate(), "endomorphism", R)
    return endo


def derivation_from_generators(R: FiniteRing, sigma: RingEndo, images: Mapping) -> SigmaDerivation:
    """Extend generator images to a sigma-derivation via additivity and Leibniz."""
    seed = {R.zero: R.zero, R.one: R.zero}
    for k, v in images.items():
        a, b = R.element(k), R.element(v)
        if seed.get(a, b) != b:
            raise MapValidationError(f"conflicting image for {R.label(a)}")
        seed[a] = b
    img = _close(
        R, seed,
        lambda x, dx, y, dy: R.add(dx, dy),
        lambda x, dx, y, dy: R.add(R.mul(sigma(x), dy), R.mul(dx, y)),
        "derivation",
    )
    der = SigmaDerivation(R, sigma, img)
    _raise_if_invalid(der.validate(), "derivation", R)
    return der


def endo_from_labels(R: FiniteRing, labels: Sequence) -> RingEndo:
    endo = RingEndo(R, tuple(R.element(v) for v in labels))
    _raise_if_invalid(endo.validate(), "endomorphism", R)
    return endo


def derivation_from_labels(R: FiniteRing, sigma: RingEndo, labels: Sequence) -> SigmaDerivation:
    der = SigmaDerivation(R, sigma, tuple(R.element(v) for v in labels))
    _raise_if_invalid(der.validate(), "derivation", R)
    return der


def _raise_if_invalid(result: ValidationResult, what: str, R: FiniteRing) -> None:
    if not result:
        wit = None if result.witness is None else tuple(R.label(w) for w in result.witness)
        raise MapValidationError(f"{what} fails {result.axiom} at {wit} {result.message}".rstrip())


@dataclass(frozen=True, eq=False)
class SigmaDeltaSystem:
    ring: FiniteRing
    sigmas: tuple[RingEndo, ...]
    deltas: tuple[SigmaDerivation, ...]
    name: str = field(default="")

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))
        object.__setattr__(self, "deltas", tuple(self.deltas))

    @property
    def n(self) -> int:
        return len(self.sigmas)

    @classmethod
    def trivial(cls, R: FiniteRing, n: int = 1) -> "SigmaDeltaSystem":
        """Identity endomorphisms and zero derivations."""
        sig = identity_endo(R)
        return cls(R, (sig,) * n, (zero_derivation(R, sig),) * n)

    def sigma(self, i: int) -> RingEndo:
        return self.sigmas[self._check_index(i)]

    def delta(self, i: int) -> SigmaDerivation:
        return self.deltas[self._check_index(i)]

    def _check_index(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"map index {i} outside 1..{self.n}")
        return i - 1

    @property
    def all_delta_zero(self) -> bool:
        return all(d.is_zero for d in self.deltas)

    def validate(self) -> ValidationResult:
        if len(self.deltas) != len(self.sigmas):
            return ValidationResult(False, "arity", None, "need one derivation per endomorphism")
        for i, (s, d) in enumerate(zip(self.sigmas, self.deltas), start=1):
            if s.ring is not self.ring or d.ring is not self.ring:
                return ValidationResult(False, "ring", (i,), "all maps must act on the same ring")
            if d.partner is not s:
                return ValidationResult(False, "partner", (i,), f"delta_{i} is not partnered with sigma_{i}")
            res = s.validate()
            if not res:
                return ValidationResult(False, f"sigma_{i}.{res.axiom}", res.witness, res.message)
            res = d.validate()
            if not res:
                return ValidationResult(False, f"delta_{i}.{res.axiom}", res.witness, res.message)
        return OK

    def letter_array(self, letter: Letter) -> np.ndarray:
        kind, i = letter
        if kind == "sigma":
            return self.sigma(i).array
        if kind == "delta":
            return self.delta(i).array
        raise ValueError(f"unknown letter kind {kind!r}")

    def word_array(self, word: Sequence[Letter]) -> np.ndarray:
        m = np.arange(self.ring.order)
        for letter in reversed(tuple(word)):
            m = self.letter_array(letter)[m]
        return m


# ---------------------------------------------------------------------------
# Words


def apply_word(S: SigmaDeltaSystem, word: Sequence[Letter], r: int) -> int:
    """Evaluate a composed word of sigmas and deltas at ``r`` (rightmost letter first)."""
    for letter in reversed(tuple(word)):
        kind, i = letter
        r = S.sigma(i)(r) if kind == "sigma" else S.delta(i)(r) if kind == "delta" else _bad(kind)
    return r


def _bad(kind):
    raise ValueError(f"unknown letter kind {kind!r}")


def sigma_power_word(alpha: Sequence[int]) -> Word:
    """The word for sigma^alpha = sigma_1^a1 ... sigma_n^an."""
    return tuple(("sigma", i) for i, a in enumerate(alpha, start=1) for _ in range(a))


def words(n: int, max_len: int, kinds: Iterable[str] = ("sigma", "delta"), min_len: int = 1) -> list[Word]:
    """All words up to ``max_len``, ordered by length then letters."""
    letters = [(k, i) for k in kinds for i in range(1, n + 1)]
    out: list[Word] = []
    for length in range(min_len, max_len + 1):
        out.extend(itertools.product(letters, repeat=length))
    return out


def mixed_words(n: int, max_len: int) -> list[Word]:
    """Words containing at least one delta."""
    return [w for w in words(n, max_len) if any(k == "delta" for k, _ in w)]


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "id"
    return "".join(("s" if k == "sigma" else "d") + str(i) for k, i in word)


def _first_over_words(S: SigmaDeltaSystem, wlist: Sequence[Word], failing) -> tuple | None:
    """Smallest (a, b, word) with failing(a, b, word_image) true."""
    best = None
    for w in wlist:
        hit = _first(failing(S.word_array(w)))
        if hit is not None and (best is None or hit < best[:2]):
            best = (*hit, w)
    return best


# ---------------------------------------------------------------------------
# Compatibility and rigidity


def is_sigma_compatible(S: SigmaDeltaSystem, L: int = DEFAULT_WORD_LENGTH, cap: int | None = None) -> CheckResult:
    """a sigma^w(b) = 0 iff ab = 0, over all sigma-words of length <= L."""
    R = S.ring
    check_cap(R, cap)
    zero_ab = R.mul_table == R.zero
    wit = _first_over_words(
        S, words(S.n, L, ("sigma",)),
        lambda img: zero_ab != (R.mul_table[:, img] == R.zero),
    )
    return CheckResult(wit is None, wit)


def is_delta_compatible(S: SigmaDeltaSystem, L: int = DEFAULT_WORD_LENGTH, cap: int | None = None) -> CheckResult:
    """ab = 0 implies a delta^w(b) = 0, over all delta-words of length <= L."""
    R = S.ring
    check_cap(R, cap)
    zero_ab = R.mul_table == R.zero
    wit = _first_over_words(
        S, words(S.n, L, ("delta",)),
        lambda img: zero_ab & (R.mul_table[:, img] != R.zero),
    )
    return CheckResult(wit is None, wit)


def is_compatible(S: SigmaDeltaSystem, L: int = DEFAULT_WORD_LENGTH, cap: int | None = None) -> CheckResult:
    """(Sigma, Delta)-compatibility, plus the mixed-word implication as a regression check."""
    res = is_sigma_compatible(S, L, cap)
    if not res:
        return CheckResult(False, res.witness, "sigma")
    res = is_delta_compatible(S, L, cap)
    if not res:
        return CheckResult(False, res.witness, "delta")
    R = S.ring
    zero_ab = R.mul_table == R.zero
    wit = _first_over_words(S, mixed_words(S.n, L), lambda img: zero_ab & (R.mul_table[:, img] != R.zero))
    if wit is not None:
        return CheckResult(False, wit, "mixed")
    return CheckResult(True)


def is_sigma_rigid(S: SigmaDeltaSystem, L: int = DEFAULT_WORD_LENGTH, cap: int | None = None) -> CheckResult:
    """r sigma^w(r) = 0 implies r = 0, for sigma-words of length 0..L; witness (r, word)."""
    R = S.ring
    check_cap(R, cap)
    e = np.arange(R.order)
    best = None
    for w in words(S.n, L, ("sigma",), min_len=0):
        img = S.word_array(w)
        hit = _first((R.mul_table[e, img] == R.zero) & (e != R.zero))
        if hit is not None and (best is None or hit[0] < best[0]):
            best = (hit[0], w)
    return CheckResult(best is None, best)


# ---------------------------------------------------------------------------
# Weak (Sigma, Delta)-symmetry


@dataclass(frozen=True)
class WeakSymResult:
    """Directional verdicts; ``holds`` is the forward sigma and delta conditions.

    Witnesses are (a, b, c, i).  ``sigma_reverse`` records the converse
    direction acσ_i(b) nil => abc nil separately.
    """

    sigma_forward: CheckResult
    sigma_reverse: CheckResult
    delta: CheckResult

    @property
    def holds(self) -> bool:
        return self.sigma_forward.holds and self.delta.holds

    @property
    def biconditional_holds(self) -> bool:
        return self.holds and self.sigma_reverse.holds

    @property
    def witness(self) -> tuple | None:
        if not self.sigma_forward:
            return self.sigma_forward.witness
        return self.delta.witness

    def __bool__(self) -> bool:
        return self.holds


def _weak_sym(S: SigmaDeltaSystem, subset: Sequence[int] | None, cap: int | None) -> WeakSymResult:
    R = S.ring
    check_cap(R, cap)
    mul, nil = R.mul_table, R.nil_mask
    idx = np.arange(R.order) if subset is None else np.array(sorted(subset))
    sub = mul[np.ix_(idx, idx)]
    abc = mul[sub[:, :, None], idx[None, None, :]]  # (a, b, c)
    ac = sub[:, None, :]  # broadcast over b
    premise = nil[abc]
    fwd = rev = dlt = None
    for i in range(1, S.n + 1):
        s_b = S.sigma(i).array[idx][None, :, None]
        d_b = S.delta(i).array[idx][None, :, None]
        acs = nil[mul[ac, s_b]]
        acd = nil[mul[ac, d_b]]
        fwd = _min_wit(fwd, _first(premise & ~acs), i, idx)
        rev = _min_wit(rev, _first(acs & ~premise), i, idx)
        dlt = _min_wit(dlt, _first(premise & ~acd), i, idx)
    return WeakSymResult(CheckResult(fwd is None, fwd), CheckResult(rev is None, rev), CheckResult(dlt is None, dlt))


def _min_wit(best, hit, i, idx):
    if hit is None:
        return best
    cand = (*(int(idx[h]) for h in hit), i)
    return cand if best is None or cand < best else best


def is_weak_sigma_delta_symmetric(S: SigmaDeltaSystem, cap: int | None = None) -> WeakSymResult:
    """abc nil => ac sigma_i(b), ac delta_i(b) nil for all a, b, c and every i."""
    return _weak_sym(S, None, cap)


def is_weak_sym_ideal(S: SigmaDeltaSystem, I: Ideal, cap: int | None = None) -> WeakSymResult:
    """The same quantifier restricted to a, b, c in I."""
    if I.ring is not S.ring:
        raise ValueError("ideal belongs to a different ring")
    return _weak_sym(S, I.members, cap)


INVARIANCE_FLAVORS = ("sigma", "delta", "both", "sigma_onto")


def is_invariant_ideal(S: SigmaDeltaSystem, I: Ideal, flavor: str = "both") -> CheckResult:
    """sigma_i(I) ⊆ I and/or delta_i(I) ⊆ I; sigma_onto demands sigma_i(I) = I.

    Witness is (element, i, map kind).
    """
    if flavor not in INVARIANCE_FLAVORS:
        raise ValueError(f"unknown invariance flavor {flavor!r}")
    kinds = {"sigma": ("sigma",), "delta": ("delta",), "both": ("sigma", "delta"), "sigma_onto": ("sigma",)}[flavor]
    for i in range(1, S.n + 1):
        for kind in kinds:
            f = S.sigma(i) if kind == "sigma" else S.delta(i)
            for a in sorted(I.members):
                if f(a) not in I.members:
                    return CheckResult(False, (a, i, kind))
        if flavor == "sigma_onto":
            image = {S.sigma(i)(a) for a in I.members}
            missing = sorted(I.members - image)
            if missing:
                return CheckResult(False, (missing[0], i, "onto"))
    return CheckResult(True)


def induced_quotient_system(S: SigmaDeltaSystem, I: Ideal) -> tuple[SigmaDeltaSystem, tuple[int, ...]]:
    """Maps induced on R/I by sigma(r + I) = sigma(r) + I, delta(r + I) = delta(r) + I."""
    inv = is_invariant_ideal(S, I, "both")
    if not inv:
        a, i, kind = inv.witness
        raise NotInvariantError(f"{kind}_{i} maps {S.ring.label(a)} outside the ideal")
    Q, proj = quotient(S.ring, I)
    reps = representatives(S.ring, I)
    p = np.array(proj)
    sigmas, deltas = [], []
    for i in range(1, S.n + 1):
        s, d = S.sigma(i).array, S.delta(i).array
        # well defined: constant on cosets
        for name, f in (("sigma", s), ("delta", d)):
            bad = _first(p[f] != p[f[np.array(reps)]][p])
            if bad is not None:
                raise NotInvariantError(f"induced {name}_{i} is not constant on the coset of {S.ring.label(bad[0])}")
        sq = RingEndo(Q, tuple(int(p[s[r]]) for r in reps))
        dq = SigmaDerivation(Q, sq, tuple(int(p[d[r]]) for r in reps))
        sigmas.append(sq)
        deltas.append(dq)
    T = SigmaDeltaSystem(Q, tuple(sigmas), tuple(deltas), f"{S.name}/I" if S.name else "")
    res = T.validate()
    if not res:
        raise MapValidationError(f"induced system invalid on the quotient: {res.axiom} at {res.witness}")
    return T, proj
