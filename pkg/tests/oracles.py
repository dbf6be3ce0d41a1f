"""Reference implementations used to cross-check the package.

Everything here is written from the definitions with plain Python loops over
``R.add`` / ``R.mul``; none of it reuses the vectorised sweeps or the
folding normal-form engine.
"""

from __future__ import annotations

import itertools


def brute_nilpotent(R, a) -> bool:
    p = a
    for _ in range(R.order):
        if p == R.zero:
            return True
        p = R.mul(p, a)
    return p == R.zero


def brute_property(R, prop: str) -> bool:
    E = list(R.elements)
    z = R.zero
    mul = R.mul
    nil = {a: brute_nilpotent(R, a) for a in E}
    if prop == "reduced":
        return all(not nil[a] or a == z for a in E)
    if prop == "commutative":
        return all(mul(a, b) == mul(b, a) for a in E for b in E)
    if prop == "reversible":
        return all(mul(b, a) == z for a in E for b in E if mul(a, b) == z)
    if prop == "semicommutative":
        return all(mul(mul(a, r), b) == z for a in E for b in E if mul(a, b) == z for r in E)
    if prop == "symmetric":
        return all(mul(mul(a, c), b) == z for a, b, c in itertools.product(E, repeat=3)
                   if mul(mul(a, b), c) == z)
    if prop == "weak_symmetric":
        return all(nil[mul(mul(a, c), b)] for a, b, c in itertools.product(E, repeat=3)
                   if nil[mul(mul(a, b), c)])
    if prop == "abelian":
        idem = [e for e in E if mul(e, e) == e]
        return all(mul(e, r) == mul(r, e) for e in idem for r in E)
    raise ValueError(prop)


def sigma_word_value(S, alpha, r):
    """sigma_1^a1(...sigma_n^an(r)), innermost map applied first."""
    for i in range(len(alpha), 0, -1):
        for _ in range(alpha[i - 1]):
            r = S.sigma(i)(r)
    return r


def ore_power_times_coeff(P, k: int, r) -> dict:
    """x^k r in a one-variable Ore extension, summed over all sigma/delta words.

    x^k r = sum over w in {sigma, delta}^k of w(r) x^(#sigma in w), where the
    letter nearest r acts first.  Returns {exponent: coefficient}.
    """
    R = P.ring
    s, d = P.system.sigma(1), P.system.delta(1)
    out: dict[int, int] = {}
    for w in itertools.product("sd", repeat=k):
        v = r
        for letter in reversed(w):
            v = s(v) if letter == "s" else d(v)
        e = w.count("s")
        out[e] = R.add(out.get(e, R.zero), v)
    return {e: c for e, c in out.items() if c != R.zero}


def qplane_product(R, q, f: dict, g: dict) -> dict:
    """(a x^i y^j)(b x^k y^l) = a b q^(jk) x^(i+k) y^(j+l) for a commutative R."""
    out: dict = {}
    for (i, j), a in f.items():
        for (k, l), b in g.items():
            c = R.mul(R.mul(a, b), R.power(q, j * k))
            m = (i + k, j + l)
            out[m] = R.add(out.get(m, R.zero), c)
    return {m: c for m, c in out.items() if c != R.zero}


def commutative_product(R, f: dict, g: dict) -> dict:
    out: dict = {}
    for a_exp, a in f.items():
        for b_exp, b in g.items():
            m = tuple(x + y for x, y in zip(a_exp, b_exp))
            out[m] = R.add(out.get(m, R.zero), R.mul(a, b))
    return {m: c for m, c in out.items() if c != R.zero}


def _apply(S, word, r):
    for kind, i in reversed(word):
        r = S.sigma(i)(r) if kind == "sigma" else S.delta(i)(r)
    return r


def _all_words(n, L, kinds):
    letters = [(k, i) for k in kinds for i in range(1, n + 1)]
    for length in range(1, L + 1):
        yield from itertools.product(letters, repeat=length)


def brute_sigma_compatible(S, L=3) -> bool:
    R = S.ring
    E, z = list(R.elements), R.zero
    return all((R.mul(a, b) == z) == (R.mul(a, _apply(S, w, b)) == z)
               for w in _all_words(S.n, L, ("sigma",)) for a in E for b in E)


def brute_delta_compatible(S, L=3) -> bool:
    R = S.ring
    E, z = list(R.elements), R.zero
    return all(R.mul(a, _apply(S, w, b)) == z
               for w in _all_words(S.n, L, ("delta",)) for a in E for b in E if R.mul(a, b) == z)


def brute_weak_sym(S) -> bool:
    R = S.ring
    E = list(R.elements)
    nil = {a: brute_nilpotent(R, a) for a in E}
    for a, b, c in itertools.product(E, repeat=3):
        if not nil[R.mul(R.mul(a, b), c)]:
            continue
        ac = R.mul(a, c)
        for i in range(1, S.n + 1):
            if not (nil[R.mul(ac, S.sigma(i)(b))] and nil[R.mul(ac, S.delta(i)(b))]):
                return False
    return True
