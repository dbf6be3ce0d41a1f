"""Named presentations: the 3-dimensional skew polynomial classification and small Ore examples.

Ring parameters accept a built-in ring name (``z4``), ``zN`` for any N, or a
:class:`RingSpec`.  Scalar parameters accept an integer k (meaning k·1) or an
element label string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from .errors import PresentationError, RingSpecError
from .finring import BUILTIN_RINGS, FiniteRing, RingSpec, builtin_ring, ring_of_spec
from .pbw import PBWPresentation, require_valid
from .sigdelta import (
    SigmaDeltaSystem,
    derivation_from_generators,
    endo_from_generators,
    identity_endo,
    zero_derivation,
)


def resolve_ring(value: Any) -> FiniteRing:
    if isinstance(value, FiniteRing):
        return value
    if isinstance(value, RingSpec):
        return ring_of_spec(value, name=value.describe())
    if isinstance(value, str):
        if value in BUILTIN_RINGS:
            return builtin_ring(value)
        m = re.fullmatch(r"z(\d+)", value)
        if m:
            n = int(m.group(1))
            return ring_of_spec(RingSpec.zn(n), name=value)
    raise RingSpecError(f"cannot interpret {value!r} as a ring")


def scalar(R: FiniteRing, value: Any) -> int:
    """k -> k·1 for integers; otherwise an element label."""
    if isinstance(value, bool):
        raise PresentationError(f"boolean is not a ring scalar: {value!r}")
    if isinstance(value, int):
        acc, step = R.zero, R.one if value >= 0 else R.neg(R.one)
        for _ in range(abs(value)):
            acc = R.add(acc, step)
        return acc
    try:
        return R.element(str(value))
    except KeyError as exc:
        raise PresentationError(str(exc.args[0])) from None


def _unit(R: FiniteRing, value: Any, what: str) -> int:
    u = scalar(R, value)
    if u not in R.units:
        raise PresentationError(f"parameter {what} = {R.label(u)} is not invertible in {R.name or 'the ring'}")
    return u


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    defaults: Mapping[str, Any]
    builder: Callable[..., PBWPresentation]

    def schema(self) -> dict[str, str]:
        return {k: type(v).__name__ for k, v in self.defaults.items()}


# ---------------------------------------------------------------------------
# 3-dimensional skew polynomial algebras
#
# Relations yz - α zy = λ, zx - β xz = μ, xy - γ yx = ν with λ, μ, ν linear.
# Stored form (x1, x2, x3) = (x, y, z):
#   y x = γ⁻¹ x y - γ⁻¹ ν,   z x = β x z + μ,   z y = α⁻¹ y z - α⁻¹ λ.


def three_dim(ring, alpha, beta, gamma, lam=(0, 0, 0, 0), mu=(0, 0, 0, 0), nu=(0, 0, 0, 0),
              name: str = "") -> PBWPresentation:
    """λ, μ, ν are (constant, x, y, z) coefficient tuples."""
    R = resolve_ring(ring)
    a = _unit(R, alpha, "alpha")
    b = _unit(R, beta, "beta")
    g = _unit(R, gamma, "gamma")
    lam, mu, nu = ([scalar(R, v) for v in t] for t in (lam, mu, nu))
    for t in (lam, mu, nu):
        if len(t) != 4:
            raise PresentationError("linear parts need four entries (constant, x, y, z)")
    ainv, ginv = R.inverse(a), R.inverse(g)

    def scaled(u, t):
        return tuple(R.neg(R.mul(u, v)) for v in t)

    c = {(1, 2): ginv, (1, 3): b, (2, 3): ainv}
    tails = {(1, 2): scaled(ginv, nu), (1, 3): tuple(mu), (2, 3): scaled(ainv, lam)}
    P = PBWPresentation(R, ("x", "y", "z"), SigmaDeltaSystem.trivial(R, 3), c, tails, name=name)
    require_valid(P)
    return P


def _lin(const=0, x=0, y=0, z=0):
    return (const, x, y, z)


def _threedim(kind: str):
    def build(ring, alpha=1, beta=1, gamma=1, a=0, b=0, a1=0, a2=0, a3=0, b1=0, b2=0, b3=0, name=""):
        name = name or f"threedim_{kind}"
        if kind == "a":
            return three_dim(ring, alpha, beta, gamma, name=name)
        if kind.startswith("b_"):
            lam, mu, nu = {
                "b_i": (_lin(z=1), _lin(y=1), _lin(x=1)),
                "b_ii": (_lin(z=1), _lin(const=b), _lin(x=1)),
                "b_iii": (_lin(), _lin(y=1), _lin()),
                "b_iv": (_lin(), _lin(const=b), _lin()),
                "b_v": (_lin(z=a), _lin(), _lin(x=1)),
                "b_vi": (_lin(z=1), _lin(), _lin()),
            }[kind]
            return three_dim(ring, 1, beta, 1, lam, mu, nu, name=name)
        if kind == "c_i":
            return three_dim(ring, alpha, beta, alpha, _lin(), _lin(const=b, y=1), _lin(), name=name)
        if kind == "c_ii":
            return three_dim(ring, alpha, beta, alpha, _lin(), _lin(const=b), _lin(), name=name)
        if kind == "d":
            return three_dim(ring, alpha, alpha, alpha, _lin(const=b1, x=a1), _lin(const=b2, y=a2),
                             _lin(const=b3, z=a3), name=name)
        lam, mu, nu = {
            "e_i": (_lin(x=1), _lin(y=1), _lin(z=1)),
            "e_ii": (_lin(), _lin(), _lin(z=1)),
            "e_iii": (_lin(), _lin(), _lin(const=b)),
            "e_iv": (_lin(y=-1), _lin(x=1, y=1), _lin()),
            "e_v": (_lin(z=a), _lin(z=1), _lin()),
        }[kind]
        return three_dim(ring, 1, 1, 1, lam, mu, nu, name=name)

    return build


_THREEDIM_DEFAULTS = {
    "a": {"ring": "z5", "alpha": 2, "beta": 3, "gamma": 4},
    "b_i": {"ring": "z5", "beta": 2},
    "b_ii": {"ring": "z5", "beta": 2, "b": 1},
    "b_iii": {"ring": "z5", "beta": 2},
    "b_iv": {"ring": "z5", "beta": 2, "b": 1},
    "b_v": {"ring": "z5", "beta": 2, "a": 1},
    "b_vi": {"ring": "z5", "beta": 2},
    "c_i": {"ring": "z5", "alpha": 2, "beta": 3, "b": 1},
    "c_ii": {"ring": "z5", "alpha": 2, "beta": 3, "b": 1},
    "d": {"ring": "z5", "alpha": 2, "a1": 0, "a2": 0, "a3": 0, "b1": 1, "b2": 1, "b3": 1},
    "e_i": {"ring": "z2"},
    "e_ii": {"ring": "z5"},
    "e_iii": {"ring": "z5", "b": 1},
    "e_iv": {"ring": "z5"},
    "e_v": {"ring": "z5", "a": 1},
}


# ---------------------------------------------------------------------------
# Running examples


def quantum_plane(ring="z4", q=3, name="quantum_plane") -> PBWPresentation:
    """y x = q x y."""
    R = resolve_ring(ring)
    P = PBWPresentation(R, ("x", "y"), c={(1, 2): _unit(R, q, "q")}, name=name)
    require_valid(P)
    return P


def constant_poly(ring="z4", vars="x", name="constant_poly") -> PBWPresentation:
    """Commuting variables with trivial sigma and delta."""
    R = resolve_ring(ring)
    names = tuple(v.strip() for v in vars.split(",")) if isinstance(vars, str) else tuple(vars)
    P = PBWPresentation(R, names, name=name)
    require_valid(P)
    return P


def jordan_trunc(degree=4, name="jordan_trunc") -> PBWPresentation:
    """(Z/2[t]/(t^degree))[y; id, t^2 d/dt]."""
    name_r = f"z2t{degree}"
    R = builtin_ring(name_r) if name_r in BUILTIN_RINGS else ring_of_spec(
        RingSpec.trunc_poly(RingSpec.zn(2), degree), name=name_r)
    sig = identity_endo(R)
    t2 = "t^2" if degree > 2 else "0"
    delta = derivation_from_generators(R, sig, {"t": t2})
    P = PBWPresentation(R, ("y",), SigmaDeltaSystem(R, (sig,), (delta,)), name=name)
    require_valid(P)
    return P


def swap_ore(name="swap_ore") -> PBWPresentation:
    """(Z/2 x Z/2)[x; swap]."""
    R = builtin_ring("z2xz2")
    sig = endo_from_generators(R, {"(1,0)": "(0,1)", "(0,1)": "(1,0)"})
    P = PBWPresentation(R, ("x",), SigmaDeltaSystem(R, (sig,), (zero_derivation(R, sig),)), name=name)
    require_valid(P)
    return P


def ut2_constant(name="ut2_constant") -> PBWPresentation:
    R = builtin_ring("ut2z2")
    P = PBWPresentation(R, ("x",), name=name)
    require_valid(P)
    return P


def derivation_control(name="derivation_control") -> PBWPresentation:
    """Two variables over Z/2[t]/(t^4) where delta_1(t) = t^3 and c_12 = 1 + t.

    Consistent as a presentation (t kills the image of delta_1) but
    delta_1(c_12) != 0, so the extended maps are unavailable.
    """
    R = builtin_ring("z2t4")
    sig = identity_endo(R)
    d1 = derivation_from_generators(R, sig, {"t": "t^3"})
    S = SigmaDeltaSystem(R, (sig, sig), (d1, zero_derivation(R, sig)))
    P = PBWPresentation(R, ("x", "y"), S, c={(1, 2): R.element("t+1")}, name=name)
    require_valid(P)
    return P


_ENTRIES: dict[str, CatalogEntry] = {}


def _register(name, description, defaults, builder):
    _ENTRIES[name] = CatalogEntry(name, description, dict(defaults), builder)


_register("quantum_plane", "y*x = q x*y", {"ring": "z4", "q": 3}, quantum_plane)
for _k, _d in _THREEDIM_DEFAULTS.items():
    _register(f"threedim_{_k}", f"3-dimensional skew polynomial algebra, case ({_k.replace('_', ')(')})",
              _d, _threedim(_k))
_register("jordan_trunc", "Jordan-type Ore extension y t = t y + t^2 over Z/2[t]/(t^degree)",
          {"degree": 4}, jordan_trunc)
_register("constant_poly", "commuting variables, sigma = id, delta = 0", {"ring": "z4", "vars": "x"}, constant_poly)
_register("swap_ore", "Ore extension of Z/2 x Z/2 by the coordinate swap", {}, swap_ore)
_register("ut2_constant", "constant extension of UT2(Z/2)", {}, ut2_constant)
_register("derivation_control", "consistent presentation whose delta does not kill c_12", {}, derivation_control)


def list_entries() -> list[CatalogEntry]:
    return [_ENTRIES[k] for k in sorted(_ENTRIES)]


def get_entry(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise PresentationError(f"no catalog entry named {name!r}") from None


def instantiate(name: str, params: Mapping[str, Any] | None = None) -> PBWPresentation:
    entry = get_entry(name)
    params = dict(params or {})
    unknown = set(params) - set(entry.defaults)
    if unknown:
        raise PresentationError(f"{name} has no parameter(s) {', '.join(sorted(unknown))}")
    merged = {**entry.defaults, **params}
    return entry.builder(**merged, name=name)
