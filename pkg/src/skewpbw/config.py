"""YAML configuration: rings, sigma/delta systems, presentations and ideals.

A config file has up to four top-level sections, each a table of named
entries that may refer to one another by name::

    rings:
      R: {kind: trunc_poly, base: {kind: zn, n: 2}, degree: 4}
    systems:
      S:
        ring: R
        sigma: [identity]
        delta: [{generators: {t: "t^2"}}]
    presentations:
      jordan:
        system: S
        vars: [y]
    ideals:
      I: {ring: R, generators: ["t^3"]}

Relations are keyed by the product being rewritten, e.g. ``"y*x": {c: "3",
tail: {"1": "0", x: "1"}}``.  A presentation may instead name a catalog
entry (``catalog: quantum_plane`` with optional ``params``).  Names not
defined in any loaded file fall back to built-in rings, the bundled data
file, and then catalog defaults.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping

import yaml

from .errors import ParseError, PresentationError, RingSpecError
from .finring import BUILTIN_RINGS, FiniteRing, Ideal, RingSpec, builtin_ring, ideal_generated, ring_of_spec
from .pbw import PBWPresentation
from .sigdelta import (
    RingEndo,
    SigmaDeltaSystem,
    SigmaDerivation,
    derivation_from_generators,
    derivation_from_labels,
    endo_from_generators,
    endo_from_labels,
    identity_endo,
    zero_derivation,
)

SECTIONS = ("rings", "systems", "presentations", "ideals")


def _load_yaml(text: str, source: str) -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        msg = getattr(exc, "problem", None) or str(exc)
        if mark is not None:
            raise ParseError(f"{source}: {msg}", mark.line + 1, mark.column + 1) from None
        raise ParseError(f"{source}: {msg}") from None
    if data is None:
        return {}
    if not isinstance(data, Mapping):
        raise ParseError(f"{source}: top level must be a mapping")
    unknown = set(data) - set(SECTIONS)
    if unknown:
        raise ParseError(f"{source}: unknown section(s) {', '.join(sorted(unknown))}")
    for sec in SECTIONS:
        if sec in data and not isinstance(data[sec], Mapping):
            raise ParseError(f"{source}: section {sec!r} must map names to entries")
    return dict(data)


class Config:
    """Named entries from one or more files, resolved lazily and memoised."""

    def __init__(self, documents: Iterable[tuple[dict, str]] = (), fallback: "Config | None" = None):
        self.entries: dict[str, dict[str, tuple[Any, str]]] = {s: {} for s in SECTIONS}
        for data, source in documents:
            for sec in SECTIONS:
                for name, entry in (data.get(sec) or {}).items():
                    self.entries[sec][str(name)] = (entry, source)
        self.fallback = fallback
        self._rings: dict[str, FiniteRing] = {}
        self._systems: dict[str, SigmaDeltaSystem] = {}
        self._pres: dict[str, PBWPresentation] = {}
        self._resolving: set[tuple[str, str]] = set()

    @classmethod
    def from_paths(cls, paths: Iterable[str | Path], fallback: "Config | None" = None) -> "Config":
        docs = []
        for p in paths:
            p = Path(p)
            files = sorted(p.glob("*.yaml")) + sorted(p.glob("*.yml")) if p.is_dir() else [p]
            for f in files:
                docs.append((_load_yaml(f.read_text(), str(f)), str(f)))
        return cls(docs, fallback)

    @classmethod
    def from_text(cls, text: str, source: str = "<string>", fallback: "Config | None" = None) -> "Config":
        return cls([(_load_yaml(text, source), source)], fallback)

    def names(self, section: str) -> list[str]:
        out = set(self.entries[section])
        if self.fallback is not None:
            out |= set(self.fallback.names(section))
        return sorted(out)

    def _guard(self, sec, name):
        key = (sec, name)
        if key in self._resolving:
            raise ParseError(f"circular reference through {sec[:-1]} {name!r}")
        self._resolving.add(key)

    # -- rings -------------------------------------------------------------

    def ring_spec(self, ref: Any) -> RingSpec:
        if isinstance(ref, str):
            if ref in self.entries["rings"]:
                entry, _ = self.entries["rings"][ref]
                self._guard("rings", ref)
                try:
                    return self.ring_spec(entry)
                finally:
                    self._resolving.discard(("rings", ref))
            if self.fallback is not None and ref in self.fallback.names("rings"):
                return self.fallback.ring_spec(ref)
            if ref in BUILTIN_RINGS:
                return BUILTIN_RINGS[ref]
            if ref.startswith("z") and ref[1:].isdigit():
                return RingSpec.zn(int(ref[1:]))
            raise RingSpecError(f"unknown ring {ref!r}")
        return RingSpec.from_mapping(ref, self.ring_spec)

    def ring(self, ref: Any) -> FiniteRing:
        if isinstance(ref, FiniteRing):
            return ref
        if isinstance(ref, str):
            if ref in self._rings:
                return self._rings[ref]
            if ref in BUILTIN_RINGS and ref not in self.entries["rings"]:
                R = builtin_ring(ref)
            else:
                R = ring_of_spec(self.ring_spec(ref), name=ref)
            self._rings[ref] = R
            return R
        spec = self.ring_spec(ref)
        return ring_of_spec(spec, name=spec.describe())

    # -- systems -----------------------------------------------------------

    def system(self, ref: Any, n: int | None = None) -> SigmaDeltaSystem:
        if isinstance(ref, str):
            if ref in self._systems:
                return self._systems[ref]
            if ref not in self.entries["systems"]:
                if self.fallback is not None and ref in self.fallback.names("systems"):
                    return self.fallback.system(ref)
                raise PresentationError(f"unknown system {ref!r}")
            entry, _ = self.entries["systems"][ref]
            self._guard("systems", ref)
            try:
                S = self._build_system(entry, ref)
            finally:
                self._resolving.discard(("systems", ref))
            self._systems[ref] = S
            return S
        return self._build_system(ref, "")

    def _build_system(self, entry: Mapping, name: str) -> SigmaDeltaSystem:
        if not isinstance(entry, Mapping) or "ring" not in entry:
            raise PresentationError(f"system {name!r} needs a ring")
        R = self.ring(entry["ring"])
        sig_entries = list(entry.get("sigma") or [])
        del_entries = list(entry.get("delta") or [])
        n = max(len(sig_entries), len(del_entries), int(entry.get("n", 0)))
        if n == 0:
            raise PresentationError(f"system {name!r} defines no maps")
        sig_entries += ["identity"] * (n - len(sig_entries))
        del_entries += ["zero"] * (n - len(del_entries))
        sigmas = [self._endo(R, e) for e in sig_entries]
        deltas = [self._derivation(R, s, e) for s, e in zip(sigmas, del_entries)]
        return SigmaDeltaSystem(R, tuple(sigmas), tuple(deltas), name)

    @staticmethod
    def _endo(R: FiniteRing, e: Any) -> RingEndo:
        if e in ("identity", "id", None):
            return identity_endo(R)
        if isinstance(e, Mapping) and "images" in e:
            return endo_from_labels(R, [str(v) for v in e["images"]])
        if isinstance(e, Mapping) and "generators" in e:
            return endo_from_generators(R, {str(k): str(v) for k, v in e["generators"].items()})
        raise PresentationError(f"cannot read endomorphism {e!r}")

    @staticmethod
    def _derivation(R: FiniteRing, sigma: RingEndo, e: Any) -> SigmaDerivation:
        if e in ("zero", 0, None):
            return zero_derivation(R, sigma)
        if isinstance(e, Mapping) and "images" in e:
            return derivation_from_labels(R, sigma, [str(v) for v in e["images"]])
        if isinstance(e, Mapping) and "generators" in e:
            return derivation_from_generators(R, sigma, {str(k): str(v) for k, v in e["generators"].items()})
        raise PresentationError(f"cannot read derivation {e!r}")

    # -- presentations -----------------------------------------------------

    def presentation(self, name: str) -> PBWPresentation:
        if name in self._pres:
            return self._pres[name]
        if name not in self.entries["presentations"]:
            if self.fallback is not None and name in self.fallback.names("presentations"):
                return self.fallback.presentation(name)
            from .catalog import _ENTRIES, instantiate

            if name in _ENTRIES:
                return instantiate(name)
            raise PresentationError(f"unknown presentation {name!r}")
        entry, _ = self.entries["presentations"][name]
        self._guard("presentations", name)
        try:
            P = self._build_presentation(entry, name)
        finally:
            self._resolving.discard(("presentations", name))
        self._pres[name] = P
        return P

    def _build_presentation(self, entry: Mapping, name: str) -> PBWPresentation:
        if not isinstance(entry, Mapping):
            raise PresentationError(f"presentation {name!r} must be a mapping")
        if "catalog" in entry:
            from .catalog import _ENTRIES, instantiate

            params = dict(entry.get("params") or {})
            P = instantiate(str(entry["catalog"]), params)
            P.name = name
            return P
        names = [str(v) for v in entry.get("vars") or []]
        if not names:
            raise PresentationError(f"presentation {name!r} needs vars")
        if "system" in entry:
            S = self.system(entry["system"])
            R = S.ring
        elif "ring" in entry:
            R = self.ring(entry["ring"])
            S = SigmaDeltaSystem.trivial(R, len(names))
        else:
            raise PresentationError(f"presentation {name!r} needs a ring or a system")
        c, tails = {}, {}
        for key, rel in (entry.get("relations") or {}).items():
            parts = [p.strip() for p in str(key).split("*")]
            if len(parts) != 2 or any(p not in names for p in parts):
                raise PresentationError(f"relation key {key!r} must be 'xj*xi' with known variables")
            j, i = names.index(parts[0]) + 1, names.index(parts[1]) + 1
            if not i < j:
                raise PresentationError(f"relation {key!r} must rewrite a product of decreasing variables")
            rel = rel or {}
            c[(i, j)] = R.element(str(rel.get("c", R.label(R.one))))
            t = [R.zero] * (len(names) + 1)
            for slot, lab in (rel.get("tail") or {}).items():
                slot = str(slot)
                k = 0 if slot == "1" else names.index(slot) + 1 if slot in names else None
                if k is None:
                    raise PresentationError(f"tail slot {slot!r} in {key!r} is neither '1' nor a variable")
                t[k] = R.element(str(lab))
            tails[(i, j)] = tuple(t)
        return PBWPresentation(R, names, S, c, tails, entry.get("order", "deglex"), name)

    # -- ideals ------------------------------------------------------------

    def ideal(self, name: str) -> Ideal:
        if name not in self.entries["ideals"]:
            if self.fallback is not None and name in self.fallback.names("ideals"):
                return self.fallback.ideal(name)
            raise PresentationError(f"unknown ideal {name!r}")
        entry, _ = self.entries["ideals"][name]
        R = self.ring(entry["ring"])
        return ideal_generated(R, [R.element(str(g)) for g in entry.get("generators") or []])


@lru_cache(maxsize=1)
def builtin_config() -> Config:
    text = resources.files("skewpbw").joinpath("data/builtin.yaml").read_text()
    return Config.from_text(text, "builtin.yaml")


def load(paths: Iterable[str | Path] = ()) -> Config:
    """User files layered over the bundled data."""
    return Config.from_paths(list(paths), fallback=builtin_config())


# ---------------------------------------------------------------------------
# Emission


def _map_entry(R: FiniteRing, m, kind: str):
    if kind == "sigma" and m.is_identity:
        return "identity"
    if kind == "delta" and m.is_zero:
        return "zero"
    return {"images": [R.label(v) for v in m.image]}


def presentation_document(P: PBWPresentation, name: str | None = None) -> dict:
    """A self-contained config tree reproducing ``P``."""
    name = name or P.name or "presentation"
    R = P.ring
    spec = R.spec.to_mapping() if R.spec is not None else {
        "kind": "table", "add": R.add_table.tolist(), "mul": R.mul_table.tolist(),
        "zero": R.zero, "one": R.one, "labels": list(R.labels)}
    ring_name = f"{name}_ring"
    sys_name = f"{name}_system"
    rels = {}
    for (i, j), c in sorted(P.c.items()):
        tail = {("1" if k == 0 else P.var_names[k - 1]): R.label(v)
                for k, v in enumerate(P.tails[(i, j)]) if v != R.zero}
        if c == R.one and not tail:
            continue
        rel: dict[str, Any] = {"c": R.label(c)}
        if tail:
            rel["tail"] = tail
        rels[f"{P.var_names[j - 1]}*{P.var_names[i - 1]}"] = rel
    pres: dict[str, Any] = {"system": sys_name, "vars": list(P.var_names)}
    if rels:
        pres["relations"] = rels
    if P.order.kind != "deglex":
        pres["order"] = P.order.kind
    return {
        "rings": {ring_name: spec},
        "systems": {sys_name: {
            "ring": ring_name,
            "sigma": [_map_entry(R, s, "sigma") for s in P.system.sigmas],
            "delta": [_map_entry(R, d, "delta") for d in P.system.deltas],
        }},
        "presentations": {name: pres},
    }


def dump(doc: Mapping) -> str:
    return yaml.safe_dump(dict(doc), sort_keys=False, default_flow_style=None, allow_unicode=True)
