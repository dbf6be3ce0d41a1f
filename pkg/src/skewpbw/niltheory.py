"""Nilpotency tests for polynomials and the theorem-checking harness.

Every check produces a :class:`VerificationReport`: the hypothesis ledger,
the swept domain, the number of individual checks and any counterexamples.
Verdicts follow a fixed precedence: a failing hypothesis dominates, then a
counterexample, then cap exhaustion.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from .errors import BudgetError, CapExceeded, PresentationError, SkewPBWError
from .finring import Ideal, idempotents, ring_property
from .pbw import (
    Hypothesis,
    PBWPresentation,
    PolyAlgebra,
    SkewPoly,
    extend_maps,
    iter_box,
    monomials_up_to,
    quotient_extension,
    require_valid,
    tower_presentation,
)
from .sigdelta import (
    DEFAULT_WORD_LENGTH,
    format_word,
    induced_quotient_system,
    is_compatible,
    is_invariant_ideal,
    is_sigma_compatible,
    is_sigma_rigid,
    is_weak_sigma_delta_symmetric,
    is_weak_sym_ideal,
    words,
)

SCHEMA_VERSION = 1

VERIFIED = "verified_on_domain"
HYPOTHESIS_FAILED = "hypothesis_failed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive_cap"
VERDICTS = (VERIFIED, HYPOTHESIS_FAILED, REFUTED, INCONCLUSIVE)
EXIT_CODES = {VERIFIED: 0, REFUTED: 1, HYPOTHESIS_FAILED: 2, INCONCLUSIVE: 4}

THEOREMS = (
    "lemma_nil_words",
    "lemma_sigma_reflect",
    "thm_nil_coeff",
    "thm_nil_product",
    "thm_weak_sym_transfer",
    "thm_tower_weak_sym",
    "prop_idempotent_split",
    "thm_quotient_transfer",
    "thm_ext_weak_sigdelta",
)

TOWER_SAMPLE_LIMIT = 1000
TOWER_POWER_CAP = 2


# ---------------------------------------------------------------------------
# Polynomial nilpotency


@dataclass(frozen=True)
class NilResult:
    nilpotent: bool
    index: int | None
    cap: int

    def __str__(self):
        return f"nilpotent({self.index})" if self.nilpotent else f"not_nilpotent_within_cap({self.cap})"


def default_cap(f: SkewPoly) -> int:
    """(m+1)k+1 with m+1 the term count and k the largest coefficient nil index.

    When some coefficient is not nilpotent there is no such k; the ring
    order stands in (it bounds every nil index).
    """
    R = f.alg.ring
    terms = max(len(f), 1)
    idx = [int(R.nil_index[c]) for c in f.terms.values()]
    k = R.order if (not idx or 0 in idx) else max(idx)
    return terms * k + 1


def is_nilpotent_poly_direct(f: SkewPoly, cap: int | None = None) -> NilResult:
    """Least m with f^m = 0 found by successive multiplication, up to ``cap``."""
    if cap is None:
        cap = default_cap(f)
    if cap < 1:
        raise ValueError("cap must be positive")
    p = f
    for m in range(1, cap + 1):
        if p.is_zero:
            return NilResult(True, m, cap)
        if m < cap:
            p = p * f
    return NilResult(False, None, cap)


def in_nilRA(f: SkewPoly) -> bool:
    """All coefficients nilpotent in the coefficient ring."""
    nil = f.alg.ring.nil_mask
    return all(nil[c] for c in f.terms.values())


def _label_witness(P: PBWPresentation, wit, kinds: str) -> tuple | None:
    """Render a witness tuple; ``kinds`` has one char per slot: e=element, w=word, i=int."""
    if wit is None:
        return None
    out = []
    for k, v in zip(kinds, wit):
        if k == "e":
            out.append(P.ring.label(v))
        elif k == "w":
            out.append(format_word(v))
        else:
            out.append(v)
    return tuple(out)


_HYP_CACHE: dict[int, tuple[PBWPresentation, list[Hypothesis]]] = {}


def standing_hypotheses(P: PBWPresentation, L: int = DEFAULT_WORD_LENGTH) -> list[Hypothesis]:
    """Compatibility, reversibility of R, and centrality of every c_ij."""
    key = (id(P), L)
    hit = _HYP_CACHE.get(key)
    if hit is not None and hit[0] is P:
        return list(hit[1])
    R, S = P.ring, P.system
    comp = is_compatible(S, L)
    sig_ok = comp.holds or comp.note != "sigma"
    hyps = [
        Hypothesis("sigma_compatible", sig_ok, None if sig_ok else _label_witness(P, comp.witness, "eew")),
        Hypothesis("delta_compatible", comp.holds or comp.note == "sigma",
                   None if comp.holds or comp.note == "sigma" else _label_witness(P, comp.witness, "eew"),
                   comp.note if comp.note == "mixed" else ""),
    ]
    if not sig_ok:
        # delta side is still worth knowing when sigma already failed
        from .sigdelta import is_delta_compatible

        d = is_delta_compatible(S, L)
        hyps[1] = Hypothesis("delta_compatible", d.holds, _label_witness(P, d.witness, "eew"))
    from .finring import property_witness

    rw = property_witness(R, "reversible")
    hyps.append(Hypothesis("reversible", rw is None, _label_witness(P, rw, "ee")))
    bad_c = next(((i, j) for (i, j), c in sorted(P.c.items()) if not R.is_central(c)), None)
    hyps.append(Hypothesis("c_central", bad_c is None, bad_c))
    _HYP_CACHE[key] = (P, hyps)
    return list(hyps)


@dataclass(frozen=True)
class CriterionResult:
    """``value`` is the nilpotency verdict; ``status`` says how it was reached."""

    value: bool
    status: str  # "criterion" or "hypothesis_failed"
    read_off: bool
    hypotheses: tuple[Hypothesis, ...]
    direct: NilResult | None = None


def is_nilpotent_poly_criterion(f: SkewPoly) -> CriterionResult:
    P = f.alg
    hyps = tuple(standing_hypotheses(P))
    read = in_nilRA(f)
    if all(h.holds for h in hyps):
        return CriterionResult(read, "criterion", read, hyps)
    d = is_nilpotent_poly_direct(f)
    return CriterionResult(d.nilpotent, "hypothesis_failed", read, hyps, d)


class NilOracle:
    """Memoised nilpotency decisions for one presentation.

    With the standing hypotheses in force the coefficient criterion decides
    and every positive answer is confirmed by direct powering; otherwise
    direct powering with the default cap decides (cap exhaustion counts as
    not nilpotent).
    """

    def __init__(self, P: PBWPresentation, use_criterion: bool):
        self.P = P
        self.use_criterion = use_criterion
        self._cache: dict[SkewPoly, bool] = {}
        self.mismatches: list[tuple[SkewPoly, NilResult]] = []

    def __call__(self, f: SkewPoly) -> bool:
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if self.use_criterion:
            val = in_nilRA(f)
            if val:
                d = is_nilpotent_poly_direct(f)
                if not d.nilpotent:
                    self.mismatches.append((f, d))
        else:
            val = is_nilpotent_poly_direct(f).nilpotent
        self._cache[f] = val
        return val


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class Budget:
    max_terms: int = 2
    max_deg: int = 2
    mode: str = "exhaustive"
    sample_count: int = 10_000
    seed: int = 0
    word_length: int = DEFAULT_WORD_LENGTH
    all_witnesses: bool = False

    def __post_init__(self):
        if self.mode not in ("exhaustive", "seeded"):
            raise BudgetError(f"unknown mode {self.mode!r} (expected exhaustive or seeded)")
        if self.max_terms < 1 or self.max_deg < 0:
            raise BudgetError("budget renders the search box empty (need max_terms >= 1, max_deg >= 0)")
        if self.mode == "seeded" and self.sample_count < 1:
            raise BudgetError("seeded mode needs a positive sample count")


@dataclass(frozen=True)
class Counterexample:
    inputs: dict[str, str]
    expected: str
    got: str

    def to_dict(self) -> dict:
        return {"inputs": dict(self.inputs), "expected": self.expected, "got": self.got}


@dataclass
class VerificationReport:
    theorem: str
    presentation: str
    hypotheses: list[Hypothesis]
    domain: dict[str, Any]
    checks_run: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    verdict: str = VERIFIED
    notes: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def hypothesis(self, name: str) -> Hypothesis:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "theorem": self.theorem,
            "presentation": self.presentation,
            "verdict": self.verdict,
            "hypotheses": [
                {"name": h.name, "holds": h.holds, "witness": None if h.witness is None else list(h.witness),
                 **({"note": h.note} if h.note else {})}
                for h in self.hypotheses
            ],
            "domain": dict(self.domain),
            "checks_run": self.checks_run,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [
            f"theorem       {d['theorem']}",
            f"presentation  {d['presentation']}",
            f"verdict       {d['verdict']}",
            f"checks_run    {d['checks_run']}",
            "domain        " + ", ".join(
                f"{k}={'/'.join(map(str, v)) if isinstance(v, list) else v}" for k, v in d["domain"].items()),
            "hypotheses",
        ]
        width = max((len(h["name"]) for h in d["hypotheses"]), default=0)
        for h in d["hypotheses"]:
            wit = "" if h["witness"] is None else "  witness (" + ", ".join(map(str, h["witness"])) + ")"
            lines.append(f"  {h['name']:<{width}}  {'holds' if h['holds'] else 'FAILS'}{wit}")
        if d["counterexamples"]:
            lines.append("counterexamples")
            for c in d["counterexamples"]:
                ins = ", ".join(f"{k}={v}" for k, v in c["inputs"].items())
                lines.append(f"  {ins}: expected {c['expected']}, got {c['got']}")
        for n in d["notes"]:
            lines.append(f"note: {n}")
        return "\n".join(lines)


def _finish(rep: VerificationReport, inconclusive: bool = False) -> VerificationReport:
    if not all(h.holds for h in rep.hypotheses):
        rep.verdict = HYPOTHESIS_FAILED
    elif rep.counterexamples:
        rep.verdict = REFUTED
    elif inconclusive:
        rep.verdict = INCONCLUSIVE
    else:
        rep.verdict = VERIFIED
    return rep


class _Collector:
    """Keeps the first counterexample (or all, when asked)."""

    def __init__(self, rep: VerificationReport, keep_all: bool):
        self.rep = rep
        self.keep_all = keep_all
        self.count = 0

    def add(self, inputs: dict, expected: str, got: str):
        self.count += 1
        if self.keep_all or not self.rep.counterexamples:
            self.rep.counterexamples.append(Counterexample({k: str(v) for k, v in inputs.items()}, expected, got))


def _box(P: PolyAlgebra, budget: Budget) -> list[SkewPoly]:
    return list(iter_box(P, budget.max_terms, budget.max_deg))


def _tuples(n_items: int, arity: int, budget: Budget, stream: int = 0) -> Iterator[tuple[int, ...]]:
    if budget.mode == "exhaustive":
        yield from itertools.product(range(n_items), repeat=arity)
        return
    rng = np.random.Generator(np.random.Philox(key=budget.seed + stream))
    draws = rng.integers(0, n_items, size=(budget.sample_count, arity))
    for row in draws:
        yield tuple(int(v) for v in row)


def _domain(budget: Budget, box_size: int | None = None, arity: int | None = None) -> dict:
    d: dict[str, Any] = {"mode": budget.mode, "max_terms": budget.max_terms, "max_deg": budget.max_deg}
    if box_size is not None:
        d["box_size"] = box_size
    if arity is not None:
        d["tuples"] = box_size**arity if budget.mode == "exhaustive" else budget.sample_count
    if budget.mode == "seeded":
        d["seed"] = budget.seed
        d["generator"] = "philox"
    return d


def _nil_word(ok: bool) -> str:
    return "nilpotent" if ok else "not nilpotent"


# ---------------------------------------------------------------------------
# Ring-level lemmas


def _lemma_nil_words(P, budget, ideal):
    R, S = P.ring, P.system
    hyps = standing_hypotheses(P, budget.word_length)[:3]
    rep = VerificationReport("lemma_nil_words", P.name, hyps,
                             {"level": "ring", "word_length": budget.word_length})
    col = _Collector(rep, budget.all_witnesses)
    mul, nil = R.mul_table, R.nil_mask
    premise = nil[mul]
    wl = words(S.n, budget.word_length)
    for w in wl:
        img = S.word_array(w)
        bad = np.argwhere(premise & ~nil[mul[:, img]])
        for a, b in bad[: (None if budget.all_witnesses else 1)]:
            col.add({"a": R.label(a), "b": R.label(b), "word": format_word(w)},
                    "a*w(b) nilpotent", "not nilpotent")
        rep.checks_run += R.order**2
    return _finish(rep)


def _lemma_sigma_reflect(P, budget, ideal):
    R, S = P.ring, P.system
    comp = is_sigma_compatible(S, budget.word_length)
    hyps = [Hypothesis("sigma_compatible", comp.holds, _label_witness(P, comp.witness, "eew"))]
    rep = VerificationReport("lemma_sigma_reflect", P.name, hyps,
                             {"level": "ring", "word_length": budget.word_length})
    col = _Collector(rep, budget.all_witnesses)
    mul, nil = R.mul_table, R.nil_mask
    for w in words(S.n, budget.word_length, ("sigma",)):
        img = S.word_array(w)
        bad = np.argwhere(nil[mul[:, img]] & ~nil[mul])
        for a, b in bad[: (None if budget.all_witnesses else 1)]:
            col.add({"a": R.label(a), "b": R.label(b), "word": format_word(w)}, "ab nilpotent", "not nilpotent")
        rep.checks_run += R.order**2
    return _finish(rep)


# ---------------------------------------------------------------------------
# Polynomial-level theorems


def _thm_nil_coeff(P, budget, ideal):
    hyps = standing_hypotheses(P, budget.word_length)
    box = _box(P, budget)
    rep = VerificationReport("thm_nil_coeff", P.name, hyps, _domain(budget, len(box), 1))
    col = _Collector(rep, budget.all_witnesses)
    if budget.mode == "exhaustive":
        sample = box
    else:
        sample = [box[i] for (i,) in _tuples(len(box), 1, budget)]
    # the same sweep under the other built-in order guards against order dependence
    other = P.with_order("lex" if P.order.kind == "deglex" else "deglex")
    rep.domain["orders"] = [P.order.kind, other.order.kind]
    for f in sample:
        crit = in_nilRA(f)
        direct = is_nilpotent_poly_direct(f)
        rep.checks_run += 1
        if crit != direct.nilpotent:
            col.add({"f": P.format(f)}, _nil_word(crit) + " (coefficient criterion)", str(direct))
        again = is_nilpotent_poly_direct(other.poly(f.terms), direct.cap)
        if again.nilpotent != direct.nilpotent:
            col.add({"f": P.format(f), "order": other.order.kind}, str(direct), str(again))
    if not all(h.holds for h in hyps) and rep.counterexamples:
        rep.notes.append("counterexamples show the failing hypothesis is needed for the criterion")
    return _finish(rep)


def _thm_nil_product(P, budget, ideal):
    R = P.ring
    hyps = standing_hypotheses(P, budget.word_length)
    box = _box(P, budget)
    rep = VerificationReport("thm_nil_product", P.name, hyps, _domain(budget, len(box)))
    rep.domain["parts"] = "fg, fgr (all r), fgh"
    col = _Collector(rep, budget.all_witnesses)
    nil = R.nil_mask
    cache: dict[SkewPoly, bool] = {}

    def direct(f):
        v = cache.get(f)
        if v is None:
            v = cache[f] = is_nilpotent_poly_direct(f).nilpotent
        return v

    def coeff_products(*polys, tail=None):
        lists = [list(p.terms.values()) for p in polys]
        for combo in itertools.product(*lists):
            x = R.prod(combo)
            if tail is not None:
                x = R.mul(x, tail)
            if not nil[x]:
                return False
        return True

    for i, j in _tuples(len(box), 2, budget, stream=1):
        f, g = box[i], box[j]
        fg = f * g
        lhs, rhs = direct(fg), coeff_products(f, g)
        rep.checks_run += 1
        if lhs != rhs:
            col.add({"part": 1, "f": P.format(f), "g": P.format(g)}, _nil_word(rhs) + " (a_i b_j)", _nil_word(lhs))
        for r in R.elements:
            lhs = direct(fg * P.const(r))
            rhs = coeff_products(f, g, tail=r)
            rep.checks_run += 1
            if lhs != rhs:
                col.add({"part": 2, "f": P.format(f), "g": P.format(g), "r": R.label(r)},
                        _nil_word(rhs) + " (a_i b_j r)", _nil_word(lhs))
    for i, j, k in _tuples(len(box), 3, budget, stream=2):
        f, g, h = box[i], box[j], box[k]
        lhs, rhs = direct(f * g * h), coeff_products(f, g, h)
        rep.checks_run += 1
        if lhs != rhs:
            col.add({"part": 3, "f": P.format(f), "g": P.format(g), "h": P.format(h)},
                    _nil_word(rhs) + " (a_i b_j c_k)", _nil_word(lhs))
    return _finish(rep)


def _record_mismatches(col: _Collector, P, oracle: NilOracle):
    for f, d in oracle.mismatches:
        col.add({"f": P.format(f)}, "nilpotent (coefficient criterion)", str(d))


def _thm_weak_sym_transfer(P, budget, ideal):
    R = P.ring
    hyps = standing_hypotheses(P, budget.word_length)
    box = _box(P, budget)
    rep = VerificationReport("thm_weak_sym_transfer", P.name, hyps, _domain(budget, len(box), 3))
    col = _Collector(rep, budget.all_witnesses)
    ring_ws = ring_property(R, "weak_symmetric")
    rep.domain["ring_weak_symmetric"] = ring_ws
    hyps_ok = all(h.holds for h in hyps)
    nil = NilOracle(P, hyps_ok)
    found_ext = 0
    for i, j, k in _tuples(len(box), 3, budget, stream=3):
        f, g, h = box[i], box[j], box[k]
        rep.checks_run += 1
        if nil(f * g * h) and not nil(f * h * g):
            found_ext += 1
            if ring_ws:
                col.add({"f": P.format(f), "g": P.format(g), "h": P.format(h)},
                        "fhg nilpotent", "not nilpotent")
    _record_mismatches(col, P, nil)
    if found_ext and not ring_ws:
        rep.notes.append(f"{found_ext} extension-level violations found; consistent since R is not weak symmetric")
    # converse direction: ring-level violations must survive the constant embedding
    from .finring import property_witness

    wit = property_witness(R, "weak_symmetric")
    if wit is not None:
        a, b, c = wit
        e = [P.const(x) for x in (a, b, c)]
        rep.checks_run += 1
        if not (nil(e[0] * e[1] * e[2]) and not nil(e[0] * e[2] * e[1])):
            col.add({"a": R.label(a), "b": R.label(b), "c": R.label(c)},
                    "constant embedding violates weak symmetry", "embedding satisfies it")
        rep.notes.append("R is not weak symmetric; converse checked on the embedded witness "
                         f"({R.label(a)}, {R.label(b)}, {R.label(c)})")
    return _finish(rep)


def _ext_hypotheses(P) -> tuple[list[Hypothesis], Any]:
    maps = extend_maps(P)
    out = []
    for h in maps.hypotheses:
        wit = h.witness
        if wit is not None and h.name in ("sigma_delta_commute", "delta_delta_commute"):
            wit = (wit[0], wit[1], P.ring.label(wit[2]))
        out.append(Hypothesis(f"extend_maps.{h.name}", h.holds, wit))
    return out, maps


def _thm_ext_weak_sigdelta(P, budget, ideal):
    base = standing_hypotheses(P, budget.word_length)
    ext, maps = _ext_hypotheses(P)
    hyps = base[:3] + ext
    box = _box(P, budget)
    rep = VerificationReport("thm_ext_weak_sigdelta", P.name, hyps, _domain(budget, len(box), 3))
    if not maps.ok:
        rep.notes.append("extended maps unavailable; extension-level sweep skipped")
        return _finish(rep)
    col = _Collector(rep, budget.all_witnesses)
    nil = NilOracle(P, all(h.holds for h in base))
    for i, j, k in _tuples(len(box), 3, budget, stream=4):
        f, g, h = box[i], box[j], box[k]
        rep.checks_run += 1
        if not nil(f * g * h):
            continue
        fh = f * h
        for idx in range(1, P.n + 1):
            for kind, image in (("sigma", maps.sigma_bar(idx, g)), ("delta", maps.delta_bar(idx, g))):
                if not nil(fh * image):
                    col.add({"f": P.format(f), "g": P.format(g), "h": P.format(h), "map": f"{kind}_{idx}"},
                            f"f*h*{kind}_{idx}(g) nilpotent", "not nilpotent")
    _record_mismatches(col, P, nil)
    return _finish(rep)


# ---------------------------------------------------------------------------
# Tower


def _sample_tower(T, base_box: list[SkewPoly], budget: Budget, rng) -> SkewPoly:
    monos = monomials_up_to(T.n, budget.max_deg, T.order)
    k = int(rng.integers(1, budget.max_terms + 1))
    picks = rng.choice(len(monos), size=min(k, len(monos)), replace=False)
    nonzero = [p for p in base_box if not p.is_zero]
    return T.poly({monos[int(m)]: nonzero[int(rng.integers(0, len(nonzero)))] for m in sorted(picks)})


def _tower_nil(f: SkewPoly) -> bool | None:
    """True/False within the power cap; None when coefficient caps were hit."""
    try:
        p = f
        for m in range(1, TOWER_POWER_CAP + 1):
            if p.is_zero:
                return True
            if m < TOWER_POWER_CAP:
                p = p * f
        return False
    except CapExceeded:
        return None


def _thm_tower_weak_sym(P, budget, ideal):
    rig = is_sigma_rigid(P.system, budget.word_length)
    ext, maps = _ext_hypotheses(P)
    hyps = [Hypothesis("sigma_rigid", rig.holds, _label_witness(P, rig.witness, "ew"))] + ext
    count = min(budget.sample_count, TOWER_SAMPLE_LIMIT)
    dom = {"level": "tower", "mode": "seeded", "max_terms": budget.max_terms, "max_deg": budget.max_deg,
           "samples": count, "seed": budget.seed, "generator": "philox", "power_cap": TOWER_POWER_CAP}
    rep = VerificationReport("thm_tower_weak_sym", P.name, hyps, dom)
    if budget.mode == "exhaustive":
        rep.notes.append("exhaustive verification is unsupported over the infinite ring A; seeded sampling used")
    if not maps.ok:
        rep.notes.append("tower not constructible; sampling skipped")
        return _finish(rep)
    T = tower_presentation(P)
    base_box = _box(P, Budget(1, 1))
    rng = np.random.Generator(np.random.Philox(key=budget.seed + 5))
    inconclusive = 0
    for _ in range(count):
        try:
            f, g, h = (_sample_tower(T, base_box, budget, rng) for _ in range(3))
            premise = _tower_nil(f * g * h)
            concl = _tower_nil(f * h * g) if premise else True
        except CapExceeded:
            premise, concl = None, None
        rep.checks_run += 1
        if premise is None or concl is None or (premise and not concl):
            inconclusive += 1
    if inconclusive:
        rep.notes.append(f"{inconclusive} samples inconclusive under the evaluation caps")
    return _finish(rep, inconclusive=bool(inconclusive))


# ---------------------------------------------------------------------------
# Ideals and idempotents


def _prop_idempotent_split(P, budget, ideal):
    R, S = P.ring, P.system
    aw = None
    from .finring import property_witness

    aw = property_witness(R, "abelian")
    idem = sorted(idempotents(R))
    fix = next(((e, i) for e in idem for i in range(1, S.n + 1) if S.sigma(i)(e) != e), None)
    kill = next(((e, i) for e in idem for i in range(1, S.n + 1) if S.delta(i)(e) != R.zero), None)
    hyps = [
        Hypothesis("abelian", aw is None, _label_witness(P, aw, "ee")),
        Hypothesis("sigma_fixes_idempotents", fix is None, None if fix is None else (R.label(fix[0]), fix[1])),
        Hypothesis("delta_kills_idempotents", kill is None, None if kill is None else (R.label(kill[0]), kill[1])),
    ]
    rep = VerificationReport("prop_idempotent_split", P.name, hyps,
                             {"level": "ring", "idempotents": len(idem)})
    col = _Collector(rep, budget.all_witnesses)
    whole = is_weak_sigma_delta_symmetric(S).holds
    rep.domain["ring_weak_sigma_delta_symmetric"] = whole
    for e in idem:
        f = R.sub(R.one, e)
        parts = []
        for g in (e, f):
            I = Ideal(R, frozenset(R.mul(g, r) for r in R.elements))
            parts.append(is_weak_sym_ideal(S, I).holds)
        split = all(parts)
        rep.checks_run += 1
        if split != whole:
            col.add({"e": R.label(e)}, f"eR, (1-e)R weak symmetric ideals = {whole}", str(split))
    return _finish(rep)


def _thm_quotient_transfer(P, budget, ideal):
    if ideal is None:
        raise BudgetError("thm_quotient_transfer needs an ideal")
    R, S = P.ring, P.system
    inv = is_invariant_ideal(S, ideal, "both")
    ws_i = is_weak_sym_ideal(S, ideal)
    nil_bad = next((a for a in sorted(ideal.members) if not R.nil_mask[a]), None)
    hyps = [
        Hypothesis("proper", ideal.is_proper),
        Hypothesis("invariant", inv.holds, None if inv.holds else (R.label(inv.witness[0]), *inv.witness[1:])),
        Hypothesis("weak_sym_ideal", ws_i.holds, _label_witness(P, ws_i.witness, "eeei")),
        Hypothesis("ideal_in_nil", nil_bad is None, None if nil_bad is None else (R.label(nil_bad),)),
    ]
    rep = VerificationReport("thm_quotient_transfer", P.name, hyps,
                             {"level": "ring", "ideal": "{" + ", ".join(ideal.labels()) + "}"})
    rep.notes.append("sigma_i(I) = I is required for the quotient extension (reading of the ontoness hypothesis)")
    if not all(h.holds for h in hyps[:2]):
        return _finish(rep)
    col = _Collector(rep, budget.all_witnesses)
    T, _ = induced_quotient_system(S, ideal)
    up = is_weak_sigma_delta_symmetric(S)
    down = is_weak_sigma_delta_symmetric(T)
    rep.domain["R_weak_sigma_delta_symmetric"] = up.holds
    rep.domain["R/I_weak_sigma_delta_symmetric"] = down.holds
    rep.domain["sigma_reverse_R"] = up.sigma_reverse.holds
    rep.domain["sigma_reverse_R/I"] = down.sigma_reverse.holds
    rep.checks_run += 2
    if up.holds != down.holds:
        col.add({"ideal": rep.domain["ideal"]}, f"R/I weak symmetric = {up.holds}", str(down.holds))
    onto = is_invariant_ideal(S, ideal, "sigma_onto")
    if onto.holds:
        try:
            qe = quotient_extension(P, ideal)
            rep.checks_run += R.order
            rep.domain["IA_cap_R"] = "{" + ", ".join(R.label(r) for r in sorted(qe.intersection)) + "}"
        except PresentationError as exc:
            col.add({"ideal": rep.domain["ideal"]}, "IA ∩ R = I and A/IA consistent", str(exc))
    else:
        rep.notes.append("sigma_i(I) != I; the IA ∩ R check was skipped")
    return _finish(rep)


# ---------------------------------------------------------------------------


_DISPATCH: dict[str, Callable] = {
    "lemma_nil_words": _lemma_nil_words,
    "lemma_sigma_reflect": _lemma_sigma_reflect,
    "thm_nil_coeff": _thm_nil_coeff,
    "thm_nil_product": _thm_nil_product,
    "thm_weak_sym_transfer": _thm_weak_sym_transfer,
    "thm_tower_weak_sym": _thm_tower_weak_sym,
    "prop_idempotent_split": _prop_idempotent_split,
    "thm_quotient_transfer": _thm_quotient_transfer,
    "thm_ext_weak_sigdelta": _thm_ext_weak_sigdelta,
}


def verify(theorem: str, P: PBWPresentation, budget: Budget | None = None,
           ideal: Ideal | None = None) -> VerificationReport:
    if theorem not in _DISPATCH:
        raise SkewPBWError(f"unsupported theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")
    require_valid(P)
    if ideal is not None and ideal.ring is not P.ring:
        raise BudgetError("ideal belongs to a different ring")
    return _DISPATCH[theorem](P, budget or Budget(), ideal)


@dataclass(frozen=True)
class TransferPair:
    ring_weak_symmetric: bool
    extension_weak_symmetric: bool
    hypotheses: tuple[Hypothesis, ...]
    status: str  # agree | hypothesis_failed | disagree
    report: VerificationReport

    @property
    def agree(self) -> bool:
        return self.ring_weak_symmetric == self.extension_weak_symmetric


def check_transfer_pair(P: PBWPresentation, budget: Budget | None = None) -> TransferPair:
    """Ring-level weak symmetry next to the budgeted extension-level search."""
    rep = verify("thm_weak_sym_transfer", P, budget)
    ring_ws = bool(rep.domain["ring_weak_symmetric"])
    ext_viol = bool(rep.counterexamples) or any("extension-level violations" in n for n in rep.notes)
    ext_ws = not ext_viol
    hyps_ok = all(h.holds for h in rep.hypotheses)
    if not hyps_ok:
        status = "hypothesis_failed"
    else:
        status = "agree" if ring_ws == ext_ws else "disagree"
    return TransferPair(ring_ws, ext_ws, tuple(rep.hypotheses), status, rep)
