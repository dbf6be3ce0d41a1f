import textwrap

import pytest

from skewpbw import config
from skewpbw.catalog import list_entries, instantiate
from skewpbw.errors import ParseError, PresentationError
from skewpbw.pbw import check_presentation

DOC = textwrap.dedent("""
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
      heis:
        ring: z5
        vars: [x, y, z]
        relations:
          "y*x": {c: "1", tail: {z: "1"}}
      qp:
        catalog: quantum_plane
        params: {ring: z7, q: 2}
    ideals:
      I: {ring: R, generators: ["t^3"]}
""")


def test_docstring_example_loads():
    cfg = config.Config.from_text(DOC)
    P = cfg.presentation("jordan")
    assert P.format(P.parse("y*[t]")) == "[t]*y + [t^2]"
    assert cfg.ideal("I").labels() == ["0", "t^3"]


def test_relations_and_catalog_refs():
    cfg = config.Config.from_text(DOC)
    H = cfg.presentation("heis")
    assert H.format(H.parse("y*x")) == "x*y + z"
    assert check_presentation(H).ok
    Q = cfg.presentation("qp")
    assert Q.name == "qp" and Q.ring.order == 7


def test_fallbacks():
    cfg = config.load([])
    assert cfg.presentation("qplane_z4").format(cfg.presentation("qplane_z4").parse("y*x")) == "[3]*x*y"
    assert cfg.presentation("jordan_trunc").ring.order == 16
    assert cfg.presentation("threedim_b_i").n == 3  # catalog default
    assert cfg.ring("z4").order == 4
    assert cfg.ideal("z8_four").labels() == ["0", "4"]
    with pytest.raises(PresentationError):
        cfg.presentation("missing")


def test_directory_loading(tmp_path):
    (tmp_path / "a.yaml").write_text("rings:\n  R9: {kind: zn, n: 9}\n")
    (tmp_path / "b.yaml").write_text("presentations:\n  p9: {ring: R9, vars: [u, v]}\n")
    cfg = config.load([tmp_path])
    assert cfg.presentation("p9").ring.order == 9


@pytest.mark.parametrize("text,match", [
    ("rings: [1, 2]", "must map"),
    ("bogus: {}", "unknown section"),
    ("rings: {R: {kind: zn, n: 4}", None),
])
def test_malformed_files(text, match):
    with pytest.raises(ParseError, match=match):
        config.Config.from_text(text)


def test_yaml_error_has_position():
    with pytest.raises(ParseError) as exc:
        config.Config.from_text("rings:\n  R: {kind: zn, n: 4\n")
    assert exc.value.line is not None


def test_bad_relation_keys():
    base = "presentations:\n  p: {ring: z4, vars: [x, y], relations: {%s: {c: '3'}}}\n"
    for key in ('"x*y"', '"y*w"', '"y"'):
        with pytest.raises(PresentationError):
            config.Config.from_text(base % key).presentation("p")


def test_circular_reference():
    text = "rings:\n  A: B\n  B: A\n"
    with pytest.raises(ParseError, match="circular"):
        config.Config.from_text(text).ring("A")


@pytest.mark.parametrize("entry", [e.name for e in list_entries()])
def test_emit_round_trip(entry):
    P = instantiate(entry)
    text = config.dump(config.presentation_document(P, "emitted"))
    Q = config.Config.from_text(text).presentation("emitted")
    assert Q.ring.labels == P.ring.labels
    assert Q.c == P.c and Q.tails == P.tails
    for i in range(1, P.n + 1):
        assert Q.system.sigma(i).image == P.system.sigma(i).image
        assert Q.system.delta(i).image == P.system.delta(i).image
