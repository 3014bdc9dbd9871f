import pytest

import ejk

SCI = """system AX
const prop d1 d2
step 0 (d1 == d2) -> (~d1 == ~d2) ; ax xii chi="~x0" sigma=[x0:="d1"] sigma'=[x0:="d2"]
"""

NEC = """system AX4_AXNEC
step 0 box x0 -> x0 ; ax vii
step 1 box (box x0 -> x0) ; axnec vii phi="x0"
"""

TOTAL = """worlds: w wp
edges: w wp wp w
val w: x0=1 x1=1
val wp: x0=0 x1=0
"""


def test_parse_and_render():
    f = ejk.parse("x0 -> x1 -> x0")
    assert str(f) == "x0 -> (x1 -> x0)"
    assert f == ejk.parse("x0 -> (x1 -> x0)")
    assert hash(f) == hash(ejk.parse("x0 -> (x1 -> x0)"))


def test_parse_error_carries_code():
    with pytest.raises(ejk.EjkError) as info:
        ejk.parse("x0 ->")
    assert info.value.code == "SyntaxError"


def test_alpha_and_reference():
    a = ejk.parse("all x0. (x0 -> x1)")
    b = ejk.parse("all x2. (x2 -> x1)")
    assert a.alpha_eq(b)
    assert a.normalize() == b.normalize()
    d = ["d1"]
    assert ejk.parse("x0").refers_to(ejk.parse("x0 -> d1", d))
    assert not ejk.parse("x0").refers_to(ejk.parse("all x0. (x0 -> d1)", d))


def test_substitute():
    f = ejk.substitute(ejk.parse("x0 -> x1"), '[x0:="d1"]', ["d1"])
    assert str(f) == "d1 -> x1"


def test_axioms():
    assert len(ejk.schemas()) == 26
    inst = ejk.build_instance("vii", 'phi="x0"')
    assert str(inst) == "box x0 -> x0"
    assert ejk.recognize(inst, "AX")[0] == "vii"
    assert ejk.is_axiom(ejk.parse("box x2 -> x2"), "AX")
    assert not ejk.is_axiom(ejk.parse("x0 -> box x0"), "AX4")


def test_proofs():
    assert ejk.check_proof(SCI) == (True, None, None)
    assert ejk.check_proof(NEC)[0]
    boxed = ejk.necessitate(NEC)
    assert ejk.check_proof(boxed)[0]
    bad = NEC.replace("axnec vii", "axnec viii")
    ok, step, reason = ejk.check_proof(bad)
    assert not ok and step == 1 and reason
    k = ejk.derive_k("x0", "x1")
    assert ejk.check_proof(k)[0]
    g = ejk.generalize_constant("system AX\nconst prop d\nconst just s\nstep 0 (d : s) -> (d : s) ; ax taut\n", "d", "x0")
    assert ejk.check_proof(g)[0]
    assert "all x0. (x0 : s -> x0 : s)" in g


def test_models():
    s4 = ejk.Model.s4()
    failures, warnings = s4.validate()
    assert failures == [] and warnings == ["SyntaxDependentBox"]
    assert s4.derived_sets() == (["t", "f", "nec"], ["imp"])
    assert s4.condition("four") == []
    assert [w for _, w in s4.condition("e")] == ["t"]
    ext = ejk.Model.extensional()
    assert ext.derived_sets() == (["t"], ["f"])
    assert ext.eval("~ex x0. (x0 == (x0 : false))") == ("t", True)
    assert s4.eval("box x0", "x0=nec") == ("nec", True)
    again = ejk.Model.parse(str(s4))
    assert str(again) == str(s4)
    broken = ejk.Model.parse(str(ext).replace("neg: t -> f", "neg: t -> t"))
    assert broken.validate()[0][0][0] == "ii"


def test_kripke():
    k = ejk.Frame.parse(TOTAL)
    assert k.worlds == ["w", "wp"]
    assert k.sat("w", ejk.parse("box (x0 -> x1)"))
    model, beta = k.translate("w")
    assert beta.startswith("x0=t x1=t")
    rows = k.audit("w", 2)
    assert len(rows) == 122
    assert [r[0] for r in rows if not r[3]] == ["box (x0 -> x1)", "box (x1 -> x0)"]
    found = ejk.search_countermodel(ejk.parse("x0 -> box x0"), 2)
    assert found is not None
    frame, world = found
    assert not frame.sat(world, ejk.parse("x0 -> box x0"))
    assert ejk.search_countermodel(ejk.parse("box x0 -> x0"), 3) is None
    with pytest.raises(ejk.EjkError):
        ejk.search_countermodel(ejk.parse("x0"), 6)
