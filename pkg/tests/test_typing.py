import pytest

from cpwb.harness import enumerate_processes
from cpwb.syntax import (
    Bottom,
    Case,
    Client,
    Contract,
    Cut,
    EmptyIn,
    EmptyOut,
    Fwd,
    Inact,
    Mix,
    OfCourse,
    Out,
    Plus,
    Server,
    Tensor,
    Unit,
    Weak,
    WhyNot,
    With,
    dual,
)
from cpwb.typing import (
    Hole,
    HoleTypeMismatch,
    KCut,
    KMix,
    LinearityViolation,
    NonBangContext,
    RuleMismatch,
    System,
    SystemViolation,
    TypeMismatch,
    UnboundName,
    check,
    check_context,
    ctx_items,
    fill,
    make_context,
)

one, bot = Unit(), Bottom()


def test_check_unit():
    d = check(EmptyOut("x"), {"x": one})
    assert d.rule == "one"
    assert d.context == {"x": one}


def test_check_mix0_system():
    with pytest.raises(SystemViolation):
        check(Inact(), {}, System.CP)
    assert check(Inact(), {}, System.CP0).rule == "mix0"


def test_check_fwd_needs_duals():
    with pytest.raises(RuleMismatch):
        check(Fwd("x", "y"), {"x": one, "y": one})
    d = check(Fwd("x", "y"), {"x": one, "y": bot})
    assert d.rule == "id"


def test_error_taxonomy():
    with pytest.raises(UnboundName):
        check(EmptyOut("x"), {"y": one})
    with pytest.raises(LinearityViolation):
        check(EmptyOut("x"), {"x": one, "y": one})
    with pytest.raises(RuleMismatch):
        check(EmptyOut("x"), {"x": bot})
    with pytest.raises(NonBangContext):
        check(Server("x", "y", EmptyIn("z", EmptyOut("y"))), {"x": OfCourse(one), "z": bot})
    with pytest.raises(SystemViolation):
        check(Mix(EmptyOut("x"), EmptyOut("y")), {"x": one, "y": one}, System.CP0)
    with pytest.raises(LinearityViolation):
        # name used in both tensor components
        check(
            Out("y", "x", Fwd("y", "z"), Fwd("x", "z")),
            {"x": Tensor(one, one), "z": bot},
        )


def test_weak_contract_markers():
    d = check(Weak("x", WhyNot(bot), Inact()), {"x": WhyNot(bot)}, System.CP0)
    assert d.rule == "weak"
    with pytest.raises(RuleMismatch):
        check(Weak("x", WhyNot(one), Inact()), {"x": WhyNot(bot)}, System.CP0)
    p = Contract("x", "a", "b", Client("a", "u", EmptyIn("u", Weak("b", WhyNot(bot), Inact()))))
    d = check(p, {"x": WhyNot(bot)}, System.CP0)
    assert d.rule == "contract"


def test_cut_annotation_drives_split():
    p = Cut("x", one, EmptyOut("x"), EmptyIn("x", EmptyOut("y")))
    d = check(p, {"y": one})
    assert d.rule == "cut"
    assert [prem.rule for prem in d.premises] == ["one", "bot"]
    with pytest.raises(RuleMismatch):
        check(Cut("x", bot, EmptyOut("x"), EmptyIn("x", EmptyOut("y"))), {"y": one})


def test_determinism_and_subject():
    p = Case("x", EmptyOut("x"), EmptyIn("x", Inact()))
    ctx = {"x": With(one, bot)}
    d1 = check(p, ctx, System.CP0)
    d2 = check(p, ctx, System.CP0)
    assert d1 == d2
    assert d1.process == p
    assert d1.context == ctx


def test_monotonicity_over_systems():
    for ctx in ({"x": one}, {"x": Plus(one, one)}, {"x": With(one, bot)}):
        for p in enumerate_processes(ctx, 4, System.CP02, markers=False):
            try:
                check(p, ctx, System.CP)
            except SystemViolation:
                continue
            check(p, ctx, System.CP0)
            check(p, ctx, System.CP02)


def test_context_hole_axiom():
    k = make_context(Hole(), {"x": one}, System.CP)
    assert k.result_ctx == ctx_items({"x": one})
    check_context(k, {"x": one}, {"x": one}, System.CP)
    with pytest.raises(HoleTypeMismatch):
        check_context(k, {"x": bot}, {"x": one}, System.CP)


def test_context_cut_and_mix():
    closer = EmptyIn("x", EmptyOut("y"))
    tree = KCut("x", one, Hole(), closer, ctx_items({"x": bot, "y": one}))
    k = make_context(tree, {"x": one}, System.CP0)
    assert k.result_context == {"y": one}
    tree2 = KMix(Hole(), EmptyOut("z"), ctx_items({"z": one}))
    k2 = make_context(tree2, {"x": one}, System.CP02)
    assert k2.result_context == {"x": one, "z": one}
    with pytest.raises(SystemViolation):
        make_context(tree2, {"x": one}, System.CP0)


def test_context_rejects_ill_typed_embedded_process():
    bad = KMix(Hole(), EmptyOut("z"), ctx_items({"z": bot}))
    with pytest.raises(RuleMismatch):
        make_context(bad, {"x": one}, System.CP02)


def test_fill():
    k = make_context(Hole(), {"x": one}, System.CP)
    assert fill(k, EmptyOut("x")) == EmptyOut("x")
    closer = EmptyIn("x", EmptyOut("y"))
    tree = KCut("x", one, Hole(), closer, ctx_items({"x": bot, "y": one}))
    k2 = make_context(tree, {"x": one}, System.CP0)
    filled = fill(k2, EmptyOut("x"))
    assert filled == Cut("x", one, EmptyOut("x"), closer)
    check(filled, k2.result_context, System.CP0)
    with pytest.raises(TypeMismatch):
        fill(k2, EmptyIn("x", Inact()))


def test_fill_round_trip_enumerated():
    # the fill lemma at small scale: check(fill(K, P), result) succeeds
    for a in (one, Plus(one, one), With(one, bot)):
        hole = {"x": a}
        closer_ctx = {"x": dual(a), "y": one}
        for closer in enumerate_processes(closer_ctx, 4, System.CP02, markers=False)[:5]:
            tree = KCut("x", a, Hole(), closer, ctx_items(closer_ctx))
            for side in enumerate_processes({"z": one}, 3, System.CP02, markers=False)[:2]:
                mixed = KMix(tree, side, ctx_items({"z": one}))
                k = make_context(mixed, hole, System.CP02)
                for p in enumerate_processes(hole, 4, System.CP02, markers=False):
                    filled = fill(k, p)
                    check(filled, k.result_context, System.CP02)
