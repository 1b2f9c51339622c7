"""Transformer processes and contexts: the translation as an evaluation context.

A transformer adapts one endpoint of type dual(A) into the dualized
translated type; its denotation is exactly the graph of the observation
transform at A.  Cutting a process against one transformer per context
name (plus a closing `z[]`) yields a context whose denotation function
coincides with the pointwise observation transform, which gives the
second full abstraction result.
"""

from __future__ import annotations

from .denotations import denote, join_tuples, mk_tuple, obs_space, tuple_merge, well_sorted
from .obs_transform import AbstractionVerdict, SortMismatch, Verdict, _set_verdict, l_ctx, l_obs
from .syntax import (
    Bottom,
    Case,
    Client,
    EmptyIn,
    EmptyOut,
    Formula,
    Fwd,
    In,
    Inact,
    Mix,
    Name,
    NameSupply,
    OfCourse,
    Out,
    Par,
    Plus,
    Process,
    Select,
    Server,
    Tensor,
    Unit,
    WhyNot,
    With,
    dual,
)
from .translation import closing_name, prime_map, translate_formula_dual, translate_process, translated_context
from .typing import (
    CpwbError,
    CPTypeError,
    Hole,
    KCut,
    KMix,
    System,
    TypedContext,
    check,
    ctx_items,
    fill,
    make_context,
)


def transformer(a: Formula, x: Name, xp: Name, supply: NameSupply | None = None) -> Process:
    """The adapter process at {x: dual(a), xp: translate_formula_dual(a)}."""
    if supply is None:
        supply = NameSupply({x, xp})
    t = transformer
    match a:
        case Bottom():
            return Fwd(x, xp)
        case Unit():
            y = supply.fresh("y")
            return Out(y, xp, Fwd(y, x), EmptyIn(xp, Inact()))
        case Par(l, r):
            yp = supply.fresh("y")
            y = supply.fresh("y")
            return In(xp, yp, Out(y, x, t(l, y, yp, supply), t(r, x, xp, supply)))
        case Tensor(l, r):
            y = supply.fresh("y")
            z1, z2 = supply.fresh("z"), supply.fresh("z")
            yp, xq = supply.fresh("y"), supply.fresh("x")
            left = In(z1, yp, Mix(t(l, y, yp, supply), EmptyOut(z1)))
            right = In(z2, xq, Mix(t(r, x, xq, supply), EmptyOut(z2)))
            return In(x, y, Out(z2, xp, Out(z1, z2, left, right), EmptyIn(xp, Inact())))
        case With(l, r):
            return Case(xp, Select(x, 1, t(l, x, xp, supply)), Select(x, 2, t(r, x, xp, supply)))
        case Plus(l, r):
            def branch(i, sub):
                u = supply.fresh("u")
                yp = supply.fresh("y")
                inner = Select(u, i, In(u, yp, Mix(t(sub, x, yp, supply), EmptyOut(u))))
                return Out(u, xp, inner, EmptyIn(xp, Inact()))

            return Case(x, branch(1, l), branch(2, r))
        case OfCourse(b):
            wp, wb = supply.fresh("w"), supply.fresh("w")
            y, yp = supply.fresh("y"), supply.fresh("y")
            body = Client(x, y, In(wb, yp, Mix(t(b, y, yp, supply), EmptyOut(wb))))
            return Out(wp, xp, Server(wp, wb, body), EmptyIn(xp, Inact()))
        case WhyNot(b):
            y, m = supply.fresh("y"), supply.fresh("m")
            zb, yp = supply.fresh("z"), supply.fresh("y")
            inner = Out(zb, m, In(zb, yp, Mix(t(b, y, yp, supply), EmptyOut(zb))), EmptyIn(m, Inact()))
            return Server(x, y, Client(xp, m, inner))
    raise CpwbError(f"not a formula: {a!r}")


def transformer_typing(a: Formula, x: Name, xp: Name) -> dict[Name, Formula]:
    return {x: dual(a), xp: translate_formula_dual(a)}


def transformer_context(ctx, z: Name | None = None) -> TypedContext:
    """One transformer cut per context name, in parallel with ``z[]``."""
    ctx = dict(ctx)
    if z is None:
        z = closing_name(ctx)
    pm = prime_map(ctx)
    if z in ctx or z in pm.values():
        raise CpwbError(f"closing name {z} is not fresh for the context")
    tree = Hole()
    for x in sorted(ctx):
        a = ctx[x]
        proc = transformer(a, x, pm[x])
        tree = KCut(x, a, tree, proc, ctx_items(transformer_typing(a, x, pm[x])))
    tree = KMix(tree, EmptyOut(z), ctx_items({z: Unit()}))
    return make_context(tree, ctx, System.CP02)


def context_denotation(k: TypedContext, tuples, bound: int = 2):
    """The induced function on denotation sets: identity at the hole,
    relational composition at cuts, product at mixes."""
    hole = k.hole_context
    xs = frozenset(tuples)
    for t in xs:
        if set(n for n, _ in t) != set(hole):
            raise SortMismatch("tuple domain must equal the hole context")
        for n, o in t:
            if not well_sorted(o, hole[n]):
                raise SortMismatch(f"component {n} is not sorted at {hole[n]}")
    return frozenset(_ctx_den(k, k.tree, xs, bound))


def _ctx_den(k: TypedContext, tree, xs, bound: int):
    match tree:
        case Hole():
            return set(xs)
        case KCut(x, _, sub, right, right_ctx):
            below = _ctx_den(k, sub, xs, bound)
            dq = check(right, dict(right_ctx), k.system)
            return join_tuples(below, denote(dq, bound).tuples, x, keep=False)
        case KMix(sub, right, right_ctx):
            below = _ctx_den(k, sub, xs, bound)
            dq = check(right, dict(right_ctx), k.system)
            return {tuple_merge(a, b) for a in below for b in denote(dq, bound).tuples}
    raise CpwbError(f"not a context tree: {tree!r}")


def transformer_graph(a: Formula, bound: int = 2, x: Name = "x", xp: Name = "x'") -> Verdict:
    """denote(transformer(a)) against the graph of l_obs over obs_space(a)."""
    d = check(transformer(a, x, xp), transformer_typing(a, x, xp), System.CP02)
    graph = {mk_tuple({x: o, xp: l_obs(a, o)}) for o in obs_space(a, bound)}
    return _set_verdict(graph, denote(d, bound).tuples, f"transformer graph at {a}")


def check_transformer_theorem(ctx, tuples, bound: int = 2) -> Verdict:
    """Context denotation of the transformer context vs the pointwise transform."""
    z = closing_name(ctx)
    k = transformer_context(ctx, z)
    got = context_denotation(k, tuples, bound)
    want = {l_ctx(ctx, t, z) for t in tuples}
    return _set_verdict(want, got, "transformer context denotation")


def check_transformer_correct(p: Process, ctx, bound: int = 2) -> Verdict:
    """Translated process vs the same process under the transformer context.

    Both sides use the same primed names and the same closing name, so the
    comparison is plain set equality.
    """
    d = check(p, ctx, System.CP02)
    lp = translate_process(d)
    left = denote(check(lp, translated_context(ctx), System.CP02), bound)
    k = transformer_context(ctx, closing_name(ctx))
    filled = fill(k, p)
    right = denote(check(filled, k.result_context, System.CP02), bound)
    return _set_verdict(left.tuples, right.tuples, "transformer correctness")


def full_abstraction_II(p: Process, q: Process, ctx, bound: int = 2) -> AbstractionVerdict:
    """Source equivalence iff equivalence under the transformer context."""
    from .denotations import TypingMismatch

    try:
        dp = check(p, ctx, System.CP02)
        dq = check(q, ctx, System.CP02)
    except CPTypeError as e:
        raise TypingMismatch(f"both processes must check at the shared typing: {e}") from e
    src = denote(dp, bound).tuples == denote(dq, bound).tuples
    k = transformer_context(ctx, closing_name(ctx))
    rctx = k.result_context
    dfp = check(fill(k, p), rctx, System.CP02)
    dfq = check(fill(k, q), rctx, System.CP02)
    img = denote(dfp, bound).tuples == denote(dfq, bound).tuples
    return AbstractionVerdict(src == img, src, img, "full abstraction (transformers)")
