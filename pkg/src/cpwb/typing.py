"""Syntax-directed type checking for CP, CP+Mix0 and CP+Mix0+Mix2.

Every well-typed term has exactly one derivation: cuts are annotated,
weakening/contraction are explicit markers, and multiplicative context
splits are resolved by the free names of the subterms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .syntax import (
    Bottom,
    Case,
    Client,
    Contract,
    Cut,
    EmptyIn,
    EmptyOut,
    Formula,
    Fwd,
    In,
    Inact,
    Mix,
    Name,
    OfCourse,
    Out,
    Par,
    Plus,
    Process,
    Select,
    Server,
    Tensor,
    Unit,
    Weak,
    WhyNot,
    With,
    dual,
    free_names,
)


class CpwbError(Exception):
    """Base class for all workbench errors."""


class CPTypeError(CpwbError):
    pass


class UnboundName(CPTypeError):
    pass


class LinearityViolation(CPTypeError):
    pass


class RuleMismatch(CPTypeError):
    pass


class NonBangContext(CPTypeError):
    pass


class SystemViolation(CPTypeError):
    pass


class HoleTypeMismatch(CPTypeError):
    pass


class TypeMismatch(CPTypeError):
    pass


class System(enum.Enum):
    CP = "cp"
    CP0 = "cp0"
    CP02 = "cp02"

    @property
    def allows_mix0(self) -> bool:
        return self in (System.CP0, System.CP02)

    @property
    def allows_mix2(self) -> bool:
        return self is System.CP02


TypingContext = dict[str, Formula]
CtxItems = tuple[tuple[Name, Formula], ...]


def ctx_items(ctx) -> CtxItems:
    return tuple(sorted(dict(ctx).items()))


@dataclass(frozen=True)
class Derivation:
    rule: str
    process: Process
    ctx: CtxItems
    premises: tuple["Derivation", ...] = ()

    @property
    def context(self) -> TypingContext:
        return dict(self.ctx)


def check(p: Process, ctx, system: System = System.CP) -> Derivation:
    """Return the unique derivation of ``p`` at ``ctx``, or raise."""
    return _check(p, dict(ctx), system)


def _lookup(ctx: TypingContext, x: Name) -> Formula:
    if x not in ctx:
        raise UnboundName(f"name {x} not in context")
    return ctx[x]


def _exactly(ctx: TypingContext, names: set[Name]) -> None:
    extra = set(ctx) - names
    if extra:
        raise LinearityViolation(f"unused assignments: {sorted(extra)}")


def _split(ctx: TypingContext, left: set[Name], right: set[Name]):
    both = left & right
    if both:
        raise LinearityViolation(f"names used on both sides of a split: {sorted(both)}")
    for n in left | right:
        if n not in ctx:
            raise UnboundName(f"name {n} not in context")
    unused = set(ctx) - left - right
    if unused:
        raise LinearityViolation(f"unused assignments: {sorted(unused)}")
    return {n: ctx[n] for n in left}, {n: ctx[n] for n in right}


def _check_binder(ctx: TypingContext, y: Name) -> None:
    if y in ctx:
        raise LinearityViolation(f"binder {y} shadows an assignment")


def _check(p: Process, ctx: TypingContext, sys: System) -> Derivation:
    match p:
        case Inact():
            if not sys.allows_mix0:
                raise SystemViolation("the empty process needs Mix0")
            _exactly(ctx, set())
            return Derivation("mix0", p, ctx_items(ctx))

        case Fwd(a, b):
            ta = _lookup(ctx, a)
            tb = _lookup(ctx, b)
            _exactly(ctx, {a, b})
            if a == b or tb != dual(ta):
                raise RuleMismatch(f"forwarder endpoints must be dual, got {ta} and {tb}")
            return Derivation("id", p, ctx_items(ctx))

        case EmptyOut(x):
            t = _lookup(ctx, x)
            _exactly(ctx, {x})
            if t != Unit():
                raise RuleMismatch(f"empty output needs type 1, got {t}")
            return Derivation("one", p, ctx_items(ctx))

        case EmptyIn(x, body):
            t = _lookup(ctx, x)
            if t != Bottom():
                raise RuleMismatch(f"empty input needs type bot, got {t}")
            rest = {n: f for n, f in ctx.items() if n != x}
            return Derivation("bot", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Out(y, x, left, right):
            t = _lookup(ctx, x)
            if not isinstance(t, Tensor):
                raise RuleMismatch(f"output needs a tensor type, got {t}")
            rest = {n: f for n, f in ctx.items() if n != x}
            lnames = free_names(left) - {y}
            rnames = free_names(right) - {x}
            lctx, rctx = _split(rest, lnames, rnames)
            if y in lctx:
                raise LinearityViolation(f"binder {y} shadows an assignment")
            lctx[y] = t.left
            rctx[x] = t.right
            dl = _check(left, lctx, sys)
            dr = _check(right, rctx, sys)
            return Derivation("tensor", p, ctx_items(ctx), (dl, dr))

        case In(x, y, body):
            t = _lookup(ctx, x)
            if not isinstance(t, Par):
                raise RuleMismatch(f"input needs a par type, got {t}")
            if y == x:
                raise RuleMismatch("receive binder collides with its channel")
            rest = {n: f for n, f in ctx.items() if n != x}
            _check_binder(rest, y)
            rest[y] = t.left
            rest[x] = t.right
            return Derivation("par", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Select(x, i, body):
            t = _lookup(ctx, x)
            if not isinstance(t, Plus):
                raise RuleMismatch(f"selection needs a plus type, got {t}")
            if i not in (1, 2):
                raise RuleMismatch(f"selection index must be 1 or 2, got {i}")
            rest = dict(ctx)
            rest[x] = t.left if i == 1 else t.right
            return Derivation("plus", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Case(x, left, right):
            t = _lookup(ctx, x)
            if not isinstance(t, With):
                raise RuleMismatch(f"case needs a with type, got {t}")
            lctx = dict(ctx)
            lctx[x] = t.left
            rctx = dict(ctx)
            rctx[x] = t.right
            return Derivation(
                "with", p, ctx_items(ctx), (_check(left, lctx, sys), _check(right, rctx, sys))
            )

        case Server(x, y, body):
            t = _lookup(ctx, x)
            if not isinstance(t, OfCourse):
                raise RuleMismatch(f"server needs a !-type, got {t}")
            for n, f in ctx.items():
                if n != x and not isinstance(f, WhyNot):
                    raise NonBangContext(f"server context must be all ?-typed, {n} has {f}")
            if y == x:
                raise RuleMismatch("server binder collides with its channel")
            rest = {n: f for n, f in ctx.items() if n != x}
            _check_binder(rest, y)
            rest[y] = t.body
            return Derivation("bang", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Client(x, y, body):
            t = _lookup(ctx, x)
            if not isinstance(t, WhyNot):
                raise RuleMismatch(f"client needs a ?-type, got {t}")
            if y == x:
                raise RuleMismatch("client binder collides with its channel")
            rest = {n: f for n, f in ctx.items() if n != x}
            _check_binder(rest, y)
            rest[y] = t.body
            return Derivation("quest", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Weak(x, annot, body):
            t = _lookup(ctx, x)
            if not isinstance(annot, WhyNot):
                raise RuleMismatch(f"weakening marker needs a ?-type annotation, got {annot}")
            if t != annot:
                raise RuleMismatch(f"weakening annotation {annot} disagrees with context {t}")
            rest = {n: f for n, f in ctx.items() if n != x}
            return Derivation("weak", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Contract(x, x1, x2, body):
            t = _lookup(ctx, x)
            if not isinstance(t, WhyNot):
                raise RuleMismatch(f"contraction needs a ?-type, got {t}")
            if x1 == x2:
                raise RuleMismatch("contraction binders must be distinct")
            rest = {n: f for n, f in ctx.items() if n != x}
            _check_binder(rest, x1)
            _check_binder(rest, x2)
            rest[x1] = t
            rest[x2] = t
            return Derivation("contract", p, ctx_items(ctx), (_check(body, rest, sys),))

        case Cut(x, annot, left, right):
            if x in ctx:
                raise LinearityViolation(f"cut binder {x} shadows an assignment")
            lnames = free_names(left) - {x}
            rnames = free_names(right) - {x}
            lctx, rctx = _split(ctx, lnames, rnames)
            lctx[x] = annot
            rctx[x] = dual(annot)
            dl = _check(left, lctx, sys)
            dr = _check(right, rctx, sys)
            return Derivation("cut", p, ctx_items(ctx), (dl, dr))

        case Mix(left, right):
            if not sys.allows_mix2:
                raise SystemViolation("parallel composition needs Mix2")
            lctx, rctx = _split(ctx, free_names(left), free_names(right))
            dl = _check(left, lctx, sys)
            dr = _check(right, rctx, sys)
            return Derivation("mix2", p, ctx_items(ctx), (dl, dr))

    raise CPTypeError(f"not a process: {p!r}")


# --- typed contexts with one hole -------------------------------------------


class CtxTree:
    __slots__ = ()


@dataclass(frozen=True)
class Hole(CtxTree):
    pass


@dataclass(frozen=True)
class KCut(CtxTree):
    # (new x:A)(K | Q): the hole is on the left, Q is a closed given process.
    name: Name
    annot: Formula
    sub: CtxTree
    right: Process
    right_ctx: CtxItems


@dataclass(frozen=True)
class KMix(CtxTree):
    # K | Q
    sub: CtxTree
    right: Process
    right_ctx: CtxItems


@dataclass(frozen=True)
class TypedContext:
    tree: CtxTree
    hole_ctx: CtxItems
    result_ctx: CtxItems
    system: System

    @property
    def hole_context(self) -> TypingContext:
        return dict(self.hole_ctx)

    @property
    def result_context(self) -> TypingContext:
        return dict(self.result_ctx)


@dataclass(frozen=True)
class ContextDerivation:
    rule: str
    hole_ctx: CtxItems
    result_ctx: CtxItems
    premises: tuple = ()


def make_context(tree: CtxTree, hole_ctx, system: System) -> TypedContext:
    """Build a TypedContext, computing its result typing from the tree."""
    deriv = _check_tree(tree, ctx_items(dict(hole_ctx)), system)
    return TypedContext(tree, ctx_items(dict(hole_ctx)), deriv.result_ctx, system)


def _check_tree(tree: CtxTree, hole: CtxItems, sys: System) -> ContextDerivation:
    match tree:
        case Hole():
            return ContextDerivation("khole", hole, hole)
        case KCut(x, annot, sub, right, right_ctx):
            below = _check_tree(sub, hole, sys)
            gamma = dict(below.result_ctx)
            if x not in gamma:
                raise HoleTypeMismatch(f"cut name {x} is not offered below the hole")
            if gamma[x] != annot:
                raise HoleTypeMismatch(
                    f"cut annotation {annot} disagrees with {gamma[x]} below the hole"
                )
            rctx = dict(right_ctx)
            if rctx.get(x) != dual(annot):
                raise HoleTypeMismatch(f"right side of cut must use {x} at {dual(annot)}")
            dq = _check(right, rctx, sys)
            del gamma[x]
            for n, f in right_ctx:
                if n == x:
                    continue
                if n in gamma:
                    raise LinearityViolation(f"name {n} occurs on both sides of a context cut")
                gamma[n] = f
            return ContextDerivation("kcut", hole, ctx_items(gamma), (below, dq))
        case KMix(sub, right, right_ctx):
            if not sys.allows_mix2:
                raise SystemViolation("context mix needs Mix2")
            below = _check_tree(sub, hole, sys)
            dq = _check(right, dict(right_ctx), sys)
            gamma = dict(below.result_ctx)
            for n, f in right_ctx:
                if n in gamma:
                    raise LinearityViolation(f"name {n} occurs on both sides of a context mix")
                gamma[n] = f
            return ContextDerivation("kmix", hole, ctx_items(gamma), (below, dq))
    raise CPTypeError(f"not a context tree: {tree!r}")


def check_context(k: TypedContext, hole_ctx, result_ctx, system: System) -> ContextDerivation:
    """Verify that ``k`` maps hole typing ``hole_ctx`` to result ``result_ctx``."""
    if ctx_items(dict(hole_ctx)) != k.hole_ctx:
        raise HoleTypeMismatch(
            f"context expects hole typing {dict(k.hole_ctx)}, got {dict(hole_ctx)}"
        )
    deriv = _check_tree(k.tree, k.hole_ctx, system)
    if deriv.result_ctx != ctx_items(dict(result_ctx)):
        raise HoleTypeMismatch(
            f"context produces {dict(deriv.result_ctx)}, expected {dict(result_ctx)}"
        )
    return deriv


def fill(k: TypedContext, p: Process) -> Process:
    """Replace the hole of ``k`` with ``p``; the result checks at k's result typing."""
    try:
        check(p, k.hole_context, k.system)
    except CPTypeError as e:
        raise TypeMismatch(f"process does not fit the hole typing: {e}") from e
    return _fill_tree(k.tree, p)


def _fill_tree(tree: CtxTree, p: Process) -> Process:
    match tree:
        case Hole():
            return p
        case KCut(x, annot, sub, right, _):
            return Cut(x, annot, _fill_tree(sub, p), right)
        case KMix(sub, right, _):
            return Mix(_fill_tree(sub, p), right)
    raise CPTypeError(f"not a context tree: {tree!r}")
