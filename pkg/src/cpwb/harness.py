"""Bounded enumeration of formulas/processes and the property suites.

Process enumeration is derivation-directed: terms are grown by reading
the typing rules bottom-up, so everything emitted type-checks by
construction.  The suites mirror the verification story: adequacy of the
oracle, synchronizer/transformer characterizations, the translation
theorem, and both full-abstraction results, each reported with instance
counts and concrete counterexamples on failure.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from dataclasses import dataclass, replace

from . import obs_transform, transformers
from .denotations import STAR, Bag, Pair, denote, mk_tuple, obs_space, tuples_to_json
from .obs_transform import l_ctx, l_obs
from .oracle import CCut, CProc, adequacy_check
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
    formula_depth,
    fresh_name,
    process_size,
)
from .translation import closing_name, neg_image, translate_process, translated_context
from .typing import CpwbError, System, check, ctx_items


class ConfigError(CpwbError):
    pass


CONNECTIVES = ("one", "bot", "tensor", "par", "plus", "with", "ofcourse", "whynot")


def enumerate_formulas(depth: int, connectives=CONNECTIVES) -> list[Formula]:
    """All formulas of depth <= depth over the connective set, deduplicated."""
    if depth < 0:
        raise ConfigError("formula depth must be >= 0")
    bad = set(connectives) - set(CONNECTIVES)
    if bad:
        raise ConfigError(f"unknown connectives: {sorted(bad)}")
    leaves: list[Formula] = []
    if "one" in connectives:
        leaves.append(Unit())
    if "bot" in connectives:
        leaves.append(Bottom())
    level = list(leaves)
    seen = list(level)
    for _ in range(depth):
        base = list(seen)
        new: list[Formula] = []
        for name, ctor in (
            ("tensor", Tensor),
            ("par", Par),
            ("plus", Plus),
            ("with", With),
        ):
            if name in connectives:
                new.extend(ctor(a, b) for a in base for b in base)
        for name, ctor in (("ofcourse", OfCourse), ("whynot", WhyNot)):
            if name in connectives:
                new.extend(ctor(a) for a in base)
        seen = list(dict.fromkeys(seen + new))
    return seen


def enumerate_processes(ctx, size: int, system: System = System.CP02, cut_formulas=(),
                        markers: bool = True) -> list[Process]:
    """All well-typed processes of at most ``size`` constructors at ``ctx``."""
    if size < 1:
        raise ConfigError("process size must be >= 1")
    memo: dict = {}

    def gen(items, budget: int) -> list[Process]:
        key = (items, budget)
        if key in memo:
            return memo[key]
        ctx_d = dict(items)
        out: list[Process] = []
        if budget >= 1:
            if not ctx_d and system.allows_mix0:
                out.append(Inact())
            if len(ctx_d) == 1:
                (x, a), = ctx_d.items()
                if a == Unit():
                    out.append(EmptyOut(x))
            if len(ctx_d) == 2:
                (x, a), (y, b) = sorted(ctx_d.items())
                if b == dual(a):
                    out.append(Fwd(x, y))
                    out.append(Fwd(y, x))
        if budget >= 2:
            for x, a in sorted(ctx_d.items()):
                rest = tuple(sorted((n, f) for n, f in ctx_d.items() if n != x))
                match a:
                    case Bottom():
                        out.extend(EmptyIn(x, p) for p in gen(rest, budget - 1))
                    case Par(l, r):
                        y = fresh_name("v", set(ctx_d))
                        sub = tuple(sorted(rest + ((y, l), (x, r))))
                        out.extend(In(x, y, p) for p in gen(sub, budget - 1))
                    case Plus(l, r):
                        for i, t in ((1, l), (2, r)):
                            sub = tuple(sorted(rest + ((x, t),)))
                            out.extend(Select(x, i, p) for p in gen(sub, budget - 1))
                    case With(l, r):
                        subl = tuple(sorted(rest + ((x, l),)))
                        subr = tuple(sorted(rest + ((x, r),)))
                        for p in gen(subl, budget - 2):
                            for q in gen(subr, budget - 1 - process_size(p)):
                                out.append(Case(x, p, q))
                    case Tensor(l, r):
                        y = fresh_name("v", set(ctx_d))
                        for lpart, rpart in _splits(rest):
                            subl = tuple(sorted(lpart + ((y, l),)))
                            subr = tuple(sorted(rpart + ((x, r),)))
                            for p in gen(subl, budget - 2):
                                for q in gen(subr, budget - 1 - process_size(p)):
                                    out.append(Out(y, x, p, q))
                    case OfCourse(body):
                        if all(isinstance(f, WhyNot) for _, f in rest):
                            y = fresh_name("v", set(ctx_d))
                            sub = tuple(sorted(rest + ((y, body),)))
                            out.extend(Server(x, y, p) for p in gen(sub, budget - 1))
                    case WhyNot(body):
                        y = fresh_name("v", set(ctx_d))
                        sub = tuple(sorted(rest + ((y, body),)))
                        out.extend(Client(x, y, p) for p in gen(sub, budget - 1))
                        if markers:
                            out.extend(Weak(x, a, p) for p in gen(rest, budget - 1))
                            x1 = fresh_name("v", set(ctx_d))
                            x2 = fresh_name("v", set(ctx_d) | {x1})
                            sub2 = tuple(sorted(rest + ((x1, a), (x2, a))))
                            out.extend(
                                Contract(x, x1, x2, p) for p in gen(sub2, budget - 1)
                            )
            for a in cut_formulas:
                x = fresh_name("c", set(ctx_d))
                for lpart, rpart in _splits(tuple(sorted(ctx_d.items()))):
                    subl = tuple(sorted(lpart + ((x, a),)))
                    subr = tuple(sorted(rpart + ((x, dual(a)),)))
                    for p in gen(subl, budget - 2):
                        for q in gen(subr, budget - 1 - process_size(p)):
                            out.append(Cut(x, a, p, q))
        out = list(dict.fromkeys(out))
        memo[key] = out
        return out

    return gen(ctx_items(dict(ctx)), size)


def _splits(items):
    names = [n for n, _ in items]
    d = dict(items)
    for r in range(len(names) + 1):
        for group in itertools.combinations(names, r):
            left = tuple((n, d[n]) for n in group)
            right = tuple((n, f) for n, f in items if n not in group)
            yield left, right


# --- suite configuration and report -------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...] = ("all",)
    formula_depth: int = 2
    process_size: int = 5
    bound: int = 2
    duality_depth: int = 4
    seed: int = 0
    connectives: tuple[str, ...] = CONNECTIVES
    system: str = "cp02"

    @staticmethod
    def from_json(text: str) -> "SuiteConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ConfigError("suite config must be a JSON object")
        cfg = SuiteConfig()
        known = {f for f in cfg.__dataclass_fields__}
        bad = set(data) - known
        if bad:
            raise ConfigError(f"unknown config keys: {sorted(bad)}")
        for key in ("suites", "connectives"):
            if key in data:
                data[key] = tuple(data[key])
        return replace(cfg, **data)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    instances: int
    failures: tuple[str, ...]
    millis: int

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Report:
    results: tuple[SuiteResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "pass" if r.ok else "FAIL"
            lines.append(f"{status:4}  {r.name:22} {r.instances:6} instances  {r.millis:6} ms")
            for f in r.failures[:10]:
                lines.append(f"      counterexample: {f}")
            if len(r.failures) > 10:
                lines.append(f"      ... and {len(r.failures) - 10} more failures")
        lines.append("result: " + ("all suites passed" if self.ok else "FAILURES PRESENT"))
        return "\n".join(lines)

    def to_json(self):
        return {
            r.name: {"instances": r.instances, "failures": list(r.failures), "millis": r.millis}
            for r in self.results
        }


SUITE_NAMES = (
    "duality",
    "adequacy",
    "synchronizer",
    "translation",
    "full_abstraction_1",
    "transformer_graph",
    "context_denotation",
    "transformer_correct",
    "full_abstraction_2",
    "mix_permutation",
    "injectivity",
    "worked_example",
)


def run_suite(cfg: SuiteConfig) -> Report:
    names = SUITE_NAMES if "all" in cfg.suites else cfg.suites
    bad = set(names) - set(SUITE_NAMES)
    if bad:
        raise ConfigError(f"unknown suites: {sorted(bad)}")
    has_exp = "ofcourse" in cfg.connectives or "whynot" in cfg.connectives
    if has_exp and cfg.bound > 2:
        raise ConfigError("exhaustive suites need an exponential-free connective set or bound <= 2")
    if cfg.system != "cp02":
        raise ConfigError(
            "the property suites exercise transformer contexts and mix permutations, "
            "which need the full mix-extended system; set system to cp02"
        )
    seed = int(os.environ.get("CPWB_SEED", cfg.seed))
    results = []
    for name in names:
        t0 = time.monotonic()
        instances, failures = _SUITES[name](cfg, random.Random(seed))
        millis = int((time.monotonic() - t0) * 1000)
        results.append(SuiteResult(name, instances, tuple(failures), millis))
    return Report(tuple(results))


# --- families -------------------------------------------------------------------


def _plus_tree(depth: int) -> Formula:
    if depth == 0:
        return Unit()
    sub = _plus_tree(depth - 1)
    return Plus(sub, sub)


def exp_free_families(size: int):
    """(context, processes) pairs over exponential-free session types."""
    one, bot = Unit(), Bottom()
    t2 = Plus(one, one)
    contexts = [
        {"x": one},
        {"x": bot},
        {"x": t2},
        {"x": With(one, bot)},
        {"x": _plus_tree(2)},
        {"x": _plus_tree(3)},
        {"x": _plus_tree(4)},
        {"x": t2, "y": bot},
        {"x": _plus_tree(2), "y": bot},
        {"x": _plus_tree(3), "y": bot},
        {"x": _plus_tree(2), "y": bot, "z": bot},
        {"x": Tensor(t2, t2)},
        {"x": With(t2, t2)},
        {"x": Par(t2, bot)},
        {"x": Tensor(one, bot)},
        {"x": t2, "y": With(bot, bot)},
    ]
    return [
        (ctx, enumerate_processes(ctx, size, System.CP02, markers=False)) for ctx in contexts
    ]


def exponential_families(size: int):
    one, bot = Unit(), Bottom()
    t2 = Plus(one, one)
    contexts = [
        {"x": WhyNot(bot)},
        {"x": WhyNot(With(bot, bot))},
        {"x": OfCourse(one)},
        {"x": OfCourse(t2)},
        {"x": WhyNot(bot), "y": WhyNot(bot)},
        {"x": OfCourse(one), "y": WhyNot(bot)},
    ]
    return [
        (ctx, enumerate_processes(ctx, size, System.CP02, markers=True)) for ctx in contexts
    ]


def cut_families(size: int):
    """Cut instances built from dual-typed enumerated pairs."""
    one, bot = Unit(), Bottom()
    annots = (
        one,
        bot,
        Plus(one, one),
        Tensor(one, bot),
        With(one, bot),
        Par(bot, one),
        Plus(one, Plus(one, one)),
        Tensor(Plus(one, one), bot),
    )
    out = []
    for a in annots:
        lefts = enumerate_processes({"x": a}, size + 1, System.CP02, markers=False)
        rights = enumerate_processes({"x": dual(a)}, size + 1, System.CP02, markers=False)
        for p in lefts[:6]:
            for q in rights[:6]:
                out.append(({}, Cut("x", a, p, q)))
        lefts2 = enumerate_processes({"x": a, "y": bot}, size, System.CP02, markers=False)
        for p in lefts2[:4]:
            for q in rights[:4]:
                out.append(({"y": bot}, Cut("x", a, p, q)))
    # cuts through exponential synchronizers
    for a in (OfCourse(one), WhyNot(bot)):
        lefts = enumerate_processes({"x": a}, size + 1, System.CP02)
        rights = enumerate_processes({"x": dual(a)}, size + 1, System.CP02)
        for p in lefts[:4]:
            for q in rights[:4]:
                out.append(({}, Cut("x", a, p, q)))
    return out


# --- individual suites ------------------------------------------------------------


def formula_pool(depth: int, connectives=CONNECTIVES, per_level: int = 4500) -> list[Formula]:
    """Exhaustive to depth 2, then a deterministic spread of deeper formulas.

    The full closure beyond depth 2 is astronomically large, so deeper
    levels are covered by index-mixed samples rather than exhaustively.
    """
    pool = enumerate_formulas(min(depth, 2), connectives)
    binary = [c for c, n in ((Tensor, "tensor"), (Par, "par"), (Plus, "plus"), (With, "with"))
              if n in connectives]
    unary = [c for c, n in ((OfCourse, "ofcourse"), (WhyNot, "whynot")) if n in connectives]
    seen = set(pool)
    prev = pool
    for level in range(3, depth + 1):
        fresh = []
        for i in range(per_level):
            j = (i * 7 + level) % len(prev)  # one argument from the previous level
            k = (i * 13 + 3 * level) % len(pool)
            if unary and i % 5 == 4:
                f = unary[i % len(unary)](prev[j])
            elif binary:
                f = binary[i % len(binary)](prev[j], pool[k])
            else:
                continue
            if f not in seen:
                seen.add(f)
                fresh.append(f)
        pool = pool + fresh
        prev = fresh or prev
    return pool


def _suite_duality(cfg: SuiteConfig, rng):
    pool = formula_pool(cfg.duality_depth, cfg.connectives)
    failures = []
    for a in pool:
        if dual(dual(a)) != a:
            failures.append(f"dual(dual({a})) != {a}")
    return len(pool), failures


def _adequacy_instances(cfg: SuiteConfig):
    one, bot = Unit(), Bottom()
    shallow = enumerate_formulas(1, ("one", "bot", "tensor", "par", "plus", "with"))
    deep = [
        a
        for a in enumerate_formulas(2, ("one", "bot", "tensor", "par", "plus", "with"))
        if formula_depth(a) == 2
    ]
    types = shallow + deep[::5][:200]
    out = []
    for a in types:
        lefts = enumerate_processes({"x": a}, cfg.process_size, System.CP02, markers=False)
        rights = enumerate_processes({"x": dual(a)}, cfg.process_size, System.CP02, markers=False)
        for p in lefts[:16]:
            for q in rights[:16]:
                out.append((a, p, q, None))
        for extra in (one, bot):
            wide = enumerate_processes(
                {"x": a, "y": extra}, cfg.process_size, System.CP02, markers=False
            )
            for p in wide[:8]:
                for q in rights[:4]:
                    out.append((a, p, q, extra))
    return out


def _suite_adequacy(cfg: SuiteConfig, rng):
    one, bot = Unit(), Bottom()
    failures = []
    count = 0
    for a, p, q, extra in _adequacy_instances(cfg)[:2500]:
        dp = check(p, {"x": a} if extra is None else {"x": a, "y": extra}, System.CP02)
        dq = check(q, {"x": dual(a)}, System.CP02)
        config = CCut("x", a, CProc(dp), CProc(dq))
        if extra is not None:
            closer = EmptyIn("y", Inact()) if extra == one else EmptyOut("y")
            dr = check(closer, {"y": dual(extra)}, System.CP02)
            config = CCut("y", extra, config, CProc(dr))
        count += 1
        if not adequacy_check(config, cfg.bound):
            failures.append(f"cut at {a}: {p!r} | {q!r}")
    return count, failures


def _suite_synchronizer(cfg: SuiteConfig, rng):
    from .translation import synchronizer

    one, bot = Unit(), Bottom()
    cases = [one, bot, Tensor(one, bot), Par(bot, one), Plus(one, one), With(one, bot),
             OfCourse(one), WhyNot(bot)]
    failures = []
    for a in cases:
        ctx = {"z": Tensor(neg_image(a), bot), "w": Tensor(neg_image(dual(a)), bot), "s": one}
        d = check(synchronizer(a, "z", "w", "s"), ctx, System.CP02)
        want = frozenset(
            mk_tuple(
                {
                    "z": Pair(l_obs(a, o), STAR),
                    "w": Pair(l_obs(dual(a), o), STAR),
                    "s": STAR,
                }
            )
            for o in obs_space(a, cfg.bound)
        )
        got = denote(d, cfg.bound).tuples
        if got != want:
            failures.append(f"synchronizer at {a}")
    return len(cases), failures


def _translation_instances(cfg: SuiteConfig, rng):
    out = []
    for ctx, procs in exp_free_families(cfg.process_size):
        out.extend((ctx, p) for p in procs)
    out.extend(cut_families(4))
    exp = []
    for ctx, procs in exponential_families(cfg.process_size):
        exp.extend((ctx, p) for p in procs)
    rng.shuffle(exp)
    out.extend(exp[: max(50, len(exp) // 4)])
    return out


def _suite_translation(cfg: SuiteConfig, rng):
    failures = []
    count = 0
    for ctx, p in _translation_instances(cfg, rng):
        count += 1
        v = obs_transform.check_translation_theorem(p, ctx, System.CP02, cfg.bound)
        if not v.holds:
            failures.append(f"{p!r} at {dict(ctx)}: missing={v.missing} extra={v.extra}")
    return count, failures


def _suite_fa1(cfg: SuiteConfig, rng):
    failures = []
    pairs = 0
    for ctx, procs in exp_free_families(cfg.process_size):
        tctx = translated_context(ctx)
        data = []
        for p in procs:
            d = check(p, ctx, System.CP02)
            src = denote(d, cfg.bound).tuples
            img = denote(check(translate_process(d), tctx, System.CP02), cfg.bound).tuples
            data.append((p, src, img))
        for (p, sp, ip), (q, sq, iq) in itertools.combinations(data, 2):
            pairs += 1
            if (sp == sq) != (ip == iq):
                failures.append(f"{p!r} vs {q!r} at {dict(ctx)}")
    return pairs, failures


def _suite_transformer_graph(cfg: SuiteConfig, rng):
    formulas = [
        a
        for a in enumerate_formulas(cfg.formula_depth, cfg.connectives)
        if len(obs_space(a, cfg.bound)) <= 64
    ]
    failures = []
    for a in formulas:
        v = transformers.transformer_graph(a, cfg.bound)
        if not v.holds:
            failures.append(f"transformer at {a}")
    return len(formulas), failures


def _suite_context_denotation(cfg: SuiteConfig, rng):
    one, bot = Unit(), Bottom()
    t2 = Plus(one, one)
    deltas = [
        {"x": one},
        {"x": bot},
        {"x": t2},
        {"x": With(bot, bot)},
        {"x": With(one, bot)},
        {"x": bot, "y": t2},
        {"x": Tensor(one, bot)},
        {"x": Par(bot, one)},
        {"x": WhyNot(bot)},
        {"x": OfCourse(one)},
    ]
    failures = []
    count = 0
    for delta in deltas:
        spaces = [[(n, o) for o in obs_space(a, cfg.bound)] for n, a in sorted(delta.items())]
        full = [mk_tuple(dict(combo)) for combo in itertools.product(*spaces)]
        for _ in range(10):
            xs = {t for t in full if rng.random() < 0.5}
            count += 1
            v = transformers.check_transformer_theorem(delta, xs, cfg.bound)
            if not v.holds:
                failures.append(f"context denotation over {dict(delta)} with |X|={len(xs)}")
    return count, failures


def _suite_transformer_correct(cfg: SuiteConfig, rng):
    failures = []
    count = 0
    for ctx, p in _translation_instances(cfg, rng):
        count += 1
        v = transformers.check_transformer_correct(p, ctx, cfg.bound)
        if not v.holds:
            failures.append(f"{p!r} at {dict(ctx)}")
    return count, failures


def _suite_fa2(cfg: SuiteConfig, rng):
    failures = []
    pairs = 0
    for ctx, procs in exp_free_families(cfg.process_size):
        k = transformers.transformer_context(ctx, closing_name(ctx))
        rctx = k.result_context
        data = []
        for p in procs:
            d = check(p, ctx, System.CP02)
            src = denote(d, cfg.bound).tuples
            img = denote(check(transformers.fill(k, p), rctx, System.CP02), cfg.bound).tuples
            data.append((p, src, img))
        for (p, sp, ip), (q, sq, iq) in itertools.combinations(data, 2):
            pairs += 1
            if (sp == sq) != (ip == iq):
                failures.append(f"{p!r} vs {q!r} at {dict(ctx)}")
    return pairs, failures


def _suite_mix_permutation(cfg: SuiteConfig, rng):
    one, bot = Unit(), Bottom()
    t2 = Plus(one, one)
    w2 = With(one, bot)
    small = {
        a: enumerate_processes({"x": a}, 4, System.CP02, markers=False)
        for a in (one, bot, t2, w2)
    }
    rs = {
        a: enumerate_processes({"z": a}, 4, System.CP02, markers=False)
        for a in (one, t2, w2)
    }
    failures = []
    count = 0

    def same(p, q, ctx):
        dp = denote(check(p, ctx, System.CP02), cfg.bound).tuples
        dq = denote(check(q, ctx, System.CP02), cfg.bound).tuples
        return dp == dq

    for a1, a2 in itertools.product((one, bot, t2, w2), repeat=2):
        for p, q in itertools.product(small[a1][:3], small[a2][:3]):
            for rc, rlist in rs.items():
                for r in rlist[:3]:
                    ctx = {"x": With(a1, a2), "z": rc}
                    count += 1
                    lhs = Mix(Case("x", p, q), r)
                    rhs = Case("x", Mix(p, r), Mix(q, r))
                    if not same(lhs, rhs, ctx):
                        failures.append(f"case-mix: {lhs!r}")
    for a in (one, t2):
        lefts = small[a]
        rights = enumerate_processes({"x": dual(a)}, 3, System.CP02, markers=False)
        for p, q in itertools.product(lefts[:4], rights[:4]):
            for rc, rlist in rs.items():
                for r in rlist[:2]:
                    ctx = {"z": rc}
                    count += 1
                    lhs = Mix(Cut("x", a, p, q), r)
                    mid = Cut("x", a, p, Mix(q, r))
                    rhs = Cut("x", a, Mix(p, r), q)
                    if not (same(lhs, mid, ctx) and same(lhs, rhs, ctx)):
                        failures.append(f"cut-mix: {lhs!r}")
    outs_p = enumerate_processes({"y": one}, 2, System.CP02, markers=False)
    outs_q = enumerate_processes({"x": t2}, 3, System.CP02, markers=False)
    for p in outs_p:
        for q in outs_q[:4]:
            for rc, rlist in rs.items():
                for r in rlist[:3]:
                    ctx = {"x": Tensor(one, t2), "z": rc}
                    count += 1
                    lhs = Out("y", "x", p, Mix(q, r))
                    rhs = Mix(Out("y", "x", p, q), r)
                    if not same(lhs, rhs, ctx):
                        failures.append(f"out-mix: {lhs!r}")
    return count, failures


def _suite_injectivity(cfg: SuiteConfig, rng):
    formulas = [
        a
        for a in enumerate_formulas(cfg.formula_depth, cfg.connectives)
        if len(obs_space(a, cfg.bound)) <= 64
    ]
    failures = []
    count = 0
    for a in formulas:
        space = obs_space(a, cfg.bound)
        images = [l_obs(a, o) for o in space]
        count += 1
        if len(set(images)) != len(space):
            failures.append(f"l_obs not injective at {a}")
    one, bot = Unit(), Bottom()
    for delta in ({"x": Plus(one, one), "y": bot}, {"x": one}, {"x": With(one, bot), "y": one}):
        spaces = [[(n, o) for o in obs_space(a, cfg.bound)] for n, a in sorted(delta.items())]
        tuples = [mk_tuple(dict(c)) for c in itertools.product(*spaces)]
        w = closing_name(delta)
        images = [l_ctx(delta, t, w) for t in tuples]
        count += 1
        if len(set(images)) != len(tuples):
            failures.append(f"l_ctx not injective at {dict(delta)}")
    for body in (one, bot, Plus(one, one)):
        qa = WhyNot(body)
        space3 = obs_space(qa, 3)
        for a1, a2 in itertools.product(space3, repeat=2):
            merged = a1.items + a2.items
            if len(merged) > 3:
                continue
            count += 1
            lhs = l_obs(qa, Bag(merged))
            rhs = l_obs(qa, a1)
            rhs = Bag(rhs.items + l_obs(qa, a2).items)
            if lhs != rhs:
                failures.append(f"bag homomorphism at {qa}: {a1} u {a2}")
    return count, failures


def _suite_worked_example(cfg: SuiteConfig, rng):
    one = Unit()
    cut = Cut("x", one, EmptyOut("x"), EmptyIn("x", EmptyOut("y")))
    ctx = {"y": one}
    tctx = translated_context(ctx)
    d1 = check(cut, ctx, System.CP02)
    d2 = check(EmptyOut("y"), ctx, System.CP02)
    s1 = denote(check(translate_process(d1), tctx, System.CP02), cfg.bound).tuples
    s2 = denote(check(translate_process(d2), tctx, System.CP02), cfg.bound).tuples
    failures = [] if s1 == s2 else [f"worked example: {tuples_to_json(s1)} vs {tuples_to_json(s2)}"]
    return 1, failures


_SUITES = {
    "duality": _suite_duality,
    "adequacy": _suite_adequacy,
    "synchronizer": _suite_synchronizer,
    "translation": _suite_translation,
    "full_abstraction_1": _suite_fa1,
    "transformer_graph": _suite_transformer_graph,
    "context_denotation": _suite_context_denotation,
    "transformer_correct": _suite_transformer_correct,
    "full_abstraction_2": _suite_fa2,
    "mix_permutation": _suite_mix_permutation,
    "injectivity": _suite_injectivity,
    "worked_example": _suite_worked_example,
}
