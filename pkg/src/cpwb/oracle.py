"""Configurations and the big-step observation relation.

A configuration is a tree of checked processes composed by observable
cuts.  For the observation search the tree is flattened into a "soup":
process leaves connected by named edges (observable for configuration
cuts, hidden for process-level cuts), with weakening/contraction markers
as pseudo-leaves.  Soup equality subsumes the structural congruence
(cut commutation/reassociation, parallel rearrangement), so the search
is a memoized rewrite over soups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .denotations import (
    DenotationSet,
    ObsTuple,
    Pair,
    STAR,
    Tag,
    bag,
    bag_union,
    denote,
    join_tuples,
    mk_tuple,
    tuple_drop,
    tuple_get,
    tuple_merge,
)
from .syntax import (
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
    Out,
    Process,
    Select,
    Server,
    Weak,
    WhyNot,
    dual,
    free_names,
    substitute,
)
from .typing import CPTypeError, Derivation, System, ctx_items


class CutTypeMismatch(CPTypeError):
    pass


class OpenConfiguration(CPTypeError):
    pass


class DepthExceeded(Exception):
    def __init__(self, partial):
        super().__init__("observation search exceeded its depth budget")
        self.partial = frozenset(partial)


class Configuration:
    __slots__ = ()


@dataclass(frozen=True)
class CZero(Configuration):
    pass


@dataclass(frozen=True)
class CProc(Configuration):
    deriv: Derivation


@dataclass(frozen=True)
class CCut(Configuration):
    # left offers name:annot, right offers the dual; name becomes observable.
    name: Name
    annot: Formula
    left: Configuration
    right: Configuration


@dataclass(frozen=True)
class CPar(Configuration):
    left: Configuration
    right: Configuration


@dataclass(frozen=True)
class CWeak(Configuration):
    name: Name
    annot: Formula
    sub: Configuration


@dataclass(frozen=True)
class CCon(Configuration):
    # sub uses left_name and right_name at the same ?-type; both become left_name.
    left_name: Name
    right_name: Name
    sub: Configuration


def check_config(c: Configuration, system: System = System.CP0):
    """Return (free context, observable context) for a configuration."""
    match c:
        case CZero():
            return {}, {}
        case CProc(d):
            return dict(d.ctx), {}
        case CCut(x, annot, l, r):
            gl, tl = check_config(l, system)
            gr, tr = check_config(r, system)
            if gl.get(x) != annot:
                raise CutTypeMismatch(f"left side must offer {x} at {annot}")
            if gr.get(x) != dual(annot):
                raise CutTypeMismatch(f"right side must offer {x} at {dual(annot)}")
            del gl[x]
            del gr[x]
            _disjoint(gl, gr, tl, tr, {x: annot})
            return {**gl, **gr}, {**tl, **tr, x: annot}
        case CPar(l, r):
            gl, tl = check_config(l, system)
            gr, tr = check_config(r, system)
            _disjoint(gl, gr, tl, tr, {})
            return {**gl, **gr}, {**tl, **tr}
        case CWeak(x, annot, sub):
            g, t = check_config(sub, system)
            if not isinstance(annot, WhyNot):
                raise CutTypeMismatch(f"configuration weakening needs a ?-type, got {annot}")
            if x in g or x in t:
                raise CutTypeMismatch(f"weakened name {x} already in use")
            g[x] = annot
            return g, t
        case CCon(x1, x2, sub):
            g, t = check_config(sub, system)
            t1, t2 = g.get(x1), g.get(x2)
            if t1 is None or t1 != t2 or not isinstance(t1, WhyNot):
                raise CutTypeMismatch(
                    f"configuration contraction needs {x1}, {x2} at one ?-type"
                )
            del g[x2]
            return g, t
    raise CPTypeError(f"not a configuration: {c!r}")


def _disjoint(gl, gr, tl, tr, extra):
    groups = [set(gl), set(gr), set(tl), set(tr), set(extra)]
    seen: set[str] = set()
    for g in groups:
        clash = seen & g
        if clash:
            raise CutTypeMismatch(f"names occur twice in a configuration: {sorted(clash)}")
        seen |= g


def config_rename(c: Configuration, new: Name, old: Name) -> Configuration:
    """Rename a free name of a configuration (cut names are left alone)."""
    match c:
        case CZero():
            return c
        case CProc(d):
            return CProc(_rename_deriv(d, new, old))
        case CCut(x, annot, l, r):
            if x == old:
                return c
            return CCut(x, annot, config_rename(l, new, old), config_rename(r, new, old))
        case CPar(l, r):
            return CPar(config_rename(l, new, old), config_rename(r, new, old))
        case CWeak(x, annot, sub):
            x2 = new if x == old else x
            return CWeak(x2, annot, config_rename(sub, new, old))
        case CCon(x1, x2, sub):
            n1 = new if x1 == old else x1
            n2 = new if x2 == old else x2
            return CCon(n1, n2, config_rename(sub, new, old))
    raise CPTypeError(f"not a configuration: {c!r}")


def _rename_deriv(d: Derivation, new: Name, old: Name) -> Derivation:
    from .typing import check

    ctx = {(new if n == old else n): f for n, f in d.ctx}
    return check(substitute(d.process, new, old), ctx, System.CP02)


# --- the observation search ---------------------------------------------------

# Leaves: ("proc", Process) | ("weak", name) | ("con", ext, f1, f2)
# Edges:  name -> frozenset of (alias, observable)


class _Engine:
    def __init__(self, bound: int, fuel: int):
        self.bound = bound
        self.fuel = fuel
        self.memo: dict = {}
        self.counter = 0

    def fresh(self) -> str:
        self.counter += 1
        return f"#{self.counter}"

    # soup construction

    def build(self, c: Configuration):
        leaves: list = []
        edges: dict[str, frozenset] = {}

        def add_config(cfg: Configuration):
            match cfg:
                case CZero():
                    return
                case CProc(d):
                    ls, es = self._norm(d.process)
                    leaves.extend(ls)
                    edges.update(es)
                case CCut(x, _, l, r):
                    edges[x] = frozenset({(x, True)})
                    add_config(l)
                    add_config(r)
                case CPar(l, r):
                    add_config(l)
                    add_config(r)
                case CWeak(x, _, sub):
                    leaves.append(("weak", x))
                    add_config(sub)
                case CCon(x1, x2, sub):
                    f1, f2 = self.fresh(), self.fresh()
                    edges[f1] = frozenset({(f1, False)})
                    edges[f2] = frozenset({(f2, False)})
                    leaves.append(("con", x1, f1, f2))
                    add_config(config_rename(config_rename(sub, f1, x1), f2, x2))

        add_config(c)
        return frozenset(leaves), frozenset(edges.items())

    # search

    def search(self, state, fuel: int):
        if state in self.memo:
            return self.memo[state]
        leaves, edges = state
        if not leaves:
            return frozenset({()})
        redexes = self._redexes(state)
        if not redexes:
            result: frozenset = frozenset()
            self.memo[state] = result
            return result
        if fuel <= 0:
            raise DepthExceeded(frozenset())
        results = set()
        for premise, transform in redexes:
            for theta in self.search(premise, fuel - 1):
                out = transform(theta)
                if out is not None:
                    results.add(out)
        result = frozenset(results)
        self.memo[state] = result
        return result

    def _leaf_names(self, leaf) -> frozenset:
        match leaf:
            case ("proc", p):
                return free_names(p)
            case ("weak", x):
                return frozenset((x,))
            case ("con", x, f1, f2):
                return frozenset((x, f1, f2))
        raise AssertionError(leaf)

    def _redexes(self, state):
        leaves, edge_items = state
        edges = dict(edge_items)
        at: dict[str, list] = {}
        for leaf in leaves:
            for n in self._leaf_names(leaf):
                at.setdefault(n, []).append(leaf)
        out = []
        for leaf in leaves:
            if leaf[0] == "proc" and isinstance(leaf[1], Fwd):
                out.append(self._link(state, edges, leaf))
        for name in sorted(edges):
            pair = at.get(name, [])
            if len(pair) != 2:
                continue
            r = self._comm(state, edges, name, pair[0], pair[1])
            if r is None:
                r = self._comm(state, edges, name, pair[1], pair[0])
            if r is not None:
                out.append(r)
        return out

    def _replace(self, state, drop_leaves, add_leaves, drop_edges, add_edges):
        leaves, edge_items = state
        new_leaves = (leaves - frozenset(drop_leaves)) | frozenset(add_leaves)
        edges = dict(edge_items)
        for n in drop_edges:
            del edges[n]
        edges.update(add_edges)
        return new_leaves, frozenset(edges.items())

    def _norm(self, p: Process):
        """Normalize one process into soup items (sub-leaves and hidden edges)."""
        leaves: list = []
        edges: dict = {}

        def go(q: Process):
            match q:
                case Inact():
                    return
                case Cut(x, _, l, r):
                    nx = self.fresh()
                    edges[nx] = frozenset({(nx, False)})
                    go(substitute(l, nx, x))
                    go(substitute(r, nx, x))
                case Mix(l, r):
                    go(l)
                    go(r)
                case Weak(x, _, b):
                    leaves.append(("weak", x))
                    go(b)
                case Contract(x, x1, x2, b):
                    f1, f2 = self.fresh(), self.fresh()
                    edges[f1] = frozenset({(f1, False)})
                    edges[f2] = frozenset({(f2, False)})
                    leaves.append(("con", x, f1, f2))
                    go(substitute(substitute(b, f1, x1), f2, x2))
                case _:
                    leaves.append(("proc", q))

        go(p)
        return leaves, edges

    def _link(self, state, edges, leaf):
        # [a<->b] composed on both of its names: merge the two edges.
        _, fwd = leaf
        a, b = fwd.left, fwd.right
        ports = edges[a] | edges[b]
        leaves, _ = state
        renamed = []
        dropped = [leaf]
        for other in leaves:
            if other is leaf or b not in self._leaf_names(other):
                continue
            dropped.append(other)
            match other:
                case ("proc", p):
                    renamed.append(("proc", substitute(p, a, b)))
                case ("weak", _):
                    renamed.append(("weak", a))
                case ("con", x, f1, f2):
                    renamed.append(
                        (
                            "con",
                            a if x == b else x,
                            a if f1 == b else f1,
                            a if f2 == b else f2,
                        )
                    )
        premise = self._replace(state, dropped, renamed, [b], {a: ports})
        return premise, lambda theta: theta

    def _comm(self, state, edges, name, l1, l2):
        ports = edges[name]
        K = self.bound

        def finish(drop, add_leaves, add_edges, transform):
            premise = self._replace(state, drop, add_leaves, [name], add_edges)
            return premise, transform

        match (l1, l2):
            case (("proc", EmptyOut(a)), ("proc", EmptyIn(b, body))) if a == name and b == name:
                sub_l, sub_e = self._norm(body)
                def t_unit(theta, ports=ports):
                    return tuple_merge(theta, mk_tuple({al: STAR for al, _ in ports}))
                return finish([l1, l2], sub_l, sub_e, t_unit)

            case (("proc", Out(y, a, pl, pr)), ("proc", In(b, y2, body))) if (
                a == name and b == name
            ):
                np_, nc = self.fresh(), self.fresh()
                sub = []
                sube: dict = {np_: frozenset({(np_, False)}), nc: frozenset({(nc, False)})}
                for q in (
                    substitute(pl, np_, y),
                    substitute(pr, nc, a),
                    substitute(substitute(body, np_, y2), nc, b),
                ):
                    ls, es = self._norm(q)
                    sub.extend(ls)
                    sube.update(es)

                def t_pair(theta, ports=ports, np_=np_, nc=nc):
                    val = Pair(tuple_get(theta, np_), tuple_get(theta, nc))
                    theta = tuple_drop(theta, np_, nc)
                    return tuple_merge(theta, mk_tuple({al: val for al, _ in ports}))

                return finish([l1, l2], sub, sube, t_pair)

            case (("proc", Select(a, i, body)), ("proc", Case(b, q1, q2))) if (
                a == name and b == name
            ):
                nc = self.fresh()
                sub = []
                sube = {nc: frozenset({(nc, False)})}
                for q in (substitute(body, nc, a), substitute(q1 if i == 1 else q2, nc, b)):
                    ls, es = self._norm(q)
                    sub.extend(ls)
                    sube.update(es)

                def t_tag(theta, ports=ports, nc=nc, i=i):
                    val = Tag(i, tuple_get(theta, nc))
                    theta = tuple_drop(theta, nc)
                    return tuple_merge(theta, mk_tuple({al: val for al, _ in ports}))

                return finish([l1, l2], sub, sube, t_tag)

            case (("proc", Server(a, y, body)), ("proc", Client(b, y2, qbody))) if (
                a == name and b == name
            ):
                if K < 1:
                    return None  # a one-shot interaction already exceeds the bound
                ns = self.fresh()
                sub = []
                sube = {ns: frozenset({(ns, False)})}
                for q in (substitute(body, ns, y), substitute(qbody, ns, y2)):
                    ls, es = self._norm(q)
                    sub.extend(ls)
                    sube.update(es)

                def t_srv(theta, ports=ports, ns=ns):
                    val = bag((tuple_get(theta, ns),))
                    theta = tuple_drop(theta, ns)
                    return tuple_merge(theta, mk_tuple({al: val for al, _ in ports}))

                return finish([l1, l2], sub, sube, t_srv)

            case (("proc", Server(a, _, _)), ("weak", b)) if a == name and b == name:
                # the dropped server's carried ?-names are weakened as well
                extras = [("weak", n) for n in sorted(free_names(l1[1]) - {a})]

                def t_weak(theta, ports=ports):
                    return tuple_merge(theta, mk_tuple({al: bag() for al, _ in ports}))

                return finish([l1, l2], extras, {}, t_weak)

            case (("proc", Server(a, _, _)), ("con", x, f1, f2)) if a == name and x == name:
                srv = l1[1]
                copy1 = substitute(srv, f1, a)
                copy2 = substitute(srv, f2, a)
                # each carried ?-name splits into one copy per server replica,
                # re-merged by a fresh contraction marker on the original edge
                extras = []
                new_edges = {}
                for n in sorted(free_names(srv) - {a}):
                    n1, n2 = self.fresh(), self.fresh()
                    copy1 = substitute(copy1, n1, n)
                    copy2 = substitute(copy2, n2, n)
                    new_edges[n1] = frozenset({(n1, False)})
                    new_edges[n2] = frozenset({(n2, False)})
                    extras.append(("con", n, n1, n2))

                def t_con(theta, ports=ports, f1=f1, f2=f2, K=K):
                    merged = bag_union(tuple_get(theta, f1), tuple_get(theta, f2))
                    if len(merged.items) > K:
                        return None
                    theta = tuple_drop(theta, f1, f2)
                    return tuple_merge(theta, mk_tuple({al: merged for al, _ in ports}))

                return finish(
                    [l1, l2], [("proc", copy1), ("proc", copy2)] + extras, new_edges, t_con
                )

        return None


DEFAULT_DEPTH = 4000


def observe(c: Configuration, bound: int = 2, depth: int = DEFAULT_DEPTH):
    """All observation tuples of a closed configuration, at bound ``bound``."""
    gamma, theta_ctx = check_config(c)
    if gamma:
        raise OpenConfiguration(f"configuration has free names: {sorted(gamma)}")
    eng = _Engine(bound, depth)
    state = eng.build(c)
    observable = {al for _, ports in state[1] for al, obs in ports if obs}

    def project(raw):
        out = set()
        for t in raw:
            out.add(tuple((n, o) for n, o in t if n in observable))
        return frozenset(out)

    if not state[0]:
        return frozenset({()})
    results: set = set()
    try:
        for premise, transform in eng._redexes(state):
            for theta in eng.search(premise, depth - 1):
                out_t = transform(theta)
                if out_t is not None:
                    results.add(out_t)
    except DepthExceeded:
        raise DepthExceeded(project(results)) from None
    final = project(results)
    assert all(set(n for n, _ in t) == set(theta_ctx) for t in final)
    return final


def denote_config(c: Configuration, bound: int = 2) -> DenotationSet:
    """Fig-4 denotation extended to configurations: cuts keep their coordinate."""
    gamma, theta = check_config(c)
    full = {**gamma, **theta}
    return DenotationSet(frozenset(_denote_config(c, bound)), ctx_items(full), bound)


def _denote_config(c: Configuration, bound: int) -> set[ObsTuple]:
    match c:
        case CZero():
            return {()}
        case CProc(d):
            return set(denote(d, bound).tuples)
        case CCut(x, _, l, r):
            return join_tuples(
                _denote_config(l, bound), _denote_config(r, bound), x, keep=True
            )
        case CPar(l, r):
            return {
                tuple_merge(a, b)
                for a in _denote_config(l, bound)
                for b in _denote_config(r, bound)
            }
        case CWeak(x, _, sub):
            return {
                tuple_merge(t, mk_tuple({x: bag()})) for t in _denote_config(sub, bound)
            }
        case CCon(x1, x2, sub):
            out = set()
            for t in _denote_config(sub, bound):
                merged = bag_union(tuple_get(t, x1), tuple_get(t, x2))
                if len(merged.items) > bound:
                    continue
                out.add(tuple_merge(tuple_drop(t, x1, x2), mk_tuple({x1: merged})))
            return out
    raise CPTypeError(f"not a configuration: {c!r}")


def adequacy_check(c: Configuration, bound: int = 2, depth: int = DEFAULT_DEPTH) -> bool:
    """Operational observations equal the configuration denotation."""
    return observe(c, bound, depth) == denote_config(c, bound).tuples
