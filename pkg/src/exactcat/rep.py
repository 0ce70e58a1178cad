"""Representations of a rigid category: the ambient abelian category.

A :class:`Rep` assigns a diagonal-form module to each object and a matrix to
each generator; a :class:`RepMap` is a family of component matrices. All
constructions (kernels, cokernels, pullbacks, pushouts, Hom) are pointwise
module computations with the induced actions solved for exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from exactcat.category import RigidCatSpec, generator_matrix, hom_space, paths, require_valid
from exactcat.linalg import rank
from exactcat.matrix import Matrix, block_diag, hstack, vstack
from exactcat.modules import (FgModule, HomModule, ModuleMap, Solver, cokernel, image,
                              is_isomorphism, kernel)


class RepError(ValueError):
    pass


class Rep:
    __slots__ = ("spec", "values", "actions", "_hash", "__weakref__")

    def __init__(self, spec: RigidCatSpec, values, actions=None, check: bool = True):
        if isinstance(values, dict):
            values = tuple(values.get(o, FgModule(spec.ring)) for o in spec.objects)
        values = tuple(values)
        actions = actions or {}
        if isinstance(actions, dict):
            idx = {o: k for k, o in enumerate(spec.objects)}
            acts = []
            for g in spec.generators:
                src, tgt = values[idx[g.source]], values[idx[g.target]]
                m = actions.get(g.name)
                if m is None:
                    m = Matrix.zeros(spec.ring, tgt.n, src.n)
                acts.append(m.reduce_rows(tgt.moduli))
            actions = tuple(acts)
        self.spec = spec
        self.values = values
        self.actions = tuple(actions)
        self._hash = None
        if check:
            problems = self.problems()
            if problems:
                raise RepError("; ".join(problems))

    def problems(self):
        spec = self.spec
        out = []
        if len(self.values) != len(spec.objects):
            return ["wrong number of object values"]
        if len(self.actions) != len(spec.generators):
            return ["wrong number of generator actions"]
        if any(v.ring != spec.ring for v in self.values) or any(m.ring != spec.ring for m in self.actions):
            return ["values or actions over a different ring than the category"]
        for g, m in zip(spec.generators, self.actions):
            s, t = self.value(g.source), self.value(g.target)
            if m.shape != (t.n, s.n):
                out.append(f"action {g.name} has shape {m.shape}, expected {(t.n, s.n)}")
                continue
            if not ModuleMap(s, t, m, check=False).well_defined():
                out.append(f"action {g.name} is not well defined on the presentation")
        if out:
            return out
        for r in spec.relations:
            acc = Matrix.zeros(spec.ring, self.value(r.target).n, self.value(r.source).n)
            for coef, path in r.terms:
                acc = acc + self.path_matrix(path, r.source).scale(coef)
            acc = acc.reduce_rows(self.value(r.target).moduli)
            if not acc.is_zero():
                out.append(f"relation {r.name} does not act as zero")
        return out

    def __eq__(self, other):
        if not isinstance(other, Rep):
            return NotImplemented
        return self.spec == other.spec and self.values == other.values and self.actions == other.actions

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, self.values, self.actions))
        return self._hash

    def __repr__(self):
        parts = [f"{o}:{v.describe()}" for o, v in zip(self.spec.objects, self.values)]
        acts = [f"{g.name}={m.literal()}" for g, m in zip(self.spec.generators, self.actions)]
        return f"Rep({', '.join(parts)}; {', '.join(acts)})"

    @property
    def ring(self):
        return self.spec.ring

    def value(self, obj) -> FgModule:
        return self.values[self.spec.index(obj)]

    def action(self, gen_name) -> Matrix:
        return self.actions[self.spec.gen_index(gen_name)]

    def path_matrix(self, path, at) -> Matrix:
        m = Matrix.identity(self.ring, self.value(at).n)
        for name in path:
            m = self.action(name) @ m
            m = m.reduce_rows(self.value(self.spec.gen(name).target).moduli)
        return m

    @property
    def dims(self):
        """Pointwise generator counts (dimensions over a field)."""
        return tuple(v.n for v in self.values)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def signature(self):
        """Cheap isomorphism invariant: module types plus ranks of all path actions."""
        sig = [v.canonical() for v in self.values]
        if self.ring.is_field:
            for a in self.spec.objects:
                for b in self.spec.objects:
                    if a == b:
                        continue
                    for p in paths(self.spec, a, b):
                        sig.append(rank(self.path_matrix(p, a)))
        return tuple(sig)


def zero_rep(spec: RigidCatSpec) -> Rep:
    return Rep(spec, tuple(FgModule(spec.ring) for _ in spec.objects), check=False)


class RepMap:
    __slots__ = ("source", "target", "components", "_hash")

    def __init__(self, source: Rep, target: Rep, components, check: bool = True):
        if isinstance(components, dict):
            components = tuple(components[o] for o in source.spec.objects)
        comps = []
        for m, X, Y in zip(components, source.values, target.values):
            if m.shape != (Y.n, X.n):
                raise RepError(f"component shape {m.shape} does not fit {X.n} -> {Y.n}")
            comps.append(m.reduce_rows(Y.moduli))
        self.source = source
        self.target = target
        self.components = tuple(comps)
        self._hash = None
        if check:
            problems = self.problems()
            if problems:
                raise RepError("; ".join(problems))

    def problems(self):
        X, Y = self.source, self.target
        spec = X.spec
        if spec != Y.spec:
            return ["source and target live over different categories"]
        out = []
        for o, m, Xo, Yo in zip(spec.objects, self.components, X.values, Y.values):
            if not ModuleMap(Xo, Yo, m, check=False).well_defined():
                out.append(f"component at {o} is not a module map")
        for g, ax, ay in zip(spec.generators, X.actions, Y.actions):
            s, t = spec.index(g.source), spec.index(g.target)
            lhs = (ay @ self.components[s]).reduce_rows(Y.values[t].moduli)
            rhs = (self.components[t] @ ax).reduce_rows(Y.values[t].moduli)
            if lhs != rhs:
                out.append(f"naturality fails at {g.name}")
        return out

    def __eq__(self, other):
        if not isinstance(other, RepMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.components))
        return self._hash

    def __repr__(self):
        comps = ", ".join(f"{o}={m.literal()}" for o, m in zip(self.source.spec.objects, self.components))
        return f"RepMap({comps})"

    def component(self, obj) -> Matrix:
        return self.components[self.source.spec.index(obj)]

    def module_map(self, k: int) -> ModuleMap:
        return ModuleMap(self.source.values[k], self.target.values[k], self.components[k], check=False)

    def __matmul__(self, other: RepMap) -> RepMap:
        if other.target != self.source:
            raise RepError("composition endpoint mismatch")
        return RepMap(other.source, self.target,
                      tuple(a @ b for a, b in zip(self.components, other.components)), check=False)

    def __add__(self, other: RepMap) -> RepMap:
        return RepMap(self.source, self.target,
                      tuple(a + b for a, b in zip(self.components, other.components)), check=False)

    def __sub__(self, other: RepMap) -> RepMap:
        return RepMap(self.source, self.target,
                      tuple(a - b for a, b in zip(self.components, other.components)), check=False)

    def __neg__(self) -> RepMap:
        return RepMap(self.source, self.target, tuple(-a for a in self.components), check=False)

    def scale(self, c) -> RepMap:
        return RepMap(self.source, self.target, tuple(a.scale(c) for a in self.components), check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components)

    @classmethod
    def identity(cls, X: Rep) -> RepMap:
        return cls(X, X, tuple(Matrix.identity(X.ring, v.n) for v in X.values), check=False)

    @classmethod
    def zero(cls, X: Rep, Y: Rep) -> RepMap:
        return cls(X, Y, tuple(Matrix.zeros(X.ring, w.n, v.n) for v, w in zip(X.values, Y.values)),
                   check=False)

    def is_mono(self) -> bool:
        return all(kernel(self.module_map(k)).source.is_zero() for k in range(len(self.components)))

    def is_epi(self) -> bool:
        return all(cokernel(self.module_map(k)).module.is_zero() for k in range(len(self.components)))

    def is_iso(self) -> bool:
        return all(is_isomorphism(self.module_map(k)) for k in range(len(self.components)))


# direct sums ------------------------------------------------------------

@dataclass(frozen=True)
class DirectSum:
    obj: Rep
    injections: tuple
    projections: tuple


def direct_sum(reps, spec: RigidCatSpec | None = None) -> DirectSum:
    reps = list(reps)
    if not reps:
        z = zero_rep(spec)
        return DirectSum(z, (), ())
    spec = reps[0].spec
    ring = spec.ring
    values = tuple(FgModule(ring, tuple(d for X in reps for d in X.values[k].moduli))
                   for k in range(len(spec.objects)))
    actions = tuple(block_diag(ring, [X.actions[g] for X in reps]) for g in range(len(spec.generators)))
    S = Rep(spec, values, actions, check=False)
    inj, proj = [], []
    offsets = [[0] * len(spec.objects)]
    for X in reps:
        offsets.append([o + v.n for o, v in zip(offsets[-1], X.values)])
    for idx, X in enumerate(reps):
        ic, pc = [], []
        for k, v in enumerate(X.values):
            n, off = values[k].n, offsets[idx][k]
            rows = [[1 if r == off + c else 0 for c in range(v.n)] for r in range(n)]
            ic.append(Matrix(ring, rows, n, v.n))
            pc.append(Matrix(ring, [list(r) for r in zip(*rows)], v.n, n) if n else Matrix.zeros(ring, v.n, 0))
        inj.append(RepMap(X, S, tuple(ic), check=False))
        proj.append(RepMap(S, X, tuple(pc), check=False))
    return DirectSum(S, tuple(inj), tuple(proj))


def map_sum(maps) -> RepMap:
    """Block-diagonal sum of maps."""
    maps = list(maps)
    src = direct_sum([m.source for m in maps]).obj
    tgt = direct_sum([m.target for m in maps]).obj
    ring = src.ring
    comps = tuple(block_diag(ring, [m.components[k] for m in maps]) for k in range(len(src.values)))
    return RepMap(src, tgt, comps, check=False)


def map_row(maps, target: Rep | None = None) -> RepMap:
    """``[f_1 ... f_n]: X_1 + ... + X_n -> Y``."""
    maps = list(maps)
    src = direct_sum([m.source for m in maps]).obj
    Y = maps[0].target if maps else target
    ring = Y.ring
    comps = tuple(hstack(ring, [m.components[k] for m in maps], Y.values[k].n) if maps
                  else Matrix.zeros(ring, Y.values[k].n, 0) for k in range(len(Y.values)))
    return RepMap(src, Y, comps, check=False)


def map_column(maps, source: Rep | None = None) -> RepMap:
    """``(f_1; ...; f_n): X -> Y_1 + ... + Y_n``."""
    maps = list(maps)
    tgt = direct_sum([m.target for m in maps]).obj
    X = maps[0].source if maps else source
    ring = X.ring
    comps = tuple(vstack(ring, [m.components[k] for m in maps], X.values[k].n) if maps
                  else Matrix.zeros(ring, 0, X.values[k].n) for k in range(len(X.values)))
    return RepMap(X, tgt, comps, check=False)


# representables -----------------------------------------------------------

@lru_cache(maxsize=None)
def representable(spec: RigidCatSpec, a) -> Rep:
    """``P_a = Hom_D(a, -)`` with generators acting by post-composition."""
    require_valid(spec)
    values = tuple(hom_space(spec, a, x).module for x in spec.objects)
    actions = tuple(generator_matrix(spec, a, g.name) for g in spec.generators)
    return Rep(spec, values, actions, check=False)


def yoneda_element(spec: RigidCatSpec, a):
    return hom_space(spec, a, a).identity()


def yoneda_map(Y: Rep, a, y) -> RepMap:
    """The map ``P_a -> Y`` sending ``id_a`` to ``y`` in ``Y(a)``."""
    spec = Y.spec
    P = representable(spec, a)
    ring = spec.ring
    ycol = Matrix.column(ring, y)
    comps = []
    for x in spec.objects:
        H = hom_space(spec, a, x)
        cols = []
        for combo in H.basis:
            acc = Matrix.zeros(ring, Y.value(x).n, 1)
            for path, c in combo.items():
                acc = acc + (Y.path_matrix(path, a) @ ycol).scale(c)
            cols.append(acc.col(0))
        comps.append(Matrix.from_columns(ring, cols, Y.value(x).n))
    return RepMap(P, Y, tuple(comps), check=False)


def simple(spec: RigidCatSpec, a, dim: int = 1) -> Rep:
    """``k^dim`` at ``a`` and zero elsewhere (a simple module over a field)."""
    vals = tuple(FgModule.free(spec.ring, dim if o == a else 0) for o in spec.objects)
    return Rep(spec, vals, check=False)


def constant(spec: RigidCatSpec, module: FgModule) -> Rep:
    """The same module at every object with identity actions along generators."""
    vals = tuple(module for _ in spec.objects)
    acts = tuple(Matrix.identity(spec.ring, module.n) for _ in spec.generators)
    return Rep(spec, vals, acts)


# Hom ------------------------------------------------------------------------

class RepHom:
    """``Hom(X, Y)`` as a diagonal module with RepMap coordinates."""

    def __init__(self, X: Rep, Y: Rep):
        if X.spec != Y.spec:
            raise RepError("Hom between representations of different categories")
        self.source, self.target = X, Y
        spec = X.spec
        ring = spec.ring
        self.pointwise = [HomModule(a, b) for a, b in zip(X.values, Y.values)]
        self.offsets = [0]
        for H in self.pointwise:
            self.offsets.append(self.offsets[-1] + H.module.n)
        H = FgModule(ring, tuple(d for h in self.pointwise for d in h.module.moduli))
        self.ambient = H
        targets = []
        for g in spec.generators:
            s, t = spec.index(g.source), spec.index(g.target)
            targets.append((g, s, t, HomModule(X.values[s], Y.values[t])))
        T = FgModule(ring, tuple(d for *_, h in targets for d in h.module.moduli))
        cols = []
        for k in range(H.n):
            e = [0] * H.n
            e[k] = 1
            comps = self._components(e)
            col = []
            for g, s, t, hm in targets:
                ax, ay = X.actions[spec.gen_index(g.name)], Y.actions[spec.gen_index(g.name)]
                diff = ay @ comps[s] - comps[t] @ ax
                col += hm.coords(diff)
            cols.append(col)
        nat = ModuleMap(H, T, Matrix.from_columns(ring, cols, T.n), check=False)
        self.inclusion = kernel(nat)
        self.module = self.inclusion.source
        self._solver = None

    def _components(self, hcoords):
        comps = []
        for k, hm in enumerate(self.pointwise):
            comps.append(hm.to_matrix(hcoords[self.offsets[k]:self.offsets[k + 1]]))
        return tuple(comps)

    @property
    def rank(self) -> int:
        return self.module.n

    def to_map(self, coords) -> RepMap:
        h = self.inclusion.apply(coords)
        return RepMap(self.source, self.target, self._components(h), check=False)

    @property
    def basis(self):
        out = []
        for j in range(self.module.n):
            e = [0] * self.module.n
            e[j] = 1
            out.append(self.to_map(e))
        return out

    def coords(self, f: RepMap):
        h = []
        for hm, m in zip(self.pointwise, f.components):
            h += hm.coords(m)
        if self._solver is None:
            self._solver = Solver(self.inclusion)
        x = self._solver(h)
        if x is None:
            raise RepError("map is not natural")
        return x

    def elements(self, box: int = 1):
        for c in self.module.elements(box):
            yield self.to_map(c)


@lru_cache(maxsize=4096)
def rep_hom(X: Rep, Y: Rep) -> RepHom:
    return RepHom(X, Y)


def postcompose(a: RepMap, C: Rep) -> ModuleMap:
    """``Hom(C, A) -> Hom(C, B)``, ``g -> a . g``."""
    HA, HB = rep_hom(C, a.source), rep_hom(C, a.target)
    cols = [HB.coords(a @ g) for g in HA.basis]
    return ModuleMap(HA.module, HB.module, Matrix.from_columns(a.source.ring, cols, HB.module.n), check=False)


def precompose(a: RepMap, C: Rep) -> ModuleMap:
    """``Hom(B, C) -> Hom(A, C)``, ``g -> g . a``."""
    HB, HA = rep_hom(a.target, C), rep_hom(a.source, C)
    cols = [HA.coords(g @ a) for g in HB.basis]
    return ModuleMap(HB.module, HA.module, Matrix.from_columns(a.source.ring, cols, HA.module.n), check=False)


def lift_through(p: RepMap, h: RepMap):
    """Some ``g`` with ``p . g == h`` or ``None``."""
    C = h.source
    M = postcompose(p, C)
    x = Solver(M)(rep_hom(C, p.target).coords(h))
    return None if x is None else rep_hom(C, p.source).to_map(x)


def extend_through(i: RepMap, h: RepMap):
    """Some ``g`` with ``g . i == h`` or ``None``."""
    C = h.target
    M = precompose(i, C)
    x = Solver(M)(rep_hom(i.source, C).coords(h))
    return None if x is None else rep_hom(i.target, C).to_map(x)


def factor_through_mono(i: RepMap, h: RepMap):
    """Pointwise factorization of ``h`` through a monomorphism ``i``."""
    comps = []
    for k in range(len(i.components)):
        sol = Solver(i.module_map(k)).columns(h.components[k])
        if sol is None:
            return None
        comps.append(sol)
    return RepMap(h.source, i.source, tuple(comps), check=False)


# kernels, cokernels, images ------------------------------------------------------------

def _subrep(Y: Rep, incs) -> RepMap:
    """Sub-representation with pointwise inclusions ``incs`` (stable under the actions)."""
    spec = Y.spec
    values = tuple(m.source for m in incs)
    solvers = [Solver(m) for m in incs]
    acts = []
    for g, a in zip(spec.generators, Y.actions):
        s, t = spec.index(g.source), spec.index(g.target)
        sol = solvers[t].columns(a @ incs[s].matrix)
        if sol is None:
            raise RepError("pointwise submodules are not stable under the action")
        acts.append(sol)
    K = Rep(spec, values, tuple(acts), check=False)
    return RepMap(K, Y, tuple(m.matrix for m in incs), check=False)


def _quotrep(Y: Rep, coks):
    spec = Y.spec
    values = tuple(c.module for c in coks)
    acts = []
    for g, a in zip(spec.generators, Y.actions):
        s, t = spec.index(g.source), spec.index(g.target)
        acts.append(coks[t].proj.matrix @ a @ coks[s].section)
    Q = Rep(spec, values, tuple(acts), check=False)
    proj = RepMap(Y, Q, tuple(c.proj.matrix for c in coks), check=False)
    return proj, tuple(c.section for c in coks)


def kernel_of(f: RepMap) -> RepMap:
    return _subrep(f.source, [kernel(f.module_map(k)) for k in range(len(f.components))])


def cokernel_of(f: RepMap):
    """``(proj, sections)``; ``sections[k]`` lifts generators of the quotient at object k."""
    return _quotrep(f.target, [cokernel(f.module_map(k)) for k in range(len(f.components))])


def image_of(f: RepMap) -> RepMap:
    return _subrep(f.target, [image(f.module_map(k)) for k in range(len(f.components))])


def kernel_cokernel(f: RepMap):
    return kernel_of(f), cokernel_of(f)[0]


def factor_through_cokernel(proj: RepMap, sections, h: RepMap) -> RepMap:
    """The map induced on the quotient by ``h`` (which must kill the kernel of ``proj``)."""
    return RepMap(proj.target, h.target, tuple(m @ s for m, s in zip(h.components, sections)), check=False)


# limits -------------------------------------------------------------------------

@dataclass(frozen=True)
class Square:
    corner: Rep
    first: RepMap
    second: RepMap


def limit_square(mode: str, f: RepMap, g: RepMap) -> Square:
    """Pullback of ``f: X -> Z <- Y: g`` or pushout of ``f: Z -> X``, ``g: Z -> Y``.

    Pullback returns projections to X and Y; pushout returns injections from X and Y.
    """
    if mode == "pullback":
        if f.target != g.target:
            raise RepError("pullback needs a common target")
        ds = direct_sum([f.source, g.source])
        diff = map_row([f, -g])
        K = kernel_of(diff)
        return Square(K.source, ds.projections[0] @ K, ds.projections[1] @ K)
    if mode == "pushout":
        if f.source != g.source:
            raise RepError("pushout needs a common source")
        ds = direct_sum([f.target, g.target])
        diff = map_column([f, -g])
        q, _ = cokernel_of(diff)
        return Square(q.target, q @ ds.injections[0], q @ ds.injections[1])
    raise ValueError(f"unknown limit mode {mode!r}")


# short sequences -------------------------------------------------------------------

class ShortSeq:
    """``Y --i--> E --p--> X`` with ``p . i == 0``."""

    __slots__ = ("i", "p")

    def __init__(self, i: RepMap, p: RepMap, check: bool = True):
        if i.target != p.source:
            raise RepError("sequence maps are not composable")
        if check and not (p @ i).is_zero():
            raise RepError("composition p.i is not zero")
        self.i = i
        self.p = p

    @property
    def left(self) -> Rep:
        return self.i.source

    @property
    def middle(self) -> Rep:
        return self.i.target

    @property
    def right(self) -> Rep:
        return self.p.target

    def __eq__(self, other):
        return isinstance(other, ShortSeq) and self.i == other.i and self.p == other.p

    def __hash__(self):
        return hash((self.i, self.p))

    def __repr__(self):
        return f"ShortSeq(i={self.i!r}, p={self.p!r})"

    def is_pointwise_exact(self) -> bool:
        if not self.i.is_mono() or not self.p.is_epi():
            return False
        for k in range(len(self.i.components)):
            K = kernel(self.p.module_map(k))
            if K.source.n and Solver(self.i.module_map(k)).columns(K.matrix) is None:
                return False
        return True


def split_sequence(Y: Rep, X: Rep) -> ShortSeq:
    ds = direct_sum([Y, X])
    return ShortSeq(ds.injections[0], ds.projections[1], check=False)


def seq_sum(seqs) -> ShortSeq:
    seqs = list(seqs)
    return ShortSeq(map_sum([s.i for s in seqs]), map_sum([s.p for s in seqs]), check=False)


# isomorphism search --------------------------------------------------------------------

@dataclass(frozen=True)
class IsoResult:
    iso: RepMap | None
    exhaustive: bool
    tried: int

    def __bool__(self):
        return self.iso is not None

    @property
    def verdict(self):
        if self.iso is not None:
            return True
        return False if self.exhaustive else "BOUNDED"


def _is_invertible(f: RepMap) -> bool:
    ring = f.source.ring
    if ring.is_field:
        return all(m.nrows == m.ncols and rank(m) == m.nrows for m in f.components)
    return f.is_iso()


def hom_candidates(H: RepHom, bound: int = 4096, seed: int = 0):
    """Coefficient vectors to try when searching ``H`` for a special element.

    Returns ``(vectors, exhaustive)``: over F_p the whole module when it has
    at most ``bound`` elements; otherwise basis vectors, pairwise sums, the
    all-ones vector and seeded random small combinations.
    """
    ring = H.source.ring
    n = H.module.n
    if ring.kind == "Fp" and ring.p ** n <= bound:
        return [list(c) for c in itertools.product(range(ring.p), repeat=n)], True
    if ring.kind == "Z" and all(H.module.moduli):
        order = H.module.order()
        if order <= bound:
            return [list(c) for c in itertools.product(*[range(d) for d in H.module.moduli])], True
    cands = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cands.append(e)
    for j, k in itertools.combinations(range(n), 2):
        e = [0] * n
        e[j] = e[k] = 1
        cands.append(e)
    cands.append([1] * n)
    rng = random.Random(seed)
    while len(cands) < bound:
        cands.append([rng.randint(-2, 2) for _ in range(n)])
    return cands[:bound], False


def find_isomorphism(X: Rep, Y: Rep, bound: int = 4096, seed: int = 0) -> IsoResult:
    """Search ``Hom(X, Y)`` for an invertible element (see :func:`hom_candidates`)."""
    if X.spec != Y.spec or X.dims != Y.dims and X.ring.is_field:
        return IsoResult(None, True, 0)
    if X == Y:
        return IsoResult(RepMap.identity(X), True, 0)
    if X.signature() != Y.signature():
        return IsoResult(None, True, 0)
    if X.is_zero():
        return IsoResult(RepMap.zero(X, Y), True, 0)
    H = rep_hom(X, Y)
    cands, exhaustive = hom_candidates(H, bound, seed)
    tried = 0
    for c in cands:
        tried += 1
        f = H.to_map(c)
        if _is_invertible(f):
            return IsoResult(f, exhaustive, tried)
    return IsoResult(None, exhaustive, tried)


def is_isomorphic(X: Rep, Y: Rep, bound: int = 4096):
    """True / False / "BOUNDED"."""
    if not X.spec.generators and X.spec == Y.spec:
        return all(a.is_isomorphic(b) for a, b in zip(X.values, Y.values))
    return find_isomorphism(X, Y, bound).verdict


# enumeration of small representations over F_p ---------------------------------------------

def enumerate_reps(spec: RigidCatSpec, max_dim: int):
    """All representations over F_p with every dimension at most ``max_dim``."""
    ring = spec.ring
    if ring.kind != "Fp":
        raise ValueError("exhaustive enumeration needs a finite field")
    p = ring.p
    out = []
    for dims in itertools.product(range(max_dim + 1), repeat=len(spec.objects)):
        vals = tuple(FgModule.free(ring, d) for d in dims)
        shapes = [(dims[spec.index(g.target)], dims[spec.index(g.source)]) for g in spec.generators]
        sizes = [r * c for r, c in shapes]
        for entries in itertools.product(range(p), repeat=sum(sizes)):
            acts, pos = [], 0
            for (r, c), sz in zip(shapes, sizes):
                flat = entries[pos:pos + sz]
                pos += sz
                acts.append(Matrix(ring, [flat[i * c:(i + 1) * c] for i in range(r)], r, c))
            X = Rep(spec, vals, tuple(acts), check=False)
            if not X.problems():
                out.append(X)
    return out


def iso_classes(reps, bound: int = 1 << 16):
    """Representatives of the isomorphism classes among ``reps`` (first-seen order)."""
    reps_out = []
    by_sig = {}
    for X in reps:
        sig = (X.dims, X.signature())
        bucket = by_sig.setdefault(sig, [])
        if any(find_isomorphism(R, X, bound) for R in bucket):
            continue
        bucket.append(X)
        reps_out.append(X)
    return reps_out
