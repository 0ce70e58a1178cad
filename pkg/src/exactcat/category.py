"""Finitely presented rigid k-linear categories.

Objects carry a total order and every generating morphism goes strictly
upward, so the free category has finitely many paths. Hom spaces are the free
module on paths modulo the two-sided ideal generated by the relations.

Paths are stored in *application order*: ``("f", "g")`` means first ``f``
then ``g``, i.e. the composite ``g.f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from exactcat.matrix import Matrix
from exactcat.modules import FgModule, ModuleMap, cokernel
from exactcat.rings import BaseRing


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    name: str
    source: str
    target: str
    terms: tuple  # ((coef, path), ...) with path a tuple of generator names


@dataclass(frozen=True)
class RigidCatSpec:
    ring: BaseRing
    objects: tuple
    generators: tuple = ()
    relations: tuple = ()
    name: str = ""

    def index(self, obj) -> int:
        return self.objects.index(obj)

    def gen(self, name) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def gen_index(self, name) -> int:
        for k, g in enumerate(self.generators):
            if g.name == name:
                return k
        raise KeyError(name)

    def path_ends(self, path, at=None):
        """(source, target) of a path; identity paths need ``at``."""
        if not path:
            return (at, at)
        return (self.gen(path[0]).source, self.gen(path[-1]).target)

    def with_ring(self, ring: BaseRing) -> RigidCatSpec:
        return RigidCatSpec(ring, self.objects, self.generators, self.relations, self.name)


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    message: str

    def as_dict(self):
        return {"kind": self.kind, "where": self.where, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def validate_spec(spec: RigidCatSpec) -> ValidationReport:
    out = []
    seen = set()
    for o in spec.objects:
        if o in seen:
            out.append(Violation("duplicate name", f"object {o}", f"object {o!r} declared twice"))
        seen.add(o)
    order = {o: k for k, o in enumerate(spec.objects)}
    names = set(seen)
    for g in spec.generators:
        if g.name in names:
            out.append(Violation("duplicate name", f"gen {g.name}", f"name {g.name!r} already used"))
        names.add(g.name)
        if g.source not in order or g.target not in order:
            out.append(Violation("unknown object", f"gen {g.name}",
                                 f"endpoints {g.source!r} -> {g.target!r} not both declared"))
            continue
        if order[g.source] >= order[g.target]:
            out.append(Violation("generator direction", f"gen {g.name}",
                                 f"{g.source} -> {g.target} does not go up the object order"))
    gens = {g.name: g for g in spec.generators}
    for r in spec.relations:
        if r.name in names:
            out.append(Violation("duplicate name", f"rel {r.name}", f"name {r.name!r} already used"))
        names.add(r.name)
        if r.source not in order or r.target not in order:
            out.append(Violation("unknown object", f"rel {r.name}", "relation endpoints not declared"))
            continue
        if r.source == r.target:
            out.append(Violation("identity relation", f"rel {r.name}",
                                 "relations on an identity morphism would kill an object"))
        for coef, path in r.terms:
            bad = [x for x in path if x not in gens]
            if bad:
                out.append(Violation("unknown generator", f"rel {r.name}", f"unknown generators {bad}"))
                continue
            if any(gens[x].target != gens[y].source for x, y in zip(path, path[1:])):
                out.append(Violation("non-composable path", f"rel {r.name}",
                                     f"path {'.'.join(reversed(path))} is not composable"))
                continue
            s, t = (gens[path[0]].source, gens[path[-1]].target) if path else (r.source, r.source)
            if (s, t) != (r.source, r.target):
                out.append(Violation("non-parallel relation", f"rel {r.name}",
                                     f"path {format_path(path, s)} runs {s} -> {t}, "
                                     f"relation runs {r.source} -> {r.target}"))
    return ValidationReport(tuple(out))


def require_valid(spec: RigidCatSpec):
    rep = validate_spec(spec)
    if not rep.valid:
        raise InvalidSpec("; ".join(f"{v.kind} at {v.where}" for v in rep.violations))


def format_path(path, at=None) -> str:
    if not path:
        return f"id_{at}" if at is not None else "id"
    return ".".join(reversed(path))


@lru_cache(maxsize=None)
def paths(spec: RigidCatSpec, a, b) -> tuple:
    """All paths ``a -> b`` sorted lexicographically by generator indices."""
    out = []
    if a == b:
        out.append(())
    by_source = {}
    for k, g in enumerate(spec.generators):
        by_source.setdefault(g.source, []).append((k, g))

    def walk(obj, acc, idx):
        for k, g in by_source.get(obj, ()):
            nacc, nidx = acc + (g.name,), idx + (k,)
            if g.target == b:
                out.append((nidx, nacc))
            walk(g.target, nacc, nidx)

    if a != b:
        walk(a, (), ())
        out = [p for _, p in sorted(out)]
    return tuple(out)


class HomSpace:
    """``Hom_D(a, b)`` with coordinates.

    ``proj`` sends a vector over ``paths`` to module coordinates, ``section``
    sends module coordinates to a representative path combination.
    """

    def __init__(self, spec, a, b, paths_, module, proj, section, pivots=None):
        self.spec = spec
        self.source = a
        self.target = b
        self.paths = paths_
        self.module = module
        self.proj = proj
        self.section = section
        self._pidx = {p: k for k, p in enumerate(paths_)}

    @property
    def basis(self):
        """Representatives of the module generators as {path: coef} dicts."""
        out = []
        for j in range(self.module.n):
            col = self.section.col(j)
            out.append({p: c for p, c in zip(self.paths, col) if c})
        return out

    def basis_labels(self):
        labels = []
        for combo in self.basis:
            if len(combo) == 1 and next(iter(combo.values())) == 1:
                labels.append(format_path(next(iter(combo)), self.source))
            else:
                labels.append(" + ".join(f"{self.spec.ring.format_scalar(c)}*{format_path(p, self.source)}"
                                         for p, c in sorted(combo.items())))
        return labels

    def element_of_path(self, path):
        vec = [0] * len(self.paths)
        vec[self._pidx[path]] = 1
        return self.project(vec)

    def project(self, path_vec):
        col = Matrix.column(self.spec.ring, path_vec)
        return self.module.reduce((self.proj @ col).col(0))

    def lift(self, coords):
        col = Matrix.column(self.spec.ring, coords)
        return (self.section @ col).col(0)

    def identity(self):
        if self.source != self.target:
            raise ValueError("identity only lives in an endomorphism space")
        return self.element_of_path(())


def _path_quotient(ring, npaths, ideal_vectors):
    """Row-reduce the ideal with later paths as pivots; survivors form the basis.

    Over Z only unit pivots are allowed; ``None`` signals that the ideal is
    not spanned by unit-pivot rows and a Smith-based quotient is needed.
    """
    order = list(range(npaths - 1, -1, -1))
    rows = [list(v) for v in ideal_vectors if any(v)]
    pivots = {}
    r = 0
    for c in order:
        piv = next((k for k in range(r, len(rows)) if ring.is_unit(rows[k][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inverse(rows[r][c])
        rows[r] = [ring.reduce(v * inv) for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [ring.reduce(x - f * y) for x, y in zip(rows[k], rows[r])]
        pivots[c] = r
        r += 1
    if any(any(row) for row in rows[r:]):
        return None
    free = [c for c in range(npaths) if c not in pivots]
    # a pivot path is congruent to minus the free part of its reduced row
    proj = [[ring.zero] * npaths for _ in free]
    pos = {c: k for k, c in enumerate(free)}
    for c in range(npaths):
        if c in pos:
            proj[pos[c]][c] = ring.one
        else:
            row = rows[pivots[c]]
            for f in free:
                if row[f]:
                    proj[pos[f]][c] = ring.reduce(-row[f])
    section = [[ring.one if c == f else ring.zero for f in free] for c in range(npaths)]
    return free, Matrix(ring, proj, len(free), npaths), Matrix(ring, section, npaths, len(free))


@lru_cache(maxsize=None)
def hom_space(spec: RigidCatSpec, a, b) -> HomSpace:
    require_valid(spec)
    if a not in spec.objects or b not in spec.objects:
        raise KeyError(f"unknown object {a if a not in spec.objects else b!r}")
    ring = spec.ring
    ps = paths(spec, a, b)
    pidx = {p: k for k, p in enumerate(ps)}
    ideal = []
    for r in spec.relations:
        for y in paths(spec, a, r.source):
            for x in paths(spec, r.target, b):
                vec = [ring.zero] * len(ps)
                for coef, path in r.terms:
                    k = pidx[y + tuple(path) + x]
                    vec[k] = ring.reduce(vec[k] + ring(coef))
                if any(vec):
                    ideal.append(vec)
    quot = _path_quotient(ring, len(ps), ideal)
    if quot is not None:
        _, proj, section = quot
        module = FgModule(ring, (0,) * proj.nrows)
        return HomSpace(spec, a, b, ps, module, proj, section)
    free = FgModule(ring, (0,) * len(ps))
    rel = ModuleMap(FgModule(ring, (0,) * len(ideal)), free,
                    Matrix.from_columns(ring, ideal, len(ps)), check=False)
    ck = cokernel(rel)
    return HomSpace(spec, a, b, ps, ck.module, ck.proj.matrix, ck.section)


def compose(spec: RigidCatSpec, g, f, a, b, c):
    """``g . f`` for coordinates ``f`` in Hom(a,b) and ``g`` in Hom(b,c)."""
    Hab, Hbc, Hac = hom_space(spec, a, b), hom_space(spec, b, c), hom_space(spec, a, c)
    if len(f) != Hab.module.n or len(g) != Hbc.module.n:
        raise ValueError("element does not belong to the stated Hom space")
    ring = spec.ring
    fv, gv = Hab.lift(f), Hbc.lift(g)
    out = [ring.zero] * len(Hac.paths)
    for p, cp in zip(Hab.paths, fv):
        if not cp:
            continue
        for q, cq in zip(Hbc.paths, gv):
            if cq:
                k = Hac._pidx[p + q]
                out[k] = ring.reduce(out[k] + cp * cq)
    return Hac.project(out)


def generator_matrix(spec: RigidCatSpec, a, gen_name) -> Matrix:
    """Post-composition with a generator ``x -> y`` as a map Hom(a,x) -> Hom(a,y)."""
    g = spec.gen(gen_name)
    Hx, Hy = hom_space(spec, a, g.source), hom_space(spec, a, g.target)
    ring = spec.ring
    cols = []
    for j in range(Hx.module.n):
        vec = [ring.zero] * len(Hy.paths)
        for p, c in zip(Hx.paths, Hx.section.col(j)):
            if c:
                k = Hy._pidx[p + (gen_name,)]
                vec[k] = ring.reduce(vec[k] + c)
        cols.append(Hy.project(vec))
    return Matrix.from_columns(ring, cols, Hy.module.n)


# small named specs used across tests, the CLI corpus and examples

def linear_quiver(ring: BaseRing, n: int, zero_relations=()) -> RigidCatSpec:
    """A_n: objects x0 < ... < x(n-1) with arrows a_k : x_k -> x_{k+1}."""
    objs = tuple(f"x{k}" for k in range(n))
    gens = tuple(Generator(f"a{k}", objs[k], objs[k + 1]) for k in range(n - 1))
    rels = []
    for k, (i, j) in enumerate(zero_relations):
        path = tuple(f"a{t}" for t in range(i, j))
        rels.append(Relation(f"z{k}", objs[i], objs[j], ((1, path),)))
    return RigidCatSpec(ring, objs, gens, tuple(rels), f"A{n}")


def a2(ring: BaseRing) -> RigidCatSpec:
    return RigidCatSpec(ring, ("a", "b"), (Generator("f", "a", "b"),), (), "A2")


def point(ring: BaseRing) -> RigidCatSpec:
    """One object, no arrows: representations are just modules."""
    return RigidCatSpec(ring, ("o",), (), (), "point")


def two_a2(ring: BaseRing) -> RigidCatSpec:
    """Two disjoint copies of A_2."""
    return RigidCatSpec(ring, ("a", "b", "c", "d"),
                        (Generator("f", "a", "b"), Generator("g", "c", "d")), (), "A2+A2")


def commutative_square(ring: BaseRing) -> RigidCatSpec:
    gens = (Generator("u", "s", "x"), Generator("v", "x", "t"),
            Generator("w", "s", "y"), Generator("z", "y", "t"))
    rel = Relation("comm", "s", "t", ((1, ("u", "v")), (-1, ("w", "z"))))
    return RigidCatSpec(ring, ("s", "x", "y", "t"), gens, (rel,), "square")
