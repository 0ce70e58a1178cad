"""Eventually periodic chains of representations (desk-scale ind-objects).

A telescope is ``A_0 -> ... -> A_m -f-> A_m -f-> A_m -> ...``. Its colimit is
``A_m / K`` where ``K`` is the generalized kernel of ``f`` (stable after
finitely many steps), provided the induced map on the quotient is onto; over a
field that always happens, over Z an injective non-surjective remainder means
the images strictly descend and the colimit is not finitely generated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from exactcat.matrix import Matrix
from exactcat.modules import FgModule, ModuleMap, Solver, cokernel, kernel
from exactcat.rep import (Rep, RepMap, ShortSeq, _subrep, cokernel_of, direct_sum,
                          extend_through, factor_through_cokernel, lift_through, map_sum,
                          postcompose, rep_hom, representable)
from exactcat.verdict import BOUNDED, Decision, conj


class Telescope:
    def __init__(self, ramp, ramp_maps=(), tail_endo: RepMap | None = None):
        ramp = list(ramp)
        if not ramp:
            raise ValueError("a telescope needs at least one stage")
        ramp_maps = list(ramp_maps)
        if len(ramp_maps) != len(ramp) - 1:
            raise ValueError("need one connecting map per ramp step")
        for k, g in enumerate(ramp_maps):
            if g.source != ramp[k] or g.target != ramp[k + 1]:
                raise ValueError(f"ramp map {k} does not connect stages {k} and {k + 1}")
        tail = tail_endo if tail_endo is not None else RepMap.identity(ramp[-1])
        if tail.source != ramp[-1] or tail.target != ramp[-1]:
            raise ValueError("tail endomorphism must act on the last ramp object")
        self.ramp = tuple(ramp)
        self.ramp_maps = tuple(ramp_maps)
        self.tail_endo = tail

    @classmethod
    def constant(cls, X: Rep) -> Telescope:
        return cls([X])

    @classmethod
    def periodic(cls, X: Rep, f: RepMap) -> Telescope:
        return cls([X], (), f)

    def __repr__(self):
        return f"Telescope(m={self.m}, tail={self.tail_endo!r})"

    def as_dict(self):
        return {"ramp": list(self.ramp), "transitions": list(self.ramp_maps), "tail_endo": self.tail_endo}

    def __eq__(self, other):
        return (isinstance(other, Telescope) and self.ramp == other.ramp
                and self.ramp_maps == other.ramp_maps and self.tail_endo == other.tail_endo)

    def __hash__(self):
        return hash((self.ramp, self.ramp_maps, self.tail_endo))

    @property
    def m(self) -> int:
        return len(self.ramp) - 1

    @property
    def tail_object(self) -> Rep:
        return self.ramp[-1]

    @property
    def spec(self):
        return self.ramp[0].spec

    def stage(self, j: int) -> Rep:
        return self.ramp[min(j, self.m)]

    def step(self, j: int) -> RepMap:
        """The map from stage ``j`` to stage ``j + 1``."""
        return self.ramp_maps[j] if j < self.m else self.tail_endo

    def transition(self, j: int, k: int) -> RepMap:
        if k < j:
            raise ValueError("transitions only go forward")
        out = RepMap.identity(self.stage(j))
        for t in range(j, k):
            out = self.step(t) @ out
        return out

    def extended(self, m: int) -> Telescope:
        """The same ind-object with the ramp unrolled to length ``m``."""
        if m <= self.m:
            return self
        ramp = list(self.ramp) + [self.tail_object] * (m - self.m)
        maps = list(self.ramp_maps) + [self.tail_endo] * (m - self.m)
        return Telescope(ramp, maps, self.tail_endo)

    def is_constant(self) -> bool:
        return self.m == 0 and self.tail_endo == RepMap.identity(self.tail_object)


class TelescopeMap:
    """Level maps ``phi_j`` for ``j <= m``; ``phi_m`` is also the periodic tail map."""

    def __init__(self, source: Telescope, target: Telescope, levels, check: bool = True):
        m = max(source.m, target.m)
        source, target = source.extended(m), target.extended(m)
        levels = list(levels)
        if len(levels) < m + 1:
            levels += [levels[-1]] * (m + 1 - len(levels))
        self.source, self.target, self.levels = source, target, tuple(levels)
        if check:
            problems = self.problems()
            if problems:
                raise ValueError("; ".join(problems))

    def problems(self):
        out = []
        S, T = self.source, self.target
        for j, phi in enumerate(self.levels):
            if phi.source != S.stage(j) or phi.target != T.stage(j):
                out.append(f"level {j} map has wrong endpoints")
        if out:
            return out
        for j in range(S.m):
            if T.step(j) @ self.levels[j] != self.levels[j + 1] @ S.step(j):
                out.append(f"ladder square {j} does not commute")
        if T.tail_endo @ self.levels[-1] != self.levels[-1] @ S.tail_endo:
            out.append("tail square does not commute")
        return out

    @property
    def m(self) -> int:
        return self.source.m

    def level(self, j: int) -> RepMap:
        return self.levels[min(j, self.m)]

    def __matmul__(self, other: TelescopeMap) -> TelescopeMap:
        m = max(self.m, other.m)
        return TelescopeMap(other.source, self.target,
                            [self.level(j) @ other.level(j) for j in range(m + 1)], check=False)

    @classmethod
    def constant(cls, f: RepMap) -> TelescopeMap:
        return cls(Telescope.constant(f.source), Telescope.constant(f.target), [f])


@dataclass(frozen=True)
class FpToTelescopeMap:
    stage: int
    map: RepMap

    def advance(self, T: Telescope, k: int) -> FpToTelescopeMap:
        return FpToTelescopeMap(k, T.transition(self.stage, k) @ self.map)


class TelescopeSeq:
    def __init__(self, i: TelescopeMap, p: TelescopeMap, check: bool = True):
        m = max(i.m, p.m)
        self.i, self.p = i, p
        self.m = m
        if check:
            for j in range(m + 1):
                if not (p.level(j) @ i.level(j)).is_zero():
                    raise ValueError(f"p.i is not zero at level {j}")

    def level(self, j: int) -> ShortSeq:
        return ShortSeq(self.i.level(j), self.p.level(j), check=False)

    @property
    def left(self) -> Telescope:
        return self.i.source

    @property
    def middle(self) -> Telescope:
        return self.i.target

    @property
    def right(self) -> Telescope:
        return self.p.target

    @classmethod
    def constant(cls, seq: ShortSeq) -> TelescopeSeq:
        return cls(TelescopeMap.constant(seq.i), TelescopeMap.constant(seq.p))


def telescope_sum(ts) -> Telescope:
    ts = list(ts)
    m = max(t.m for t in ts)
    ts = [t.extended(m) for t in ts]
    ramp = [direct_sum([t.stage(j) for t in ts]).obj for j in range(m + 1)]
    maps = [map_sum([t.step(j) for t in ts]) for j in range(m)]
    return Telescope(ramp, maps, map_sum([t.tail_endo for t in ts]))


# stable kernels and colimits ------------------------------------------------------------------

def _contained(a: ModuleMap, b: ModuleMap) -> bool:
    """Is the image of ``a`` inside the image of ``b`` (same target)?"""
    if not a.source.n:
        return True
    return Solver(b).columns(a.matrix) is not None


def stable_kernel(f: ModuleMap, bound: int):
    """Inclusion of the generalized kernel of an endomorphism and the step it stabilized at."""
    power = ModuleMap.identity(f.source)
    prev = kernel(power)
    for n in range(1, bound + 1):
        power = f @ power
        cur = kernel(power)
        if _contained(cur, prev):
            return prev, n - 1
        prev = cur
    return None, bound


def rep_stable_kernel(f: RepMap, bound: int):
    incs, steps = [], 0
    for k in range(len(f.components)):
        inc, n = stable_kernel(f.module_map(k), bound)
        if inc is None:
            return None, bound
        incs.append(inc)
        steps = max(steps, n)
    return _subrep(f.source, incs), steps


@dataclass
class Colimit:
    telescope: Telescope
    rep: Rep
    proj: RepMap        # A_m -> colim
    shift: RepMap       # induced automorphism of the colimit
    shift_inv: RepMap
    stage: int          # stage at which the chain has stabilized

    def cocone(self, j: int) -> RepMap:
        T = self.telescope
        if j <= T.m:
            return self.proj @ T.transition(j, T.m)
        out = self.proj
        for _ in range(j - T.m):
            out = self.shift_inv @ out
        return out


@dataclass
class NotFinitelyGenerated:
    telescope: Telescope
    certificate: str
    detail: dict = field(default_factory=dict)


@dataclass
class ColimitBounded:
    telescope: Telescope
    reason: str
    bound: int


def colimit_materialize(T: Telescope, stage_bound: int = 16):
    f = T.tail_endo
    if f.is_iso():
        # the tail is already an isomorphism: the last stage is the colimit
        ident = RepMap.identity(T.tail_object)
        inv = ident if f == ident else lift_through(f, ident)
        return Colimit(T, T.tail_object, ident, f, inv, T.m)
    K, steps = rep_stable_kernel(f, stage_bound)
    if K is None:
        return ColimitBounded(T, "generalized kernel did not stabilize", stage_bound)
    proj, sections = cokernel_of(K)
    M = proj.target
    fbar = factor_through_cokernel(proj, sections, proj @ f)
    if fbar.is_epi():
        inv = lift_through(fbar, RepMap.identity(M))
        return Colimit(T, M, proj, fbar, inv, T.m + steps)
    # injective but not onto: images of fbar^n strictly descend
    chain = []
    power = RepMap.identity(M)
    for _ in range(3):
        power = fbar @ power
        q, _ = cokernel_of(power)
        chain.append([v.canonical() for v in q.target.values])
    coker = cokernel_of(fbar)[0].target
    return NotFinitelyGenerated(T, "strict-descent", {
        "kernel_stable_after": steps,
        "cokernel_of_tail": [v.canonical() for v in coker.values],
        "cokernels_of_powers": chain,
    })


def colimit_map(phi: TelescopeMap, cs: Colimit, ct: Colimit) -> RepMap:
    """The map induced on materialized colimits."""
    m = phi.m
    if cs.telescope.is_constant() and ct.telescope.is_constant():
        return phi.level(m)
    # the stage-m cocone map is onto the colimit; factor through it
    out = extend_through(cs.cocone(m), ct.cocone(m) @ phi.level(m))
    if out is None:
        raise ValueError("level maps do not induce a map of colimits")
    return out


def materialize_seq(sigma: TelescopeSeq, stage_bound: int = 16):
    cols = [colimit_materialize(t, stage_bound) for t in (sigma.left, sigma.middle, sigma.right)]
    if not all(isinstance(c, Colimit) for c in cols):
        return None, cols
    i = colimit_map(sigma.i, cols[0], cols[1])
    p = colimit_map(sigma.p, cols[1], cols[2])
    return ShortSeq(i, p, check=False), cols


# Hom from finitely presentable objects ---------------------------------------------------------

@dataclass
class HomColimit:
    classes: list
    stabilized: bool
    stage: int
    module: FgModule | None
    note: str = ""


def hom_from_fp(S: Rep, T: Telescope, stage_bound: int = 16) -> HomColimit:
    m = T.m
    H = rep_hom(S, T.tail_object)
    t = postcompose(T.tail_endo, S)
    K, steps = stable_kernel(t, stage_bound)
    if K is None:
        return HomColimit([FpToTelescopeMap(m, g) for g in H.basis], False, stage_bound, None,
                          "kernel of the tail action did not stabilize")
    ck = cokernel(K)
    Q = ck.module
    tbar = ModuleMap(Q, Q, ck.proj.matrix @ t.matrix @ ck.section, check=False)
    onto = cokernel(tbar).module.is_zero()
    if not onto:
        return HomColimit([FpToTelescopeMap(m, g) for g in H.basis], False, stage_bound, None,
                          "tail action on Hom is injective but not onto: classes never stabilize")
    stage = m + steps
    classes = []
    for j in range(Q.n):
        g = H.to_map(ck.section.col(j))
        classes.append(FpToTelescopeMap(m, g))
    return HomColimit(classes, True, stage, Q)


def class_is_zero(c: FpToTelescopeMap, T: Telescope, stage_bound: int = 16):
    """Does the class vanish in the colimit? True / False / BOUNDED."""
    cm = c.advance(T, max(c.stage, T.m))
    H = rep_hom(c.map.source, T.tail_object)
    t = postcompose(T.tail_endo, c.map.source)
    K, _ = stable_kernel(t, stage_bound)
    if K is None:
        return BOUNDED
    return Solver(K)(H.coords(cm.map)) is not None


def factors_through_class(c: FpToTelescopeMap, T: Telescope, objects, stage_bound: int = 16) -> Decision:
    """Does the class factor through a finite direct sum of one of ``objects``?"""
    S = c.map.source
    if c.map.is_zero() or class_is_zero(c, T, stage_bound) is True:
        zero = direct_sum([], S.spec).obj
        return Decision(True, "zero class factors through the zero object",
                        {"object": zero, "stage": c.stage})
    for W in objects:
        if W == T.stage(c.stage):
            return Decision(True, "identity factorization through the stage object",
                            {"object": W, "stage": c.stage, "first": c.map,
                             "second": RepMap.identity(W)})
    any_hom = False
    for k in range(c.stage, c.stage + stage_bound + 1):
        target = T.transition(c.stage, k) @ c.map
        A = T.stage(k)
        H = rep_hom(S, A)
        for W in objects:
            us, vs = rep_hom(S, W).basis, rep_hom(W, A).basis
            if vs:
                any_hom = True
            pairs = [(u, v) for u in us for v in vs]
            if not pairs:
                continue
            cols = [H.coords(v @ u) for u, v in pairs]
            span = ModuleMap(FgModule(S.ring, (0,) * len(cols)), H.module,
                             Matrix.from_columns(S.ring, cols, H.module.n), check=False)
            x = Solver(span)(H.coords(target))
            if x is None:
                continue
            used = [(coef, u, v) for coef, (u, v) in zip(x, pairs) if coef]
            ds = direct_sum([W] * len(used))
            first = None
            second = None
            for (coef, u, v), inj, pr in zip(used, ds.injections, ds.projections):
                a = inj @ u.scale(coef)
                b = v @ pr
                first = a if first is None else first + a
                second = b if second is None else second + b
            return Decision(True, "factorization found", {"object": ds.obj, "copies": len(used), "base": W,
                                                          "stage": k, "first": first, "second": second})
    if not any_hom and class_is_zero(c, T, stage_bound) is False:
        return Decision(False, "no nonzero maps from the candidates into any stage, class is nonzero",
                        {"obstruction": "image"})
    return Decision(BOUNDED, "no factorization up to the stage bound", bound={"stage_bound": stage_bound})


# purity ------------------------------------------------------------------------------------------

def _split_mono_witness(f: RepMap, r: RepMap):
    """Factorization of ``(id, id): (C -f-> D) -> (C -f-> D)`` through the split mono ``D -> D + D``."""
    C, D = f.source, f.target
    ds = direct_sum([D, D])
    j = ds.injections[0]
    fprime = RepMap.identity(D) - f @ r
    return {"e": r, "U": D, "V": ds.obj, "j": j, "u": f,
            "v": ds.injections[0] + ds.injections[1] @ fprime,
            "a": r, "b": (f @ r) @ ds.projections[0] + ds.projections[1]}


def purity_test(kind: str, phi, stage_bound: int = 16) -> Decision:
    """Pure mono / pure epi test for a RepMap or a TelescopeMap."""
    if kind not in ("mono", "epi"):
        raise ValueError("kind must be 'mono' or 'epi'")
    if isinstance(phi, RepMap):
        if kind == "mono":
            return _pure_mono_fp(phi)
        return _pure_epi_fp(phi)
    if kind == "mono":
        return _pure_mono_tel(phi, stage_bound)
    return _pure_epi_tel(phi, stage_bound)


def _pure_mono_fp(f: RepMap) -> Decision:
    r = extend_through(f, RepMap.identity(f.source))
    square = {"S": f.source, "T": f.target, "t": f, "c": RepMap.identity(f.source),
              "d": RepMap.identity(f.target)}
    if r is None:
        return Decision(False, "square (t = f, c = id, d = id) has no e with e.t = c", {"square": square})
    return Decision(True, "every square factors; f is a split mono",
                    {"retraction": r, "split_mono": _split_mono_witness(f, r)})


def _pure_epi_fp(p: RepMap) -> Decision:
    E = p.target
    tests = [representable(E.spec, a) for a in E.spec.objects] + [E]
    per = []
    for S in tests:
        img = postcompose(p, S)
        H = rep_hom(S, E)
        solver = Solver(img)
        missing = [g for g in H.basis if solver(H.coords(g)) is None]
        per.append({"test_object": S, "hom_rank": H.rank, "non_liftable": missing})
        if missing:
            return Decision(False, "a basis class does not lift over p", {"tests": per, "map": missing[0]})
    s = lift_through(p, RepMap.identity(E))
    return Decision(True, "every class lifts; p is a split epi", {"tests": per, "section": s})


def _pure_mono_tel(phi: TelescopeMap, stage_bound: int) -> Decision:
    C, D = phi.source, phi.target
    colC = colimit_materialize(C, stage_bound)
    verdicts, certs = [], []
    for j in range(phi.m + 1):
        t = phi.level(j)
        if isinstance(colC, Colimit):
            e = extend_through(t, colC.cocone(j))
            ok = e is not None
            verdicts.append(ok)
            certs.append({"stage": j, "e": e})
            if not ok:
                return Decision(False, f"stage square {j} does not factor", {"stage": j, "t": t})
            continue
        found = None
        for k in range(j, j + stage_bound + 1):
            e = extend_through(t, C.transition(j, k))
            if e is not None:
                found = (k, e)
                break
        if found is None:
            verdicts.append(BOUNDED)
            certs.append({"stage": j, "searched_to": j + stage_bound})
        else:
            verdicts.append(True)
            certs.append({"stage": j, "k": found[0], "e": found[1]})
    v = conj(verdicts)
    return Decision(v, "stage squares", {"stages": certs},
                    bound={"stage_bound": stage_bound} if v == BOUNDED else None)


def _pure_epi_tel(phi: TelescopeMap, stage_bound: int) -> Decision:
    D, E = phi.source, phi.target
    colD = colimit_materialize(D, stage_bound)
    colE = colimit_materialize(E, stage_bound)
    verdicts, certs = [], []
    if isinstance(colD, Colimit) and isinstance(colE, Colimit):
        pinf = colimit_map(phi, colD, colE)
        for j in range(phi.m + 1):
            l = lift_through(pinf, colE.cocone(j))
            if l is None:
                return Decision(False, f"stage {j} cocone map does not lift", {"stage": j})
            certs.append({"stage": j, "lift": l})
        return Decision(True, "all stage classes lift", {"stages": certs})
    for j in range(phi.m + 1):
        found = None
        for k in range(j, j + stage_bound + 1):
            l = lift_through(phi.level(k), E.transition(j, k))
            if l is not None:
                found = (k, l)
                break
        verdicts.append(True if found else BOUNDED)
        certs.append({"stage": j, "found": found})
    v = conj(verdicts)
    return Decision(v, "stage classes", {"stages": certs},
                    bound={"stage_bound": stage_bound} if v == BOUNDED else None)


# admissibility in the induced structure --------------------------------------------------------

def is_admissible_ind(structure, sigma: TelescopeSeq, stage_bound: int = 16) -> Decision:
    from exactcat.ext import projective_cover
    from exactcat.structures import OutsideSubcat, is_admissible, split_decision

    levels = [sigma.level(j) for j in range(sigma.m + 1)]
    level_decisions = []
    for j, lv in enumerate(levels):
        for X in (lv.left, lv.middle, lv.right):
            if structure.subcat.contains(X) is False:
                raise OutsideSubcat(f"level {j} has a term outside the subcategory")
        level_decisions.append(is_admissible(structure, lv))
    if all(d.verdict is True for d in level_decisions):
        return Decision(True, "every level is admissible", {"levels": level_decisions})
    seq, cols = materialize_seq(sigma, stage_bound)
    if seq is None:
        return Decision(BOUNDED, "levels not all admissible and a colimit is not finitely generated",
                        {"levels": level_decisions, "colimits": cols}, bound={"stage_bound": stage_bound})
    if not seq.is_pointwise_exact():
        return Decision(False, "colimit sequence is not exact", {"colimit": seq})
    X = seq.right
    candidates = []
    if structure.subcat.contains(X) is True:
        candidates.append(("identity", ShortSeq(RepMap.zero(_zero(X), X), RepMap.identity(X), check=False)))
        if all(structure.subcat.contains(T) is True for T in (seq.left, seq.middle)):
            candidates.append(("self", seq))
    cov = projective_cover(X)
    cover_seq = ShortSeq(cov.iota, cov.eps, check=False)
    if all(structure.subcat.contains(T) is True for T in (cov.omega, cov.P0)):
        candidates.append(("cover", cover_seq))
    for w in getattr(structure, "witnesses", ()):
        if w.right == X:
            candidates.append(("witness", w))
    tried = []
    for name, cand in candidates:
        d = structure.admits(cand)
        if d.verdict is not True:
            tried.append((name, d.verdict))
            continue
        lift = lift_through(seq.p, cand.p)
        if lift is not None:
            return Decision(True, "colimit epi fits a square over an admissible epi",
                            {"square": {"s": cand.p, "d": lift, "kind": name}, "colimit": seq})
        tried.append((name, "no lift"))
    decisive = structure.kind == "split" or (structure.kind == "maximal" and structure.subcat.kind == "full")
    if decisive:
        return Decision(False, "identity of the colimit quotient admits no square over an admissible epi",
                        {"failing_map": RepMap.identity(X), "tried": tried, "colimit": seq})
    return Decision(BOUNDED, "square search exhausted its candidates", {"tried": tried},
                    bound={"candidates": len(candidates)})


def _zero(X: Rep) -> Rep:
    return direct_sum([], X.spec).obj


# flatness over Z -----------------------------------------------------------------------------------

def flat_test(T: Telescope, stage_bound: int = 16) -> Decision:
    """Torsion-freeness of the colimit over Z: every torsion element dies."""
    if T.spec.ring.kind != "Z":
        raise ValueError("flatness test needs the integers as base ring")
    K, steps = rep_stable_kernel(T.tail_endo, stage_bound)
    if K is None:
        return Decision(BOUNDED, "generalized kernel did not stabilize", bound={"stage_bound": stage_bound})
    kernel_solvers = [Solver(K.module_map(k)) for k in range(len(K.components))]
    for j in range(T.m + 1):
        A = T.stage(j)
        to_tail = T.transition(j, T.m)
        for k, V in enumerate(A.values):
            for g, d in enumerate(V.moduli):
                if not d:
                    continue
                vec = to_tail.components[k].col(g)
                if kernel_solvers[k](vec) is None:
                    return Decision(False, "a torsion element survives into the colimit",
                                    {"stage": j, "object": T.spec.objects[k], "generator": g, "order": d})
    return Decision(True, "all torsion dies in the colimit", {"kernel_stable_after": steps})
