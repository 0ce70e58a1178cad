"""Filtrations, Ext-orthogonality, Eklof and hereditary checks, periodicity instances.

Telescope arguments of Ext are handled through their chains: in the second
variable ``Ext^n(A, colim Y_j) = colim Ext^n(A, Y_j)``; in the first variable
the Milnor sequence ``0 -> lim^1 Ext^{n-1}(X_j, B) -> Ext^n(colim X_j, B) ->
lim Ext^n(X_j, B) -> 0`` is used, with ``lim^1 = 0`` exactly when the images
stabilize (countable groups).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from exactcat.ext import ext1, lift_to_syzygies, projective_cover
from exactcat.matrix import Matrix
from exactcat.modules import FgModule, ModuleMap, cokernel, image
from exactcat.rep import (Rep, RepMap, ShortSeq, direct_sum, find_isomorphism, hom_candidates,
                          kernel_of, cokernel_of, postcompose, precompose, rep_hom)
from exactcat.structures import (AdditiveSubcat, ExactStructure, is_admissible, maximal_structure)
from exactcat.telescope import (Colimit, Telescope, TelescopeSeq, colimit_materialize, is_admissible_ind,
                                stable_kernel)
from exactcat.verdict import BOUNDED, Decision, conj


def ambient_structure(spec) -> ExactStructure:
    """The abelian structure: maximal structure on all f.g. representations."""
    return maximal_structure(AdditiveSubcat.full(spec))


# Ext with telescope arguments --------------------------------------------------------------

def _endo(M: FgModule, fn) -> ModuleMap:
    cols = []
    for j in range(M.n):
        e = [0] * M.n
        e[j] = 1
        cols.append(M.reduce(fn(e)))
    return ModuleMap(M, M, Matrix.from_columns(M.ring, cols, M.n), check=False)


def ext_functorial(n: int, X: Rep, Y: Rep, first: RepMap | None = None, second: RepMap | None = None):
    """``Ext^n(X, Y)`` (n = 0 is Hom) with the endomorphism induced by ``first: X -> X`` or ``second: Y -> Y``."""
    if n == 0:
        M = rep_hom(X, Y).module
        if first is not None:
            return M, precompose(first, Y)
        return M, postcompose(second, X)
    if n == 1:
        G = ext1(X, Y)
        if first is not None:
            return G.module, _endo(G.module, G.pullback_class(first, G))
        return G.module, _endo(G.module, G.pushforward_class(second, G))
    if n == 2:
        cov = projective_cover(X)
        G = ext1(cov.omega, Y)
        if first is not None:
            om = lift_to_syzygies(first, cov, cov)
            return G.module, _endo(G.module, G.pullback_class(om, G))
        return G.module, _endo(G.module, G.pushforward_class(second, G))
    raise ValueError("degrees 0, 1 and 2 only")


def _reduced(t: ModuleMap, bound: int):
    """Quotient by the generalized kernel; returns (module, induced map, onto?) or None."""
    K, _ = stable_kernel(t, bound)
    if K is None:
        return None
    ck = cokernel(K)
    Q = ck.module
    tbar = ModuleMap(Q, Q, ck.proj.matrix @ t.matrix @ ck.section, check=False)
    return Q, tbar, cokernel(tbar).module.is_zero()


def ext_vanishes(n: int, X, Y, stage_bound: int = 16) -> Decision:
    """Is ``Ext^n(X, Y)`` zero? Either argument may be a Telescope (not both)."""
    if isinstance(X, Telescope) and isinstance(Y, Telescope):
        raise ValueError("Ext between two telescopes is not supported")
    if isinstance(Y, Telescope):
        M, t = ext_functorial(n, X, Y.tail_object, second=Y.tail_endo)
        red = _reduced(t, stage_bound)
        if red is None:
            return Decision(BOUNDED, "kernel chain did not stabilize", bound={"stage_bound": stage_bound})
        Q = red[0]
        return Decision(Q.is_zero(), "stabilized colimit of Ext",
                        {"degree": n, "stage_module": M.describe(), "colimit_quotient": Q.describe()})
    if isinstance(X, Telescope):
        f = X.tail_endo
        _, t_prev = ext_functorial(n - 1, X.tail_object, Y, first=f)
        red_prev = _reduced(t_prev, stage_bound)
        M, t = ext_functorial(n, X.tail_object, Y, first=f)
        red = _reduced(t, stage_bound)
        if red_prev is None or red is None:
            return Decision(BOUNDED, "kernel chain did not stabilize", bound={"stage_bound": stage_bound})
        detail = {"degree": n, "lim1_vanishes": red_prev[2], "stage_module": M.describe()}
        if not red_prev[2]:
            return Decision(False, "images do not stabilize in degree n-1: lim^1 is nonzero", detail)
        if red[2]:
            detail["lim"] = red[0].describe()
            return Decision(red[0].is_zero(), "Milnor sequence with stable images", detail)
        return Decision(BOUNDED, "images in degree n do not stabilize; lim not computed", detail)
    if n == 0:
        return Decision(rep_hom(X, Y).module.is_zero(), "Hom")
    M = ext1(X, Y).module if n == 1 else ext1(projective_cover(X).omega, Y).module
    return Decision(M.is_zero(), f"Ext^{n}", {"module": M.describe()})


def orthogonal_test(side: str, A_list, X, stage_bound: int = 16) -> dict:
    """Membership of ``X`` in ``A^{perp 1}`` / ``A^{perp >=1}`` (right) or their left versions."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    pairs = []
    for A in A_list:
        row = {}
        for n in (1, 2):
            d = ext_vanishes(n, A, X, stage_bound) if side == "right" else ext_vanishes(n, X, A, stage_bound)
            row[n] = d
        pairs.append((A, row))
    perp1 = conj(row[1].verdict for _, row in pairs)
    perp_all = conj([perp1] + [row[2].verdict for _, row in pairs])
    return {"perp1": perp1, "perp_ge1": perp_all, "pairs": pairs}


# filtrations ----------------------------------------------------------------------------------

@dataclass
class Filtration:
    """``0 = F_0 -> F_1 -> ... -> F_n = F`` with quotient ``U_k`` of ``F_{k-1} -> F_k``."""

    objects: list
    maps: list
    quotients: list
    isos: list = field(default_factory=list)   # coker(maps[k]) -> quotients[k]
    omega: bool = False

    @property
    def length(self) -> int:
        return len(self.maps)

    def validate(self, structure: ExactStructure | None = None) -> bool:
        if not self.objects or not self.objects[0].is_zero():
            return False
        for k, m in enumerate(self.maps):
            st = structure or ambient_structure(m.source.spec)
            q, _ = cokernel_of(m)
            seq = ShortSeq(m, q, check=False)
            if not m.is_mono() or not is_admissible(st, seq):
                return False
            iso = self.isos[k] if k < len(self.isos) else None
            if iso is None or iso.source != q.target or iso.target != self.quotients[k] or not iso.is_iso():
                return False
        return True


@dataclass
class OmegaFiltration:
    """Stage filtration of a telescope: stages are the filtration steps, one per stage map."""

    telescope: Telescope
    quotients: list
    omega: bool = True


@dataclass
class NotFoundWithinBound:
    reason: str
    obstruction: str | None = None
    bound: dict = field(default_factory=dict)

    def __bool__(self):
        return False


def _iso_to_member(X: Rep, U_list, bound: int):
    exhaustive = True
    for U in U_list:
        r = find_isomorphism(X, U, bound)
        if r:
            return U, r.iso, True
        exhaustive &= r.exhaustive
    return None, None, exhaustive


def _torsion_obstruction(F: Rep, U_list):
    if F.ring.kind != "Z":
        return None
    if any(v.free_rank for v in F.values) and all(all(v.free_rank == 0 for v in U.values) for U in U_list):
        return "torsion: every listed quotient is torsion but the object has free rank"
    return None


def fil_witness(F, U_list, length_bound: int = 4, structure: ExactStructure | None = None,
                candidate_bound: int = 256):
    U_list = list(U_list)
    if isinstance(F, Telescope):
        fil = _stage_filtration(F, structure)
        if fil is None:
            return NotFoundWithinBound("stage maps are not admissible monos")
        for q in fil.quotients:
            if not q.is_zero() and _iso_to_member(q, U_list, candidate_bound)[0] is None:
                return NotFoundWithinBound("a stage quotient is not isomorphic to a listed object",
                                           _torsion_obstruction(q, U_list))
        return fil
    structure = structure or ambient_structure(F.spec)
    out = _fil_search(F, U_list, length_bound, structure, candidate_bound)
    if out is not None:
        objs, maps, quots, isos = out
        Z = direct_sum([], F.spec).obj
        first = RepMap.zero(Z, objs[0])
        # the first step is 0 -> F_1; its cokernel is F_1 itself
        q, _ = cokernel_of(first)
        r = find_isomorphism(q.target, quots[0])
        return Filtration([Z] + objs, [first] + maps, quots, [r.iso] + isos)
    return NotFoundWithinBound("no filtration within the length bound",
                               _torsion_obstruction(F, U_list), {"length_bound": length_bound})


def _fil_search(F: Rep, U_list, length_bound: int, structure, candidate_bound: int):
    """Returns bottom-up (objects F_1..F_n, maps F_k -> F_{k+1}, quotients, isos) or None."""
    if length_bound <= 0:
        return None
    if F.is_zero():
        return None
    U, iso, _ = _iso_to_member(F, U_list, candidate_bound)
    if U is not None:
        return [F], [], [U], []
    if length_bound == 1:
        return None
    for U in U_list:
        H = rep_hom(F, U)
        cands, _ = hom_candidates(H, candidate_bound)
        seen = set()
        for c in cands:
            p = H.to_map(c)
            if not p.is_epi() or p.is_zero():
                continue
            k = kernel_of(p)
            if k.source.is_zero() or k.source in seen:
                continue
            seen.add(k.source)
            seq = ShortSeq(k, p, check=False)
            if not is_admissible(structure, seq):
                continue
            sub = _fil_search(k.source, U_list, length_bound - 1, structure, candidate_bound)
            if sub is None:
                continue
            objs, maps, quots, isos = sub
            q, _ = cokernel_of(k)
            r = find_isomorphism(q.target, U)
            return objs + [F], maps + [k], quots + [U], isos + [r.iso]
    return None


def _stage_filtration(T: Telescope, structure: ExactStructure | None):
    structure = structure or ambient_structure(T.spec)
    quots = [T.stage(0)]
    for j in range(T.m + 1):
        g = T.step(j)
        if not g.is_mono():
            return None
        q, _ = cokernel_of(g)
        if not is_admissible(structure, ShortSeq(g, q, check=False)):
            return None
        quots.append(q.target)
    return OmegaFiltration(T, quots)


# Eklof ------------------------------------------------------------------------------------------

@dataclass
class EklofReport:
    precondition: bool
    precondition_failures: list
    checked: int
    counterexamples: list

    @property
    def passed(self) -> bool:
        return self.precondition and not self.counterexamples


def _classes(M: FgModule, cap: int):
    order = M.order()
    if order is not None and order <= cap:
        return list(M.elements())
    out = [[0] * M.n]
    for j in range(M.n):
        e = [0] * M.n
        e[j] = 1
        out.append(e)
    return out


def spliced_filtrations(U_list, length_bound: int, class_cap: int = 8, max_objects: int = 400,
                        size_ok=None):
    """Objects filtered by ``U_list`` built by realizing extensions, up to isomorphism."""
    U_list = list(U_list)
    layers = [[(U, 1) for U in U_list]]
    found = list(layers[0])
    for length in range(2, length_bound + 1):
        nxt = []
        for F, _ in layers[-1]:
            for U in U_list:
                G = ext1(U, F)
                for c in _classes(G.module, class_cap):
                    E = G.realize(c).middle
                    if size_ok is not None and not size_ok(E):
                        continue
                    if any(find_isomorphism(E, X) for X, _ in nxt):
                        continue
                    nxt.append((E, length))
                    if len(found) + len(nxt) >= max_objects:
                        break
        layers.append(nxt)
        found += nxt
        if len(found) >= max_objects:
            break
    return found


def check_eklof(U_list, B_list, length_bound: int = 4, class_cap: int = 8, size_ok=None) -> EklofReport:
    fails = [(U, B) for U in U_list for B in B_list if not ext1(U, B).is_zero()]
    if fails:
        return EklofReport(False, fails, 0, [])
    bad, checked = [], 0
    for F, length in spliced_filtrations(U_list, length_bound, class_cap, size_ok=size_ok):
        for B in B_list:
            checked += 1
            if not ext1(F, B).is_zero():
                bad.append({"object": F, "length": length, "B": B})
    return EklofReport(True, [], checked, bad)


# hereditary test --------------------------------------------------------------------------------

@dataclass
class HereditaryReport:
    precondition: bool
    kernels_closed: object
    cokernels_closed: object
    ext2_vanishes: object
    details: dict

    @property
    def verdicts(self):
        return (self.kernels_closed, self.cokernels_closed, self.ext2_vanishes)

    @property
    def agree(self) -> bool:
        return len(set(map(str, self.verdicts))) == 1


def _admissible_epis_between(X: Rep, Y: Rep, structure, bound: int):
    H = rep_hom(X, Y)
    cands, exhaustive = hom_candidates(H, bound)
    for c in cands:
        p = H.to_map(c)
        if p.is_epi():
            seq = ShortSeq(kernel_of(p), p, check=False)
            if is_admissible(structure, seq):
                yield seq


def _admissible_monos_between(X: Rep, Y: Rep, structure, bound: int):
    H = rep_hom(X, Y)
    cands, exhaustive = hom_candidates(H, bound)
    for c in cands:
        i = H.to_map(c)
        if i.is_mono():
            seq = ShortSeq(i, cokernel_of(i)[0], check=False)
            if is_admissible(structure, seq):
                yield seq


def check_hereditary(A_list, B_list, structure: ExactStructure | None = None, bound: int = 256) -> HereditaryReport:
    A_list, B_list = list(A_list), list(B_list)
    structure = structure or ambient_structure((A_list + B_list)[0].spec)
    pre = all(ext1(A, B).is_zero() for A in A_list for B in B_list)
    details = {"kernel_failures": [], "cokernel_failures": [], "ext2_failures": [], "checked": [0, 0, 0]}
    k_ok = True
    for X, Y in itertools.product(A_list, A_list):
        for seq in _admissible_epis_between(X, Y, structure, bound):
            details["checked"][0] += 1
            K = seq.left
            if not all(ext1(K, B).is_zero() for B in B_list):
                k_ok = False
                details["kernel_failures"].append(seq)
    c_ok = True
    for X, Y in itertools.product(B_list, B_list):
        for seq in _admissible_monos_between(X, Y, structure, bound):
            details["checked"][1] += 1
            C = seq.right
            if not all(ext1(A, C).is_zero() for A in A_list):
                c_ok = False
                details["cokernel_failures"].append(seq)
    e_ok = True
    for A, B in itertools.product(A_list, B_list):
        details["checked"][2] += 1
        if not ext1(projective_cover(A).omega, B).is_zero():
            e_ok = False
            details["ext2_failures"].append((A, B))
    return HereditaryReport(pre, k_ok, c_ok, e_ok, details)


# fp-projectivity and periodicity -----------------------------------------------------------------

def fp_projective_test(X, structure: ExactStructure | None = None, stage_bound: int = 16) -> Decision:
    if isinstance(X, Rep):
        Z = direct_sum([], X.spec).obj
        fil = Filtration([Z, X], [RepMap.zero(Z, X)], [X], [RepMap.identity(X)])
        return Decision(True, "finitely presentable", {"filtration": fil, "length": 1})
    T = X
    structure = structure or ambient_structure(T.spec)
    failing = None
    for j in range(T.m + 1):
        g = T.step(j)
        q, _ = cokernel_of(g)
        if not g.is_mono() or not is_admissible(structure, ShortSeq(g, q, check=False)):
            failing = j
            break
    if failing is None:
        return Decision(True, "stage filtration with admissible monos and fp quotients",
                        {"filtration": _stage_filtration(T, structure), "omega": True})
    col = colimit_materialize(T, stage_bound)
    if isinstance(col, Colimit):
        return Decision(True, "colimit is finitely presentable", {"colimit": col.rep, "length": 1})
    return Decision(BOUNDED, "stage map is not an admissible mono; no summand witness within bounds",
                    {"failing_stage": failing}, bound={"stage_bound": stage_bound})


class PeriodicityInstance:
    KINDS = ("FpProjective", "Cotorsion", "MaxLC")

    def __init__(self, kind: str, seq, structure: ExactStructure | None = None, name: str = "",
                 c_fp=(), c_telescopes=(), periodic: bool = True, certificate=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown instance kind {kind!r}")
        self.kind, self.seq, self.name = kind, seq, name
        self.structure = structure
        self.c_fp, self.c_telescopes = tuple(c_fp), tuple(c_telescopes)
        self.periodic = periodic
        self.certificate = certificate
        if periodic and not _same_object(seq.left, seq.right):
            raise ValueError("outer terms of a periodicity instance must be the same object")

    def __repr__(self):
        return f"PeriodicityInstance({self.name or self.kind})"


def _same_object(a, b) -> bool:
    return a is b or a == b


@dataclass
class PeriodicityReport:
    instance: PeriodicityInstance
    verdict: object
    steps: list

    def as_dict(self):
        return {"name": self.instance.name, "kind": self.instance.kind, "verdict": self.verdict,
                "steps": [{"step": s, "verdict": v, "note": n} for s, v, n in self.steps]}


def _admissible(structure, seq):
    if isinstance(seq, TelescopeSeq):
        return is_admissible_ind(structure, seq)
    return is_admissible(structure, seq)


def verify_periodicity(inst: PeriodicityInstance) -> PeriodicityReport:
    seq = inst.seq
    spec = seq.left.spec
    structure = inst.structure or ambient_structure(spec)
    steps = []
    if inst.kind == "MaxLC":
        d = _maxlc_admissible(seq)
        steps.append(("maximal admissibility (fp kernel criterion)", d.verdict, d.reason))
    else:
        d = _admissible(structure, seq)
        steps.append(("admissible", d.verdict, d.reason))
    if d.verdict is not True:
        return PeriodicityReport(inst, d.verdict if d.verdict is False else BOUNDED, steps)
    if inst.kind in ("FpProjective", "MaxLC"):
        terms = [("middle", seq.middle), ("outer", seq.right)]
        if not inst.periodic:
            terms.append(("left", seq.left))
        verdicts = []
        for name, X in terms:
            r = fp_projective_test(X, structure)
            steps.append((f"fp-projective {name}", r.verdict, r.reason))
            verdicts.append(r.verdict)
        return PeriodicityReport(inst, conj(verdicts), steps)
    # Cotorsion: B = outer term, D = middle term
    B, D = seq.right, seq.middle
    verdicts = []
    for name, X in (("B", B), ("D", D)):
        r = orthogonal_test("right", list(inst.c_fp), X)
        steps.append((f"{name} in (C_fp)^perp1", r["perp1"], "Ext^1 against fp generators"))
        verdicts.append(r["perp1"])
    rD = orthogonal_test("right", list(inst.c_telescopes), D)
    steps.append(("D in C^perp1", rD["perp1"], "stabilized Ext against telescope generators"))
    rB = orthogonal_test("right", list(inst.c_telescopes), B)
    steps.append(("B in C^perp1", rB["perp1"],
                  "stabilized Ext against the configured telescope generators only; "
                  "the full class is not enumerable"))
    verdicts += [rD["perp1"], rB["perp1"]]
    return PeriodicityReport(inst, conj(verdicts), steps)


def _maxlc_admissible(seq) -> Decision:
    """Admissible in the maximal locally coherent structure: exact colimit sequence with fp kernel."""
    if isinstance(seq, ShortSeq):
        ok = seq.is_pointwise_exact()
        return Decision(ok, "pointwise exact with fp kernel" if ok else "not pointwise exact")
    from exactcat.telescope import materialize_seq
    levels_exact = all(seq.level(j).is_pointwise_exact() for j in range(seq.m + 1))
    if levels_exact:
        return Decision(True, "every level is a pointwise exact sequence of fp objects (kernel fp at each level)")
    mseq, cols = materialize_seq(seq)
    if mseq is None:
        return Decision(BOUNDED, "colimits not materialized")
    ok = mseq.is_pointwise_exact()
    return Decision(ok, "materialized colimit sequence exact with fp kernel" if ok else "colimit not exact")
