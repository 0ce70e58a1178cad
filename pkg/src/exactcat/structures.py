"""Additive subcategories of representations and exact structures on them.

An exact structure is stored semi-intensionally: a kind tag plus, for custom
structures, a list of witness sequences. Admissibility is decided per query:

* ``split``    -- the sequence is pointwise exact and ``p`` has a section;
* ``maximal``  -- ``(i, p)`` is a kernel-cokernel pair relative to the subcategory;
* ``custom``   -- the sequence is pointwise exact and its Ext class lies in the
  sub-bifunctor of Ext^1 generated by the witnesses (span of ``a_* b^* xi_w``),
  after a bounded saturation under composition of admissible epis and monos;
  with ``closure="none"`` only split sequences and isomorphic copies of the
  witnesses are admitted (used to exhibit failing axioms);
* ``meet``     -- admitted by every part;
* ``karoubi``  -- a direct summand of a sequence admitted by the base structure.
"""

from __future__ import annotations

import itertools

from exactcat.ext import ext1
from exactcat.modules import FgModule, Solver, kernel, submodule
from exactcat.rep import (Rep, RepMap, ShortSeq, direct_sum, extend_through, factor_through_mono,
                          find_isomorphism, hom_candidates, image_of, kernel_of, cokernel_of,
                          lift_through, limit_square, postcompose, precompose, rep_hom, representable,
                          seq_sum, split_sequence, zero_rep)
from exactcat.verdict import BOUNDED, Decision, conj


class OutsideSubcat(ValueError):
    pass


def _size(X: Rep):
    """Additive size vector: free ranks add, torsion orders multiply."""
    return tuple((v.free_rank, _torsion_order(v)) for v in X.values)


def _torsion_order(v: FgModule) -> int:
    out = 1
    for d in v.moduli:
        if d:
            out *= d
    return out


def _size_add(a, b):
    return tuple((x[0] + y[0], x[1] * y[1]) for x, y in zip(a, b))


def _size_max_mult(block, target):
    """Largest multiplicity of ``block`` that can fit in ``target`` by size."""
    best = None
    for (bf, bt), (tf, tt) in zip(block, target):
        if bf:
            m = tf // bf
            best = m if best is None else min(best, m)
        if bt > 1:
            m, acc = 0, 1
            while tt % (acc * bt) == 0:
                acc *= bt
                m += 1
            best = m if best is None else min(best, m)
    return best


class AdditiveSubcat:
    """A full additive subcategory of f.g. representations.

    ``kind`` is ``"full"`` (all f.g. representations), ``"generated"``
    (direct sums of generators and split-off summands, multiplicities at most
    ``multiplicity_bound``) or ``"predicate"`` (objects satisfying a predicate;
    ``generators`` must generate it additively and serve as test objects).
    """

    def __init__(self, spec, kind="full", generators=(), summands=(), multiplicity_bound=3,
                 predicate=None, name=None):
        if kind not in ("full", "generated", "predicate"):
            raise ValueError(f"unknown subcategory kind {kind!r}")
        if kind == "generated" and not generators:
            raise ValueError("an additive subcategory needs at least one generator")
        if kind == "predicate" and (predicate is None or not generators):
            raise ValueError("a predicate subcategory needs the predicate and additive generators")
        if multiplicity_bound < 1:
            raise ValueError("multiplicity bound must be positive")
        self.spec = spec
        self.kind = kind
        self.generators = tuple(generators)
        self.summand_markers = tuple(summands)
        for gi, e in self.summand_markers:
            if e @ e != e:
                raise ValueError("summand marker is not idempotent")
            if e.source != self.generators[gi]:
                raise ValueError("summand marker does not act on its generator")
        self.multiplicity_bound = multiplicity_bound
        self.predicate = predicate
        self.name = name or kind
        self._split = None
        self._membership = {}

    def __repr__(self):
        return f"AdditiveSubcat({self.name}, {len(self.generators)} generators)"

    @classmethod
    def full(cls, spec, multiplicity_bound=3):
        return cls(spec, "full", multiplicity_bound=multiplicity_bound)

    @property
    def split_summands(self):
        """``(object, section, retraction)`` for every summand marker."""
        if self._split is None:
            out = []
            for gi, e in self.summand_markers:
                s = image_of(e)
                r = factor_through_mono(s, e)
                out.append((s.source, s, r))
            self._split = out
        return self._split

    def blocks(self):
        if self.kind == "full":
            return [representable(self.spec, a) for a in self.spec.objects]
        return list(self.generators) + [s for s, _, _ in self.split_summands]

    def test_objects(self):
        return [b for b in self.blocks() if not b.is_zero()]

    def membership(self, X: Rep) -> Decision:
        if X.spec != self.spec:
            return Decision(False, "different category")
        if self.kind == "full":
            return Decision(True, "full subcategory")
        if X.is_zero():
            return Decision(True, "zero object")
        if self.kind == "predicate":
            ok = bool(self.predicate(X))
            return Decision(ok, f"predicate {self.name}")
        if X in self._membership:
            return self._membership[X]
        dec = self._decompose(X)
        self._membership[X] = dec
        return dec

    def contains(self, X: Rep):
        return self.membership(X).verdict

    def _decompose(self, X: Rep) -> Decision:
        blocks = [b for b in self.blocks() if not b.is_zero()]
        target = _size(X)
        ranges, exhaustive = [], True
        for b in blocks:
            m = _size_max_mult(_size(b), target)
            m = 0 if m is None else m
            if m > self.multiplicity_bound:
                exhaustive = False
                m = self.multiplicity_bound
            ranges.append(range(m + 1))
        unit = tuple((0, 1) for _ in X.values)
        any_bounded = False
        for mult in itertools.product(*ranges):
            if not any(mult):
                continue
            size = unit
            for b, m in zip(blocks, mult):
                for _ in range(m):
                    size = _size_add(size, _size(b))
            if size != target:
                continue
            parts = [b for b, m in zip(blocks, mult) for _ in range(m)]
            S = direct_sum(parts).obj
            iso = find_isomorphism(S, X)
            if iso:
                return Decision(True, "direct sum of blocks", {"multiplicities": list(mult), "iso": iso.iso})
            if not iso.exhaustive:
                any_bounded = True
        if exhaustive and not any_bounded:
            return Decision(False, "no direct sum of blocks is isomorphic")
        return Decision(BOUNDED, "membership search exhausted its bound",
                        bound={"multiplicity_bound": self.multiplicity_bound})


# basic sequence predicates ---------------------------------------------------------------

def split_decision(seq: ShortSeq) -> Decision:
    if not seq.is_pointwise_exact():
        return Decision(False, "not pointwise exact")
    s = lift_through(seq.p, RepMap.identity(seq.right))
    if s is None:
        return Decision(False, "p admits no section")
    return Decision(True, "split", {"section": s})


class RelTest:
    def __init__(self, is_rel_kernel, is_rel_cokernel, certificates):
        self.is_rel_kernel = is_rel_kernel
        self.is_rel_cokernel = is_rel_cokernel
        self.certificates = certificates

    def __iter__(self):
        return iter((self.is_rel_kernel, self.is_rel_cokernel, self.certificates))

    def __repr__(self):
        return f"RelTest(kernel={self.is_rel_kernel}, cokernel={self.is_rel_cokernel})"


def _kernel_side(i: RepMap, p: RepMap, G: Rep):
    """Maps ``G -> E`` killed by ``p`` factor uniquely through ``i``."""
    K = kernel(postcompose(p, G))
    HE = rep_hom(G, i.target)
    via_i = postcompose(i, G)
    solver = Solver(via_i)
    for col in K.matrix.cols():
        if solver(col) is None:
            return False, {"test_object": G, "map": HE.to_map(col), "failure": "no factorization through i"}
    if not kernel(via_i).source.is_zero():
        return False, {"test_object": G, "failure": "factorization through i is not unique"}
    return True, None


def _cokernel_side(i: RepMap, p: RepMap, G: Rep):
    """Maps ``E -> G`` killed by ``i`` factor uniquely through ``p``."""
    K = kernel(precompose(i, G))
    HE = rep_hom(i.target, G)
    via_p = precompose(p, G)
    solver = Solver(via_p)
    for col in K.matrix.cols():
        if solver(col) is None:
            return False, {"test_object": G, "map": HE.to_map(col), "failure": "no factorization through p"}
    if not kernel(via_p).source.is_zero():
        return False, {"test_object": G, "failure": "factorization through p is not unique"}
    return True, None


def relative_kernel_test(subcat: AdditiveSubcat, i: RepMap, p: RepMap) -> RelTest:
    """Is ``i`` a kernel of ``p`` and ``p`` a cokernel of ``i`` inside ``subcat``?

    Kernel side: test objects are the representables for the full subcategory
    (they generate) and the additive generators otherwise. Cokernel side on
    the full subcategory uses the ambient cokernels of ``i`` and ``p`` (both
    lie in it); otherwise the generators again.
    """
    if not (p @ i).is_zero():
        raise ValueError("p.i is not zero")
    certs = {"kernel": [], "cokernel": []}
    kernel_ok = True
    kobjs = [representable(subcat.spec, a) for a in subcat.spec.objects] if subcat.kind == "full" \
        else subcat.test_objects()
    for G in kobjs:
        ok, w = _kernel_side(i, p, G)
        if not ok:
            kernel_ok = False
            certs["kernel"].append(w)
            break
    coker_ok = True
    if subcat.kind == "full":
        q, _ = cokernel_of(i)
        g = extend_through(p, q)
        if g is None:
            coker_ok = False
            certs["cokernel"].append({"test_object": q.target, "map": q,
                                      "failure": "projection onto coker(i) does not factor through p"})
        else:
            certs["cokernel"].append({"factorization": g})
            if not p.is_epi():
                coker_ok = False
                certs["cokernel"].append({"test_object": cokernel_of(p)[0].target,
                                          "failure": "p is not an epimorphism"})
    else:
        for G in subcat.test_objects():
            ok, w = _cokernel_side(i, p, G)
            if not ok:
                coker_ok = False
                certs["cokernel"].append(w)
                break
    return RelTest(kernel_ok, coker_ok, certs)


def find_seq_isomorphism(s1: ShortSeq, s2: ShortSeq, bound: int = 4096):
    """``(alpha, beta, gamma)`` identifying two sequences, or None; plus exhaustiveness."""
    if s1.middle.dims != s2.middle.dims or s1.left.dims != s2.left.dims or s1.right.dims != s2.right.dims:
        if s1.middle.ring.is_field:
            return None, True
    H = rep_hom(s1.middle, s2.middle)
    cands, exhaustive = hom_candidates(H, bound)
    for c in cands:
        beta = H.to_map(c)
        if not beta.is_iso():
            continue
        alpha = factor_through_mono(s2.i, beta @ s1.i) if s2.i.is_mono() else None
        if alpha is None or not alpha.is_iso():
            continue
        gamma = extend_through(s1.p, s2.p @ beta)
        if gamma is None or not gamma.is_iso():
            continue
        return (alpha, beta, gamma), exhaustive
    return None, exhaustive


# exact structures --------------------------------------------------------------------------

class ExactStructure:
    KINDS = ("split", "maximal", "custom", "meet", "karoubi")

    def __init__(self, subcat: AdditiveSubcat, kind: str, witnesses=(), closure="saturated",
                 parts=(), base=None, name=None, saturation_rounds=3):
        if kind not in self.KINDS:
            raise ValueError(f"unknown structure kind {kind!r}")
        self.subcat = subcat
        self.kind = kind
        self.witnesses = tuple(witnesses)
        self.closure = closure
        self.parts = tuple(parts)
        self.base = base
        self.name = name or kind
        self.saturation_rounds = saturation_rounds
        self.saturation_log = []
        self.split_evidence = None
        self._span_cache = {}
        if kind == "custom":
            for w in self.witnesses:
                if not w.is_pointwise_exact():
                    raise ValueError("custom witnesses must be pointwise exact sequences")
                for X in (w.left, w.middle, w.right):
                    if subcat.contains(X) is False:
                        raise OutsideSubcat("witness term outside the subcategory")
            if closure == "saturated":
                self._saturate()

    def __repr__(self):
        return f"ExactStructure({self.name}, {self.kind}, {self.subcat.name})"

    # custom closure

    def _span(self, X: Rep, Y: Rep):
        """Inclusion of the classes generated by the witnesses inside Ext^1(X, Y)."""
        key = (X, Y)
        if key in self._span_cache:
            return self._span_cache[key]
        G = ext1(X, Y)
        vecs = []
        for w in self.witnesses:
            Gw = ext1(w.right, w.left)
            xi = Gw.class_of(w)
            if Gw.module.is_zero_vector(xi):
                continue
            Hb = rep_hom(X, w.right).basis
            Ha = rep_hom(w.left, Y).basis
            if not Hb or not Ha:
                continue
            mid = ext1(X, w.left)
            for b in Hb:
                pulled = Gw.pullback_class(b, mid)(xi)
                if mid.module.is_zero_vector(pulled):
                    continue
                for a in Ha:
                    vecs.append(mid.pushforward_class(a, G)(pulled))
        inc = submodule(G.module, vecs)
        out = (G, Solver(inc), inc)
        self._span_cache[key] = out
        return out

    def _in_span(self, seq: ShortSeq):
        G, solver, inc = self._span(seq.right, seq.left)
        cls = G.class_of(seq)
        return solver(cls) is not None, cls

    def _saturate(self):
        for rnd in range(self.saturation_rounds):
            new = []
            W = list(self.witnesses)
            for w1, w2 in itertools.product(W, W):
                for seq in _compositions(w1, w2):
                    ok, _ = self._in_span(seq)
                    if not ok and not any(seq == n for n in new):
                        new.append(seq)
            self.saturation_log.append({"round": rnd + 1, "added": len(new)})
            if not new:
                return
            self.witnesses += tuple(new)
            self._span_cache.clear()
        self.saturation_log.append({"fixed_point": False, "rounds": self.saturation_rounds})

    @property
    def saturated(self) -> bool:
        return self.kind != "custom" or self.closure != "saturated" or \
            not any(entry.get("fixed_point") is False for entry in self.saturation_log)

    # decisions

    def admits(self, seq: ShortSeq) -> Decision:
        if self.kind == "split":
            return split_decision(seq)
        if self.kind == "maximal":
            t = relative_kernel_test(self.subcat, seq.i, seq.p)
            ok = t.is_rel_kernel and t.is_rel_cokernel
            return Decision(ok, "relative kernel-cokernel pair" if ok else "relative test failed",
                            {"relative_test": t.certificates})
        if self.kind == "custom":
            return self._admits_custom(seq)
        if self.kind == "meet":
            ds = [s.admits(seq) for s in self.parts]
            return Decision(conj(d.verdict for d in ds), "meet", {"parts": ds})
        return self._admits_karoubi(seq)

    def _admits_custom(self, seq: ShortSeq) -> Decision:
        sd = split_decision(seq)
        if sd:
            return sd
        if not seq.is_pointwise_exact():
            return Decision(False, "not pointwise exact")
        if self.closure == "none":
            any_bounded = False
            for k, w in enumerate(self.witnesses):
                iso, exhaustive = find_seq_isomorphism(w, seq)
                if iso:
                    return Decision(True, "isomorphic to a witness", {"witness": k, "iso": iso})
                any_bounded |= not exhaustive
            if any_bounded:
                return Decision(BOUNDED, "sequence isomorphism search exhausted its bound")
            return Decision(False, "neither split nor isomorphic to a witness")
        ok, cls = self._in_span(seq)
        return Decision(ok, "class in the generated sub-bifunctor" if ok else
                        "class outside the generated sub-bifunctor", {"class": cls})

    def _admits_karoubi(self, seq: ShortSeq) -> Decision:
        base = self.base
        if base.kind == "split":
            # summands of split sequences are exactly the split sequences
            return split_decision(seq)
        if self.split_evidence is not None:
            d = split_decision(seq)
            d.bound = {"split_equivalence_sample": self.split_evidence["sequences"]}
            return d
        pads = [zero_rep(seq.left.spec)] + self.subcat.test_objects()
        bsub = base.subcat
        for zy, zx in itertools.product(pads, pads):
            tau = seq_sum([seq, ShortSeq(RepMap.identity(zy), RepMap.zero(zy, zero_rep(zy.spec)), check=False),
                           ShortSeq(RepMap.zero(zero_rep(zx.spec), zx), RepMap.identity(zx), check=False)])
            if any(bsub.contains(T) is not True for T in (tau.left, tau.middle, tau.right)):
                continue
            d = base.admits(tau)
            if d:
                return Decision(True, "summand of an admissible sequence", {"padding": (zy, zx)})
            if d.verdict is False and base.kind == "maximal":
                # padding by trivial sequences does not change the relative tests
                return Decision(False, "padded sequence fails the base structure", {"base": d})
        return Decision(BOUNDED, "no padding within the search bound lands in the base subcategory",
                        bound={"padding_objects": len(pads)})


def _compositions(w1: ShortSeq, w2: ShortSeq):
    """Sequences built from composing admissible epis (or monos) of two witnesses."""
    out = []
    if w2.right == w1.middle:
        comp = w1.p @ w2.p
        out.append(ShortSeq(kernel_of(comp), comp, check=False))
    if w2.left == w1.middle:
        comp = w2.i @ w1.i
        out.append(ShortSeq(comp, cokernel_of(comp)[0], check=False))
    return [s for s in out if s.is_pointwise_exact()]


def split_structure(subcat: AdditiveSubcat) -> ExactStructure:
    return ExactStructure(subcat, "split")


def maximal_structure(subcat: AdditiveSubcat) -> ExactStructure:
    return ExactStructure(subcat, "maximal")


def custom_structure(subcat: AdditiveSubcat, witnesses, closure="saturated", name=None) -> ExactStructure:
    return ExactStructure(subcat, "custom", witnesses=witnesses, closure=closure, name=name)


def meet_structures(s1: ExactStructure, s2: ExactStructure) -> ExactStructure:
    if s1.subcat is not s2.subcat and (s1.subcat.kind, s1.subcat.generators, s1.subcat.spec) != \
            (s2.subcat.kind, s2.subcat.generators, s2.subcat.spec):
        raise ValueError("meet needs structures on the same subcategory")
    if s1 is s2:
        return s1
    return ExactStructure(s1.subcat, "meet", parts=(s1, s2), name=f"meet({s1.name},{s2.name})")


def is_admissible(structure: ExactStructure, seq: ShortSeq) -> Decision:
    bounded_terms = []
    for name, X in (("left", seq.left), ("middle", seq.middle), ("right", seq.right)):
        v = structure.subcat.contains(X)
        if v is False:
            raise OutsideSubcat(f"{name} term lies outside the subcategory {structure.subcat.name}")
        if v == BOUNDED:
            bounded_terms.append(name)
    d = structure.admits(seq)
    if bounded_terms and d.verdict is True:
        d.bound = dict(d.bound or {}, membership=bounded_terms)
    return d


# Karoubi envelope -------------------------------------------------------------------------------

def idempotents(X: Rep, bound: int = 4096):
    """Nontrivial idempotent endomorphisms found within the candidate bound."""
    H = rep_hom(X, X)
    cands, exhaustive = hom_candidates(H, bound)
    ident = RepMap.identity(X)
    out = []
    for c in cands:
        e = H.to_map(c)
        if e.is_zero() or e == ident:
            continue
        if e @ e == e and e not in out:
            out.append(e)
    return out, exhaustive


def split_equivalence(structure: ExactStructure, objects=None):
    """Evidence that the structure admits only split sequences on sample objects.

    Returns ``None`` when a nonsplit admitted sequence turns up, else a dict
    counting the sequences examined.
    """
    sub = structure.subcat
    objects = list(objects) if objects is not None else sub.test_objects()
    objects = [X for X in objects if sub.contains(X) is True]
    seen = 0
    for seq in enumerate_sequences(objects):
        if sub.contains(seq.middle) is not True:
            continue
        seen += 1
        if not split_decision(seq) and structure.admits(seq).verdict is not False:
            return None
    return {"sequences": seen, "objects": len(objects)}


def karoubi_envelope(structure: ExactStructure, search_bound: int = 4096, sample_objects=None) -> ExactStructure:
    """Idempotent completion; admitted pairs are summands of admitted pairs of the base.

    When the base admits only split sequences on the sample objects, the
    envelope is decided by the split test (summands of split sequences split).
    """
    sub = structure.subcat
    if sub.kind == "full":
        return ExactStructure(sub, "karoubi", base=structure, name=f"karoubi({structure.name})")
    gens = list(sub.generators) + [s for s, _, _ in sub.split_summands]
    markers = list(sub.summand_markers)
    found = [s for s, _, _ in sub.split_summands]
    for gi, G in enumerate(gens):
        if gi >= len(sub.generators):
            break
        es, _ = idempotents(G, search_bound)
        for e in es:
            S = image_of(e).source
            if any(find_isomorphism(S, T) for T in found + gens):
                continue
            found.append(S)
            markers.append((gi, e))
    new = AdditiveSubcat(sub.spec, "generated", generators=sub.generators, summands=markers,
                         multiplicity_bound=sub.multiplicity_bound, name=f"karoubi({sub.name})")
    out = ExactStructure(new, "karoubi", base=structure, name=f"karoubi({structure.name})")
    if structure.kind != "split":
        out.split_evidence = split_equivalence(structure, sample_objects)
    return out


# axiom checking --------------------------------------------------------------------------------

class AxiomResult:
    def __init__(self, name, status, checked=0, witness=None, note=""):
        self.name = name
        self.status = status
        self.checked = checked
        self.witness = witness
        self.note = note

    def __repr__(self):
        return f"AxiomResult({self.name}: {self.status}, checked={self.checked})"

    def as_dict(self):
        return {"axiom": self.name, "status": self.status, "checked": self.checked,
                "witness": self.witness, "note": self.note}


class AxiomReport:
    def __init__(self, structure, results, objects, bound):
        self.structure = structure
        self.results = results
        self.objects = objects
        self.bound = bound

    @property
    def passed(self):
        return conj(r.status for r in self.results)

    def as_dict(self):
        return {"structure": self.structure.name, "kind": self.structure.kind, "passed": self.passed,
                "objects": len(self.objects), "bound": self.bound,
                "axioms": [r.as_dict() for r in self.results]}

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def enumerate_sequences(objects, class_cap: int = 16):
    """Realize Ext^1 classes between listed objects (all classes when few)."""
    out = []
    for X, Y in itertools.product(objects, objects):
        G = ext1(X, Y)
        order = G.module.order()
        if order is not None and order <= class_cap:
            classes = list(G.module.elements())
        else:
            classes = [[0] * G.module.n]
            for j in range(G.module.n):
                e = [0] * G.module.n
                e[j] = 1
                classes.append(e)
        for c in classes:
            out.append(G.realize(c))
    return out


def _default_objects(subcat: AdditiveSubcat):
    objs = [b for b in subcat.test_objects()]
    if subcat.kind == "full" and subcat.spec.ring.kind == "Fp":
        from exactcat.rep import enumerate_reps, iso_classes
        objs = [X for X in iso_classes(enumerate_reps(subcat.spec, 1)) if not X.is_zero()]
    return objs


def check_axioms(structure: ExactStructure, objects=None, max_pairs: int = 400) -> AxiomReport:
    """Check the exact-category axioms on sample objects and admitted sequences."""
    sub = structure.subcat
    objects = list(objects) if objects is not None else _default_objects(sub)
    objects = [X for X in objects if sub.contains(X) is True]
    results = []

    def adm(seq):
        return structure.admits(seq).verdict

    # identities
    bad, n = None, 0
    for X in objects:
        z = zero_rep(X.spec)
        for seq in (ShortSeq(RepMap.zero(z, X), RepMap.identity(X), check=False),
                    ShortSeq(RepMap.identity(X), RepMap.zero(X, z), check=False)):
            n += 1
            if adm(seq) is not True and bad is None:
                bad = seq
    results.append(AxiomResult("identity", bad is None, n, bad))

    # split sequences
    bad, n = None, 0
    for X, Y in itertools.product(objects, objects):
        n += 1
        seq = split_sequence(Y, X)
        if adm(seq) is not True and bad is None:
            bad = seq
    results.append(AxiomResult("split", bad is None, n, bad))

    candidates = enumerate_sequences(objects) + list(structure.witnesses)
    sample = []
    for seq in candidates:
        if any(sub.contains(T) is not True for T in (seq.left, seq.middle, seq.right)):
            continue
        if adm(seq) is True:
            sample.append(seq)

    # isomorphism: transport along a nontrivial automorphism of the middle term
    bad, n, verdicts = None, 0, []
    for seq in sample:
        auto = _nontrivial_automorphism(seq.middle)
        if auto is None:
            continue
        inv = _inverse(auto)
        copy = ShortSeq(auto @ seq.i, seq.p @ inv, check=False)
        n += 1
        v = adm(copy)
        verdicts.append(v)
        if v is False and bad is None:
            bad = {"sequence": seq, "automorphism": auto}
    results.append(AxiomResult("isomorphism", conj(verdicts) if verdicts else True, n, bad))

    # direct sums
    bad, n, verdicts = None, 0, []
    for s1, s2 in itertools.islice(itertools.product(sample, sample), max_pairs):
        seq = seq_sum([s1, s2])
        if any(sub.contains(T) is not True for T in (seq.left, seq.middle, seq.right)):
            continue
        n += 1
        v = adm(seq)
        verdicts.append(v)
        if v is False and bad is None:
            bad = {"first": s1, "second": s2}
    results.append(AxiomResult("direct-sum", conj(verdicts) if verdicts else True, n, bad))

    # composition of admissible epis / monos
    bad, n, verdicts = None, 0, []
    for w1, w2 in itertools.islice(itertools.product(sample, sample), max_pairs):
        for seq in _compositions(w1, w2):
            if any(sub.contains(T) is not True for T in (seq.left, seq.middle, seq.right)):
                continue
            n += 1
            v = adm(seq)
            verdicts.append(v)
            if v is False and bad is None:
                bad = {"first": w1, "second": w2, "composite": seq}
    results.append(AxiomResult("composition", conj(verdicts) if verdicts else True, n, bad))

    # pullback along maps into the right term
    bad, n, verdicts, outside = None, 0, [], 0
    for seq in sample:
        for Z in objects:
            for b in rep_hom(Z, seq.right).basis:
                sq = limit_square("pullback", seq.p, b)
                n += 1
                if sub.contains(sq.corner) is not True:
                    outside += 1
                    verdicts.append(False)
                    if bad is None:
                        bad = {"sequence": seq, "map": b, "corner": sq.corner, "failure": "corner outside subcat"}
                    continue
                i_new = _pullback_kernel(seq, sq)
                pulled = ShortSeq(i_new, sq.second, check=False)
                v = adm(pulled)
                verdicts.append(v)
                if v is False and bad is None:
                    bad = {"sequence": seq, "map": b, "pullback": pulled, "square": sq}
    results.append(AxiomResult("pullback", conj(verdicts) if verdicts else True, n, bad))

    # pushout along maps out of the left term
    bad, n, verdicts = None, 0, []
    for seq in sample:
        for Z in objects:
            for a in rep_hom(seq.left, Z).basis:
                sq = limit_square("pushout", seq.i, a)
                n += 1
                if sub.contains(sq.corner) is not True:
                    verdicts.append(False)
                    if bad is None:
                        bad = {"sequence": seq, "map": a, "corner": sq.corner, "failure": "corner outside subcat"}
                    continue
                p_new = _pushout_cokernel(seq, sq, a)
                pushed = ShortSeq(sq.second, p_new, check=False)
                v = adm(pushed)
                verdicts.append(v)
                if v is False and bad is None:
                    bad = {"sequence": seq, "map": a, "pushout": pushed, "square": sq}
    results.append(AxiomResult("pushout", conj(verdicts) if verdicts else True, n, bad))
    return AxiomReport(structure, results, objects, {"multiplicity_bound": sub.multiplicity_bound,
                                                     "max_pairs": max_pairs})


def _pullback_kernel(seq: ShortSeq, sq) -> RepMap:
    """``Y -> P`` with components ``(i, 0)`` in the pullback of ``p`` along ``b``."""
    from exactcat.ext import factor_through_pullback
    return factor_through_pullback(sq, seq.i, RepMap.zero(seq.left, sq.second.target))


def _pushout_cokernel(seq: ShortSeq, sq, a: RepMap) -> RepMap:
    from exactcat.ext import factor_through_pushout
    return factor_through_pushout(sq, seq.p, RepMap.zero(a.target, seq.right), seq.i, a)


def _nontrivial_automorphism(X: Rep):
    H = rep_hom(X, X)
    cands, _ = hom_candidates(H, 256)
    ident = RepMap.identity(X)
    for c in cands:
        f = H.to_map(c)
        if f != ident and f.is_iso():
            return f
    return None


def _inverse(f: RepMap) -> RepMap:
    g = lift_through(f, RepMap.identity(f.target))
    if g is None:
        raise ValueError("map is not invertible")
    return g
