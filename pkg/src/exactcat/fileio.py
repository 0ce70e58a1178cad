"""Line-oriented input files.

Every format allows ``#`` comments and blank lines. File references are
resolved relative to the file that mentions them.

Category (``.cat``)::

    ring Fp 2
    objects a b c
    gen f : a -> b
    rel r1 : 1*g.f + -1*h        # paths written in composition order

Representation (``.rep``)::

    category a2.cat
    module a free 2 torsion 2,4
    action f = 1,0;0,1

Map (``.map``)::

    source x.rep
    target y.rep
    component a = 1,0          # missing components are zero

Sequence (``.seq``): ``left``/``middle``/``right`` references followed by
``i <obj> = M`` and ``p <obj> = M`` lines.

Telescope (``.tel``)::

    stage x.rep                 # "ramp" is accepted as a synonym
    transition a = M            # map from the previous stage
    stage y.rep
    tail endo a = M             # on the last stage; omitted means identity

For a one-object category the object name may be dropped (``tail endo = 3``).

Structure (``.struct``)::

    category a2.cat
    structure split | maximal | custom
    subcat full | rank-balanced | generated x.rep y.rep
    witness                     # custom only; a sequence block
      left ...
    end

Telescope sequence (``.tseq``): ``left``/``middle``/``right`` telescope
references and level maps ``i <level> <obj> = M``, ``p <level> <obj> = M``.

Instance (``.inst``)::

    name split-a2
    kind FpProjective | Cotorsion | MaxLC
    sequence s.seq              # or: telescope-sequence s.tseq
    structure s.struct          # optional
    c-fp z.rep                  # Cotorsion generators, repeatable
    c-telescope zp.tel
    periodic false              # allow different outer terms
"""

from __future__ import annotations

import os
from functools import lru_cache

from exactcat.category import Generator, InvalidSpec, Relation, RigidCatSpec
from exactcat.matrix import Matrix
from exactcat.modules import FgModule
from exactcat.rep import Rep, RepMap, ShortSeq
from exactcat.rings import BaseRing


class ParseError(ValueError):
    def __init__(self, path, line_no, message):
        self.path, self.line_no = path, line_no
        where = f"{path}:{line_no}" if line_no else str(path)
        super().__init__(f"{where}: {message}")


def _lines(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read().splitlines()
    except OSError as exc:
        raise ParseError(path, 0, f"cannot read file ({exc.strerror})") from None
    for no, line in enumerate(raw, 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield no, line


def _resolve(base, ref):
    return os.path.normpath(os.path.join(os.path.dirname(os.path.abspath(base)), ref))


# categories --------------------------------------------------------------------------------------

def parse_path(text: str):
    """``g.f`` (composition order) to the application-order tuple ``("f", "g")``."""
    text = text.strip()
    if text in ("id", ""):
        return ()
    return tuple(reversed([t.strip() for t in text.split(".")]))


def _parse_terms(ring, text, path, no):
    terms = []
    for chunk in text.replace("- ", "+ -").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "*" in chunk:
            coef, p = chunk.split("*", 1)
        else:
            coef, p = ("-1", chunk[1:]) if chunk.startswith("-") else ("1", chunk)
        try:
            c = ring.parse_scalar(coef.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(path, no, f"bad coefficient {coef!r}: {exc}") from None
        terms.append((c, parse_path(p)))
    return tuple(terms)


def load_category(path, ring: BaseRing | None = None) -> RigidCatSpec:
    return _load_category(os.path.abspath(path), ring)


@lru_cache(maxsize=64)
def _load_category(path, ring_override):
    ring, objects, gens, rels, raw_rels = None, None, [], [], []
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        if head == "ring":
            try:
                ring = BaseRing.parse(rest)
            except ValueError as exc:
                raise ParseError(path, no, str(exc)) from None
        elif head == "objects":
            objects = tuple(rest.split())
        elif head == "gen":
            name, sep, body = rest.partition(":")
            src, arrow, tgt = body.partition("->")
            if not sep or not arrow:
                raise ParseError(path, no, "expected 'gen NAME : SRC -> TGT'")
            gens.append(Generator(name.strip(), src.strip(), tgt.strip()))
        elif head == "rel":
            name, sep, body = rest.partition(":")
            if not sep:
                raise ParseError(path, no, "expected 'rel NAME : TERMS'")
            raw_rels.append((no, name.strip(), body))
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if ring_override is not None:
        ring = ring_override
    if ring is None:
        raise ParseError(path, 0, "missing 'ring' line")
    if objects is None:
        raise ParseError(path, 0, "missing 'objects' line")
    spec0 = RigidCatSpec(ring, objects, tuple(gens), (), os.path.basename(path))
    for no, name, body in raw_rels:
        terms = _parse_terms(ring, body, path, no)
        src = tgt = None
        for _, p in terms:
            if p:
                try:
                    src, tgt = spec0.path_ends(p)
                except KeyError as exc:
                    raise ParseError(path, no, f"unknown generator {exc.args[0]!r}") from None
                break
        rels.append(Relation(name, src, tgt, terms))
    return RigidCatSpec(ring, objects, tuple(gens), tuple(rels), os.path.basename(path))


# representations and maps ------------------------------------------------------------------------

def _assignment(rest, path, no):
    """``<key> = <literal>`` or ``= <literal>``."""
    key, sep, lit = rest.partition("=")
    if not sep:
        raise ParseError(path, no, "expected '= <matrix literal>'")
    return key.strip(), lit.strip()


def _module_words(words, path, no):
    free, torsion = 0, ()
    try:
        for k in range(0, len(words), 2):
            if k + 1 >= len(words):
                raise ParseError(path, no, f"missing value after {words[k]!r}")
            if words[k] == "free":
                free = int(words[k + 1])
            elif words[k] == "torsion":
                torsion = tuple(int(t) for t in words[k + 1].split(",") if t)
            else:
                raise ParseError(path, no, f"unexpected token {words[k]!r}")
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(path, no, f"bad integer ({exc})") from None
    if free < 0 or any(d < 2 for d in torsion):
        raise ParseError(path, no, "free rank must be >= 0 and torsion orders >= 2")
    return free, torsion


def load_rep(path, ring: BaseRing | None = None) -> Rep:
    X = _load_rep(os.path.abspath(path), ring)
    problems = X.problems()
    if problems:
        raise ParseError(path, 0, f"not a representation: {'; '.join(problems)}")
    return X


@lru_cache(maxsize=256)
def _load_rep(path, ring):
    spec, modules, actions = None, {}, {}
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        if head == "category":
            spec = load_category(_resolve(path, rest.strip()), ring)
        elif head == "module":
            parts = rest.split()
            if not parts:
                raise ParseError(path, no, "module needs an object name")
            modules[parts[0]] = _module_words(parts[1:], path, no)
        elif head == "action":
            key, lit = _assignment(rest, path, no)
            actions[key] = (no, lit)
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if spec is None:
        raise ParseError(path, 0, "missing 'category' line")
    values = []
    for obj in spec.objects:
        free, torsion = modules.get(obj, (0, ()))
        if torsion and spec.ring.is_field:
            raise ParseError(path, 0, f"torsion at {obj} over a field")
        values.append(FgModule(spec.ring, tuple(torsion) + (0,) * free))
    for obj in modules:
        if obj not in spec.objects:
            raise ParseError(path, 0, f"unknown object {obj!r}")
    acts = []
    for g in spec.generators:
        s, t = values[spec.index(g.source)], values[spec.index(g.target)]
        if g.name in actions:
            no, lit = actions.pop(g.name)
            try:
                acts.append(Matrix.parse(spec.ring, lit, t.n, s.n))
            except ValueError as exc:
                raise ParseError(path, no, str(exc)) from None
        else:
            acts.append(Matrix.zeros(spec.ring, t.n, s.n))
    if actions:
        raise ParseError(path, 0, f"unknown generator(s) {sorted(actions)}")
    return Rep(spec, tuple(values), tuple(acts), check=False)


def check_rep(path, ring=None):
    """Load without validating; returns the rep and its list of problems."""
    X = _load_rep(os.path.abspath(path), ring)
    return X, X.problems()


def _components(X: Rep, Y: Rep, entries, path):
    spec = X.spec
    comps = []
    for k, obj in enumerate(spec.objects):
        key = obj if obj in entries else ("" if len(spec.objects) == 1 and "" in entries else None)
        n, m = Y.values[k].n, X.values[k].n
        if key is None:
            comps.append(Matrix.zeros(spec.ring, n, m))
            continue
        no, lit = entries.pop(key)
        try:
            comps.append(Matrix.parse(spec.ring, lit, n, m))
        except ValueError as exc:
            raise ParseError(path, no, str(exc)) from None
    if entries:
        raise ParseError(path, 0, f"unknown object(s) {sorted(entries)}")
    return tuple(comps)


def _map_from(X, Y, entries, path, what="map"):
    comps = _components(X, Y, dict(entries), path)
    f = RepMap(X, Y, comps, check=False)
    problems = f.problems()
    if problems:
        raise ParseError(path, 0, f"{what} is not a valid morphism: {'; '.join(problems)}")
    return f


def load_map(path, ring=None) -> RepMap:
    path = os.path.abspath(path)
    src = tgt = None
    entries = {}
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        if head == "source":
            src = load_rep(_resolve(path, rest.strip()), ring)
        elif head == "target":
            tgt = load_rep(_resolve(path, rest.strip()), ring)
        elif head == "component":
            key, lit = _assignment(rest, path, no)
            entries[key] = (no, lit)
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if src is None or tgt is None:
        raise ParseError(path, 0, "map needs 'source' and 'target'")
    return _map_from(src, tgt, entries, path)


def _seq_from_lines(lines, path, ring):
    terms, i_entries, p_entries = {}, {}, {}
    for no, line in lines:
        head, _, rest = line.partition(" ")
        if head in ("left", "middle", "right"):
            terms[head] = load_rep(_resolve(path, rest.strip()), ring)
        elif head in ("i", "p"):
            key, lit = _assignment(rest, path, no)
            (i_entries if head == "i" else p_entries)[key] = (no, lit)
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if len(terms) != 3:
        raise ParseError(path, 0, "sequence needs 'left', 'middle' and 'right'")
    i = _map_from(terms["left"], terms["middle"], i_entries, path, "i")
    p = _map_from(terms["middle"], terms["right"], p_entries, path, "p")
    if not (p @ i).is_zero():
        raise ParseError(path, 0, "p.i is not zero")
    return ShortSeq(i, p, check=False)


def load_seq(path, ring=None) -> ShortSeq:
    path = os.path.abspath(path)
    return _seq_from_lines(list(_lines(path)), path, ring)


# telescopes -------------------------------------------------------------------------------------

def load_telescope(path, ring=None):
    from exactcat.telescope import Telescope

    path = os.path.abspath(path)
    stages, maps, pending, tail = [], [], {}, {}
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        if head == "category":
            continue
        if head in ("stage", "ramp"):
            rep = load_rep(_resolve(path, rest.strip()), ring)
            if stages:
                maps.append(_map_from(stages[-1], rep, pending, path, f"transition into stage {len(stages)}"))
            elif pending:
                raise ParseError(path, no, "transition before the first stage")
            stages.append(rep)
            pending = {}
        elif head == "transition":
            key, lit = _assignment(rest, path, no)
            pending[key] = (no, lit)
        elif head == "tail":
            sub, _, body = rest.partition(" ")
            if sub != "endo":
                raise ParseError(path, no, "expected 'tail endo ...'")
            key, lit = _assignment(body, path, no)
            tail[key] = (no, lit)
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if not stages:
        raise ParseError(path, 0, "telescope needs at least one stage")
    if pending:
        raise ParseError(path, 0, "transition after the last stage")
    last = stages[-1]
    endo = _map_from(last, last, tail, path, "tail endo") if tail else RepMap.identity(last)
    return Telescope(stages, maps, endo)


def load_telescope_seq(path, ring=None):
    from exactcat.telescope import TelescopeMap, TelescopeSeq

    path = os.path.abspath(path)
    tels, i_lv, p_lv = {}, {}, {}
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        if head in ("left", "middle", "right"):
            tels[head] = load_telescope(_resolve(path, rest.strip()), ring)
        elif head in ("i", "p"):
            lvl, _, body = rest.partition(" ")
            if not lvl.isdigit():
                raise ParseError(path, no, "expected a level number")
            key, lit = _assignment(body, path, no)
            (i_lv if head == "i" else p_lv).setdefault(int(lvl), {})[key] = (no, lit)
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if len(tels) != 3:
        raise ParseError(path, 0, "telescope sequence needs 'left', 'middle' and 'right'")
    m = max(t.m for t in tels.values())
    L, M, R = (tels[k].extended(m) for k in ("left", "middle", "right"))
    i_maps = [_map_from(L.stage(j), M.stage(j), i_lv.get(j, {}), path, f"i at level {j}") for j in range(m + 1)]
    p_maps = [_map_from(M.stage(j), R.stage(j), p_lv.get(j, {}), path, f"p at level {j}") for j in range(m + 1)]
    try:
        return TelescopeSeq(TelescopeMap(L, M, i_maps), TelescopeMap(M, R, p_maps))
    except ValueError as exc:
        raise ParseError(path, 0, str(exc)) from None


# structures and instances -------------------------------------------------------------------------

def make_subcat(spec, words, path, ring=None, multiplicity_bound=3):
    from exactcat.structures import AdditiveSubcat

    kind = words[0] if words else "full"
    if kind == "full":
        return AdditiveSubcat.full(spec, multiplicity_bound)
    if kind == "rank-balanced":
        from exactcat.corpus import rank_balanced_subcat
        if not spec.ring.is_field or spec.objects != ("a", "b") or len(spec.generators) != 1:
            raise ParseError(path, 0, "rank-balanced needs the category a -> b over a field")
        return rank_balanced_subcat(spec.ring, multiplicity_bound)
    if kind == "generated":
        gens = [load_rep(_resolve(path, w), ring) for w in words[1:]]
        if not gens:
            raise ParseError(path, 0, "generated subcategory needs generator files")
        return AdditiveSubcat(spec, "generated", generators=gens, multiplicity_bound=multiplicity_bound)
    raise ParseError(path, 0, f"unknown subcategory kind {kind!r}")


def load_structure(path, ring=None, multiplicity_bound=3):
    from exactcat.structures import custom_structure, maximal_structure, split_structure

    path = os.path.abspath(path)
    spec, kind, sub_words, closure = None, None, ["full"], "saturated"
    blocks, cur = [], None
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        if cur is not None:
            if head == "end":
                blocks.append(cur)
                cur = None
            else:
                cur.append((no, line))
            continue
        if head == "category":
            spec = load_category(_resolve(path, rest.strip()), ring)
        elif head == "structure":
            kind = rest.strip()
        elif head == "subcat":
            sub_words = rest.split()
        elif head == "closure":
            closure = rest.strip()
        elif head == "witness":
            cur = []
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if cur is not None:
        raise ParseError(path, 0, "unterminated witness block")
    if spec is None or kind is None:
        raise ParseError(path, 0, "structure needs 'category' and 'structure' lines")
    sub = make_subcat(spec, sub_words, path, ring, multiplicity_bound)
    if kind == "split":
        return split_structure(sub)
    if kind == "maximal":
        return maximal_structure(sub)
    if kind == "custom":
        ws = [_seq_from_lines(b, path, ring) for b in blocks]
        try:
            return custom_structure(sub, ws, closure=closure, name=os.path.basename(path))
        except ValueError as exc:
            raise ParseError(path, 0, str(exc)) from None
    raise ParseError(path, 0, f"unknown structure kind {kind!r}")


def load_instance(path, ring=None):
    from exactcat.homlab import PeriodicityInstance

    path = os.path.abspath(path)
    fields = {"c-fp": [], "c-telescope": []}
    for no, line in _lines(path):
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head in ("c-fp", "c-telescope"):
            fields[head].append(rest)
        elif head in ("name", "kind", "sequence", "telescope-sequence", "structure", "periodic"):
            fields[head] = rest
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
    if "kind" not in fields:
        raise ParseError(path, 0, "instance needs a 'kind'")
    if "sequence" in fields:
        seq = load_seq(_resolve(path, fields["sequence"]), ring)
    elif "telescope-sequence" in fields:
        seq = load_telescope_seq(_resolve(path, fields["telescope-sequence"]), ring)
    else:
        raise ParseError(path, 0, "instance needs a sequence")
    structure = load_structure(_resolve(path, fields["structure"]), ring) if "structure" in fields else None
    c_fp = [load_rep(_resolve(path, r), ring) for r in fields["c-fp"]]
    c_tel = [load_telescope(_resolve(path, r), ring) for r in fields["c-telescope"]]
    periodic = fields.get("periodic", "true").lower() not in ("false", "no", "0")
    try:
        return PeriodicityInstance(fields["kind"], seq, structure, fields.get("name", os.path.basename(path)),
                                   c_fp, c_tel, periodic)
    except ValueError as exc:
        raise ParseError(path, 0, str(exc)) from None


__all__ = ["ParseError", "InvalidSpec", "load_category", "load_rep", "load_map", "load_seq",
           "load_telescope", "load_telescope_seq", "load_structure", "load_instance", "parse_path",
           "check_rep", "make_subcat"]
