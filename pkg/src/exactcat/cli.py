"""``exactcat`` command line.

Exit status: 0 success, 1 input error, 2 internal invariant violation, 64 usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from exactcat import report
from exactcat.category import InvalidSpec, hom_space, validate_spec
from exactcat.fileio import (ParseError, check_rep, load_category, load_instance, load_map, load_rep, load_seq,
                             load_structure, load_telescope, make_subcat)
from exactcat.rep import RepError
from exactcat.rings import BaseRing
from exactcat.structures import OutsideSubcat

EXIT_OK, EXIT_INPUT, EXIT_BUG, EXIT_USAGE = 0, 1, 2, 64


@dataclass(frozen=True)
class EngineConfig:
    ring: BaseRing | None = None
    multiplicity_bound: int = 3
    stage_bound: int = 16
    length_bound: int = 4
    seed: int = 0
    json_indent: int | None = None

    def __post_init__(self):
        for name in ("multiplicity_bound", "stage_bound", "length_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def as_dict(self):
        return {"ring": str(self.ring) if self.ring else None, "multiplicity_bound": self.multiplicity_bound,
                "stage_bound": self.stage_bound, "length_bound": self.length_bound, "seed": self.seed}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--ring", default=S, help="override the base ring: Z, Q or 'Fp p'")
    p.add_argument("--mult-bound", type=int, default=S)
    p.add_argument("--stage-bound", type=int, default=S)
    p.add_argument("--len-bound", type=int, default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--json-indent", type=int, default=S)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="exactcat", description="Exact structures on categories of representations",
                  parents=[common])
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    def add(parent, name, help_):
        return parent.add_parser(name, help=help_, parents=[common])

    p = add(sub, "validate", "check a category file")
    p.add_argument("category")
    p = add(sub, "hom", "Hom space between two objects")
    p.add_argument("category")
    p.add_argument("source")
    p.add_argument("target")
    p = add(sub, "rep-check", "check a representation file")
    p.add_argument("rep")

    ex = add(sub, "exact", "exact structures").add_subparsers(dest="action", parser_class=_Parser)
    p = add(ex, "check-axioms", "check the exact category axioms")
    p.add_argument("structure")
    p = add(ex, "maximal", "list admissible sequences of the maximal structure")
    p.add_argument("category")
    p.add_argument("--subcat", default="full", help="full | rank-balanced")
    p.add_argument("--max-dim", type=int, default=1)
    p = add(ex, "karoubi", "Karoubi envelope of a structure")
    p.add_argument("structure")
    p = add(ex, "admissible", "is a sequence admissible?")
    p.add_argument("structure")
    p.add_argument("sequence")
    p = add(ex, "meet", "meet of two structures on sample sequences")
    p.add_argument("first")
    p.add_argument("second")

    p = add(sub, "purity", "pure mono / pure epi test for a map")
    p.add_argument("kind", choices=["mono", "epi"])
    p.add_argument("map")

    tel = add(sub, "telescope", "telescopes").add_subparsers(dest="action", parser_class=_Parser)
    p = add(tel, "colim", "materialize the colimit")
    p.add_argument("telescope")
    p = add(tel, "hom", "Hom from a representation into the colimit")
    p.add_argument("rep")
    p.add_argument("telescope")
    p = add(tel, "flat", "flatness over Z")
    p.add_argument("telescope")

    lex = add(sub, "lex", "finitely presented functors").add_subparsers(dest="action", parser_class=_Parser)
    p = add(lex, "hom", "Hom between functors given by .rep (representable) or .map (presentation)")
    p.add_argument("first")
    p.add_argument("second")
    p = add(lex, "exact-in-k", "exactness after the Yoneda embedding")
    p.add_argument("structure")
    p.add_argument("sequence")

    cot = add(sub, "cotorsion", "orthogonality and filtrations").add_subparsers(dest="action",
                                                                               parser_class=_Parser)
    p = add(cot, "perp", "Ext-orthogonality of X against a list")
    p.add_argument("side", choices=["left", "right"])
    p.add_argument("object", help=".rep or .tel")
    p.add_argument("against", nargs="+", help=".rep or .tel files")
    p = add(cot, "eklof", "Eklof self-test")
    p.add_argument("--U", nargs="+", required=True)
    p.add_argument("--B", nargs="+", required=True)
    p = add(cot, "hereditary", "hereditary conditions")
    p.add_argument("--A", nargs="+", required=True)
    p.add_argument("--B", nargs="+", required=True)

    per = add(sub, "periodicity", "periodicity instances").add_subparsers(dest="action", parser_class=_Parser)
    p = add(per, "verify", "verify one instance")
    p.add_argument("instance")

    cor = add(sub, "corpus", "instance corpus").add_subparsers(dest="action", parser_class=_Parser)
    p = add(cor, "run", "verify every .inst file in a directory")
    p.add_argument("directory", nargs="?", default=None)
    return top


def _config(ns) -> EngineConfig:
    ring = BaseRing.parse(ns.ring) if getattr(ns, "ring", None) else None
    return EngineConfig(ring, getattr(ns, "mult_bound", 3), getattr(ns, "stage_bound", 16),
                        getattr(ns, "len_bound", 4), getattr(ns, "seed", 0), getattr(ns, "json_indent", None))


def default_corpus_dir() -> str:
    from exactcat.corpus import data_path
    return data_path("corpus")


# command handlers: each returns (exit status, payload) ------------------------------------------

def cmd_validate(ns, cfg):
    spec = load_category(ns.category, cfg.ring)
    rep_ = validate_spec(spec)
    payload = {"valid": rep_.valid, "violations": [v.as_dict() for v in rep_.violations]}
    return (EXIT_OK if rep_.valid else EXIT_INPUT), payload


def cmd_hom(ns, cfg):
    spec = load_category(ns.category, cfg.ring)
    if not validate_spec(spec).valid:
        raise InvalidSpec("category file is not a valid rigid category")
    for o in (ns.source, ns.target):
        if o not in spec.objects:
            raise InvalidSpec(f"unknown object {o!r}")
    H = hom_space(spec, ns.source, ns.target)
    return EXIT_OK, {"source": ns.source, "target": ns.target, "module": H.module, "basis": H.basis_labels()}


def cmd_rep_check(ns, cfg):
    X, problems = check_rep(ns.rep, cfg.ring)
    return (EXIT_OK if not problems else EXIT_INPUT), {"valid": not problems, "problems": list(problems),
                                                       "rep": X}


def _structure(path, cfg):
    return load_structure(path, cfg.ring, cfg.multiplicity_bound)


def cmd_exact(ns, cfg):
    from exactcat.structures import (check_axioms, enumerate_sequences, is_admissible, karoubi_envelope,
                                     maximal_structure, meet_structures, split_decision, _default_objects)

    if ns.action == "check-axioms":
        s = _structure(ns.structure, cfg)
        return EXIT_OK, {"report": check_axioms(s)}
    if ns.action == "maximal":
        spec = load_category(ns.category, cfg.ring)
        sub = make_subcat(spec, [ns.subcat], ns.category, cfg.ring, cfg.multiplicity_bound)
        objs = _sample_objects(sub, ns.max_dim)
        s = maximal_structure(sub)
        listed = []
        for seq in enumerate_sequences(objs):
            if sub.contains(seq.middle) is not True:
                continue
            d = s.admits(seq)
            if d.verdict is True:
                listed.append({"sequence": seq, "split": bool(split_decision(seq))})
        return EXIT_OK, {"subcat": sub.name, "objects": len(objs), "admissible": listed,
                         "all_split": all(e["split"] for e in listed)}
    if ns.action == "karoubi":
        s = _structure(ns.structure, cfg)
        k = karoubi_envelope(s)
        return EXIT_OK, {"structure": k.name, "blocks": k.subcat.blocks(),
                         "split_equivalence": k.split_evidence}
    if ns.action == "admissible":
        s = _structure(ns.structure, cfg)
        seq = load_seq(ns.sequence, cfg.ring)
        return EXIT_OK, {"decision": is_admissible(s, seq)}
    if ns.action == "meet":
        s1, s2 = _structure(ns.first, cfg), _structure(ns.second, cfg)
        m = meet_structures(s1, s2)
        rows = []
        for seq in enumerate_sequences(_default_objects(s1.subcat)):
            if s1.subcat.contains(seq.middle) is not True:
                continue
            rows.append({"sequence": seq, "split": bool(split_decision(seq)),
                         "first": s1.admits(seq).verdict, "second": s2.admits(seq).verdict,
                         "meet": m.admits(seq).verdict})
        return EXIT_OK, {"meet": m.name, "sequences": rows,
                         "equals_split_on_sample": all((r["meet"] is True) == r["split"] for r in rows)}
    raise UsageError("exact needs an action")


def _sample_objects(sub, max_dim):
    from exactcat.corpus import rank_balanced_objects
    from exactcat.rep import enumerate_reps, iso_classes, representable
    if sub.name == "rank-balanced":
        return rank_balanced_objects(sub.spec.ring, max(max_dim, 3))
    if sub.kind == "full" and sub.spec.ring.kind == "Fp":
        return [X for X in iso_classes(enumerate_reps(sub.spec, max_dim)) if not X.is_zero()]
    if sub.kind == "full":
        return [representable(sub.spec, a) for a in sub.spec.objects]
    return sub.test_objects()


def cmd_purity(ns, cfg):
    from exactcat.telescope import purity_test
    f = load_map(ns.map, cfg.ring)
    return EXIT_OK, {"kind": ns.kind, "decision": purity_test(ns.kind, f, cfg.stage_bound)}


def cmd_telescope(ns, cfg):
    from exactcat.telescope import (Colimit, NotFinitelyGenerated, colimit_materialize, flat_test,
                                    hom_from_fp)
    T = load_telescope(ns.telescope, cfg.ring)
    if ns.action == "colim":
        c = colimit_materialize(T, cfg.stage_bound)
        if isinstance(c, Colimit):
            return EXIT_OK, {"colimit": "materialized", "rep": c.rep, "stage": c.stage}
        if isinstance(c, NotFinitelyGenerated):
            return EXIT_OK, {"colimit": "not-finitely-generated", "certificate": c.certificate,
                             "detail": {k: [list(x) if isinstance(x, tuple) else x for x in v]
                                        if isinstance(v, list) else v for k, v in c.detail.items()}}
        return EXIT_OK, {"colimit": "bounded", "reason": c.reason, "bound": {"stage_bound": c.bound}}
    if ns.action == "hom":
        S = load_rep(ns.rep, cfg.ring)
        h = hom_from_fp(S, T, cfg.stage_bound)
        return EXIT_OK, {"stabilized": h.stabilized, "stage": h.stage, "module": h.module,
                         "classes": [{"stage": c.stage, "map": c.map} for c in h.classes], "note": h.note,
                         "bound": {"stage_bound": cfg.stage_bound}}
    if ns.action == "flat":
        if T.spec.ring.kind != "Z":
            raise InvalidSpec("flatness test needs the integers as base ring")
        return EXIT_OK, {"decision": flat_test(T, cfg.stage_bound)}
    raise UsageError("telescope needs an action")


def _functor(path, cfg):
    from exactcat.lex import FpFunctor, yoneda
    if path.endswith(".map"):
        return FpFunctor(load_map(path, cfg.ring))
    return yoneda(load_rep(path, cfg.ring))


def cmd_lex(ns, cfg):
    from exactcat.lex import exact_in_K, fpfun_hom
    if ns.action == "hom":
        H = fpfun_hom(_functor(ns.first, cfg), _functor(ns.second, cfg))
        return EXIT_OK, {"module": H.module, "basis": [{"a0": m.a0, "a1": m.a1} for m in H.basis]}
    if ns.action == "exact-in-k":
        s = _structure(ns.structure, cfg)
        seq = load_seq(ns.sequence, cfg.ring)
        return EXIT_OK, {"decision": exact_in_K(s, seq)}
    raise UsageError("lex needs an action")


def _rep_or_tel(path, cfg):
    return load_telescope(path, cfg.ring) if path.endswith(".tel") else load_rep(path, cfg.ring)


def cmd_cotorsion(ns, cfg):
    from exactcat.homlab import check_eklof, check_hereditary, orthogonal_test
    if ns.action == "perp":
        X = _rep_or_tel(ns.object, cfg)
        A = [_rep_or_tel(p, cfg) for p in ns.against]
        r = orthogonal_test(ns.side, A, X, cfg.stage_bound)
        return EXIT_OK, {"perp1": r["perp1"], "perp_ge1": r["perp_ge1"],
                         "pairs": [{"against": a, "ext1": row[1], "ext2": row[2]} for a, row in r["pairs"]]}
    if ns.action == "eklof":
        U = [load_rep(p, cfg.ring) for p in ns.U]
        B = [load_rep(p, cfg.ring) for p in ns.B]
        r = check_eklof(U, B, cfg.length_bound)
        return EXIT_OK, {"precondition": r.precondition, "checked": r.checked,
                         "counterexamples": r.counterexamples, "passed": r.passed,
                         "bound": {"length_bound": cfg.length_bound}}
    if ns.action == "hereditary":
        A = [load_rep(p, cfg.ring) for p in ns.A]
        B = [load_rep(p, cfg.ring) for p in ns.B]
        r = check_hereditary(A, B)
        return EXIT_OK, {"precondition": r.precondition, "kernels_closed": r.kernels_closed,
                         "cokernels_closed": r.cokernels_closed, "ext2_vanishes": r.ext2_vanishes,
                         "agree": r.agree, "checked": r.details["checked"]}
    raise UsageError("cotorsion needs an action")


def cmd_periodicity(ns, cfg):
    from exactcat.homlab import verify_periodicity
    inst = load_instance(ns.instance, cfg.ring)
    return EXIT_OK, {"report": verify_periodicity(inst).as_dict()}


def run_corpus(directory, cfg):
    from exactcat.homlab import ambient_structure, verify_periodicity
    from exactcat.lex import exact_in_K
    from exactcat.structures import is_admissible
    from exactcat.rep import ShortSeq

    files = sorted(f for f in os.listdir(directory) if f.endswith(".inst"))

    def one(name):
        inst = load_instance(os.path.join(directory, name), cfg.ring)
        rep_ = verify_periodicity(inst).as_dict()
        s = inst.structure or ambient_structure(inst.seq.left.spec)
        # telescope sequences are compared level by level
        levels = [inst.seq] if isinstance(inst.seq, ShortSeq) else \
            [inst.seq.level(j) for j in range(inst.seq.m + 1)]
        pairs = [(exact_in_K(s, q).verdict, is_admissible(s, q).verdict) for q in levels]
        rep_["exact_in_K"] = [k for k, _ in pairs]
        rep_["admissible"] = [a for _, a in pairs]
        rep_["exact_in_K_agrees"] = all(k == a for k, a in pairs)
        return rep_

    threads = max(1, int(os.environ.get("EXACTCAT_THREADS", "1") or 1))
    if threads > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, files))
    else:
        results = [one(f) for f in files]
    return results


def cmd_corpus(ns, cfg):
    directory = ns.directory or default_corpus_dir()
    if not os.path.isdir(directory):
        raise ParseError(directory, 0, "not a directory")
    results = run_corpus(directory, cfg)
    ok = all(r["verdict"] is True and r.get("exact_in_K_agrees", True) for r in results)
    return EXIT_OK, {"directory": os.path.basename(os.path.normpath(directory)), "instances": results,
                     "all_witnessed": ok}


HANDLERS = {"validate": cmd_validate, "hom": cmd_hom, "rep-check": cmd_rep_check, "exact": cmd_exact,
            "purity": cmd_purity, "telescope": cmd_telescope, "lex": cmd_lex, "cotorsion": cmd_cotorsion,
            "periodicity": cmd_periodicity, "corpus": cmd_corpus}

INPUT_ERRORS = (ParseError, InvalidSpec, OutsideSubcat, RepError, OSError)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None or (ns.command in ("exact", "telescope", "lex", "cotorsion", "periodicity",
                                                 "corpus") and getattr(ns, "action", None) is None):
            raise UsageError(parser.format_usage() + "exactcat: error: missing command")
        cfg = _config(ns)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"exactcat: error: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        status, payload = HANDLERS[ns.command](ns, cfg)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"exactcat: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug in the engine
        print(f"exactcat: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_BUG
    payload = dict(payload)
    payload.setdefault("command", " ".join(x for x in (ns.command, getattr(ns, "action", None)) if x))
    payload["config"] = cfg.as_dict()
    print(report.dumps(payload, cfg.json_indent), file=stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
