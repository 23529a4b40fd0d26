"""Command-line front end.

Exit codes: 0 on success, 2 when a library precondition fails (the error
object names the failing check), 1 on anything unexpected or a failed suite.
"""

import argparse
import json
import os
import sys

from . import coherent, cover, descent, finring, structure, suite
from .errors import ChainLabError, MalformedSpec
from .fpalg import Family

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION = 0, 1, 2


def _ring(args):
    return finring.build(args.ring, max_elements=args.max_elements)


def _family(ref):
    """A family by name, or from a JSON file path."""
    if os.path.exists(ref):
        with open(ref) as f:
            try:
                return Family.from_json(json.load(f))
            except (KeyError, TypeError, ValueError) as e:
                raise MalformedSpec(f"bad family file {ref}: {e}") from None
    return cover.named_family(ref)


def _sentences(args):
    if args.builtin:
        return coherent.builtin(args.builtin)
    if not args.sentence:
        raise MalformedSpec("give a sentence or --builtin NAME")
    return (coherent.parse(args.sentence),)


def _mark(b):
    return "✓" if b else "✗"


# handlers return (result_json, human_lines)

def cmd_ring_info(args):
    R = _ring(args)
    preds = finring.basic_predicates(R).to_json()
    res = {"spec": R.spec, "size": R.size, "char": R.char,
           "predicates": preds, "labels": list(R.labels)}
    lines = [f"{R.spec}: {R.size} elements, characteristic {R.char}"]
    lines += [f"  {k:<8} {_mark(v)}" for k, v in preds.items()]
    return res, lines


def cmd_ring_ideals(args):
    R = _ring(args)
    ideals = finring.all_ideals(R)
    rows = [{"elements": sorted(I), "labels": [R.labels[a] for a in sorted(I)],
             "prime": finring.is_prime_ideal(R, I)} for I in ideals]
    lines = [f"{R.spec}: {len(ideals)} ideals"]
    lines += ["  {" + ", ".join(r["labels"]) + "}" + ("  prime" if r["prime"] else "")
              for r in rows]
    return {"spec": R.spec, "ideals": rows}, lines


def cmd_sentence_eval(args):
    R = _ring(args)
    phis = _sentences(args)
    h = coherent.holds(phis, R)
    res = {"sentences": [p.render() for p in phis], **h.to_json(R)}
    line = f"{'holds' if h.holds else 'fails'} on {R.spec}"
    if not h.holds:
        line += f"; counterexample {[R.labels[a] for a in h.counterexample]}"
    return res, [line]


def cmd_sentence_compile(args):
    if args.family:
        phi = coherent.family_to_sentence(_family(args.family))
        return {"sentence": phi.render()}, [phi.render()]
    fams = [coherent.sentence_to_family(p) for p in _sentences(args)]
    res = {"families": [U.to_json() for U in fams]}
    lines = []
    for U in fams:
        lines.append(f"base {U.base.render()}")
        lines += [f"  {M.render()}" for M in U.members]
    return res, lines


def cmd_family_check(args):
    R = _ring(args)
    U = _family(args.family)
    rep = cover.covers(U, R)
    lines = [f"{U.name or args.family} {'covers' if rep.covers else 'does not cover'} {R.spec}"]
    if rep.failing_point is not None:
        lines.append(f"  failing point {[R.labels[a] for a in rep.failing_point]}")
    lines += [f"  warning: {w}" for w in rep.warnings]
    return rep.to_json(R, lifts=args.lifts), lines


def cmd_family_compare(args):
    if len(args.family) != 2:
        raise MalformedSpec("family compare needs exactly two --family options")
    U, V = (_family(f) for f in args.family)
    if args.ring:
        rings = [finring.build(s, max_elements=args.max_elements) for s in args.ring]
    else:
        rings = [r.ring for r in suite.load_suite()]
    rep = cover.covering_equivalent_on(U, V, rings)
    lines = [f"{spec:<40} {_mark(a)} {_mark(b)}" for spec, a, b in rep.rows]
    return rep.to_json(), lines + [rep.verdict]


def cmd_descent_blowup(args):
    R = _ring(args)
    rep = descent.descent_report(R)
    lines = [f"{R.spec}: |P1| = {rep.sizes['B']}, |Bl| = {rep.sizes['Y']}, |A2| = {rep.sizes['X']}",
             f"  surjective {_mark(rep.surjective)}",
             f"  complement injective {_mark(rep.complement_injective)}",
             f"  cocartesian {_mark(rep.cocartesian)}"]
    if rep.collision:
        base, l1, l2 = rep.collision
        lines.append(f"  collision over {[R.labels[a] for a in base]}: "
                     f"{l1.labels(R)} and {l2.labels(R)}")
    return rep.to_json(R), lines


def cmd_classify(args):
    R = _ring(args)
    c = structure.classify_chain(R)
    res = c.to_json(R)
    return res, [f"{R.spec}: {c.case} (p = {c.residue_characteristic}, n = {c.nilpotency_index}, "
                 f"q = {c.residue_size}, char {c.characteristic}, "
                 f"uniformizer {R.labels[c.uniformizer]})"]


def cmd_perfection_colim(args):
    R = _ring(args)
    P = structure.perfection_colim(R)
    res = {"spec": P.spec, "size": P.size, "labels": list(P.labels),
           "reduced": finring.is_reduced(P)}
    return res, [f"{P.spec}: {P.size} elements {{{', '.join(P.labels)}}}"]


def cmd_tilt_check(args):
    R = _ring(args)
    l55 = structure.lemma55_check(R)
    tilt = structure.tilt_domain_check(R, args.depth)
    res = {"lemma55": l55.to_json(), "tilt": tilt.to_json(), "depth": args.depth}
    return res, [f"lemma55 {_mark(l55.ok)}", f"tilt (depth {args.depth}) {_mark(tilt.ok)}"]


def cmd_tilt_divide(args):
    R = _ring(args)
    a = structure.FrobChain(R, args.depth, R.element(args.a))
    b = structure.FrobChain(R, args.depth, R.element(args.b))
    d = structure.chain_divide(a, b)
    q = d.quotient.coords()
    res = {"a": list(a.coords()), "b": list(b.coords()), "raw": list(d.raw),
           "quotient": list(q), "quotient_labels": [R.labels[x] for x in q]}
    return res, [f"c' = ({', '.join(R.labels[x] for x in q)})"]


def cmd_suite_run(args):
    results = suite.run_suite(args.criterion)
    lines = [f"criterion {r.number}: {'PASS' if r.passed else 'FAIL'}  {r.title}  ({t:.2f}s)"
             + "".join(f"\n    {m}" for m in r.failures) for r, t in results]
    return suite.suite_json(results), lines


def _globals():
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="emit a JSON envelope")
    g.add_argument("--max-elements", type=int, default=argparse.SUPPRESS,
                   help="ring size cap (default 4096)")
    g.add_argument("--depth", type=int, default=argparse.SUPPRESS,
                   help="Frobenius chain depth (default 3)")
    return g


def build_parser():
    g = _globals()
    # a separate copy: set_defaults below rewrites the shared action objects
    p = argparse.ArgumentParser(prog="chainlab", parents=[_globals()],
                                description="Finite chain ring laboratory")
    p.set_defaults(json=False, max_elements=finring.DEFAULT_MAX_ELEMENTS, depth=3)
    top = p.add_subparsers(dest="verb", required=True)

    def group(name, help):
        sp = top.add_parser(name, help=help)
        return sp.add_subparsers(dest="action", required=True)

    def leaf(parent, name, fn, help):
        sp = parent.add_parser(name, parents=[g], help=help)
        sp.set_defaults(fn=fn)
        return sp

    ring = group("ring", "ring tables")
    leaf(ring, "info", cmd_ring_info, "size and predicates").add_argument("ring")
    leaf(ring, "ideals", cmd_ring_ideals, "all ideals").add_argument("ring")

    sent = group("sentence", "coherent sentences")
    sp = leaf(sent, "eval", cmd_sentence_eval, "decide a sentence on a ring")
    sp.add_argument("sentence", nargs="?")
    sp.add_argument("--builtin")
    sp.add_argument("--ring", required=True)
    sp = leaf(sent, "compile", cmd_sentence_compile, "sentence <-> family")
    sp.add_argument("sentence", nargs="?")
    sp.add_argument("--builtin")
    sp.add_argument("--family", help="compile this family to a sentence instead")

    fam = group("family", "covering families")
    sp = leaf(fam, "check", cmd_family_check, "does the family cover a ring")
    sp.add_argument("--family", required=True, help="name or JSON file")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--lifts", action="store_true", help="list one lift per base point")
    sp = leaf(fam, "compare", cmd_family_compare, "compare two families ring by ring")
    sp.add_argument("--family", action="append", default=[])
    sp.add_argument("--ring", action="append", help="defaults to the pinned suite")

    desc = group("descent", "blowup square")
    leaf(desc, "blowup", cmd_descent_blowup, "descent report").add_argument("--ring", required=True)

    sp = top.add_parser("classify", parents=[g], help="classify a chain ring")
    sp.add_argument("--ring", required=True)
    sp.set_defaults(fn=cmd_classify)

    perf = group("perfection", "Frobenius perfections")
    leaf(perf, "colim", cmd_perfection_colim, "colimit perfection").add_argument(
        "--ring", required=True)

    tilt = group("tilt", "Frobenius chains")
    leaf(tilt, "check", cmd_tilt_check, "exhaustive checks").add_argument("--ring", required=True)
    sp = leaf(tilt, "divide", cmd_tilt_divide, "divide two Frobenius chains")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--a", required=True, help="deepest coordinate of a")
    sp.add_argument("--b", required=True, help="deepest coordinate of b")

    st = group("suite", "acceptance suite")
    sp = leaf(st, "run", cmd_suite_run, "run the acceptance criteria")
    sp.add_argument("--criterion", type=int, action="append", choices=sorted(suite.CRITERIA))
    return p


def _inputs(args):
    skip = {"fn", "json", "verb", "action"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(x for x in (args.verb, getattr(args, "action", None)) if x)
    env = {"command": command, "inputs": _inputs(args)}
    try:
        result, lines = args.fn(args)
        code = EXIT_OK
        if args.verb == "suite" and not result["passed"]:
            code = EXIT_INTERNAL
        env["result"] = result
    except ChainLabError as e:
        env["error"] = e.to_json()
        code, lines = EXIT_PRECONDITION, [f"error: {e.code}: {e}"]
    except Exception as e:  # noqa: BLE001
        env["error"] = {"code": "InternalError", "message": f"{type(e).__name__}: {e}"}
        code, lines = EXIT_INTERNAL, [f"internal error: {type(e).__name__}: {e}"]
    if args.json:
        out.write(suite.dumps(env) + "\n")
    else:
        stream = out if code == EXIT_OK or args.verb == "suite" else sys.stderr
        stream.write("\n".join(lines) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
