"""Command-line front end.

Exit codes: 0 feasible / holds, 1 infeasible / a proved statement fails,
2 unknown (budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from . import labeling as lab
from . import orthomorphism as orth
from . import skolem, zspp
from .groups import Group, InvalidGroupError, enumerate_abelian_groups, sum_all_elements, sylow2_decomposition
from .solver import (
    DEFAULT_BUDGET,
    RealizationInstance,
    Status,
    certificate,
    domain_from_name,
    heuristic_realize,
    necessary_conditions,
    realize_partition,
)

EXIT = {Status.FEASIBLE: 0, Status.INFEASIBLE: 1, Status.INFEASIBLE_NECESSARY: 1, Status.UNKNOWN: 2}


def _group(moduli: Sequence[str]) -> Group:
    from .groups import make_group

    return make_group([int(m) for m in moduli])


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _elements(text: str) -> list:
    """'1,6' for cyclic groups; '0:1,1:3' for coordinates."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(tuple(int(c) for c in tok.split(":")) if ":" in tok else int(tok))
    return out


class Emitter:
    def __init__(self, args):
        self.fmt = args.format
        self.out = open(args.out, "w") if args.out else sys.stdout
        self.seed = args.seed

    def json(self, obj: dict) -> None:
        obj = dict(obj, seed=self.seed)
        self.out.write(json.dumps(obj, sort_keys=True) + "\n")

    def text(self, line: str) -> None:
        self.out.write(line + "\n")

    def emit(self, obj: dict, lines: Sequence[str]) -> None:
        if self.fmt == "json":
            self.json(obj)
        else:
            for line in lines:
                self.text(line)

    def close(self):
        if self.out is not sys.stdout:
            self.out.close()


# ------------------------------------------------------------------ group


def cmd_group(args, em: Emitter) -> int:
    G = _group(args.moduli)
    split = sylow2_decomposition(G)
    total = sum_all_elements(G)
    info = {
        "group": G.to_json(),
        "order": G.order,
        "involutions": sorted(e.to_json() for e in G.involutions),
        "involution_count": G.involution_count,
        "sylow2": split.sylow2.to_json(),
        "odd_part": split.odd.to_json(),
        "sum_of_elements": total.to_json(),
    }
    em.emit(info, [
        f"group        {G}",
        f"order        {G.order}",
        f"|I|          {G.involution_count}  {sorted(G.involutions)}",
        f"sylow-2 x odd  {split.sylow2} x {split.odd}",
        f"sum          {total!r}",
    ])
    return 0


# ------------------------------------------------------------------ partition


def cmd_partition(args, em: Emitter) -> int:
    G = _group(args.moduli)
    domain = domain_from_name(G, args.domain)
    sizes = _ints(args.sizes)
    targets = _elements(args.targets) if args.targets else None
    inst = RealizationInstance.build(G, domain, sizes, targets)
    pre = necessary_conditions(inst)
    if pre.status is Status.INFEASIBLE_NECESSARY:
        v = pre
    elif args.heuristic:
        v = heuristic_realize(inst, seed=args.seed)
    else:
        v = realize_partition(inst, args.budget)
    cert = certificate(inst, v)
    lines = [f"{G}  sizes {sizes}  -> {v.status.value} ({v.reason})"]
    if v.witness:
        lines += ["  " + "{" + ", ".join(map(repr, p)) + "}" for p in v.witness.parts]
    em.emit(cert, lines)
    return EXIT[v.status]


# ------------------------------------------------------------------ skolem


def cmd_skolem(args, em: Emitter) -> int:
    if args.what == "sequence":
        seq = skolem.find_skolem_sequence(args.n)
        em.emit({"n": args.n, "sequence": seq, "status": "feasible" if seq else "infeasible"},
                [f"n={args.n}: " + ("".join(map(str, seq)) if seq and args.n < 10 else str(seq))])
        return 0 if seq else 1
    if args.what == "partition":
        G = _group(args.moduli)
        v = skolem.skolem_partition(G, args.domain, args.budget)
        obj = {"group": G.to_json(), "domain": args.domain, "status": v.status.value,
               "partition": v.partition.to_json() if v.partition else None}
        lines = [f"{G} domain={args.domain}: {v.status.value}"]
        if v.partition:
            lines += [f"  C({c.c!r},{c.d!r}) = {list(c.members)}" for c in v.partition.six_parts]
            lines += [f"  pair {list(p)}" for p in v.partition.two_parts]
        em.emit(obj, lines)
        return EXIT[v.status]
    # characterize
    rows = skolem.characterize_R_skolem(args.max_order, args.budget)
    for r in rows:
        em.emit({"group": r.group.to_json(), "involutions": r.involutions, "r_size": r.r_size,
                 "status": r.status.value, "known_positive_family": r.known_positive},
                [f"{str(r.group):16} |I|={r.involutions:<3} |R|={r.r_size:<3} {r.status.value}"
                 + ("  (known family)" if r.known_positive else "")])
    return 0


# ------------------------------------------------------------------ verify


def _row_line(v: zspp.PropertyVerdict) -> str:
    flag = ""
    if v.matches_expected is False:
        flag = "  MISMATCH"
    cx = f"  counterexample {list(v.counterexample)}" if v.counterexample else ""
    return f"{str(v.group):16} |I|={v.group.involution_count:<3} {v.property:26} {v.status:8}{cx}{flag}"


def _groups(lo: int, hi: int, pred=lambda G: True) -> list[Group]:
    return [G for n in range(lo, hi + 1) for G in enumerate_abelian_groups(n) if G.moduli and pred(G)]


def cmd_verify(args, em: Emitter) -> int:
    failed_theorem = False
    hi = args.max_order
    ran = False

    def emit_rows(rows, theorem: bool):
        nonlocal failed_theorem
        for r in rows:
            em.emit(r.to_json(), [_row_line(r)])
            if theorem and r.matches_expected is False:
                failed_theorem = True

    if args.zeng:
        ran = True
        emit_rows(zspp.check_zeng(hi, workers=args.workers, budget=args.budget), True)
    if args.sylow:
        ran = True
        rows = []
        for G in _groups(4, hi, lambda G: all(m == 2 for m in G.moduli) and len(G.moduli) > 1):
            v = zspp.has_x_zspp(G, 3, args.budget)
            v.property, v.expected = "elementary-2-group-3-ZSPP", True
            rows.append(v)
        emit_rows(rows, True)
    if args.four:
        ran = True
        emit_rows([zspp.check_4zspp(G, args.budget) for G in _groups(2, hi, lambda G: G.involution_count > 1)], True)
    if args.mixed:
        ran = True
        emit_rows([zspp.check_mixed_23(G, args.budget) for G in _groups(2, hi, lambda G: G.involution_count > 1)], True)
    if args.conj3:
        ran = True
        rows = [zspp.check_3zspp_conjecture(G, args.budget) for G in _groups(2, hi, lambda G: G.involution_count > 1)]
        for r in rows:
            em.emit(r.to_json(), [_row_line(r) + ("  (conjecture: flagged)" if r.holds is False else "")])
            if r.expected and r.holds is False:
                failed_theorem = True
    if args.one_involution:
        ran = True
        for G in _groups(2, hi, lambda G: G.involution_count == 1):
            rep = zspp.check_one_involution(G, args.budget)
            for r in rep.rows():
                em.emit(r.to_json(), [_row_line(r)])
                if r.expected and r.holds is False:
                    failed_theorem = True
    if args.hall_paige:
        ran = True
        for G in _groups(2, hi):
            v = orth.complete_mapping_search(G, args.budget)
            expected = G.involution_count != 1
            bad = v.exists is not None and v.exists != expected
            failed_theorem |= bad
            em.emit({"property": "complete-mapping", "group": G.to_json(), "exists": v.exists,
                     "expected": expected, "status": v.status.value},
                    [f"{str(G):16} |I|={G.involution_count:<3} complete mapping: {v.exists}"
                     + ("  MISMATCH" if bad else "")])
    if args.skolem_R:
        ran = True
        orders = _ints(args.orders) if args.orders else [m for m in range(2, hi + 1, 2)]
        for m in orders:
            v = skolem.r_skolem_cyclic(m, args.budget)
            expected = {2: True, 8: True, 14: False, 20: False}.get(m % 24)
            bad = expected is not None and v.status is not Status.UNKNOWN and v.feasible != expected
            failed_theorem |= bad
            em.emit({"property": "skolem-R-cyclic", "group": [m], "status": v.status.value, "expected": expected},
                    [f"Z{m:<15} R Skolem partition: {'yes' if v.feasible else 'no' if v.status is Status.INFEASIBLE else '?'}"
                     + ("  MISMATCH" if bad else "")])
    if args.skolem_star:
        ran = True
        for G in _groups(3, hi, lambda G: G.order % 2 == 1):
            v = skolem.skolem_partition(G, "star", args.budget)
            bad = v.status is Status.INFEASIBLE
            failed_theorem |= bad
            em.emit({"property": "skolem-star", "group": G.to_json(), "status": v.status.value},
                    [f"{str(G):16} Skolem partition of nonzero elements: {v.status.value}"])
    if not ran:
        em.text("nothing selected; see --help")
        return 2
    return 1 if failed_theorem else 0


# ------------------------------------------------------------------ ortho


def cmd_ortho(args, em: Emitter) -> int:
    G = _group(args.moduli)
    if args.construct:
        try:
            cert = orth.construct_from_triples(G, budget=args.budget)
        except orth.ConstructionUnavailable as e:
            em.emit({"group": G.to_json(), "status": "unavailable", "reason": str(e)}, [f"unavailable: {e}"])
            return 1
        obj = cert.to_json()
        obj["hypotheses"] = orth.construction_hypotheses(G)
        em.emit(obj, [
            f"{G}: orthomorphism from zero-sum triples",
            f"  theta cycle type {orth.cycle_type_str(cert.theta_cycles)}",
            f"  phi cycle type   {orth.cycle_type_str(cert.phi_cycles)}",
            f"  hypotheses satisfied: {obj['hypotheses']['satisfied']} (|G| mod 24 = {G.order % 24})",
        ])
        return 0
    if args.complete_mapping:
        v = orth.complete_mapping_search(G, args.budget)
    else:
        if args.k is None:
            em.text("give --construct, --complete-mapping or --k")
            return 2
        v = orth.search_k_cycle_orthomorphism(G, args.k, args.which, args.budget)
    obj = {"group": G.to_json(), "status": v.status.value, "certificate": v.certificate.to_json() if v.certificate else None}
    lines = [f"{G}: {v.status.value}"]
    if v.certificate:
        lines.append(f"  phi {orth.cycle_type_str(v.certificate.phi_cycles)}; theta {orth.cycle_type_str(v.certificate.theta_cycles)}")
    em.emit(obj, lines)
    return EXIT[v.status]


# ------------------------------------------------------------------ label


def _load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def cmd_label(args, em: Emitter) -> int:
    task = args.task
    if task == "sg":
        g = lab.Graph.from_json(_load(args.graph))
        try:
            s = lab.group_irregularity_strength(g, args.k_max, args.budget)
        except lab.NotCovered as e:
            em.emit({"graph": g.to_json(), "status": "not-covered", "reason": str(e)}, [f"not covered: {e}"])
            return 2
        except lab.BudgetExhausted:
            em.emit({"graph": g.to_json(), "status": "unknown"}, ["unknown (budget)"])
            return 2
        predicted = lab.predicted_sg(g) if g.is_connected() else None
        em.emit({"graph": g.to_json(), "s_g": s, "predicted": predicted},
                [f"s_g = {s}" + (f"  (formula: {predicted})" if predicted is not None else "")])
        return 0 if s is not None else 1
    G = _group(args.moduli)
    if task == "distance-magic":
        sizes = _ints(args.sizes)
        r = lab.distance_magic_multipartite(G, sizes, args.budget)
        obj = {"group": G.to_json(), "sizes": sizes, "status": r.status.value,
               "labels": [x.to_json() for x in r.labels] if r.labels else None,
               "magic_constant": r.magic_constant.to_json() if r.magic_constant else None}
        lines = [f"{G} K_{{{','.join(map(str, sizes))}}}: {r.status.value}"]
        if r.labels:
            lines += [f"  classes {[list(p) for p in r.parts]}", f"  mu = {r.magic_constant!r}"]
        em.emit(obj, lines)
        return EXIT[r.status]
    if task == "irregular":
        g = lab.Graph.from_json(_load(args.graph))
        v = lab.irregular_search(G, g, args.budget)
        obj = {"group": G.to_json(), "graph": g.to_json(), "status": v.status.value,
               "labels": {str(i): x.to_json() for i, x in enumerate(v.labels)} if v.labels else None}
        em.emit(obj, [f"{G}: {v.status.value} {v.labels if v.labels else v.reason}"])
        return EXIT[v.status]
    if task == "digraph":
        dg = lab.Digraph.from_json(_load(args.graph))
        try:
            labels = lab.digraph_realizable(G, dg, args.budget)
        except lab.BudgetExhausted:
            em.emit({"group": G.to_json(), "status": "unknown"}, ["unknown (budget)"])
            return 2
        obj = {"group": G.to_json(), "digraph": dg.to_json(), "status": "feasible" if labels else "infeasible",
               "labels": {str(i): x.to_json() for i, x in enumerate(labels)} if labels else None}
        em.emit(obj, [f"{G}: " + (f"labels {labels}, weights {lab.digraph_weights(G, dg, labels)}" if labels else "not realizable")])
        return 0 if labels else 1
    if task == "antimagic":
        if args.graph:
            data = _load(args.graph)
            tree = lab.RootedTree(lab.Graph.from_json(data), data.get("root", 0))
        else:
            tree = lab.random_k_tree(G.order, args.k, random.Random(args.seed))
        try:
            labels = lab.antimagic_label_ktree(G, tree, args.k, args.budget)
        except lab.ConstructionUnavailable as e:
            em.emit({"group": G.to_json(), "status": "unavailable", "reason": str(e)}, [f"construction unavailable: {e}"])
            return 1
        obj = {"group": G.to_json(), "tree": tree.graph.to_json(), "root": tree.root, "status": "feasible",
               "labels": {str(i): x.to_json() for i, x in enumerate(labels)}}
        em.emit(obj, [f"{G}: edges {list(tree.graph.edges)}", f"  labels {labels}",
                      f"  weights {lab.vertex_weights(G, tree.graph, labels)}"])
        return 0
    raise SystemExit(f"unknown label task {task}")


# ------------------------------------------------------------------ parser


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags with suppressed defaults so they do not
    # overwrite values given before the subcommand name
    gp = argparse.ArgumentParser(add_help=False)

    def d(value):
        return argparse.SUPPRESS if suppress else value

    gp.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="search-node budget")
    gp.add_argument("--seed", type=int, default=d(0))
    gp.add_argument("--workers", type=int, default=d(os.cpu_count() or 1))
    gp.add_argument("--format", choices=("json", "table"), default=d("table"))
    gp.add_argument("--out", default=d(None))
    return gp


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="zerosum", description=__doc__, parents=[_global_flags(suppress=False)])
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("group", parents=[common], help="order, involutions, Sylow split, element sum")
    g.add_argument("moduli", nargs="+")
    g.set_defaults(fn=cmd_group)

    pp = sub.add_parser("partition", parents=[common], help="realize sizes and sums on a domain")
    pp.add_argument("moduli", nargs="+")
    pp.add_argument("--domain", default="star", choices=("star", "all", "R"))
    pp.add_argument("--sizes", required=True)
    pp.add_argument("--targets", default=None, help="comma list; use a:b for coordinates")
    pp.add_argument("--heuristic", action="store_true")
    pp.set_defaults(fn=cmd_partition)

    sk = sub.add_parser("skolem", parents=[common], help="Skolem sequences and partitions")
    sks = sk.add_subparsers(dest="what", required=True)
    s1 = sks.add_parser("sequence", parents=[common])
    s1.add_argument("n", type=int)
    s2 = sks.add_parser("partition", parents=[common])
    s2.add_argument("moduli", nargs="+")
    s2.add_argument("--domain", default="star", choices=("star", "R"))
    s3 = sks.add_parser("characterize", parents=[common])
    s3.add_argument("--max-order", type=int, default=16)
    sk.set_defaults(fn=cmd_skolem)

    v = sub.add_parser("verify", parents=[common], help="run theorem checks")
    v.add_argument("--max-order", type=int, default=16)
    v.add_argument("--orders", default=None, help="explicit orders for --skolem-R")
    v.add_argument("--zeng", action="store_true", help="2-ZSPP iff |I| in {0,3}")
    v.add_argument("--sylow", action="store_true", help="(Z_2)^n has 3-ZSPP")
    v.add_argument("--4zspp", dest="four", action="store_true", help="4-ZSPP when |I| > 1")
    v.add_argument("--mixed", action="store_true", help="mixed 2/3 size characterization")
    v.add_argument("--conj3", action="store_true", help="3-ZSPP conjecture data")
    v.add_argument("--one-involution", action="store_true")
    v.add_argument("--hall-paige", action="store_true", help="complete mapping iff |I| != 1")
    v.add_argument("--skolem-R", action="store_true", help="Skolem partitions of R in cyclic groups")
    v.add_argument("--skolem-star", action="store_true", help="Skolem partitions of the nonzero elements, odd order")
    v.set_defaults(fn=cmd_verify)

    o = sub.add_parser("ortho", parents=[common], help="orthomorphisms")
    o.add_argument("moduli", nargs="+")
    o.add_argument("--construct", action="store_true")
    o.add_argument("--complete-mapping", action="store_true")
    o.add_argument("--k", type=int, default=None)
    o.add_argument("--which", choices=("phi", "theta"), default="phi")
    o.set_defaults(fn=cmd_ortho)

    lb = sub.add_parser("label", parents=[common], help="graph labelings")
    lb.add_argument("task", choices=("antimagic", "sg", "irregular", "digraph", "distance-magic"))
    lb.add_argument("moduli", nargs="*")
    lb.add_argument("--graph", default=None, help="JSON edge list file")
    lb.add_argument("--sizes", default=None)
    lb.add_argument("--k", type=int, default=2)
    lb.add_argument("--k-max", type=int, default=None)
    lb.set_defaults(fn=cmd_label)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget <= 0:
        parser.error("--budget must be positive")
    em = Emitter(args)
    try:
        return args.fn(args, em)
    except (InvalidGroupError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 64
    finally:
        em.close()


if __name__ == "__main__":
    sys.exit(main())
