"""Command-line front end.

Commands: h1, h1loc, criteria, counterexample, gsp4, decompose.

Group files are line oriented: a header `p=<int> n=<int> rank=<int>`
(optionally followed by the word `symplectic`), then one `gen:` line per
generator followed by `rank` lines of `rank` space-separated integers.
Lines starting with `#` are comments.

Exit codes: 0 success/certified, 1 mathematically interesting negative
(nonvanishing group, criterion not applicable), 2 input error, 3 cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import counterexample as cex
from .cohomology import h1, h1_loc
from .criteria import (fixed_point_free_criterion, similitude_criterion,
                       sylow_normalizer_criterion)
from .errors import CapExceededError, InputError
from .groups import MatGroup, decompose_generators
from .ringmat import Mat, ModuleSpec
from .symplectic import (eigenvalue_pairing_sweep, gsp4_generators,
                         gsp4_order)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


@dataclass
class GroupDescription:
    p: int
    n: int
    rank: int
    generators: list      # lists of row lists, reduced mod p^n
    symplectic: bool = False

    @property
    def spec(self) -> ModuleSpec:
        return ModuleSpec(self.p, self.n, self.rank)

    def group(self, cap=None) -> MatGroup:
        kw = {"cap": cap} if cap else {}
        return MatGroup.close([Mat.from_rows(g, self.spec.modulus)
                               for g in self.generators], self.spec, **kw)

    def serialize(self) -> str:
        head = f"p={self.p} n={self.n} rank={self.rank}"
        if self.symplectic:
            head += " symplectic"
        out = [head]
        for g in self.generators:
            out.append("gen:")
            for row in g:
                out.append(" ".join(str(x) for x in row))
        return "\n".join(out) + "\n"


def parse_group(text: str) -> GroupDescription:
    """Parse the documented group format; raises InputError with the line
    number on malformed input."""
    lines = text.splitlines()
    idx = 0

    def next_content():
        nonlocal idx
        while idx < len(lines):
            stripped = lines[idx].strip()
            idx += 1
            if stripped and not stripped.startswith("#"):
                return stripped, idx
        return None, idx

    header, lineno = next_content()
    if header is None:
        raise InputError("empty input: missing header line")
    fields = {}
    symplectic = False
    for token in header.split():
        if token == "symplectic":
            symplectic = True
            continue
        if "=" not in token:
            raise InputError(f"line {lineno}: malformed header token {token!r}")
        k, _, v = token.partition("=")
        try:
            fields[k] = int(v)
        except ValueError:
            raise InputError(f"line {lineno}: malformed header value {v!r}") \
                from None
    if sorted(fields) != ["n", "p", "rank"]:
        raise InputError(f"line {lineno}: malformed header, need p= n= rank=")
    try:
        spec = ModuleSpec(fields["p"], fields["n"], fields["rank"])
    except InputError as err:
        raise InputError(f"line {lineno}: {err}") from None
    q = spec.modulus
    gens = []
    while True:
        tag, lineno = next_content()
        if tag is None:
            break
        if tag != "gen:":
            raise InputError(f"line {lineno}: expected 'gen:' or end of file, "
                             f"got {tag!r}")
        rows = []
        for _ in range(spec.rank):
            row, lineno = next_content()
            if row is None:
                raise InputError(f"line {lineno}: generator {len(gens) + 1} "
                                 f"truncated (non-square matrix)")
            try:
                vals = [int(tok) % q for tok in row.split()]
            except ValueError:
                raise InputError(f"line {lineno}: non-integer matrix entry") \
                    from None
            if len(vals) != spec.rank:
                raise InputError(f"line {lineno}: generator "
                                 f"{len(gens) + 1} row has {len(vals)} "
                                 f"entries, expected {spec.rank} "
                                 f"(non-square matrix)")
            rows.append(vals)
        mat = Mat.from_rows(rows, q)
        if not mat.is_invertible():
            raise InputError(f"generator {len(gens) + 1} not invertible")
        gens.append(rows)
    return GroupDescription(spec.p, spec.n, spec.rank, gens, symplectic)


def _structure_json(cohom):
    return {
        "invariant_factors": list(cohom.structure.invariant_factors),
        "order": cohom.order,
        "trivial": cohom.is_trivial,
        "representatives_on_generators": [
            [list(Z.values[g.key()]) for g in Z.group.generators]
            for Z in cohom.representatives
        ],
    }


def _report_json(rep):
    return {
        "criterion": rep.criterion,
        "items": [{"name": i.name, "status": i.status, "detail": i.detail}
                  for i in rep.items],
        "conclusion": rep.conclusion,
        "direct_h1_loc": list(rep.cross_check) if rep.cross_check is not None
        else None,
    }


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _read_description(args) -> GroupDescription:
    with open(args.input, "r", encoding="utf-8") as fh:
        return parse_group(fh.read())


def _rep_lines(res):
    out = []
    for f, Z in zip(res.structure.invariant_factors, res.representatives):
        vals = ", ".join(f"{g.entries} -> {Z.values[g.key()]}"
                         for g in Z.group.generators)
        out.append(f"  order-{f} class, cocycle on generators: {vals}")
    return out


def _cmd_h1(args) -> int:
    desc = _read_description(args)
    G = desc.group(cap=args.cap)
    res = h1(G)
    _emit({"command": "h1", "group_order": G.order, "p": desc.p, "n": desc.n,
           "rank": desc.rank, "h1": _structure_json(res)},
          args.json,
          [f"group of order {G.order}", f"H1 = {res.describe()}"]
          + _rep_lines(res))
    return EXIT_OK if res.is_trivial else EXIT_NEGATIVE


def _cmd_h1loc(args) -> int:
    desc = _read_description(args)
    G = desc.group(cap=args.cap)
    res = h1_loc(G)
    _emit({"command": "h1loc", "group_order": G.order, "p": desc.p,
           "n": desc.n, "rank": desc.rank, "h1_loc": _structure_json(res)},
          args.json,
          [f"group of order {G.order}", f"H1_loc = {res.describe()}"]
          + _rep_lines(res))
    return EXIT_OK if res.is_trivial else EXIT_NEGATIVE


def _cmd_criteria(args) -> int:
    desc = _read_description(args)
    G = desc.group(cap=args.cap)
    reports = [sylow_normalizer_criterion(G)]
    if desc.n == 1:
        reports.append(fixed_point_free_criterion(G))
    else:
        reports.append(fixed_point_free_criterion(G.reduce_mod(1), G))
    if desc.symplectic:
        target = G if desc.n == 1 else G.reduce_mod(1)
        reports.append(similitude_criterion(target))
    lines = []
    for rep in reports:
        lines.extend(rep.lines())
        lines.append("")
    _emit({"command": "criteria", "group_order": G.order,
           "reports": [_report_json(r) for r in reports]},
          args.json, lines)
    return EXIT_OK if any(r.certified for r in reports) else EXIT_NEGATIVE


def _cmd_counterexample(args) -> int:
    inst = cex.build(args.p)
    rep = cex.verify(inst)
    payload = {
        "command": "counterexample",
        "p": args.p,
        "group_order": inst.G2.order,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in rep.checks],
        "h1_loc": list(rep.h1_loc_factors),
        "witness_h11": list(rep.witness_11),
        "witness_h21": list(rep.witness_21),
        "all_passed": rep.all_passed,
    }
    lines = rep.lines()
    if rep.all_passed and rep.h1_loc_factors:
        lines.append("H1_loc nontrivial: local-global divisibility fails "
                     "for this action")
    _emit(payload, args.json, lines)
    if not rep.all_passed:
        return EXIT_INPUT
    return EXIT_NEGATIVE if rep.h1_loc_factors else EXIT_OK


def _cmd_gsp4(args) -> int:
    order = gsp4_order(args.p)
    payload = {"command": "gsp4", "p": args.p, "order_formula": order}
    lines = [f"|GSp4(F_{args.p})| = {order}"]
    if args.enumerate:
        gens, _space = gsp4_generators(args.p)
        spec = ModuleSpec(args.p, 1, 4)
        G = MatGroup.close(gens, spec, cap=args.cap or 200_000)
        failures = eigenvalue_pairing_sweep(G.element_array(), args.p)
        payload.update({"order_enumerated": G.order,
                        "pairing_failures": failures,
                        "match": G.order == order})
        lines.append(f"enumerated order: {G.order} "
                     f"({'match' if G.order == order else 'MISMATCH'})")
        lines.append(f"eigenvalue pairing failures: {failures}")
        if G.order != order or failures:
            _emit(payload, args.json, lines)
            return EXIT_NEGATIVE
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    desc = _read_description(args)
    if not desc.generators:
        raise InputError("decompose needs at least one generator (the twist)")
    q = desc.spec.modulus
    g = Mat.from_rows(desc.generators[0], q)
    H = MatGroup.close([Mat.from_rows(rows, q)
                        for rows in desc.generators[1:]], desc.spec,
                       cap=args.cap or 200_000)
    dec = decompose_generators(g, H)
    payload = {
        "command": "decompose",
        "pairs": [{"h": [list(r) for r in h.entries], "exponent": lam}
                  for h, lam in dec.pairs],
    }
    lines = [f"{len(dec.pairs)} generator(s) with g h g^-1 = h^exponent:"]
    for h, lam in dec.pairs:
        lines.append(f"  exponent {lam}: {h.entries}")
    _emit(payload, args.json, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="h1loc",
        description="first local cohomology of finite matrix groups "
                    "over Z/p^n")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", help="group description file")
        sp.add_argument("--json", action="store_true",
                        help="machine-readable output")
        sp.add_argument("--cap", type=int, default=None,
                        help="element cap for closures")

    sp = sub.add_parser("h1", help="H^1 of the group acting on (Z/p^n)^rank")
    add_common(sp)
    sp.set_defaults(fn=_cmd_h1)
    sp = sub.add_parser("h1loc", help="first local cohomology group")
    add_common(sp)
    sp.set_defaults(fn=_cmd_h1loc)
    sp = sub.add_parser("criteria", help="run the vanishing criteria")
    add_common(sp)
    sp.set_defaults(fn=_cmd_criteria)
    sp = sub.add_parser("counterexample",
                        help="build and verify the nonvanishing family")
    sp.add_argument("--p", type=int, required=True,
                    help="prime = 2 mod 3, at least 5")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_counterexample)
    sp = sub.add_parser("gsp4", help="symplectic similitude group checks")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--enumerate", action="store_true",
                    help="close the group from generators and sweep the "
                         "eigenvalue pairing")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--cap", type=int, default=None)
    sp.set_defaults(fn=_cmd_gsp4)
    sp = sub.add_parser("decompose",
                        help="decompose: first generator is the twist g, "
                             "the rest generate the p-group H")
    add_common(sp)
    sp.set_defaults(fn=_cmd_decompose)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CapExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
