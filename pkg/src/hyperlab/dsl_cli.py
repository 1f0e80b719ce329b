"""Line-oriented text format for rings, ideals, claims and suite settings, and the CLI.

::

    # the Z_8 example
    ring Z8p zx_mod n=8 X=1,2,3,4,5,6,7
    ideal Q in Z8p = {0,4}
    claim c1: Q is weakly (3,1)-prime
    suite seed=0 grid=4x4

Explicit rings use ``ring R table n=<int>`` followed by ``add i j = k`` and
``mul i j = {k,...}`` lines covering every pair.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import classify as cl
from . import theorems as th
from . import zx_symbolic as zx
from .constructs import IllDefinedOperation, make_fundamental_ring
from .kernel import (
    HyperRing,
    HyperRingError,
    Hyperideal,
    build_from_tables,
    build_template_zx_mod,
    enumerate_hyperideals,
    ideal_generate,
    is_hyperideal,
)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


@dataclass
class RingDecl:
    name: str
    kind: str  # "zx_mod" | "table"
    n: int
    X: tuple[int, ...] = ()
    add: dict[tuple[int, int], int] = field(default_factory=dict)
    mul: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    line: int = field(default=0, compare=False)


@dataclass
class IdealDecl:
    name: str
    ring: str
    mode: str  # "set" | "gen"
    elems: tuple[int, ...]
    line: int = field(default=0, compare=False)


PREDICATES = ("prime", "closed", "primary", "maximal", "C", "strongC")


@dataclass
class ClaimDecl:
    name: str
    ideal: str
    predicate: str
    weakly: bool = False
    alpha: int | None = None
    beta: int | None = None
    line: int = field(default=0, compare=False)

    def label(self) -> str:
        if self.alpha is None:
            return self.predicate
        w = "weakly " if self.weakly else ""
        return f"{w}({self.alpha},{self.beta})-{self.predicate}"


@dataclass
class SuiteDecl:
    seed: int
    grid: tuple[int, int]
    line: int = field(default=0, compare=False)


@dataclass
class Document:
    rings: dict[str, RingDecl] = field(default_factory=dict)
    ideals: dict[str, IdealDecl] = field(default_factory=dict)
    claims: list[ClaimDecl] = field(default_factory=list)
    suites: list[SuiteDecl] = field(default_factory=list)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return (
            list(self.rings.items()) == list(other.rings.items())
            and list(self.ideals.items()) == list(other.ideals.items())
            and self.claims == other.claims
            and self.suites == other.suites
        )


_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_SET = r"\{\s*(?P<set>[^}]*)\}"


def _ints(text: str, line: int, col: int) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for part in text.split(","):
        p = part.strip()
        if not re.fullmatch(r"-?\d+", p):
            raise ParseError(f"expected an integer, got {p!r}", line, col)
        out.append(int(p))
    return tuple(out)


_RING_ZX = re.compile(rf"ring\s+(?P<name>{_NAME})\s+zx_mod\s+n\s*=\s*(?P<n>\d+)\s+X\s*=\s*(?P<X>-?\d+(?:\s*,\s*-?\d+)*)\s*$")
_RING_TABLE = re.compile(rf"ring\s+(?P<name>{_NAME})\s+table\s+n\s*=\s*(?P<n>\d+)\s*$")
_ADD = re.compile(r"add\s+(?P<i>\d+)\s+(?P<j>\d+)\s*=\s*(?P<k>\d+)\s*$")
_MUL = re.compile(rf"mul\s+(?P<i>\d+)\s+(?P<j>\d+)\s*=\s*{_SET}\s*$")
_IDEAL = re.compile(rf"ideal\s+(?P<name>{_NAME})\s+in\s+(?P<ring>{_NAME})\s*(?P<mode>=|gen)\s*{_SET}\s*$")
_CLAIM = re.compile(
    rf"claim\s+(?P<name>{_NAME})\s*:\s*(?P<ideal>{_NAME})\s+is\s+"
    r"(?:(?P<weakly>weakly)\s+)?"
    r"(?:\(\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*\)\s*-\s*)?(?P<pred>[A-Za-z]+)\s*$"
)
_SUITE = re.compile(r"suite\s+seed\s*=\s*(?P<seed>-?\d+)\s+grid\s*=\s*(?P<a>\d+)\s*x\s*(?P<b>\d+)\s*$")
KEYWORDS = ("ring", "ideal", "claim", "suite", "add", "mul")


def _finish_table(decl: RingDecl | None) -> None:
    if decl is None or decl.kind != "table":
        return
    n = decl.n
    for op, table in (("add", decl.add), ("mul", decl.mul)):
        missing = [(i, j) for i in range(n) for j in range(n) if (i, j) not in table]
        if missing:
            raise ParseError(f"table ring {decl.name!r} has no {op} entry for {missing[0]}", decl.line)


def parse(text: str) -> Document:
    doc = Document()
    table: RingDecl | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        head = stripped.split()[0].rstrip(":")
        if head not in KEYWORDS:
            raise ParseError(f"unknown keyword {head!r}", lineno, col)
        if head in ("add", "mul"):
            if table is None:
                raise ParseError(f"{head!r} line outside a table ring", lineno, col)
            m = (_ADD if head == "add" else _MUL).match(stripped)
            if not m:
                raise ParseError(f"malformed {head!r} line (expected {head} i j = {'k' if head == 'add' else '{k,...}'})", lineno, col)
            i, j = int(m["i"]), int(m["j"])
            n = table.n
            if i >= n or j >= n:
                raise ParseError(f"index out of range for n={n}", lineno, col)
            target = table.add if head == "add" else table.mul
            if (i, j) in target:
                raise ParseError(f"duplicate {head} entry for ({i},{j})", lineno, col)
            if head == "add":
                k = int(m["k"])
                if k >= n:
                    raise ParseError(f"value {k} out of range for n={n}", lineno, col)
                target[(i, j)] = k
            else:
                ks = _ints(m["set"], lineno, col + stripped.index("{"))
                if not ks:
                    raise ParseError("hyperproduct must be nonempty", lineno, col)
                if any(not 0 <= k < n for k in ks):
                    raise ParseError(f"value out of range for n={n}", lineno, col)
                target[(i, j)] = tuple(sorted(set(ks)))
            continue
        _finish_table(table)
        table = None
        if head == "ring":
            m = _RING_ZX.match(stripped) or _RING_TABLE.match(stripped)
            if not m:
                raise ParseError("malformed ring declaration", lineno, col)
            name = m["name"]
            if name in doc.rings:
                raise ParseError(f"ring {name!r} already declared", lineno, col)
            n = int(m["n"])
            if n < 1:
                raise ParseError("n must be positive", lineno, col)
            if "X" in m.groupdict():
                X = tuple(sorted(set(_ints(m["X"], lineno, col))))
                doc.rings[name] = RingDecl(name, "zx_mod", n, X, line=lineno)
            else:
                table = doc.rings[name] = RingDecl(name, "table", n, line=lineno)
        elif head == "ideal":
            m = _IDEAL.match(stripped)
            if not m:
                raise ParseError("malformed ideal declaration", lineno, col)
            if m["ring"] not in doc.rings:
                raise ParseError(f"unknown ring {m['ring']!r}", lineno, col + m.start("ring"))
            if m["name"] in doc.ideals:
                raise ParseError(f"ideal {m['name']!r} already declared", lineno, col)
            elems = _ints(m["set"], lineno, col + m.start("set"))
            n = doc.rings[m["ring"]].n
            if any(not 0 <= e < n for e in elems):
                raise ParseError(f"element out of range for n={n}", lineno, col + m.start("set"))
            mode = "set" if m["mode"] == "=" else "gen"
            doc.ideals[m["name"]] = IdealDecl(m["name"], m["ring"], mode, tuple(sorted(set(elems))), line=lineno)
        elif head == "claim":
            m = _CLAIM.match(stripped)
            if not m:
                raise ParseError("malformed claim", lineno, col)
            if m["ideal"] not in doc.ideals:
                raise ParseError(f"unknown ideal {m['ideal']!r}", lineno, col + m.start("ideal"))
            pred = m["pred"]
            if pred not in PREDICATES:
                raise ParseError(f"unknown predicate {pred!r}", lineno, col + m.start("pred"))
            parametric = m["a"] is not None
            if parametric and pred not in ("prime", "closed"):
                raise ParseError(f"({m['a']},{m['b']})- applies only to prime or closed", lineno, col + m.start("pred"))
            if m["weakly"] and not (parametric and pred == "prime"):
                raise ParseError("weakly applies only to (a,b)-prime", lineno, col + m.start("weakly"))
            if pred == "closed" and not parametric:
                raise ParseError("closed needs exponents (a,b)", lineno, col + m.start("pred"))
            a = int(m["a"]) if parametric else None
            b = int(m["b"]) if parametric else None
            if parametric and (a < 1 or b < 1):
                raise ParseError("exponents must be positive", lineno, col + m.start("a"))
            doc.claims.append(ClaimDecl(m["name"], m["ideal"], pred, bool(m["weakly"]), a, b, line=lineno))
        elif head == "suite":
            m = _SUITE.match(stripped)
            if not m:
                raise ParseError("malformed suite line (expected suite seed=<int> grid=<a>x<b>)", lineno, col)
            grid = (int(m["a"]), int(m["b"]))
            if min(grid) < 1:
                raise ParseError("grid dimensions must be positive", lineno, col)
            doc.suites.append(SuiteDecl(int(m["seed"]), grid, line=lineno))
    _finish_table(table)
    return doc


def print_document(doc: Document) -> str:
    """Canonical text; ``parse(print_document(d)) == d``."""
    lines = []
    for r in doc.rings.values():
        if r.kind == "zx_mod":
            lines.append(f"ring {r.name} zx_mod n={r.n} X={','.join(map(str, r.X))}")
        else:
            lines.append(f"ring {r.name} table n={r.n}")
            for (i, j), k in sorted(r.add.items()):
                lines.append(f"add {i} {j} = {k}")
            for (i, j), ks in sorted(r.mul.items()):
                lines.append(f"mul {i} {j} = {{{','.join(map(str, ks))}}}")
    for d in doc.ideals.values():
        op = "=" if d.mode == "set" else "gen"
        lines.append(f"ideal {d.name} in {d.ring} {op} {{{','.join(map(str, d.elems))}}}")
    for c in doc.claims:
        lines.append(f"claim {c.name}: {c.ideal} is {c.label()}")
    for s in doc.suites:
        lines.append(f"suite seed={s.seed} grid={s.grid[0]}x{s.grid[1]}")
    return "\n".join(lines) + ("\n" if lines else "")


# -- evaluation ------------------------------------------------------------------


class EvalError(ValueError):
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def build_ring(decl: RingDecl) -> HyperRing:
    try:
        if decl.kind == "zx_mod":
            return build_template_zx_mod(decl.n, decl.X, name=decl.name)
        n = decl.n
        add = [[decl.add[(i, j)] for j in range(n)] for i in range(n)]
        mul = [[list(decl.mul[(i, j)]) for j in range(n)] for i in range(n)]
        return build_from_tables(n, add, mul, name=decl.name)
    except HyperRingError as exc:
        raise EvalError(str(exc), decl.line) from exc


@dataclass
class Model:
    doc: Document
    rings: dict[str, HyperRing]
    ideals: dict[str, Hyperideal]


def build(doc: Document) -> Model:
    rings = {name: build_ring(d) for name, d in doc.rings.items()}
    ideals = {}
    for name, d in doc.ideals.items():
        H = rings[d.ring]
        if d.mode == "gen":
            ideals[name] = ideal_generate(H, d.elems)
            continue
        mask = sum(1 << e for e in d.elems)
        if not is_hyperideal(H, mask):
            raise EvalError(f"{set(d.elems)} is not a hyperideal of {d.ring}", d.line)
        ideals[name] = Hyperideal(H, mask)
    return Model(doc, rings, ideals)


def evaluate_claim(model: Model, claim: ClaimDecl) -> bool:
    P = model.ideals[claim.ideal]
    try:
        if claim.predicate == "C":
            return cl.is_C_hyperideal(P)
        if claim.predicate == "strongC":
            return cl.is_strong_C_hyperideal(P)
        if not P.is_proper:
            return False
        if claim.alpha is not None:
            a, b = claim.alpha, claim.beta
            if claim.predicate == "closed":
                return cl.is_ab_closed(P, a, b)
            return cl.is_weakly_ab_prime(P, a, b) if claim.weakly else cl.is_ab_prime(P, a, b)
        return {"prime": cl.is_prime, "primary": cl.is_primary, "maximal": cl.is_maximal}[claim.predicate](P)
    except HyperRingError as exc:
        raise EvalError(str(exc), claim.line) from exc


def evaluate(doc: Document) -> list[tuple[ClaimDecl, bool]]:
    model = build(doc)
    return [(c, evaluate_claim(model, c)) for c in doc.claims]


# -- command line ------------------------------------------------------------------

# exit codes: 0 clean, 1 violation, 2 usage or parse error
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 4x4, got {text!r}")
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be positive")
    return a, b


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(str(exc))
    return build(parse(text))


def _pick(table: dict, name: str | None, what: str):
    if name is None:
        if len(table) == 1:
            return next(iter(table.values()))
        raise UsageError(f"--{what} is required ({', '.join(table) or 'none declared'})")
    if name not in table:
        raise UsageError(f"unknown {what} {name!r}")
    return table[name]


def _ring_label_set(H, mask: int) -> str:
    return "{" + ",".join(H.label_set(mask)) + "}"


def cmd_check(args) -> int:
    model = _load(args.file)
    status = EXIT_OK
    for name, H in model.rings.items():
        f = H.flags
        print(f"ring {name} (n={H.n}): hyperring={f.is_hyperring}")
        for k, v in f.as_dict().items():
            print(f"  {k}: {v}")
        if not f.is_hyperring:
            status = EXIT_VIOLATION
    for c in model.doc.claims:
        print(f"claim {c.name}: {c.ideal} is {c.label()} = {str(evaluate_claim(model, c)).lower()}")
    return status


def cmd_ideals(args) -> int:
    model = _load(args.file)
    H = _pick(model.rings, args.ring, "ring")
    for I in enumerate_hyperideals(H, bound=max(H.n, args.bound)):
        print(_ring_label_set(H, I.mask))
    return EXIT_OK


def cmd_classify(args) -> int:
    model = _load(args.file)
    P = _pick(model.ideals, args.ideal, "ideal")
    a_max, b_max = args.grid
    rep = cl.classify(P, a_max, b_max)
    if args.json:
        print(json.dumps(asdict(rep), sort_keys=True, indent=1, default=list))
        return EXIT_OK
    H = P.ring
    print(f"ideal {_ring_label_set(H, P.mask)} in {H.name or 'ring'} (n={H.n})")
    for k in ("proper", "prime", "primary", "maximal", "c_hyperideal", "strong_c", "irreducible", "max_length"):
        print(f"  {k}: {getattr(rep, k)}")
    print(f"  radical (primes): {_ring_label_set(H, sum(1 << e for e in rep.radical_primes))}")
    print(f"  radical (powers): {_ring_label_set(H, sum(1 << e for e in rep.radical_powers))}")
    if not P.is_proper:
        return EXIT_OK
    lp = {tuple(p) for p in rep.regions["prime"]}
    wk = {tuple(p) for p in rep.regions["weakly"]}
    cw = {tuple(p) for p in rep.regions["closed"]}
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            ab = (a, b)
            print(f"  ({a},{b}): prime={str(ab in lp).lower()} weakly={str(ab in wk).lower()} closed={str(ab in cw).lower()}")
    for ab, zs in rep.zeros.items():
        print(f"  zeros at ({ab}): {zs}")
    return EXIT_OK


def cmd_region(args) -> int:
    model = _load(args.file)
    P = _pick(model.ideals, args.ideal, "ideal")
    for kind in cl.REGION_KINDS:
        reg = cl.compute_region(P, kind, *args.grid)
        print(f"{kind} region:")
        print(reg.render())
    return EXIT_OK


def cmd_fundamental(args) -> int:
    model = _load(args.file)
    H = _pick(model.rings, args.ring, "ring")
    try:
        F = make_fundamental_ring(H)
    except IllDefinedOperation as exc:
        print(f"fundamental ring ill-defined: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    print(f"gamma* classes ({F.closure_route} route):")
    for i, c in enumerate(F.classes):
        print(f"  [{i}] = {_ring_label_set(H, c)}")
    print("addition:")
    for i in range(F.n):
        print("  " + " ".join(str(F.add[i][j]) for j in range(F.n)))
    print("multiplication:")
    for i in range(F.n):
        print("  " + " ".join(str(next(iter(F.elems(F.mul[i][j])))) for j in range(F.n)))
    ok = F.is_classical_ring()
    print(f"classical ring: {ok}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_theorems(args) -> int:
    seed, grid = args.seed, args.grid
    if args.file:
        doc = parse(Path(args.file).read_text(encoding="utf-8"))
        if doc.suites:
            s = doc.suites[-1]
            seed = s.seed if seed is None else seed
            grid = s.grid if grid is None else grid
    seed = 0 if seed is None else seed
    grid = grid or (4, 4)
    corpus = th.generate_corpus(seed=seed)
    ids = args.only.split(",") if args.only else None
    try:
        verdicts = th.run_suite(corpus, grid, ids, jobs=args.jobs)
    except KeyError as exc:
        raise UsageError(str(exc))
    if args.json:
        text = th.report_json(corpus, verdicts)
        if args.json == "-":
            print(text)
        else:
            Path(args.json).write_text(text + "\n", encoding="utf-8")
    if args.json != "-":
        print(f"corpus: {len(corpus)} instances, seed={seed}, grid={grid[0]}x{grid[1]}")
        for row in th.coverage(verdicts):
            law = th.REGISTRY[row["theorem"]]
            bad = sum(v.violations for v in verdicts if v.theorem_id == row["theorem"])
            mode = " (report-only)" if law.report_only else ""
            print(f"  {row['theorem']:<12} satisfied={row['satisfied']:<3} vacuous={row['vacuous']:<3} violations={bad}{mode}")
        for v in th.gating_violations(verdicts):
            print(f"VIOLATION {v.theorem_id} on {v.instance_id}: {v.violations} case(s), first key {v.witness['key']}")
    return EXIT_VIOLATION if th.gating_violations(verdicts) else EXIT_OK


def cmd_zx(args) -> int:
    for item in args.power or []:
        try:
            x, k = (int(t) for t in item.split(":"))
        except ValueError:
            raise UsageError(f"--power expects x:k, got {item!r}")
        print(f"{x}^{k} = {{{','.join(map(str, sorted(zx.zx_power(x, k, args.X))))}}}")
    if not args.claim:
        return EXIT_OK
    if args.mod_ideal is None:
        raise UsageError("--claim needs --mod-ideal")
    try:
        kind, ab = args.claim.split(":")
        a, b = (int(t) for t in ab.split(","))
    except ValueError:
        raise UsageError(f"--claim expects kind:a,b, got {args.claim!r}")
    if kind not in zx.CLAIMS:
        raise UsageError(f"claim kind must be one of {zx.CLAIMS}")
    ver = zx.bounded_claim_check(kind, args.mod_ideal, args.X, a, b, bound=args.bound)
    print(ver.summary())
    return EXIT_OK if ver.no_counterexample else EXIT_VIOLATION


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperlab", description="Finite multiplicative hyperrings and (a,b)-prime hyperideals.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="axiom flags and claims for every ring in a file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("ideals", help="enumerate hyperideals")
    s.add_argument("file")
    s.add_argument("--ring")
    s.add_argument("--bound", type=int, default=64)
    s.set_defaults(fn=cmd_ideals)

    s = sub.add_parser("classify", help="full classification of one ideal")
    s.add_argument("file")
    s.add_argument("--ideal")
    s.add_argument("--grid", type=_grid, default=(4, 4))
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("region", help="prime / closed / weakly regions as text grids")
    s.add_argument("file")
    s.add_argument("--ideal")
    s.add_argument("--grid", type=_grid, default=(4, 4))
    s.set_defaults(fn=cmd_region)

    s = sub.add_parser("fundamental", help="gamma* partition and the fundamental ring tables")
    s.add_argument("file")
    s.add_argument("--ring")
    s.set_defaults(fn=cmd_fundamental)

    s = sub.add_parser("theorems", help="run the theorem suite over the generated corpus")
    s.add_argument("--seed", type=int)
    s.add_argument("--grid", type=_grid)
    s.add_argument("--json", metavar="OUT", help="write the JSON report ('-' for stdout)")
    s.add_argument("--file", help="take seed/grid from a document's suite line")
    s.add_argument("--only", help="comma-separated theorem ids")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_theorems)

    s = sub.add_parser("zx", help="bounded checks over the integers")
    s.add_argument("--X", type=_int_list, required=True)
    s.add_argument("--mod-ideal", type=int)
    s.add_argument("--claim", help="closed:a,b | prime:a,b | weakly:a,b")
    s.add_argument("--bound", type=int, default=200)
    s.add_argument("--power", action="append", help="print x^k, given as x:k")
    s.set_defaults(fn=cmd_zx)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HyperRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
