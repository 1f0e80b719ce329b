"""Corpus generation and the executable theorem suite.

Each registered law is a generator of :class:`Case` records over one corpus
instance: a JSON-friendly key, whether the law's hypothesis held, whether the
conclusion held, and detail data. Cases are folded into one
:class:`TheoremVerdict` per (law, instance). A violating case keeps its key
and the instance recipe, so :func:`replay` can rebuild the ring from scratch
and re-evaluate just that case.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from . import classify as cl
from .constructs import (
    IllDefinedOperation,
    LocalizedRing,
    ProductRing,
    QuotientRing,
    decompose_product_ideal,
    gamma_star_classes,
    FundamentalRing,
    localized_ab_prime,
    make_matrix_ring,
    matrix_ab_prime,
    monomial_ab_prime_check,
    multiplicative_closed_subsets,
)
from .homs import GoodHom, product_projection, quotient_projection
from .kernel import (
    HyperRing,
    HyperRingError,
    Hyperideal,
    bits_of,
    build_from_tables,
    build_template_zx_mod,
    enumerate_hyperideals,
    ideal_generate,
    is_hyperideal,
)

REPORT_VERSION = 1
OUTCOMES = ("hypothesis_not_met", "holds", "violation")


# -- instances and corpus ---------------------------------------------------------


def _freeze(recipe) -> str:
    return json.dumps(recipe, sort_keys=True, separators=(",", ":"))


@lru_cache(maxsize=256)
def _build_frozen(frozen: str) -> HyperRing:
    r = json.loads(frozen)
    kind = r["kind"]
    if kind == "zx_mod":
        return build_template_zx_mod(r["n"], r["X"], name=recipe_name(r))
    if kind == "product":
        return ProductRing(*(build_instance(f) for f in r["factors"]))
    if kind == "quotient":
        base = build_instance(r["base"])
        return QuotientRing(base, Hyperideal(base, r["ideal"]))
    if kind == "null":
        n = r["n"]
        add = [[(i + j) % n for j in range(n)] for i in range(n)]
        return build_from_tables(n, add, [[[0]] * n for _ in range(n)], name=recipe_name(r))
    if kind == "table":
        return build_from_tables(r["n"], r["add"], r["mul"], name=r.get("name", ""))
    raise HyperRingError(f"unknown recipe kind {kind!r}")


def build_instance(recipe: dict) -> HyperRing:
    """Rebuild a ring from its JSON recipe (memoized per process)."""
    return _build_frozen(_freeze(recipe))


def recipe_name(r: dict) -> str:
    kind = r["kind"]
    if kind == "zx_mod":
        return f"zx{r['n']}[{','.join(map(str, r['X']))}]"
    if kind == "product":
        return " x ".join(recipe_name(f) for f in r["factors"])
    if kind == "null":
        return f"null{r['n']}"
    if kind == "quotient":
        return f"({recipe_name(r['base'])})/{{{','.join(map(str, r['ideal']))}}}"
    return r.get("name") or f"table{r['n']}"


def zx_recipe(n: int, X) -> dict:
    return {"kind": "zx_mod", "n": n, "X": sorted(set(x % n for x in X))}


def product_recipe(*factors: dict) -> dict:
    return {"kind": "product", "factors": list(factors)}


def quotient_recipe(base: dict, ideal) -> dict:
    return {"kind": "quotient", "base": base, "ideal": sorted(ideal)}


Z8_EXAMPLE = zx_recipe(8, range(1, 8))


@dataclass(frozen=True)
class Instance:
    id: str
    recipe: dict = field(compare=False, hash=False)
    tags: frozenset[str] = frozenset()

    @property
    def ring(self) -> HyperRing:
        return build_instance(self.recipe)


@dataclass(frozen=True)
class CorpusConfig:
    moduli: tuple[int, ...] = (4, 6, 8, 9, 12)
    pairs_per_modulus: int = 2
    triples_per_modulus: int = 1
    classical: tuple[int, ...] = (2, 3, 4, 5, 6, 8, 9)
    include_products: bool = True
    include_quotients: bool = True
    include_large_products: bool = False
    max_size: int = 64


@dataclass(frozen=True)
class Corpus:
    instances: tuple[Instance, ...]
    seed: int
    config: CorpusConfig

    def __len__(self) -> int:
        return len(self.instances)

    def by_id(self, iid: str) -> Instance:
        for inst in self.instances:
            if inst.id == iid:
                return inst
        raise KeyError(iid)


def _tags(H: HyperRing, recipe: dict) -> frozenset[str]:
    f = H.flags
    tags = {recipe["kind"]}
    if f.identities:
        tags.add("identity")
    if f.scalar_identities:
        tags.add("scalar_identity")
    if all(m.bit_count() == 1 for row in H.mul for m in row):
        tags.add("classical")
    if f.strongly_distributive:
        tags.add("strongly_distributive")
    if recipe == Z8_EXAMPLE:
        tags.add("z8_example")
    return frozenset(tags)


def generate_corpus(config: CorpusConfig | None = None, seed: int = 0) -> Corpus:
    """Deterministic for a fixed ``(config, seed)``; every instance is axiom-checked."""
    config = config or CorpusConfig()
    rng = random.Random(seed)
    recipes: list[dict] = [Z8_EXAMPLE]
    recipes += [zx_recipe(n, [1]) for n in config.classical]
    # fixed reductions of the integer examples plus small rings for the matrix laws
    recipes += [zx_recipe(12, [2, 3]), zx_recipe(8, [2, 4]), zx_recipe(3, [1, 2]), zx_recipe(3, [2]), zx_recipe(4, [2])]
    # zero multiplication: the only bases where M_2(P) can be (a,b)-prime
    recipes += [{"kind": "null", "n": 2}, {"kind": "null", "n": 3}]
    for n in config.moduli:
        pool2 = list(itertools.combinations(range(1, n), 2))
        pool3 = list(itertools.combinations(range(1, n), 3))
        for X in rng.sample(pool2, min(config.pairs_per_modulus, len(pool2))):
            recipes.append(zx_recipe(n, X))
        for X in rng.sample(pool3, min(config.triples_per_modulus, len(pool3))):
            recipes.append(zx_recipe(n, X))
    if config.include_products:
        z2, z3, z4 = zx_recipe(2, [1]), zx_recipe(3, [1]), zx_recipe(4, [1])
        recipes += [
            product_recipe(z2, z2),
            product_recipe(z2, z3),
            product_recipe(z3, z3),
            product_recipe(z2, z4),
            product_recipe(z2, zx_recipe(3, [1, 2])),
            product_recipe(zx_recipe(3, [1, 2]), zx_recipe(3, [1, 2])),
            product_recipe(z2, zx_recipe(4, [2])),
            product_recipe(z2, Z8_EXAMPLE),
        ]
        if config.include_large_products:
            recipes.append(product_recipe(Z8_EXAMPLE, Z8_EXAMPLE))
    if config.include_quotients:
        recipes += [
            quotient_recipe(Z8_EXAMPLE, [0, 4]),
            quotient_recipe(zx_recipe(12, [2, 3]), [0, 6]),
            quotient_recipe(zx_recipe(9, [1]), [0, 3, 6]),
            quotient_recipe(zx_recipe(8, [1, 3]), [0, 4]),
        ]
    seen: set[str] = set()
    out = []
    for r in recipes:
        key = _freeze(r)
        if key in seen:
            continue
        seen.add(key)
        H = build_instance(r)
        if H.n > config.max_size:
            continue
        if not H.flags.is_hyperring:
            raise HyperRingError(f"corpus instance {recipe_name(r)} fails the hyperring axioms")
        out.append(Instance(recipe_name(r), r, _tags(H, r)))
    return Corpus(tuple(out), seed, config)


def coverage_breakdown(corpus: Corpus) -> dict[str, int]:
    counts: dict[str, int] = {}
    for inst in corpus.instances:
        for t in inst.tags:
            counts[t] = counts.get(t, 0) + 1
    return dict(sorted(counts.items()))


# -- per-instance context ---------------------------------------------------------


@dataclass(frozen=True)
class Case:
    key: tuple
    hyp: bool
    ok: bool = True
    detail: dict = field(default_factory=dict)


class Context:
    """Memoized predicates over one ring."""

    def __init__(self, H: HyperRing, grid: tuple[int, int]):
        self.H = H
        self.grid = grid
        self.pairs = [(a, b) for a in range(1, grid[0] + 1) for b in range(1, grid[1] + 1)]
        self.ideals = enumerate_hyperideals(H, bound=max(H.n, 16))
        self.proper = [I for I in self.ideals if I.is_proper]
        self._memo: dict = {}
        f = H.flags
        self.has_identity = bool(f.identities)
        self.has_scalar = bool(f.scalar_identities)
        self.zero_ideal = Hyperideal(H, 1 << H.zero)

    def _m(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            v = self._memo[key] = fn()
            return v

    def prime(self, P: Hyperideal, a: int, b: int) -> bool:
        return self._m(("p", P.mask, a, b), lambda: cl.ab_prime_witness(self.H, P.mask, a, b) is None)

    def weakly(self, P: Hyperideal, a: int, b: int) -> bool:
        return self._m(("w", P.mask, a, b), lambda: cl.ab_prime_witness(self.H, P.mask, a, b, weakly=True) is None)

    def closed(self, P: Hyperideal, a: int, b: int) -> bool:
        return self._m(("c", P.mask, a, b), lambda: cl.is_ab_closed(P, a, b))

    def classical_prime(self, P: Hyperideal) -> bool:
        return self._m(("cp", P.mask), lambda: cl.is_prime(P))

    def is_C(self, P: Hyperideal) -> bool:
        return self._m(("C", P.mask), lambda: cl.is_C_hyperideal(P))

    def is_strong_C(self, P: Hyperideal) -> bool:
        return self._m(("SC", P.mask), lambda: cl.is_strong_C_hyperideal(P))

    def rad(self, P: Hyperideal) -> int:
        return self._m(("rad", P.mask), lambda: cl.radical_via_primes(P).mask)

    def maximal(self, P: Hyperideal) -> bool:
        return self._m(("max", P.mask), lambda: cl.is_maximal(P, self.ideals))

    def q(self, P: Hyperideal, b: int) -> int:
        return self._m(("q", P.mask, b), lambda: cl.q_of(P, b).bits)

    def homs(self) -> list[GoodHom]:
        def build():
            out = []
            for I in self.proper:
                if I.mask == 1 << self.H.zero:
                    continue
                try:
                    out.append(quotient_projection(QuotientRing(self.H, I)))
                except IllDefinedOperation:
                    continue
            if isinstance(self.H, ProductRing):
                out += [product_projection(self.H, i) for i in range(len(self.H.factors))]
            return out

        return self._m(("homs",), build)


def _I(P: Hyperideal | int, H: HyperRing | None = None) -> list[int]:
    if isinstance(P, Hyperideal):
        return list(P)
    return list(bits_of(P))


# -- the laws ---------------------------------------------------------------------


def t_equiv(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        for a, b in ctx.pairs:
            vals = (ctx.prime(P, a, b), cl.residual_characterization(P, a, b), cl.ideal_characterization(P, a, b))
            yield Case((_I(P), a, b), True, len(set(vals)) == 1, {"prime": vals[0], "residual": vals[1], "ideals": vals[2]})


def t_principal(ctx: Context) -> Iterator[Case]:
    if not cl.is_principal_ring(ctx.H):
        yield Case(("not-principal",), False)
        return
    for P in ctx.proper:
        for a, b in ctx.pairs:
            ref = ctx.prime(P, a, b)
            pc = cl.principal_characterizations(P, a, b)
            yield Case((_I(P), a, b), True, all(v == ref for v in pc.values()), {"prime": ref, **pc})


def t_q(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        for a, b in ctx.pairs:
            hyp = ctx.is_C(P) and ctx.prime(P, a, b)
            if not hyp:
                yield Case((_I(P), a, b), False)
                continue
            q, r = ctx.q(P, b), ctx.rad(P)
            yield Case((_I(P), a, b), True, q == r, {"Q": _I(q), "rad": _I(r)})


def t_max_q(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        for a, b in ctx.pairs:
            q = ctx.q(P, b)
            hyp = ctx.has_identity and ctx.is_C(P) and is_hyperideal(ctx.H, q)
            hyp = hyp and q != ctx.H.full_mask and ctx.maximal(Hyperideal(ctx.H, q))
            if not hyp:
                yield Case((_I(P), a, b), False)
                continue
            ok = ctx.prime(P, a, b) and ctx.rad(P) == q
            yield Case((_I(P), a, b), True, ok, {"Q": _I(q), "prime": ctx.prime(P, a, b), "rad": _I(ctx.rad(P))})


def t_qn(ctx: Context) -> Iterator[Case]:
    H = ctx.H
    maxes = [Q for Q in ctx.proper if ctx.maximal(Q)]
    if not ctx.has_identity or not maxes:
        yield Case(("no-identity-or-maximal",), False)
        return
    for Q in maxes:
        for k in range(1, ctx.grid[1] + 1):
            Qk = ideal_generate(H, H.elems(H.set_power_mask(Q.mask, k)))
            for a, b in ctx.pairs:
                key = (_I(Q), k, a, b)
                if k > b:
                    yield Case(key, False)
                    continue
                ok = Qk.is_proper and ctx.prime(Qk, a, b) and ctx.rad(Qk) == Q.mask
                yield Case(key, True, ok, {"Qn": _I(Qk)})


def _radical_groups(ctx: Context, members) -> dict[int, list[Hyperideal]]:
    groups: dict[int, list[Hyperideal]] = {}
    for P in members:
        groups.setdefault(ctx.rad(P), []).append(P)
    return groups


def _subfamilies(family: list[Hyperideal]) -> Iterator[tuple[Hyperideal, ...]]:
    for i, j in itertools.combinations(range(len(family)), 2):
        yield family[i], family[j]
    if len(family) > 2:
        yield tuple(family)


def t_inter(ctx: Context) -> Iterator[Case]:
    """Because regions are monotone, ``a <= min a_i, b >= max b_i`` reduces to a common grid point."""
    Cs = [P for P in ctx.proper if ctx.is_C(P)]
    any_hyp = False
    for a, b in ctx.pairs:
        members = [P for P in Cs if ctx.prime(P, a, b)]
        for rad, fam in _radical_groups(ctx, members).items():
            for sub in _subfamilies(fam):
                m = ctx.H.full_mask
                for P in sub:
                    m &= P.mask
                inter = Hyperideal(ctx.H, m)
                ok = ctx.prime(inter, a, b) and ctx.rad(inter) == rad
                any_hyp = True
                yield Case(([_I(P) for P in sub], a, b), True, ok, {"intersection": _I(inter), "Q": _I(rad)})
    if not any_hyp:
        yield Case(("no-family",), False)


def t_col(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        reg = frozenset(ab for ab in ctx.pairs if ctx.prime(P, *ab))
        region = cl.Region("prime", ctx.grid[0], ctx.grid[1], reg)
        bad = region.column_law_violations()
        yield Case((_I(P),), True, not bad, {"violations": [list(v) for v in bad], "region": sorted(map(list, reg))})


def t_idem(ctx: Context) -> Iterator[Case]:
    zero_c = ctx.is_C(ctx.zero_ideal)
    for a, b in ctx.pairs:
        hyp = ctx.has_identity and zero_c and all(ctx.prime(P, a, b) for P in ctx.proper)
        if not hyp:
            yield Case((a, b), False)
            continue
        idem = cl.nontrivial_idempotents(ctx.H)
        bad_max = [_I(P) for P in ctx.proper if ctx.classical_prime(P) and ctx.is_C(P) and not ctx.maximal(P)]
        yield Case((a, b), True, not idem and not bad_max, {"idempotents": list(idem), "non_maximal_primes": bad_max})


def t_irr(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        sc = ctx.is_strong_C(P)
        length = cl.max_length(P) if sc else None
        irr = sc and cl.is_irreducible(P, ctx.ideals)
        for a, b in ctx.pairs:
            hyp = sc and irr and length <= b
            if not hyp:
                yield Case((_I(P), a, b), False)
                continue
            yield Case((_I(P), a, b), True, ctx.prime(P, a, b), {"max_length": length})


def t_loc(ctx: Context) -> Iterator[Case]:
    if not ctx.has_scalar:
        yield Case(("no-scalar-identity",), False)
        return
    H = ctx.H
    for S in multiplicative_closed_subsets(H):
        cand = [P for P in ctx.proper if not P.mask & S.bits and ctx.is_C(P)]
        if not cand:
            continue
        L = LocalizedRing(H, S)
        for P in cand:
            for a, b in ctx.pairs:
                key = (list(S), _I(P), a, b)
                if not ctx.prime(P, a, b) or not L.mul_well_defined:
                    yield Case(key, False)
                    continue
                w = localized_ab_prime(L, P, a, b)
                yield Case(key, True, w is None, {"witness": list(w) if w else None})


def t_poly(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        for a, b in ctx.pairs:
            w = monomial_ab_prime_check(P, a, b)
            ref = ctx.prime(P, a, b)
            ok = (w is None) == ref and (w is None or (w[0].degree == 0 and w[1].degree == 0))
            det = {"prime": ref, "witness": None if w is None else [[m.coefficient, m.degree] for m in w]}
            yield Case((_I(P), a, b), True, ok, det)


MATRIX_BASE_BOUND = 3


def t_mat(ctx: Context) -> Iterator[Case]:
    if ctx.H.n > MATRIX_BASE_BOUND:
        yield Case(("base-too-large",), False)
        return
    M = make_matrix_ring(ctx.H, 2)
    for P in ctx.proper:
        for a, b in ctx.pairs:
            if not matrix_ab_prime(M, P, a, b):
                yield Case((_I(P), a, b), False)
                continue
            yield Case((_I(P), a, b), True, ctx.prime(P, a, b))


def _prime_in(H: HyperRing, mask: int, a: int, b: int) -> bool:
    return mask != H.full_mask and cl.ab_prime_witness(H, mask, a, b) is None


def t_hom(ctx: Context) -> Iterator[Case]:
    homs = ctx.homs()
    if not homs:
        yield Case(("no-homs",), False)
        return
    for psi in homs:
        H2 = psi.target
        ker = psi.preimage_mask(1 << H2.zero)
        targets = [I for I in enumerate_hyperideals(H2, bound=max(H2.n, 16)) if I.is_proper]
        for P2 in targets:
            pre = psi.preimage_mask(P2.mask)
            for a, b in ctx.pairs:
                key = (psi.name, "preimage", _I(P2), a, b)
                if not _prime_in(H2, P2.mask, a, b):
                    yield Case(key, False)
                    continue
                yield Case(key, True, _prime_in(ctx.H, pre, a, b), {"preimage": _I(pre)})
        for P1 in ctx.proper:
            for a, b in ctx.pairs:
                key = (psi.name, "image", _I(P1), a, b)
                hyp = psi.surjective and ker & ~P1.mask == 0 and ctx.is_C(P1) and ctx.prime(P1, a, b)
                if not hyp:
                    yield Case(key, False)
                    continue
                img = psi.image_mask(P1.mask)
                ok = is_hyperideal(H2, img) and _prime_in(H2, img, a, b)
                yield Case(key, True, ok, {"image": _I(img)})


def t_quot(ctx: Context) -> Iterator[Case]:
    H = ctx.H
    for P1 in ctx.proper:
        try:
            Q = QuotientRing(H, P1, check=False)
        except IllDefinedOperation:
            yield Case((_I(P1),), False)
            continue
        for P2 in ctx.proper:
            if P1.mask & ~P2.mask:
                continue
            img = Q.image(P2.mask)
            for a, b in ctx.pairs:
                lhs = ctx.prime(P2, a, b)
                rhs = _prime_in(Q, img, a, b)
                yield Case((_I(P1), _I(P2), a, b), True, lhs == rhs, {"prime": lhs, "quotient_prime": rhs})


def w_rad(ctx: Context) -> Iterator[Case]:
    H, Z = ctx.H, ctx.zero_ideal
    r0 = ctx.rad(Z)
    base_hyp = ctx.is_C(Z) and r0 != H.full_mask and ctx.classical_prime(Hyperideal(H, r0))
    for P in ctx.proper:
        for a, b in ctx.pairs:
            key = (_I(P), a, b)
            if not (base_hyp and ctx.is_C(P) and ctx.weakly(P, a, b)):
                yield Case(key, False)
                continue
            r = ctx.rad(P)
            ok = r != H.full_mask and ctx.classical_prime(Hyperideal(H, r))
            bad = [x for x in bits_of(r & ~r0) if H.power_mask(x, b) & ~P.mask]
            yield Case(key, True, ok and not bad, {"rad": _I(r), "rad0": _I(r0), "bad_powers": bad})


def w_max(ctx: Context) -> Iterator[Case]:
    for a, b in ctx.pairs:
        hyp = ctx.has_identity and a >= b and all(ctx.weakly(P, a, b) for P in ctx.proper)
        if not hyp:
            yield Case((a, b), False)
            continue
        bad = [_I(P) for P in ctx.proper if ctx.classical_prime(P) and ctx.is_C(P) and not ctx.maximal(P)]
        yield Case((a, b), True, not bad, {"non_maximal_primes": bad})


def _zeros(ctx: Context):
    for P in ctx.proper:
        if not ctx.is_C(P):
            continue
        for a, b in ctx.pairs:
            if ctx.weakly(P, a, b):
                for z in cl.find_ab_zeros(P, a, b):
                    yield P, z


def w_zero(ctx: Context) -> Iterator[Case]:
    H = ctx.H
    zero_sc = ctx.is_strong_C(ctx.zero_ideal)
    found = False
    for P, z in _zeros(ctx):
        found = True
        x, y, a = z.x, z.y, z.alpha
        key = (_I(P), z.alpha, z.beta, x, y)
        ya = 1 << y
        bad_i = [t for t in P if not H.prod(H.power_mask(H.add[x][t], a), ya) >> H.zero & 1]
        bad_ii = [t for t in P if not H.prod(H.power_mask(x, a), 1 << H.add[y][t]) >> H.zero & 1]
        bad_iii = []
        if zero_sc:
            bad_iii = [t for t in P if H.prod(H.power_mask(x, a), 1 << t) != 1 << H.zero]
        ok = not (bad_i or bad_ii or bad_iii)
        yield Case(key, True, ok, {"part_i": bad_i, "part_ii": bad_ii, "part_iii": bad_iii, "zero_strong_C": zero_sc})
    if not found:
        yield Case(("no-zeros",), False)


def w_nil(ctx: Context) -> Iterator[Case]:
    H = ctx.H
    if not H.flags.strongly_distributive:
        yield Case(("not-strongly-distributive",), False)
        return
    nil = cl.nilpotents(H).bits
    zero_sc = ctx.is_strong_C(ctx.zero_ideal)
    zero_c = ctx.is_C(ctx.zero_ideal)
    found = False
    for P, z in _zeros(ctx):
        key = (_I(P), z.alpha, z.beta, z.x, z.y)
        if not zero_c:
            yield Case(key, False)
            continue
        found = True
        bad_i = [t for t in P if zero_sc and H.mul[z.x][t] & ~nil]
        bad_ii = [t for t in P if H.mul[z.y][t] & ~nil]
        yield Case(key, True, not (bad_i or bad_ii), {"part_i": bad_i, "part_ii": bad_ii, "zero_strong_C": zero_sc})
    if not found:
        yield Case(("no-zeros",), False)


def w_d(ctx: Context) -> Iterator[Case]:
    any_hyp = False
    for a, b in ctx.pairs:
        members = [P for P in ctx.proper if ctx.weakly(P, a, b)]
        groups: dict[int, list[Hyperideal]] = {}
        for P in members:
            groups.setdefault(ctx.q(P, b), []).append(P)
        for fam in groups.values():
            for sub in _subfamilies(fam):
                m = ctx.H.full_mask
                for P in sub:
                    m &= P.mask
                any_hyp = True
                yield Case(([_I(P) for P in sub], a, b), True, ctx.weakly(Hyperideal(ctx.H, m), a, b), {"intersection": _I(m)})
    if not any_hyp:
        yield Case(("no-family",), False)


def _fundamental(ctx: Context) -> FundamentalRing:
    def build():
        classes, route = gamma_star_classes(ctx.H)
        return FundamentalRing(ctx.H, classes, route)

    return ctx._m(("fund",), build)


def w_fund_ring(ctx: Context) -> Iterator[Case]:
    try:
        F = _fundamental(ctx)
    except IllDefinedOperation as exc:
        yield Case(("ring",), True, False, {"error": str(exc)})
        return
    yield Case(("ring",), True, F.is_classical_ring(), {"classes": [list(bits_of(c)) for c in F.classes], "route": F.closure_route})


def w_fund(ctx: Context) -> Iterator[Case]:
    try:
        F = _fundamental(ctx)
    except IllDefinedOperation:
        yield Case(("ring",), False)
        return
    for P in ctx.proper:
        img = F.image(P.mask)
        for a, b in ctx.pairs:
            lhs = ctx.weakly(P, a, b)
            rhs = img != F.full_mask and cl.ab_prime_witness(F, img, a, b, weakly=True) is None
            yield Case((_I(P), a, b), True, lhs == rhs, {"weakly": lhs, "image": _I(img), "image_weakly": rhs})


def w_prod(ctx: Context) -> Iterator[Case]:
    """Box-shaped nonzero proper ideals of a binary product.

    Cases: ``P`` weakly, ``P`` (a,b)-prime, ``P`` of the form ``P1 x H2`` or
    ``H1 x P2`` with the proper factor (a,b)-prime. prime => box form => weakly
    are checked everywhere; weakly => prime needs scalar identities in both
    factors. Non-box ideals are tallied under a separate key.
    """
    H = ctx.H
    if not isinstance(H, ProductRing) or len(H.factors) != 2:
        yield Case(("not-binary-product",), False)
        return
    scalar = all(f.flags.scalar_identities for f in H.factors)
    for P in ctx.proper:
        if P.mask == 1 << H.zero:
            continue
        parts = decompose_product_ideal(P)
        if parts is None:
            yield Case((_I(P), "non-box"), False)
            continue
        for a, b in ctx.pairs:
            w, p = ctx.weakly(P, a, b), ctx.prime(P, a, b)
            boxed = False
            for i, Pi in enumerate(parts):
                others_full = all(not Pj.is_proper for j, Pj in enumerate(parts) if j != i)
                if Pi.is_proper and others_full and _prime_in(H.factors[i], Pi.mask, a, b):
                    boxed = True
            det = {"weakly": w, "prime": p, "box_form": boxed, "factor_scalar_identities": scalar}
            yield Case((_I(P), a, b, "prime=>box=>weakly"), True, (not p or boxed) and (not boxed or w), det)
            if scalar:
                yield Case((_I(P), a, b, "weakly=>prime"), True, not w or p, det)
            else:
                yield Case((_I(P), a, b, "weakly=>prime"), False, True, det)


def r_impl(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        primary = cl.is_primary(P)
        for a, b in ctx.pairs:
            if not ctx.prime(P, a, b):
                yield Case((_I(P), a, b), False)
                continue
            ok = ctx.closed(P, a, b) and primary and ctx.weakly(P, a, b)
            yield Case((_I(P), a, b), True, ok, {"closed": ctx.closed(P, a, b), "primary": primary, "weakly": ctx.weakly(P, a, b)})


def r_rad(ctx: Context) -> Iterator[Case]:
    for P in ctx.proper:
        d = cl.radical_via_powers(P).bits
        r = ctx.rad(P)
        c = ctx.is_C(P)
        ok = d == r if c else not d & ~r
        yield Case((_I(P),), True, ok, {"powers": _I(d), "primes": _I(r), "C": c})


@dataclass(frozen=True)
class Law:
    id: str
    statement: str
    check: Callable[[Context], Iterator[Case]]
    report_only: bool = False
    needs_identity: bool = True


REGISTRY: dict[str, Law] = {
    law.id: law
    for law in [
        Law("T-equiv", "P (a,b)-prime <=> (P : x^a) = P whenever x^b is not inside P <=> same with hyperideals", t_equiv, needs_identity=False),
        Law("T-principal", "in a principal hyperring, (a,b)-primeness is equivalent to the ideal-product, residual and element forms", t_principal),
        Law("T-Q", "P an (a,b)-prime C-hyperideal => {x : x^b in P} = rad(P)", t_q),
        Law("T-maxQ", "P a C-hyperideal, {x : x^b in P} maximal => P (a,b)-prime with that radical (i-set hypothesis not checked)", t_max_q, report_only=True),
        Law("T-Qn", "Q maximal, k <= b => <Q^k> is (a,b)-prime with radical Q", t_qn),
        Law("T-inter", "C-hyperideals (a,b)-prime with a common radical Q => their intersection is (a,b)-prime with radical Q", t_inter),
        Law("T-col", "(a,b) in L(P) <=> (a+1,b) in L(P)", t_col, needs_identity=False),
        Law("T-idem", "zero ideal C and every proper hyperideal (a,b)-prime => no nontrivial idempotents and prime C-hyperideals are maximal", t_idem),
        Law("T-irr", "P a strong C-hyperideal of maximum length <= b, irreducible => P (a,b)-prime", t_irr),
        Law("T-loc", "P an (a,b)-prime C-hyperideal missing the MCS S => S^-1 P (a,b)-prime", t_loc),
        Law("T-poly", "P (a,b)-prime <=> P[x] passes the monomial (a,b)-prime check", t_poly, needs_identity=False),
        Law("T-mat", "M_2(P) (a,b)-prime => P (a,b)-prime", t_mat, needs_identity=False),
        Law("T-hom", "good hom psi: preimages of (a,b)-primes are (a,b)-prime; onto psi with Ker inside an (a,b)-prime C-hyperideal P maps P to an (a,b)-prime", t_hom, needs_identity=False),
        Law("T-quot", "P1 inside P2: P2 (a,b)-prime <=> P2/P1 (a,b)-prime in H/P1", t_quot, needs_identity=False),
        Law("W-rad", "zero ideal C with prime radical, P a weakly (a,b)-prime C-hyperideal => rad(P) prime and x^b in P off rad(0)", w_rad),
        Law("W-max", "every proper hyperideal weakly (a,b)-prime, a >= b => prime C-hyperideals are maximal", w_max),
        Law("W-zero", "(x,y) an (a,b)-zero of a weakly (a,b)-prime C-hyperideal P => 0 in (x+t)^a o y and 0 in x^a o (y+t) for t in P; x^a o t = 0 when the zero ideal is strong C", w_zero, needs_identity=False),
        Law("W-nil", "strongly distributive H, (x,y) an (a,b)-zero of a weakly C-hyperideal P => x o t nilpotent (zero ideal strong C) and y o t nilpotent (zero ideal C)", w_nil, needs_identity=False),
        Law("W-D", "weakly (a,b)-prime hyperideals with equal {x : x^b in P_i} have a weakly (a,b)-prime intersection", w_d, needs_identity=False),
        Law("W-fund-ring", "H/gamma* is a classical commutative ring", w_fund_ring, needs_identity=False),
        Law("W-fund", "P weakly (a,b)-prime <=> P/gamma* weakly (a,b)-prime in H/gamma*", w_fund, needs_identity=False),
        Law("W-prod", "box-shaped nonzero proper P of H1 x H2: weakly <=> (a,b)-prime <=> P1 x H2 or H1 x P2 with the proper factor (a,b)-prime", w_prod),
        Law("R-impl", "(a,b)-prime => (a,b)-closed, primary and weakly (a,b)-prime", r_impl, needs_identity=False),
        Law("R-rad", "power radical equals prime radical on C-hyperideals and is contained in it otherwise", r_rad, needs_identity=False),
    ]
}


def registry_table() -> str:
    """Markdown table of every registered law."""
    rows = ["| id | statement | mode |", "|---|---|---|"]
    for law in REGISTRY.values():
        rows.append(f"| {law.id} | {law.statement} | {'report-only' if law.report_only else 'gating'} |")
    return "\n".join(rows)


# -- verdicts and the suite ------------------------------------------------------


@dataclass
class TheoremVerdict:
    theorem_id: str
    instance_id: str
    outcome: str
    cases: int = 0
    hypothesis_met: int = 0
    violations: int = 0
    witness: dict | None = None
    report_only: bool = False
    outside_hypothesis_failures: int = 0

    def as_dict(self) -> dict:
        d = {
            "theorem": self.theorem_id,
            "instance": self.instance_id,
            "outcome": self.outcome,
            "counts": {
                "cases": self.cases,
                "hypothesis_met": self.hypothesis_met,
                "violations": self.violations,
                "outside_hypothesis_failures": self.outside_hypothesis_failures,
            },
            "report_only": self.report_only,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _cases(law: Law, ctx: Context) -> Iterator[Case]:
    """The law's cases, with every hypothesis cleared when it needs an identity the ring lacks."""
    excluded = law.needs_identity and not ctx.has_identity
    for c in law.check(ctx):
        yield Case(c.key, False, c.ok, {**c.detail, "excluded": "no identity"}) if excluded and c.hyp else c


def _fold(law: Law, inst: Instance, cases: Iterator[Case], grid) -> TheoremVerdict:
    v = TheoremVerdict(law.id, inst.id, "hypothesis_not_met", report_only=law.report_only)
    for c in cases:
        v.cases += 1
        if not c.hyp:
            if not c.ok:
                v.outside_hypothesis_failures += 1
            continue
        v.hypothesis_met += 1
        if not c.ok:
            v.violations += 1
            if v.witness is None:
                v.witness = {
                    "theorem": law.id,
                    "instance": inst.recipe,
                    "grid": list(grid),
                    "key": _jsonable(c.key),
                    "detail": _jsonable(c.detail),
                }
    if v.violations:
        v.outcome = "violation"
    elif v.hypothesis_met:
        v.outcome = "holds"
    return v


def run_instance(inst: Instance, grid=(4, 4), theorems=None) -> list[TheoremVerdict]:
    ctx = Context(inst.ring, tuple(grid))
    ids = theorems or list(REGISTRY)
    return [_fold(REGISTRY[t], inst, _cases(REGISTRY[t], ctx), grid) for t in ids]


def _run_instance_payload(args):
    iid, recipe, tags, grid, theorems = args
    return [v.as_dict() for v in run_instance(Instance(iid, recipe, frozenset(tags)), grid, theorems)]


def _from_dict(d: dict) -> TheoremVerdict:
    c = d["counts"]
    return TheoremVerdict(
        d["theorem"], d["instance"], d["outcome"], c["cases"], c["hypothesis_met"], c["violations"],
        d.get("witness"), d.get("report_only", False), c.get("outside_hypothesis_failures", 0),
    )


def run_suite(corpus: Corpus, grid=(4, 4), theorems=None, jobs: int | None = 1) -> list[TheoremVerdict]:
    """Evaluate every law on every instance; ``jobs > 1`` fans instances out to processes.

    The merged list is ordered by registry order, then corpus order, whatever
    the completion order was.
    """
    ids = list(theorems or REGISTRY)
    unknown = [t for t in ids if t not in REGISTRY]
    if unknown:
        raise KeyError(f"unknown theorem ids {unknown}")
    if jobs is None:
        jobs = min(os.cpu_count() or 1, len(corpus.instances))
    if jobs > 1:
        payload = [(i.id, i.recipe, sorted(i.tags), tuple(grid), ids) for i in corpus.instances]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            per_inst = [[_from_dict(d) for d in res] for res in ex.map(_run_instance_payload, payload)]
    else:
        per_inst = [run_instance(i, grid, ids) for i in corpus.instances]
    order = {t: k for k, t in enumerate(ids)}
    inst_order = {inst.id: k for k, inst in enumerate(corpus.instances)}
    flat = [v for vs in per_inst for v in vs]
    flat.sort(key=lambda v: (order[v.theorem_id], inst_order[v.instance_id]))
    return flat


def coverage(verdicts: list[TheoremVerdict]) -> list[dict]:
    out: dict[str, dict] = {}
    for v in verdicts:
        row = out.setdefault(v.theorem_id, {"theorem": v.theorem_id, "satisfied": 0, "vacuous": 0})
        if v.hypothesis_met:
            row["satisfied"] += 1
        else:
            row["vacuous"] += 1
    return list(out.values())


def gating_violations(verdicts: list[TheoremVerdict]) -> list[TheoremVerdict]:
    return [v for v in verdicts if v.outcome == "violation" and not v.report_only]


def report(corpus: Corpus, verdicts: list[TheoremVerdict]) -> dict:
    return {
        "version": REPORT_VERSION,
        "seed": corpus.seed,
        "verdicts": [v.as_dict() for v in verdicts],
        "coverage": coverage(verdicts),
    }


def report_json(corpus: Corpus, verdicts: list[TheoremVerdict]) -> str:
    return json.dumps(report(corpus, verdicts), sort_keys=True, indent=1)


def validate_report(doc: dict) -> None:
    """Raise ``ValueError`` unless ``doc`` follows the report schema."""
    if set(doc) != {"version", "seed", "verdicts", "coverage"}:
        raise ValueError(f"bad top-level keys {sorted(doc)}")
    for v in doc["verdicts"]:
        for k in ("theorem", "instance", "outcome"):
            if k not in v:
                raise ValueError(f"verdict missing {k}")
        if v["outcome"] not in OUTCOMES:
            raise ValueError(f"bad outcome {v['outcome']!r}")
        if v["outcome"] == "violation" and "witness" not in v:
            raise ValueError("violation without witness")
    for c in doc["coverage"]:
        if set(c) != {"theorem", "satisfied", "vacuous"}:
            raise ValueError(f"bad coverage row {c}")


def replay(witness: dict) -> bool:
    """Rebuild the witness's ring from its recipe and re-check that one case.

    Returns ``True`` when the violation reproduces.
    """
    law = REGISTRY[witness["theorem"]]
    _build_frozen.cache_clear()
    H = build_instance(witness["instance"])
    ctx = Context(H, tuple(witness["grid"]))
    want = witness["key"]
    for c in _cases(law, ctx):
        if _jsonable(c.key) == want:
            return c.hyp and not c.ok
    return False
