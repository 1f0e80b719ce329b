"""Hyperideal predicates: prime, primary, C-, (alpha,beta)-prime and friends."""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import (
    ElemSet,
    HyperRing,
    HyperRingError,
    Hyperideal,
    bits_of,
    enumerate_hyperideals,
    ideal_generate,
    is_hyperideal,
    lowest,
    residual,
    subgroup_closure,
)

DEFAULT_GRID = (4, 4)
# carriers above this size use the translation-closure route for sums families
EXPLICIT_SUMS_BOUND = 16


def _proper(P: Hyperideal) -> None:
    if not P.is_proper:
        raise HyperRingError("predicate is defined for proper hyperideals only")


# -- row tables ------------------------------------------------------------


def _in_rows(H, pmask: int) -> tuple[int, ...]:
    """``rows[a]`` = mask of ``y`` with ``a o y`` inside ``pmask``."""
    key = ("in_rows", pmask)
    rows = H.cache.get(key)
    if rows is None:
        notp = ~pmask
        rows = tuple(
            sum(1 << y for y in range(H.n) if not H.mul[a][y] & notp) for a in range(H.n)
        )
        H.cache[key] = rows
    return rows


def _zero_free_rows(H) -> tuple[int, ...]:
    """``rows[a]`` = mask of ``y`` with ``0`` not in ``a o y``."""
    rows = H.cache.get("zero_free_rows")
    if rows is None:
        z = H.zero
        rows = tuple(
            sum(1 << y for y in range(H.n) if not H.mul[a][y] >> z & 1) for a in range(H.n)
        )
        H.cache["zero_free_rows"] = rows
    return rows


def _and_rows(rows, A: int, start: int) -> int:
    acc = start
    for a in bits_of(A):
        acc &= rows[a]
        if not acc:
            break
    return acc


def power_times_in(H, pmask: int, x: int, alpha: int) -> int:
    """Mask of all ``y`` with ``x^alpha o y`` inside ``pmask``."""
    return _and_rows(_in_rows(H, pmask), H.power_mask(x, alpha), H.full_mask)


# -- basic predicates ------------------------------------------------------


def is_prime(P: Hyperideal) -> bool:
    _proper(P)
    H, p = P.ring, P.mask
    for a in range(H.n):
        if p >> a & 1:
            continue
        for b in range(H.n):
            if not p >> b & 1 and not H.mul[a][b] & ~p:
                return False
    return True


def is_maximal(P: Hyperideal, ideals: list[Hyperideal] | None = None) -> bool:
    _proper(P)
    ideals = enumerate_hyperideals(P.ring) if ideals is None else ideals
    return not any(P < I and I.is_proper for I in ideals)


def radical_via_powers(P: Hyperideal) -> ElemSet:
    H, p = P.ring, P.mask
    out = 0
    for r in range(H.n):
        if any(not m & ~p for m in H.power_cycle(r)):
            out |= 1 << r
    return ElemSet(H.n, out)


def is_primary(P: Hyperideal) -> bool:
    _proper(P)
    H, p = P.ring, P.mask
    d = radical_via_powers(P).bits
    for a in range(H.n):
        if p >> a & 1:
            continue
        for b in range(H.n):
            if not d >> b & 1 and not H.mul[a][b] & ~p:
                return False
    return True


def prime_ideals(H: HyperRing) -> list[Hyperideal]:
    return [I for I in enumerate_hyperideals(H, bound=H.n) if I.is_proper and is_prime(I)]


def radical_via_primes(P: Hyperideal) -> Hyperideal:
    """Intersection of the primes containing ``P``; ``H`` if there are none."""
    H = P.ring
    acc = H.full_mask
    for Q in prime_ideals(H):
        if P <= Q:
            acc &= Q.mask
    return Hyperideal(H, acc)


# -- product families ------------------------------------------------------


@dataclass(frozen=True)
class ProductFamily:
    """Finite products ``r1 o ... o rk`` (``sets``) and finite sums of them.

    ``sums`` is ``None`` when the carrier is too large for explicit closure;
    ``omega`` is then used (see :func:`strong_c_via_omega`).
    """

    ring: HyperRing
    min_length: int
    sets: frozenset[int]
    sums: frozenset[int] | None
    omega: int = field(default=0)


def _product_closure(H: HyperRing, min_length: int) -> set[int]:
    if min_length == 1:
        start = {1 << r for r in range(H.n)}
    elif min_length == 2:
        start = {H.mul[a][b] for a in range(H.n) for b in range(H.n)}
    else:
        raise HyperRingError("min_length must be 1 or 2")
    sets = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for A in frontier:
            for r in range(H.n):
                B = H.prod(A, 1 << r)
                if B not in sets:
                    sets.add(B)
                    nxt.append(B)
        frontier = nxt
    return sets


def _sum_closure(H: HyperRing, sets: set[int]) -> set[int]:
    sums = set(sets)
    frontier = list(sets)
    gens = sorted(sets)
    while frontier:
        nxt = []
        for E in frontier:
            for A in gens:
                B = H.sumset(E, A)
                if B not in sums:
                    sums.add(B)
                    nxt.append(B)
        frontier = nxt
    return sums


def difference_subgroup(H: HyperRing, sets) -> int:
    """Subgroup generated by ``a - b`` for ``a, b`` in a common member of ``sets``."""
    gens = 0
    for A in sets:
        a0 = lowest(A)
        for b in bits_of(A):
            gens |= 1 << H.sub(b, a0)
    return subgroup_closure(H, gens)


def product_family(H: HyperRing, min_length: int = 1, explicit_sums: bool | None = None) -> ProductFamily:
    key = ("family", min_length, explicit_sums)
    fam = H.cache.get(key)
    if fam is None:
        sets = _product_closure(H, min_length)
        if explicit_sums is None:
            explicit_sums = H.n <= EXPLICIT_SUMS_BOUND or min_length != 1
        sums = frozenset(_sum_closure(H, sets)) if explicit_sums else None
        fam = ProductFamily(H, min_length, frozenset(sets), sums, difference_subgroup(H, sets))
        H.cache[key] = fam
    return fam


def is_C_hyperideal(P: Hyperideal, min_length: int = 1) -> bool:
    p = P.mask
    fam = product_family(P.ring, min_length)
    return all(not (A & p) or not (A & ~p) for A in fam.sets)


def strong_c_via_omega(P: Hyperideal) -> bool:
    """Strong-C test for length >= 1 families: sums are closed under
    translation, so every sum lies in one coset of ``P`` iff the difference
    subgroup of the products is inside ``P``."""
    fam = product_family(P.ring, 1)
    return not fam.omega & ~P.mask


def is_strong_C_hyperideal(P: Hyperideal, min_length: int = 1) -> bool:
    fam = product_family(P.ring, min_length)
    if fam.sums is None:
        return strong_c_via_omega(P)
    p = P.mask
    return all(not (E & p) or not (E & ~p) for E in fam.sums)


# -- (alpha, beta) predicates ----------------------------------------------


def _power_in(H, x: int, k: int, pmask: int) -> bool:
    return not H.power_mask(x, k) & ~pmask


def ab_prime_witness(H, pmask: int, alpha: int, beta: int, weakly: bool = False):
    """First ``(x, y)`` breaking (weak) (alpha,beta)-primeness of ``pmask``, or ``None``.

    Works on any ring-like object exposing ``n``, ``mul``, ``zero``,
    ``full_mask`` and ``power_mask``.
    """
    rows = _in_rows(H, pmask)
    zrows = _zero_free_rows(H) if weakly else None
    notp = H.full_mask & ~pmask
    for x in range(H.n):
        if _power_in(H, x, beta, pmask):
            continue
        xa = H.power_mask(x, alpha)
        ys = _and_rows(rows, xa, notp)
        if ys and weakly:
            ys = _and_rows(zrows, xa, ys)
        if ys:
            return x, lowest(ys)
    return None


def is_ab_closed(P: Hyperideal, alpha: int, beta: int) -> bool:
    _proper(P)
    H, p = P.ring, P.mask
    return all(not _power_in(H, x, alpha, p) or _power_in(H, x, beta, p) for x in range(H.n))


def is_ab_prime(P: Hyperideal, alpha: int, beta: int) -> bool:
    _proper(P)
    return ab_prime_witness(P.ring, P.mask, alpha, beta) is None


def is_weakly_ab_prime(P: Hyperideal, alpha: int, beta: int) -> bool:
    _proper(P)
    return ab_prime_witness(P.ring, P.mask, alpha, beta, weakly=True) is None


def residual_characterization(P: Hyperideal, alpha: int, beta: int) -> bool:
    """``P = (P : x^alpha)`` for every ``x`` with ``x^beta`` not inside ``P``."""
    _proper(P)
    H = P.ring
    for x in range(H.n):
        if H.power(x, beta) <= P.set:
            continue
        if residual(P, H.power(x, alpha)) != P:
            return False
    return True


def ideal_characterization(P: Hyperideal, alpha: int, beta: int) -> bool:
    """``x^alpha o P' in P`` forces ``x^beta in P`` or ``P' in P`` over all hyperideals ``P'``."""
    _proper(P)
    H = P.ring
    ideals = enumerate_hyperideals(H, bound=H.n)
    for x in range(H.n):
        if H.power(x, beta) <= P.set:
            continue
        xa = H.power(x, alpha)
        for Q in ideals:
            if H.subset_product(xa, Q.set) <= P.set and not Q <= P:
                return False
    return True


def is_principal_ring(H: HyperRing) -> bool:
    """Every hyperideal equals ``<x>`` for some ``x``."""
    principal = {ideal_generate(H, [x]).mask for x in range(H.n)}
    return all(I.mask in principal for I in enumerate_hyperideals(H, bound=H.n))


def principal_characterizations(P: Hyperideal, alpha: int, beta: int) -> dict[str, bool]:
    """The three ideal-quantified variants of (alpha,beta)-primeness.

    ``ideals``: ``P1^alpha o P2 in P`` forces ``P1^beta in P`` or ``P2 in P``;
    ``residual``: ``(P : P1^alpha) = P`` whenever ``P1^beta`` is not inside ``P``;
    ``element``: ``P1^alpha o y in P`` forces ``P1^beta in P`` or ``y in P``.
    """
    _proper(P)
    H, p = P.ring, P.mask
    ideals = enumerate_hyperideals(H, bound=H.n)
    res = {"ideals": True, "residual": True, "element": True}
    for P1 in ideals:
        if not H.set_power_mask(P1.mask, beta) & ~p:
            continue
        pa = H.set_power_mask(P1.mask, alpha)
        for P2 in ideals:
            if not H.prod(pa, P2.mask) & ~p and P2.mask & ~p:
                res["ideals"] = False
                break
        if residual(P, H.elems(pa)) != P:
            res["residual"] = False
        for y in range(H.n):
            if not p >> y & 1 and not H.prod(pa, 1 << y) & ~p:
                res["element"] = False
                break
    return res


def q_of(P: Hyperideal, beta: int) -> ElemSet:
    H, p = P.ring, P.mask
    return ElemSet(H.n, sum(1 << x for x in range(H.n) if _power_in(H, x, beta, p)))


# -- regions ----------------------------------------------------------------

REGION_KINDS = ("prime", "closed", "weakly")


@dataclass(frozen=True)
class Region:
    kind: str
    alpha_max: int
    beta_max: int
    pairs: frozenset[tuple[int, int]]

    def __contains__(self, ab) -> bool:
        return ab in self.pairs

    def monotone(self) -> bool:
        """Down-closed in alpha and up-closed in beta inside the grid."""
        for a, b in self.pairs:
            for a2 in range(1, a + 1):
                for b2 in range(b, self.beta_max + 1):
                    if (a2, b2) not in self.pairs:
                        return False
        return True

    def column_law_violations(self) -> list[tuple[int, int]]:
        """Grid points where ``(a, b)`` and ``(a + 1, b)`` disagree."""
        return [
            (a, b)
            for a in range(1, self.alpha_max)
            for b in range(1, self.beta_max + 1)
            if ((a, b) in self.pairs) != ((a + 1, b) in self.pairs)
        ]

    def render(self) -> str:
        head = "a\\b " + " ".join(f"{b:>2}" for b in range(1, self.beta_max + 1))
        lines = [head]
        for a in range(1, self.alpha_max + 1):
            cells = " ".join(" #" if (a, b) in self.pairs else " ." for b in range(1, self.beta_max + 1))
            lines.append(f"{a:>3} {cells}")
        return "\n".join(lines)


def compute_region(P: Hyperideal, kind: str = "prime", alpha_max: int = 4, beta_max: int = 4) -> Region:
    _proper(P)
    pred = {"prime": is_ab_prime, "closed": is_ab_closed, "weakly": is_weakly_ab_prime}.get(kind)
    if pred is None:
        raise HyperRingError(f"unknown region kind {kind!r}")
    pairs = frozenset(
        (a, b) for a in range(1, alpha_max + 1) for b in range(1, beta_max + 1) if pred(P, a, b)
    )
    return Region(kind, alpha_max, beta_max, pairs)


# -- zeros, nilpotents, idempotents ----------------------------------------


@dataclass(frozen=True)
class AbZero:
    x: int
    y: int
    alpha: int
    beta: int


def find_ab_zeros(P: Hyperideal, alpha: int, beta: int) -> list[AbZero]:
    """Pairs with ``0 in x^alpha o y``, ``x^beta`` not inside ``P``, ``y`` not in ``P``."""
    H, p, z = P.ring, P.mask, P.ring.zero
    out = []
    for x in range(H.n):
        if _power_in(H, x, beta, p):
            continue
        xa = H.power_mask(x, alpha)
        for y in range(H.n):
            if not p >> y & 1 and H.prod(xa, 1 << y) >> z & 1:
                out.append(AbZero(x, y, alpha, beta))
    return out


def nilpotents(H: HyperRing) -> ElemSet:
    z = H.zero
    return ElemSet(H.n, sum(1 << x for x in range(H.n) if any(m >> z & 1 for m in H.power_cycle(x))))


def idempotents(H: HyperRing) -> ElemSet:
    """Elements with ``e in e o e``."""
    return ElemSet(H.n, sum(1 << e for e in range(H.n) if H.mul[e][e] >> e & 1))


def nontrivial_idempotents(H: HyperRing) -> ElemSet:
    return idempotents(H) - H.flags.identities - H.elems(1 << H.zero)


# -- chain length and irreducibility ---------------------------------------


def residual_chain(P: Hyperideal, x: int) -> list[int]:
    """Masks ``P_0 = P, P_i = (P : x^i)`` up to and including the first repeat."""
    H = P.ring
    chain = [P.mask]
    i = 1
    while True:
        cur = residual(P, H.power(x, i)).mask
        chain.append(cur)
        if cur == chain[-2]:
            return chain
        i += 1


def stabilization_index(P: Hyperideal, x: int) -> int:
    return len(residual_chain(P, x)) - 2


def max_length(P: Hyperideal) -> int:
    """Largest stabilization index of the residual chains ``(P : x^i)`` over ``x``."""
    _proper(P)
    return max(stabilization_index(P, x) for x in range(P.ring.n))


def is_irreducible(P: Hyperideal, ideals: list[Hyperideal] | None = None) -> bool:
    _proper(P)
    ideals = enumerate_hyperideals(P.ring, bound=P.ring.n) if ideals is None else ideals
    above = [I for I in ideals if P < I]
    for i, I in enumerate(above):
        for J in above[i:]:
            if I.mask & J.mask == P.mask:
                return False
    return True


# -- report -----------------------------------------------------------------


@dataclass
class ClassificationReport:
    ideal: list[int]
    proper: bool
    prime: bool | None = None
    primary: bool | None = None
    maximal: bool | None = None
    c_hyperideal: bool = False
    strong_c: bool = False
    irreducible: bool | None = None
    max_length: int | None = None
    radical_primes: list[int] = field(default_factory=list)
    radical_powers: list[int] = field(default_factory=list)
    regions: dict[str, list[list[int]]] = field(default_factory=dict)
    region_text: dict[str, str] = field(default_factory=dict)
    d_sets: dict[int, list[int]] = field(default_factory=dict)
    zeros: dict[str, list[list[int]]] = field(default_factory=dict)
    nilpotents: list[int] = field(default_factory=list)


def classify(P: Hyperideal, alpha_max: int = 4, beta_max: int = 4) -> ClassificationReport:
    H = P.ring
    rep = ClassificationReport(ideal=list(P), proper=P.is_proper)
    rep.c_hyperideal = is_C_hyperideal(P)
    rep.strong_c = is_strong_C_hyperideal(P)
    rep.radical_primes = list(radical_via_primes(P))
    rep.radical_powers = list(radical_via_powers(P))
    rep.nilpotents = list(nilpotents(H))
    if not P.is_proper:
        return rep
    rep.prime = is_prime(P)
    rep.primary = is_primary(P)
    rep.maximal = is_maximal(P)
    rep.irreducible = is_irreducible(P)
    rep.max_length = max_length(P)
    for kind in REGION_KINDS:
        reg = compute_region(P, kind, alpha_max, beta_max)
        rep.regions[kind] = sorted([a, b] for a, b in reg.pairs)
        rep.region_text[kind] = reg.render()
    rep.d_sets = {b: list(q_of(P, b)) for b in range(1, beta_max + 1)}
    for a in range(1, alpha_max + 1):
        for b in range(1, beta_max + 1):
            zs = find_ab_zeros(P, a, b)
            if zs:
                rep.zeros[f"{a},{b}"] = [[z.x, z.y] for z in zs]
    return rep


def check_is_ideal(H: HyperRing, mask: int) -> Hyperideal:
    if not is_hyperideal(H, mask):
        raise HyperRingError(f"{H.elems(mask)!r} is not a hyperideal")
    return Hyperideal(H, mask)
