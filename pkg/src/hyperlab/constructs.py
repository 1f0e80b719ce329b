"""Derived hyperrings: products, quotients, hypermatrices, localizations,
fundamental rings and the monomial layer of polynomial hyperrings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .classify import ab_prime_witness, difference_subgroup, product_family
from .kernel import (
    ElemSet,
    HyperRing,
    HyperRingError,
    Hyperideal,
    bits_of,
    is_hyperideal,
    lowest,
    mask_of,
)


class IllDefinedOperation(HyperRingError):
    """An induced operation depends on the chosen representatives."""

    def __init__(self, msg: str, witness: tuple):
        super().__init__(f"{msg}: witness {witness}")
        self.witness = witness


# -- products ----------------------------------------------------------------


class ProductRing(HyperRing):
    """``H_1 x ... x H_k`` with componentwise addition and hyperproduct."""

    def __init__(self, *factors: HyperRing, check: bool = True):
        if not factors:
            raise HyperRingError("need at least one factor")
        for F in factors:
            if not F.flags.is_hyperring:
                raise HyperRingError(f"factor {F!r} is not a multiplicative hyperring")
        self.factors = tuple(factors)
        self.coords = list(itertools.product(*(range(F.n) for F in factors)))
        index = {c: i for i, c in enumerate(self.coords)}
        self._index = index
        n = len(self.coords)
        add = [
            [index[tuple(F.add[a][b] for F, a, b in zip(factors, ca, cb))] for cb in self.coords]
            for ca in self.coords
        ]
        mul = []
        for ca in self.coords:
            row = []
            for cb in self.coords:
                parts = [list(bits_of(F.mul[a][b])) for F, a, b in zip(factors, ca, cb)]
                row.append(mask_of(index[c] for c in itertools.product(*parts)))
            mul.append(row)
        labels = ["(" + ",".join(F.labels[a] for F, a in zip(factors, c)) + ")" for c in self.coords]
        name = " x ".join(F.name or "?" for F in factors)
        super().__init__(n, add, mul, labels=labels, name=name, check=check)

    def index_of(self, coords: Sequence[int]) -> int:
        return self._index[tuple(coords)]

    def box(self, masks: Sequence[int]) -> int:
        parts = [list(bits_of(m)) for m in masks]
        return mask_of(self._index[c] for c in itertools.product(*parts))

    def projection_mask(self, mask: int, i: int) -> int:
        return mask_of(self.coords[e][i] for e in bits_of(mask))


def make_product(*factors: HyperRing) -> ProductRing:
    return ProductRing(*factors)


def decompose_product_ideal(P: Hyperideal) -> list[Hyperideal] | None:
    """Factors ``P_i`` with ``P = P_1 x ... x P_k``, or ``None`` if ``P`` is not a box."""
    R = P.ring
    if not isinstance(R, ProductRing):
        raise HyperRingError("not an ideal of a product ring")
    projs = [R.projection_mask(P.mask, i) for i in range(len(R.factors))]
    if R.box(projs) != P.mask:
        return None
    return [Hyperideal(F, m) for F, m in zip(R.factors, projs)]


# -- quotients -----------------------------------------------------------------


class QuotientRing(HyperRing):
    """``H / I`` with ``(x+I) o (y+I) = {c + I : c in x o y}``."""

    def __init__(self, base: HyperRing, modulus: Hyperideal, check: bool = True):
        if modulus.ring is not base:
            raise HyperRingError("modulus is not an ideal of the base ring")
        self.base = base
        self.modulus = modulus
        cosets: list[int] = []
        proj = [-1] * base.n
        for x in range(base.n):
            if proj[x] >= 0:
                continue
            c = base.translate(modulus.mask, x)
            for e in bits_of(c):
                proj[e] = len(cosets)
            cosets.append(c)
        self.cosets = tuple(cosets)
        self.proj = tuple(proj)
        m = len(cosets)
        reps = [lowest(c) for c in cosets]
        add = [[proj[base.add[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
        mul = []
        for i in range(m):
            row = []
            for j in range(m):
                ref = self._image(base.mul[reps[i]][reps[j]])
                for x in bits_of(cosets[i]):
                    for y in bits_of(cosets[j]):
                        if self._image(base.mul[x][y]) != ref:
                            raise IllDefinedOperation("quotient hyperproduct depends on representatives", (x, y, reps[i], reps[j]))
                row.append(ref)
            mul.append(row)
        labels = [base.labels[r] + "+I" for r in reps]
        super().__init__(m, add, mul, labels=labels, name=f"{base.name}/{list(modulus)}", check=check)

    def _image(self, mask: int) -> int:
        return mask_of(self.proj[e] for e in bits_of(mask))

    def image(self, mask: int) -> int:
        return self._image(mask)

    def preimage(self, mask: int) -> int:
        out = 0
        for c in bits_of(mask):
            out |= self.cosets[c]
        return out

    def ideal_image(self, J: Hyperideal) -> Hyperideal:
        """``J / I`` for an ideal ``J`` containing the modulus."""
        if not self.modulus <= J:
            raise HyperRingError("ideal does not contain the modulus")
        return Hyperideal(self, self._image(J.mask))


def make_quotient(H: HyperRing, I: Hyperideal) -> QuotientRing:
    if not I.is_proper:
        raise HyperRingError("quotient by the whole ring")
    return QuotientRing(H, I)


# -- hypermatrices -------------------------------------------------------------

DEFAULT_MATRIX_BOUND = 81


class MatrixRing(HyperRing):
    """``M_m(H)``: entry ``(i, j)`` of ``A o B`` ranges over ``sum_k a_ik o b_kj``."""

    def __init__(self, base: HyperRing, m: int = 2, bound: int = DEFAULT_MATRIX_BOUND):
        size = base.n ** (m * m)
        if size > bound:
            raise HyperRingError(f"M_{m} over a carrier of {base.n} has {size} elements (> {bound})")
        self.base = base
        self.m = m
        self.entries = list(itertools.product(range(base.n), repeat=m * m))
        index = {e: i for i, e in enumerate(self.entries)}
        self._index = index
        add = [
            [index[tuple(base.add[a][b] for a, b in zip(ea, eb))] for eb in self.entries]
            for ea in self.entries
        ]
        mul = []
        for ea in self.entries:
            row = []
            for eb in self.entries:
                cells = []
                for i in range(m):
                    for j in range(m):
                        acc = base.mul[ea[i * m]][eb[j]]
                        for k in range(1, m):
                            acc = base.sumset(acc, base.mul[ea[i * m + k]][eb[k * m + j]])
                        cells.append(list(bits_of(acc)))
                row.append(mask_of(index[c] for c in itertools.product(*cells)))
            mul.append(row)
        labels = ["[" + ",".join(base.labels[a] for a in e) + "]" for e in self.entries]
        # associativity over n^(m^2) elements is expensive; flags are computed on demand
        super().__init__(len(self.entries), add, mul, labels=labels, name=f"M{m}({base.name})", check=False)

    def index_of(self, entries: Sequence[int]) -> int:
        return self._index[tuple(entries)]

    def corner(self, x: int) -> int:
        z = self.base.zero
        return self._index[(x,) + (z,) * (self.m * self.m - 1)]

    def matrices_over(self, pmask: int) -> int:
        """``M_m(P)``: matrices with every entry in ``pmask``."""
        return mask_of(i for i, e in enumerate(self.entries) if all(pmask >> a & 1 for a in e))

    def contained(self, A: int, B: int) -> bool:
        """Entrywise containment of two sets of matrices."""
        for i in range(self.m * self.m):
            ea = mask_of(self.entries[k][i] for k in bits_of(A))
            eb = mask_of(self.entries[k][i] for k in bits_of(B))
            if ea & ~eb:
                return False
        return True


def make_matrix_ring(H: HyperRing, m: int = 2, bound: int = DEFAULT_MATRIX_BOUND) -> MatrixRing:
    return MatrixRing(H, m, bound)


def matrix_ab_prime(M: MatrixRing, P: Hyperideal, alpha: int, beta: int) -> bool:
    """Whether ``M_m(P)`` is (alpha,beta)-prime in ``M``."""
    pm = M.matrices_over(P.mask)
    if pm == M.full_mask:
        raise HyperRingError("M_m(P) is not proper")
    return ab_prime_witness(M, pm, alpha, beta) is None


# -- localization --------------------------------------------------------------


class LocalizedRing:
    """``S^-1 H``: classes of ``H x S`` under
    ``(x1,t1) ~ (x2,t2)`` iff ``t o t1 o x2 = t o t2 o x1`` for some ``t in S``,
    closed transitively.

    ``mul[i][j]`` and ``addsets[i][j]`` are masks over class indices. Both are
    unions over all representatives; ``mul_well_defined`` records whether
    every choice of representatives gave the same set.
    """

    def __init__(self, base: HyperRing, S: ElemSet):
        scal = base.flags.scalar_identities
        if not scal:
            raise HyperRingError("localization needs a scalar identity")
        smask = S.bits
        if not smask & scal.bits:
            raise HyperRingError("S must contain the scalar identity")
        for s in bits_of(smask):
            for t in bits_of(smask):
                if base.mul[s][t] & ~smask:
                    raise HyperRingError(f"S is not closed: {s} o {t} leaves S")
        self.base = base
        self.S = S
        pairs = [(x, t) for x in range(base.n) for t in bits_of(smask)]
        self.pairs = pairs
        pidx = {p: i for i, p in enumerate(pairs)}
        svals = list(bits_of(smask))

        def prod3(a, b, c):
            return base.prod(base.mul[a][b], 1 << c)

        def related(p, q):
            (x1, t1), (x2, t2) = p, q
            return any(prod3(t, t1, x2) == prod3(t, t2, x1) for t in svals)

        parent = list(range(len(pairs)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        direct = set()
        for i, p in enumerate(pairs):
            for j in range(i + 1, len(pairs)):
                if related(p, pairs[j]):
                    direct.add((i, j))
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for i in range(len(pairs)):
            groups.setdefault(find(i), []).append(i)
        classes = sorted(groups.values())
        self.classes = [tuple(pairs[i] for i in g) for g in classes]
        cls_of = [0] * len(pairs)
        for c, g in enumerate(classes):
            for i in g:
                cls_of[i] = c
        self._cls = {p: cls_of[i] for i, p in enumerate(pairs)}
        self.closure_merged = any(
            (i, j) not in direct for g in classes for a, i in enumerate(g) for j in g[a + 1:]
        )
        self.n = len(classes)
        self.full_mask = (1 << self.n) - 1
        one = lowest(scal.bits & smask)
        self.one = self._cls[(one, one)]
        self.zero = self._cls[(base.zero, one)]

        def cls_mask(nums: int, dens: int) -> int:
            return mask_of(self._cls[(a, b)] for a in bits_of(nums) for b in bits_of(dens))

        mul = [[0] * self.n for _ in range(self.n)]
        addsets = [[0] * self.n for _ in range(self.n)]
        well = True
        for i, ci in enumerate(self.classes):
            for j, cj in enumerate(self.classes):
                seen_m = set()
                for x1, t1 in ci:
                    for x2, t2 in cj:
                        den = base.mul[t1][t2]
                        m = cls_mask(base.mul[x1][x2], den)
                        seen_m.add(m)
                        mul[i][j] |= m
                        nums = base.sumset(base.mul[t1][x2], base.mul[t2][x1])
                        addsets[i][j] |= cls_mask(nums, den)
                if len(seen_m) > 1:
                    well = False
        self.mul = tuple(tuple(r) for r in mul)
        self.addsets = tuple(tuple(r) for r in addsets)
        self.mul_well_defined = well
        self.cache: dict = {}
        self._pow: dict[int, list[int]] = {}

    def class_of(self, x: int, t: int) -> int:
        return self._cls[(x, t)]

    def prod(self, A: int, B: int) -> int:
        m = 0
        for a in bits_of(A):
            row = self.mul[a]
            for b in bits_of(B):
                m |= row[b]
        return m

    power_mask = HyperRing.power_mask

    def localize_ideal(self, A: Hyperideal) -> int:
        """``S^-1 A``: classes meeting ``{a/t : a in A, t in S}``."""
        return mask_of(self._cls[(a, t)] for a in bits_of(A.mask) for t in bits_of(self.S.bits))


def localize(H: HyperRing, S: ElemSet) -> LocalizedRing:
    return LocalizedRing(H, S)


def is_multiplicative_closed(H: HyperRing, S: ElemSet) -> bool:
    s = S.bits
    return bool(s & H.flags.scalar_identities.bits) and all(
        not H.mul[a][b] & ~s for a in bits_of(s) for b in bits_of(s)
    )


def multiplicative_closed_subsets(H: HyperRing, limit: int = 64) -> list[ElemSet]:
    """MCS generated by ``{1, s}`` for each ``s``, plus ``{1}`` when closed."""
    scal = H.flags.scalar_identities
    if not scal:
        return []
    one = lowest(scal.bits)
    out = []
    seen = set()
    for s in range(H.n):
        m = (1 << one) | (1 << s)
        while True:
            nxt = m
            for a in bits_of(m):
                for b in bits_of(m):
                    nxt |= H.mul[a][b]
            if nxt == m:
                break
            m = nxt
        if m not in seen:
            seen.add(m)
            out.append(H.elems(m))
        if len(out) >= limit:
            break
    return sorted(out, key=ElemSet.sort_key)


def localized_ab_prime(L: LocalizedRing, A: Hyperideal, alpha: int, beta: int):
    """``None`` if ``S^-1 A`` is (alpha,beta)-prime in ``L``, else a witness.

    A whole-ring ``S^-1 A`` is reported as ``("improper",)``.
    """
    pm = L.localize_ideal(A)
    if pm == L.full_mask:
        return ("improper",)
    return ab_prime_witness(L, pm, alpha, beta)


# -- fundamental ring ------------------------------------------------------------


class FundamentalRing(HyperRing):
    """``H / gamma*`` with its induced single-valued operations."""

    def __init__(self, base: HyperRing, classes: Sequence[int], closure_route: str):
        self.base = base
        self.closure_route = closure_route
        proj = [-1] * base.n
        for c, cm in enumerate(classes):
            for e in bits_of(cm):
                proj[e] = c
        self.classes = tuple(classes)
        self.proj = tuple(proj)
        k = len(classes)
        add = [[-1] * k for _ in range(k)]
        mul = [[0] * k for _ in range(k)]
        for i, ci in enumerate(classes):
            for j, cj in enumerate(classes):
                sums = self._image(base.sumset(ci, cj))
                prods = self._image(base.prod(ci, cj))
                if sums.bit_count() != 1:
                    raise IllDefinedOperation("induced addition is not single-valued", (i, j, sums))
                if prods.bit_count() != 1:
                    raise IllDefinedOperation("induced multiplication is not single-valued", (i, j, prods))
                add[i][j] = lowest(sums)
                mul[i][j] = prods
        labels = ["[" + base.labels[lowest(c)] + "]" for c in classes]
        super().__init__(k, add, mul, labels=labels, name=f"{base.name}/gamma*")

    def _image(self, mask: int) -> int:
        return mask_of(self.proj[e] for e in bits_of(mask))

    def image(self, mask: int) -> int:
        return self._image(mask)

    def is_classical_ring(self) -> bool:
        f = self.flags
        return (
            f.is_commutative_group
            and f.is_semihypergroup
            and f.strongly_distributive
            and f.mul_commutative
            and all(m.bit_count() == 1 for row in self.mul for m in row)
        )

    def ideal_image(self, P: Hyperideal) -> int:
        """``P / gamma*``: the classes meeting ``P``."""
        return self._image(P.mask)


def gamma_star_classes(H: HyperRing, min_length: int = 1) -> tuple[list[int], str]:
    """Classes of the transitive closure of co-membership in a finite sum of products."""
    fam = product_family(H, min_length)
    if fam.sums is None:
        # sums are translation-closed here, so classes are cosets of omega
        omega = difference_subgroup(H, fam.sets)
        classes, seen = [], 0
        for x in range(H.n):
            if not seen >> x & 1:
                c = H.translate(omega, x)
                classes.append(c)
                seen |= c
        return classes, "omega"
    parent = list(range(H.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for E in fam.sums:
        root = find(lowest(E))
        for e in bits_of(E):
            r = find(e)
            if r != root:
                lo, hi = min(r, root), max(r, root)
                parent[hi] = lo
                root = lo
    groups: dict[int, int] = {}
    for x in range(H.n):
        groups[find(x)] = groups.get(find(x), 0) | (1 << x)
    return sorted(groups.values(), key=lowest), "sums"


def make_fundamental_ring(H: HyperRing, min_length: int = 1) -> FundamentalRing:
    classes, route = gamma_star_classes(H, min_length)
    return FundamentalRing(H, classes, route)


# -- monomials -------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    coefficient: int
    degree: int


def monomial_product(H: HyperRing, u: Monomial, v: Monomial) -> frozenset[Monomial]:
    d = u.degree + v.degree
    return frozenset(Monomial(c, d) for c in bits_of(H.mul[u.coefficient][v.coefficient]))


def monomial_power(H: HyperRing, u: Monomial, k: int) -> frozenset[Monomial]:
    return frozenset(Monomial(c, u.degree * k) for c in bits_of(H.power_mask(u.coefficient, k)))


def monomial_ab_prime_check(P: Hyperideal, alpha: int, beta: int, degree_cap: int = 2):
    """Check (alpha,beta)-primeness of ``P[x]`` over all monomial pairs of degree <= cap.

    Returns ``None`` when it holds, else the first failing ``(u, v)``.
    """
    if degree_cap < 1:
        raise HyperRingError("degree_cap must be >= 1")
    H, p = P.ring, P.mask

    def inside(ms):
        return all(p >> m.coefficient & 1 for m in ms)

    for du in range(degree_cap + 1):
        for a in range(H.n):
            u = Monomial(a, du)
            ua = monomial_power(H, u, alpha)
            ub_in = inside(monomial_power(H, u, beta))
            if ub_in:
                continue
            for dv in range(degree_cap + 1):
                for b in range(H.n):
                    v = Monomial(b, dv)
                    prod = set()
                    for w in ua:
                        prod |= monomial_product(H, w, v)
                    if inside(prod) and not p >> b & 1:
                        return u, v
    return None
