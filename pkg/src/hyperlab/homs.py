"""Good homomorphisms between finite hyperrings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .constructs import ProductRing, QuotientRing
from .kernel import ElemSet, HyperRing, HyperRingError, Hyperideal, bits_of, is_hyperideal, mask_of


class NotAGoodHom(HyperRingError):
    def __init__(self, msg: str, witness: tuple):
        super().__init__(f"{msg}: witness {witness}")
        self.witness = witness


@dataclass(frozen=True)
class GoodHom:
    source: HyperRing
    target: HyperRing
    map: tuple[int, ...]
    additive: bool
    multiplicative: bool
    surjective: bool
    witness: tuple | None = None
    name: str = ""

    def image_mask(self, mask: int) -> int:
        return mask_of(self.map[e] for e in bits_of(mask))

    def preimage_mask(self, mask: int) -> int:
        return mask_of(x for x, y in enumerate(self.map) if mask >> y & 1)


def verify_good_hom(
    mapping: Sequence[int], H1: HyperRing, H2: HyperRing, *, strict: bool = True, name: str = ""
) -> GoodHom:
    """Check ``psi(a+b) = psi(a)+psi(b)`` and ``psi(a o b) = psi(a) o psi(b)`` exhaustively.

    With ``strict`` a violation raises :class:`NotAGoodHom`; otherwise the
    flags are returned together with the first witness.
    """
    if len(mapping) != H1.n or any(not 0 <= y < H2.n for y in mapping):
        raise HyperRingError("map must be total on the source carrier and land in the target")
    psi = tuple(mapping)
    additive = multiplicative = True
    witness = None
    for a in range(H1.n):
        for b in range(H1.n):
            if additive and psi[H1.add[a][b]] != H2.add[psi[a]][psi[b]]:
                additive = False
                witness = witness or ("add", a, b)
            if multiplicative:
                img = mask_of(psi[c] for c in bits_of(H1.mul[a][b]))
                if img != H2.mul[psi[a]][psi[b]]:
                    multiplicative = False
                    witness = witness or ("mul", a, b)
    surjective = len(set(psi)) == H2.n
    if strict and not (additive and multiplicative):
        raise NotAGoodHom("map is not a good homomorphism", witness)
    return GoodHom(H1, H2, psi, additive, multiplicative, surjective, witness, name)


def kernel(psi: GoodHom) -> Hyperideal:
    return Hyperideal(psi.source, psi.preimage_mask(1 << psi.target.zero))


def preimage_ideal(psi: GoodHom, P2: Hyperideal) -> Hyperideal:
    if P2.ring is not psi.target:
        raise HyperRingError("ideal is not in the target ring")
    return Hyperideal(psi.source, psi.preimage_mask(P2.mask))


def image_ideal(psi: GoodHom, P1: Hyperideal) -> ElemSet:
    """``psi(P1)``; validated as a hyperideal of the target when ``psi`` is onto."""
    img = psi.image_mask(P1.mask)
    if not is_hyperideal(psi.target, img):
        if psi.surjective:
            raise HyperRingError("image of a hyperideal under an onto good hom is not a hyperideal")
        raise HyperRingError("image is not a hyperideal (map is not surjective)")
    return ElemSet(psi.target.n, img)


def identity_hom(H: HyperRing) -> GoodHom:
    return verify_good_hom(range(H.n), H, H, name="id")


def quotient_projection(Q: QuotientRing) -> GoodHom:
    return verify_good_hom(Q.proj, Q.base, Q, name=f"proj {Q.name}")


def product_projection(R: ProductRing, i: int) -> GoodHom:
    return verify_good_hom([c[i] for c in R.coords], R, R.factors[i], name=f"pi_{i + 1}")
