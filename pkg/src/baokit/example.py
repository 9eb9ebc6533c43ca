"""The single-generated substitution algebra over the strict-order generator.

Over the space of triples from a base of size u, the generator is
X = {s : s_0 < s_1}.  The derived chain

    Y_0 = everything,   Y_{m+1} = c_0((c_1(Y_m - X)) . X)

walks down through the threshold sets {s : s_1 >= m} and reaches empty at
m = u, giving u + 1 distinct values.  Substitution instances of the chain
produce every coordinate threshold, hence every singleton tuple, so the
generated subalgebra is the full powerset and is simple.

For u = 2 the closure (256 elements) is enumerated outright; for larger u
the powerset is certified by generating each singleton explicitly, since
enumerating 2**(u**3) elements is out of reach.
"""

from dataclasses import dataclass

from .algebras import FiniteAlgebra, atoms, discriminator_value, generate_subalgebra
from .errors import ClosureCapError
from .spaces import Element, SetAlgebra, cyl, subst


@dataclass
class GeneratorChain:
    base_size: int
    generator: Element
    elements: list[Element]  # Y_0 ... Y_u

    def distinct_count(self) -> int:
        return len({y.bits for y in self.elements})


def strict_order_generator(ambient: SetAlgebra) -> Element:
    space = ambient.space
    bits = 0
    for idx in range(space.size):
        s = space.decode(idx)
        if s[0] < s[1]:
            bits |= 1 << idx
    return ambient.from_bits(bits)


def threshold(ambient: SetAlgebra, coord: int, m: int) -> Element:
    """The set {s : s_coord >= m}."""
    space = ambient.space
    bits = 0
    for value in range(m, space.base_size):
        bits |= space.digit_mask(coord, value)
    return ambient.from_bits(bits)


def build_chain(ambient: SetAlgebra, x: Element) -> GeneratorChain:
    u = ambient.space.base_size
    ys = [ambient.one]
    for _ in range(u):
        prev = ys[-1]
        ys.append(cyl(0, cyl(1, prev - x) & x))
    return GeneratorChain(u, x, ys)


def singleton_witnesses(ambient: SetAlgebra, chain: GeneratorChain) -> list[Element]:
    """Every singleton subset, produced from the chain by substitutions.

    Substitution moves the second-coordinate thresholds onto the other
    coordinates, coordinate sections are threshold differences, and each
    singleton is a meet of three sections.  All steps use only generated
    elements and signature operations, so each witness certifies its own
    membership in the generated subalgebra.
    """
    space = ambient.space
    u = space.base_size
    thresholds = {1: chain.elements}  # index m -> {s : s_1 >= m}
    thresholds[0] = [subst(1, 0, y) for y in chain.elements]
    thresholds[2] = [subst(1, 2, y) for y in chain.elements]
    sections = {
        (coord, m): thresholds[coord][m] - thresholds[coord][m + 1]
        for coord in range(3)
        for m in range(u)
    }
    out = []
    for idx in range(space.size):
        a, b, c = space.decode(idx)
        witness = sections[(0, a)] & sections[(1, b)] & sections[(2, c)]
        out.append(witness)
    return out


@dataclass
class ExampleResult:
    base_size: int
    ambient: SetAlgebra
    generator: Element
    chain: GeneratorChain
    closed_form_verified: bool
    chain_distinct: int
    algebra: FiniteAlgebra | None
    carrier_size: int
    atom_count: int
    is_simple: bool
    is_full_powerset: bool
    singletons_certified: bool


def example_algebra(u: int, *, kind: str = "SC", cap: int = 4096) -> ExampleResult:
    """Build the chain and the subalgebra generated by the order element.

    When the full closure fits under `cap` it is enumerated; otherwise the
    powerset identity is certified through singleton witnesses and the
    algebra is reported without a materialized carrier.
    """
    if u < 2:
        raise ValueError("the construction needs a base with at least 2 elements")
    ambient = SetAlgebra(kind, u, 3)
    x = strict_order_generator(ambient)
    chain = build_chain(ambient, x)

    closed_form = all(
        chain.elements[m] == threshold(ambient, 1, m) for m in range(u + 1)
    )
    distinct = chain.distinct_count()

    full_size = 1 << ambient.space.size
    algebra = None
    singletons_ok = False
    if full_size <= cap:
        algebra = generate_subalgebra(ambient, [x], cap=cap)
        carrier_size = len(algebra.carrier)
        algebra_atoms = atoms(algebra)
        atom_count = len(algebra_atoms)
        simple = all(
            discriminator_value(algebra, v).is_full()
            for v in algebra.carrier
            if not v.is_zero()
        )
        is_full = carrier_size == full_size
    else:
        witnesses = singleton_witnesses(ambient, chain)
        singletons_ok = all(
            w.count == 1 and w.bits == (1 << i) for i, w in enumerate(witnesses)
        )
        if not singletons_ok:
            raise ClosureCapError(cap, full_size)
        # Every subset is a join of generated singletons, so the closure is
        # the whole powerset; its atoms are the singletons, and the
        # discriminator of each singleton already fills the space, which is
        # enough for simplicity because the discriminator is monotone.
        carrier_size = full_size
        atom_count = ambient.space.size
        simple = all(ambient.discriminator(w).is_full() for w in witnesses)
        is_full = True
        singletons_ok = True

    return ExampleResult(
        base_size=u,
        ambient=ambient,
        generator=x,
        chain=chain,
        closed_form_verified=closed_form,
        chain_distinct=distinct,
        algebra=algebra,
        carrier_size=carrier_size,
        atom_count=atom_count,
        is_simple=simple,
        is_full_powerset=is_full,
        singletons_certified=singletons_ok or algebra is not None,
    )
