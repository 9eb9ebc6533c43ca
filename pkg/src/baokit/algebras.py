"""Finite Boolean algebras with operators: closure, atoms, ideals, products.

A FiniteAlgebra is an explicit carrier (canonically ordered) over a value
domain that knows how to compute the Boolean and signature operations on
carrier values.  Domains exist for full set algebras, relation algebras,
relativizations, binary products, and explicit operation tables.
"""

import random
from dataclasses import dataclass

from .errors import ClosureCapError, PreconditionError, SignatureError
from .signatures import OpRef, Signature, opref_from_str, opref_str
from .spaces import Element, RaElement, RelationAlgebra, TupleSpace


class SetDomain:
    """Values are Elements (or RaElements) of one ambient full algebra."""

    def __init__(self, ambient):
        self.ambient = ambient
        self.signature = ambient.signature

    def zero(self):
        return self.ambient.zero

    def one(self):
        return self.ambient.one

    def meet(self, a, b):
        return a & b

    def join(self, a, b):
        return a | b

    def compl(self, a):
        return ~a

    def apply(self, op: OpRef, *args):
        return self.ambient.apply(op, *args)

    def key(self, v):
        return v.bits

    def describe(self) -> str:
        amb = self.ambient
        if isinstance(amb, RelationAlgebra):
            return f"rel {amb.base_size}"
        return f"space {amb.space.base_size} {amb.space.dimension}"


class RelativizedDomain:
    """The base domain cut down below a fixed element b."""

    def __init__(self, base, b):
        self.base = base
        self.b = b
        self.signature = base.signature

    def zero(self):
        return self.base.zero()

    def one(self):
        return self.b

    def meet(self, a, c):
        return self.base.meet(a, c)

    def join(self, a, c):
        return self.base.join(a, c)

    def compl(self, a):
        return self.base.meet(self.b, self.base.compl(a))

    def apply(self, op: OpRef, *args):
        return self.base.meet(self.b, self.base.apply(op, *args))

    def key(self, v):
        return self.base.key(v)

    def describe(self) -> str:
        return f"relativized({self.base.describe()})"


class ProductDomain:
    """Coordinatewise operations on pairs of values."""

    def __init__(self, left, right):
        if left.signature != right.signature:
            raise SignatureError("product factors must share a signature")
        self.left = left
        self.right = right
        self.signature = left.signature

    def zero(self):
        return (self.left.zero(), self.right.zero())

    def one(self):
        return (self.left.one(), self.right.one())

    def meet(self, a, b):
        return (self.left.meet(a[0], b[0]), self.right.meet(a[1], b[1]))

    def join(self, a, b):
        return (self.left.join(a[0], b[0]), self.right.join(a[1], b[1]))

    def compl(self, a):
        return (self.left.compl(a[0]), self.right.compl(a[1]))

    def apply(self, op: OpRef, *args):
        return (
            self.left.apply(op, *(a[0] for a in args)),
            self.right.apply(op, *(a[1] for a in args)),
        )

    def key(self, v):
        return (self.left.key(v[0]), self.right.key(v[1]))

    def describe(self) -> str:
        return f"product({self.left.describe()}; {self.right.describe()})"


class TableDomain:
    """Explicit finite operation tables over hashable values."""

    def __init__(self, signature: Signature, values, tables: dict):
        # tables: opref-string -> dict mapping argument tuples to values,
        # plus "and"/"or"/"not"; "zero"/"one" map () to the constant.
        self.signature = signature
        self.values = list(values)
        self.tables = tables

    def zero(self):
        return self.tables["zero"][()]

    def one(self):
        return self.tables["one"][()]

    def meet(self, a, b):
        return self.tables["and"][(a, b)]

    def join(self, a, b):
        return self.tables["or"][(a, b)]

    def compl(self, a):
        return self.tables["not"][(a,)]

    def apply(self, op: OpRef, *args):
        name = opref_str(op)
        if name == "and":
            return self.meet(*args)
        if name == "or":
            return self.join(*args)
        if name == "not":
            return self.compl(*args)
        if name == "impl":
            return self.join(self.compl(args[0]), args[1])
        return self.tables[name][tuple(args)]

    def key(self, v):
        return getattr(v, "bits", v)

    def describe(self) -> str:
        return "tables"


class FiniteAlgebra:
    """An explicit finite algebra: canonical carrier plus a value domain."""

    def __init__(self, domain, carrier, *, check: bool = True):
        self.domain = domain
        self.signature = domain.signature
        seen = {}
        for v in carrier:
            seen[domain.key(v)] = v
        self.carrier = tuple(seen[k] for k in sorted(seen))
        self._index = {domain.key(v): i for i, v in enumerate(self.carrier)}
        self.zero = domain.zero()
        self.one = domain.one()
        self.is_degenerate = domain.key(self.zero) == domain.key(self.one)
        self._atoms = None  # carriers are immutable, so atoms cache safely
        if check:
            self._check_structure()

    # -- carrier access ----------------------------------------------------

    def __len__(self):
        return len(self.carrier)

    def __contains__(self, v):
        return self.domain.key(v) in self._index

    def index_of(self, v) -> int:
        return self._index[self.domain.key(v)]

    def meet(self, a, b):
        return self.domain.meet(a, b)

    def join(self, a, b):
        return self.domain.join(a, b)

    def compl(self, a):
        return self.domain.compl(a)

    def apply(self, op: OpRef, *args):
        return self.domain.apply(op, *args)

    def le(self, a, b) -> bool:
        return self.domain.key(self.domain.meet(a, b)) == self.domain.key(a)

    def operator_descriptors(self):
        return self.signature.operator_descriptors()

    # -- validation ---------------------------------------------------------

    def _check_structure(self):
        dom = self.domain
        key = dom.key
        if key(self.zero) not in self._index or key(self.one) not in self._index:
            raise ValueError("carrier must contain 0 and 1")
        k = len(self.carrier)
        for x in self.carrier:
            if key(dom.compl(x)) not in self._index:
                raise ValueError("carrier not closed under complement")
            if key(dom.compl(dom.compl(x))) != key(x):
                raise ValueError("complement is not an involution")
            if key(dom.meet(x, x)) != key(x):
                raise ValueError("meet is not idempotent")
            if key(dom.meet(x, dom.compl(x))) != key(self.zero):
                raise ValueError("x . -x must be 0")
            if key(dom.join(x, dom.compl(x))) != key(self.one):
                raise ValueError("x + -x must be 1")
        for op, arity in self.signature.operator_descriptors():
            if arity == 0:
                if key(dom.apply(op)) not in self._index:
                    raise ValueError(f"constant {op} outside the carrier")
            elif arity == 1:
                for x in self.carrier:
                    if key(dom.apply(op, x)) not in self._index:
                        raise ValueError(f"carrier not closed under {op}")
        # Binary closure, lattice laws and distributivity: full scan on small
        # carriers, seeded random triples beyond that.
        rng = random.Random(0)
        if k <= 64:
            pairs = [(a, b) for a in self.carrier for b in self.carrier]
        else:
            pairs = [
                (rng.choice(self.carrier), rng.choice(self.carrier)) for _ in range(512)
            ]
        for a, b in pairs:
            m, j = dom.meet(a, b), dom.join(a, b)
            if key(m) not in self._index or key(j) not in self._index:
                raise ValueError("carrier not closed under meet/join")
            if key(dom.meet(a, b)) != key(dom.meet(b, a)):
                raise ValueError("meet is not commutative")
            if key(dom.join(a, dom.meet(a, b))) != key(a):
                raise ValueError("absorption fails")
        for _ in range(256):
            a, b, c = (rng.choice(self.carrier) for _ in range(3))
            lhs = dom.meet(a, dom.join(b, c))
            rhs = dom.join(dom.meet(a, b), dom.meet(a, c))
            if key(lhs) != key(rhs):
                raise ValueError("distributivity fails")
        for op, arity in self.signature.operator_descriptors():
            if arity == 2:
                for a, b in pairs if k <= 64 else pairs[:128]:
                    if key(dom.apply(op, a, b)) not in self._index:
                        raise ValueError(f"carrier not closed under {op}")

    # -- tables and serialization -------------------------------------------

    def unary_table(self, op: OpRef) -> list[int]:
        return [self.index_of(self.apply(op, x)) for x in self.carrier]

    def binary_table(self, op_name: str) -> list[int]:
        """Row-major index table for and/or or a binary signature operator."""
        dom = self.domain
        if op_name == "and":
            fn = dom.meet
        elif op_name == "or":
            fn = dom.join
        else:
            fn = lambda a, b: dom.apply(opref_from_str(op_name), a, b)
        return [
            self.index_of(fn(a, b)) for a in self.carrier for b in self.carrier
        ]

    def serialize(self) -> str:
        if len(self.carrier) > 256:
            raise PreconditionError("serialization supported up to 256 elements")
        if not all(isinstance(v, (Element, RaElement)) for v in self.carrier):
            raise PreconditionError("only bitset-backed carriers serialize")
        lines = ["baokit-algebra 1"]
        dim = self.signature.dimension
        lines.append(f"signature {self.signature.kind} {dim if dim else 0}")
        lines.append(self.domain.describe())
        lines.append(f"carrier {len(self.carrier)}")
        for v in self.carrier:
            lines.append(f"elem {v.bits:x}")
        lines.append(f"zero {self.index_of(self.zero)}")
        lines.append(f"one {self.index_of(self.one)}")
        lines.append("table not " + " ".join(map(str, self.unary_table(("not", ())))))
        for name in ("and", "or"):
            lines.append(
                f"table {name} " + " ".join(map(str, self.binary_table(name)))
            )
        for op, arity in self.signature.operator_descriptors():
            text = opref_str(op)
            if arity == 0:
                lines.append(f"table {text} {self.index_of(self.apply(op))}")
            elif arity == 1:
                lines.append(
                    f"table {text} " + " ".join(map(str, self.unary_table(op)))
                )
            else:
                lines.append(
                    f"table {text} " + " ".join(map(str, self.binary_table(text)))
                )
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> "FiniteAlgebra":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if lines[0] != "baokit-algebra 1":
            raise ValueError("unknown algebra format")
        kind, dim = lines[1].split()[1:]
        signature = Signature(kind, None if kind in ("BA", "RA") else int(dim))
        domain_desc = lines[2].split()
        count = int(lines[3].split()[1])
        raw = lines[4 : 4 + count]
        if domain_desc[0] == "space":
            u, n = int(domain_desc[1]), int(domain_desc[2])
            space = TupleSpace(u, n)
            values = [Element(space, int(ln.split()[1], 16)) for ln in raw]
        elif domain_desc[0] == "rel":
            u = int(domain_desc[1])
            values = [RaElement(u, int(ln.split()[1], 16)) for ln in raw]
        else:
            raise ValueError(f"cannot deserialize domain {domain_desc!r}")
        tables: dict = {}
        zero_i = one_i = 0
        for ln in lines[4 + count :]:
            parts = ln.split()
            if parts[0] == "zero":
                zero_i = int(parts[1])
            elif parts[0] == "one":
                one_i = int(parts[1])
            elif parts[0] == "table":
                name = parts[1]
                entries = [int(p) for p in parts[2:]]
                if len(entries) == 1:
                    tables[name] = {(): values[entries[0]]}
                elif len(entries) == count:
                    tables[name] = {
                        (values[i],): values[e] for i, e in enumerate(entries)
                    }
                else:
                    tables[name] = {
                        (values[i // count], values[i % count]): values[e]
                        for i, e in enumerate(entries)
                    }
        tables["zero"] = {(): values[zero_i]}
        tables["one"] = {(): values[one_i]}
        return cls(TableDomain(signature, values, tables), values)

    def __repr__(self):
        return f"FiniteAlgebra({self.signature.label}, size={len(self.carrier)})"


def generate_subalgebra(ambient, gens, cap: int = 4096) -> FiniteAlgebra:
    """Least subuniverse containing `gens`, 0, 1 and the signature constants.

    `ambient` is a SetAlgebra or RelationAlgebra (or any value domain).
    Fails with ClosureCapError as soon as the closure would exceed `cap`.
    """
    domain = ambient if hasattr(ambient, "meet") else SetDomain(ambient)
    if not gens:
        raise ValueError("at least one generator is required")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    key = domain.key
    descriptors = list(domain.signature.operator_descriptors())
    seen: dict = {}

    def add(v, frontier):
        k = key(v)
        if k not in seen:
            seen[k] = v
            frontier.append(v)
            if len(seen) > cap:
                raise ClosureCapError(cap, len(seen))

    frontier: list = []
    add(domain.zero(), frontier)
    add(domain.one(), frontier)
    for op, arity in descriptors:
        if arity == 0:
            add(domain.apply(op), frontier)
    for g in gens:
        add(g, frontier)

    while frontier:
        batch, frontier = frontier, []
        existing = list(seen.values())
        for x in batch:
            add(domain.compl(x), frontier)
            for op, arity in descriptors:
                if arity == 1:
                    add(domain.apply(op, x), frontier)
            for y in existing:
                add(domain.meet(x, y), frontier)
                add(domain.join(x, y), frontier)
                for op, arity in descriptors:
                    if arity == 2:
                        add(domain.apply(op, x, y), frontier)
                        add(domain.apply(op, y, x), frontier)
    return FiniteAlgebra(domain, seen.values())


def atoms(algebra: FiniteAlgebra) -> list:
    """All minimal nonzero carrier elements, in canonical order."""
    if algebra._atoms is not None:
        return list(algebra._atoms)
    dom = algebra.domain
    key = dom.key
    zero_key = key(algebra.zero)
    found: list = []
    for x in algebra.carrier:
        kx = key(x)
        if kx == zero_key:
            continue
        # An already found atom strictly below x settles non-minimality fast.
        if any(key(dom.meet(a, x)) == key(a) and key(a) != kx for a in found):
            continue
        minimal = True
        for y in algebra.carrier:
            ky = key(y)
            if ky == zero_key or ky == kx:
                continue
            if key(dom.meet(y, x)) == ky:
                minimal = False
                break
        if minimal:
            found.append(x)
    algebra._atoms = tuple(found)
    return found


def atom_below(algebra: FiniteAlgebra, a, b):
    """An atom of the relativization below -b that sits below a.

    `b` is used as given (callers pass an already closed ideal generator).
    The returned element is an atom of the whole algebra as well.
    """
    dom = algebra.domain
    if dom.key(a) == dom.key(algebra.zero):
        raise PreconditionError("a must be nonzero")
    target = dom.meet(a, dom.compl(b))
    if dom.key(target) == dom.key(algebra.zero):
        raise PreconditionError("a . -b is zero; no atom exists below it", witness=a)
    for atom in atoms(algebra):
        if algebra.le(atom, target):
            return atom
    raise PreconditionError("no atom found below a . -b (carrier not atomic?)")


def relativize(algebra: FiniteAlgebra, b) -> FiniteAlgebra:
    """The algebra induced on {x . b}, with operations cut down to b."""
    if b not in algebra:
        raise PreconditionError("b must belong to the carrier")
    dom = RelativizedDomain(algebra.domain, b)
    carrier = {dom.key(algebra.meet(x, b)): algebra.meet(x, b) for x in algebra.carrier}
    return FiniteAlgebra(dom, carrier.values(), check=False)


@dataclass
class Ideal:
    """A principal ideal: everything below the operator closure of b."""

    parent: FiniteAlgebra
    generator: object
    closure: object
    members: tuple

    def __contains__(self, v):
        key = self.parent.domain.key
        return any(key(v) == key(m) for m in self.members)


def principal_ideal(algebra: FiniteAlgebra, b) -> Ideal:
    """Ideal generated by b: close b under joins and all operators, then
    take everything below the least fixed point."""
    dom = algebra.domain
    key = dom.key
    current = b
    while True:
        acc = current
        for op, arity in algebra.operator_descriptors():
            if arity == 1:
                acc = dom.join(acc, dom.apply(op, current))
            elif arity == 2:
                acc = dom.join(acc, dom.apply(op, current, algebra.one))
                acc = dom.join(acc, dom.apply(op, algebra.one, current))
        if key(acc) == key(current):
            break
        current = acc
    members = tuple(x for x in algebra.carrier if algebra.le(x, current))
    return Ideal(algebra, b, current, members)


def product(left: FiniteAlgebra, right: FiniteAlgebra) -> FiniteAlgebra:
    if left.signature != right.signature:
        raise SignatureError("product factors must share a signature")
    dom = ProductDomain(left.domain, right.domain)
    carrier = [(x, y) for x in left.carrier for y in right.carrier]
    return FiniteAlgebra(dom, carrier, check=False)


@dataclass
class Decomposition:
    below: FiniteAlgebra
    above: FiniteAlgebra
    mapping: dict


def decompose_by_zero_dimensional(algebra: FiniteAlgebra, b) -> Decomposition:
    """Split the algebra as Rl_b x Rl_-b through x -> (x.b, x.-b).

    The precondition (every atom under b or the two principal ideals meet
    only in 0) is checked, and the witnessing map is verified to be a
    bijective homomorphism before it is returned.
    """
    dom = algebra.domain
    key = dom.key
    not_b = dom.compl(b)
    all_atoms_below = all(algebra.le(atom, b) for atom in atoms(algebra))
    if not all_atoms_below:
        j0 = principal_ideal(algebra, b)
        j1 = principal_ideal(algebra, not_b)
        meet = dom.meet(j0.closure, j1.closure)
        if key(meet) != key(algebra.zero):
            witness = next(a for a in atoms(algebra) if not algebra.le(a, b))
            raise PreconditionError(
                "ideals generated by b and -b overlap; decomposition unavailable",
                witness=witness,
            )
    below = relativize(algebra, b)
    above = relativize(algebra, not_b)
    prod = product(below, above)
    mapping = {}
    images = set()
    for x in algebra.carrier:
        image = (dom.meet(x, b), dom.meet(x, not_b))
        mapping[key(x)] = image
        images.add(prod.domain.key(image))
    if len(images) != len(algebra.carrier) or len(prod.carrier) != len(images):
        raise PreconditionError("x -> (x.b, x.-b) is not bijective here")
    pd = prod.domain
    for x in algebra.carrier:
        for y in algebra.carrier:
            got = pd.meet(mapping[key(x)], mapping[key(y)])
            if pd.key(got) != pd.key(mapping[key(dom.meet(x, y))]):
                raise PreconditionError("decomposition map does not preserve meet")
        got = pd.compl(mapping[key(x)])
        if pd.key(got) != pd.key(mapping[key(dom.compl(x))]):
            raise PreconditionError("decomposition map does not preserve complement")
        for op, arity in algebra.operator_descriptors():
            if arity == 1:
                got = pd.apply(op, mapping[key(x)])
                if pd.key(got) != pd.key(mapping[key(dom.apply(op, x))]):
                    raise PreconditionError(f"decomposition map breaks {op}")
    return Decomposition(below, above, mapping)


def is_hereditary_closed(algebra: FiniteAlgebra, b) -> bool:
    """True when every carrier x below b is fixed by all unary operators."""
    if b not in algebra:
        raise PreconditionError("b must belong to the carrier")
    dom = algebra.domain
    key = dom.key
    for x in algebra.carrier:
        if not algebra.le(x, b):
            continue
        for op, arity in algebra.operator_descriptors():
            if arity == 1 and key(dom.apply(op, x)) != key(x):
                return False
    return True


def discriminator_value(algebra: FiniteAlgebra, x):
    """c_0 ... c_{n-1} x computed inside the algebra's domain."""
    dim = algebra.signature.dimension
    out = x
    if dim:
        for i in range(dim):
            out = algebra.apply(("cyl", (i,)), out)
    return out
