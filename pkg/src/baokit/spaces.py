"""Tuple spaces over a finite base, with bitset-backed set-algebra elements.

A TupleSpace identifies the u**n tuples over a base of size u with the bit
positions 0 .. u**n - 1 through a mixed-radix code, coordinate 0 least
significant.  Element wraps one such bitset immutably; all operations are
hard errors across distinct spaces.  Cylindrification, diagonals and
substitutions are computed with per-coordinate digit masks, so each costs
O(u) or O(u^2) big-integer operations instead of a full tuple scan.

RelationAlgebra plays the same role for binary relations on a base set,
with composition, converse and the identity relation.
"""

from collections.abc import Iterable, Iterator

from .errors import CapacityError, SignatureError, SpaceMismatchError
from .signatures import OpRef, Signature

MAX_SPACE_BITS = 1 << 24


def _replicate(pattern: int, period: int, count: int) -> int:
    """OR together `count` copies of `pattern` placed at offsets 0, period, ..."""
    out = pattern
    have = 1
    while have < count:
        step = min(have, count - have)
        out |= out << (step * period)
        have += step
    return out


class TupleSpace:
    """The set of all dimension-n tuples over a base {0, ..., u-1}."""

    __slots__ = ("base_size", "dimension", "size", "full_mask", "_digit_zero")

    def __init__(self, base_size: int, dimension: int):
        if base_size < 1 or dimension < 1:
            raise ValueError("base size and dimension must both be at least 1")
        size = base_size**dimension
        if size > MAX_SPACE_BITS:
            raise CapacityError(
                f"space of {base_size}**{dimension} tuples exceeds the "
                f"2**24-bit desk-scale budget"
            )
        self.base_size = base_size
        self.dimension = dimension
        self.size = size
        self.full_mask = (1 << size) - 1
        self._digit_zero: list[int | None] = [None] * dimension

    def stride(self, coord: int) -> int:
        return self.base_size**coord

    def check_coord(self, coord: int) -> None:
        if not 0 <= coord < self.dimension:
            raise IndexError(
                f"coordinate {coord} out of range for dimension {self.dimension}"
            )

    def encode(self, tup) -> int:
        if len(tup) != self.dimension:
            raise ValueError(f"expected a {self.dimension}-tuple, got {tup!r}")
        index = 0
        for c in reversed(tup):
            if not 0 <= c < self.base_size:
                raise ValueError(f"coordinate value {c} outside base {self.base_size}")
            index = index * self.base_size + c
        return index

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise ValueError(f"tuple index {index} out of range")
        out = []
        for _ in range(self.dimension):
            index, c = divmod(index, self.base_size)
            out.append(c)
        return tuple(out)

    def tuples(self) -> Iterator[tuple[int, ...]]:
        return (self.decode(i) for i in range(self.size))

    def digit_zero_mask(self, coord: int) -> int:
        """Bitmask of all positions whose coordinate `coord` equals 0."""
        self.check_coord(coord)
        cached = self._digit_zero[coord]
        if cached is not None:
            return cached
        stride = self.stride(coord)
        block = stride * self.base_size
        mask = _replicate((1 << stride) - 1, block, self.size // block)
        self._digit_zero[coord] = mask
        return mask

    def digit_mask(self, coord: int, value: int) -> int:
        """Bitmask of all positions whose coordinate `coord` equals `value`."""
        if not 0 <= value < self.base_size:
            raise ValueError(f"coordinate value {value} outside base {self.base_size}")
        return self.digit_zero_mask(coord) << (value * self.stride(coord))

    def __eq__(self, other):
        return (
            isinstance(other, TupleSpace)
            and self.base_size == other.base_size
            and self.dimension == other.dimension
        )

    def __hash__(self):
        return hash((self.base_size, self.dimension))

    def __repr__(self):
        return f"TupleSpace(base_size={self.base_size}, dimension={self.dimension})"


class Element:
    """An immutable subset of one tuple space, stored as a bitset."""

    __slots__ = ("space", "bits")

    def __init__(self, space: TupleSpace, bits: int):
        self.space = space
        self.bits = bits & space.full_mask

    def _peer(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if other.space != self.space:
            raise SpaceMismatchError(
                f"elements of {self.space!r} and {other.space!r} cannot be combined"
            )
        return other

    def __and__(self, other):
        return Element(self.space, self.bits & self._peer(other).bits)

    def __or__(self, other):
        return Element(self.space, self.bits | self._peer(other).bits)

    def __xor__(self, other):
        return Element(self.space, self.bits ^ self._peer(other).bits)

    def __sub__(self, other):
        return Element(self.space, self.bits & ~self._peer(other).bits)

    def __invert__(self):
        return Element(self.space, self.space.full_mask & ~self.bits)

    def __le__(self, other):
        return self.bits & ~self._peer(other).bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.space == other.space
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.space, self.bits))

    def __bool__(self):
        return self.bits != 0

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_full(self) -> bool:
        return self.bits == self.space.full_mask

    def tuples(self) -> Iterator[tuple[int, ...]]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield self.space.decode(low.bit_length() - 1)
            bits ^= low

    def serialize(self) -> str:
        width = (self.space.size + 3) // 4
        return (
            f"space:{self.space.base_size},{self.space.dimension}:"
            f"{self.bits:0{width}x}"
        )

    @classmethod
    def deserialize(cls, text: str) -> "Element":
        head, _, payload = text.partition(":")
        dims, _, hexbits = payload.partition(":")
        if head != "space" or not hexbits:
            raise ValueError(f"malformed element text {text!r}")
        u_str, _, n_str = dims.partition(",")
        space = TupleSpace(int(u_str), int(n_str))
        return cls(space, int(hexbits, 16))

    def __repr__(self):
        return (
            f"Element(u={self.space.base_size}, n={self.space.dimension}, "
            f"count={self.count})"
        )


def cyl(coord: int, x: Element) -> Element:
    """Existential projection along `coord`: replace the coordinate freely."""
    space = x.space
    space.check_coord(coord)
    u = space.base_size
    stride = space.stride(coord)
    zero_mask = space.digit_zero_mask(coord)
    collapsed = 0
    for t in range(u):
        collapsed |= x.bits >> (t * stride)
    collapsed &= zero_mask
    out = 0
    for t in range(u):
        out |= collapsed << (t * stride)
    return Element(space, out)


def diag(space: TupleSpace, i: int, j: int) -> Element:
    """The set of tuples whose coordinates i and j agree."""
    space.check_coord(i)
    space.check_coord(j)
    if i == j:
        return Element(space, space.full_mask)
    out = 0
    for t in range(space.base_size):
        out |= space.digit_mask(i, t) & space.digit_mask(j, t)
    return Element(space, out)


def subst(i: int, j: int, x: Element) -> Element:
    """Replacement substitution: tuples s with s[i := s_j] in x."""
    space = x.space
    space.check_coord(i)
    space.check_coord(j)
    if i == j:
        raise ValueError("substitution needs two distinct coordinates")
    u = space.base_size
    stride = space.stride(i)
    zero_mask = space.digit_zero_mask(i)
    out = 0
    for t in range(u):
        selected = (x.bits >> (t * stride)) & zero_mask
        spread = 0
        for s in range(u):
            spread |= selected << (s * stride)
        out |= spread & space.digit_mask(j, t)
    return Element(space, out)


class SetAlgebra:
    """The full algebra of all subsets of a tuple space under one signature."""

    def __init__(self, kind: str, base_size: int, dimension: int):
        if kind == "RA":
            raise SignatureError("use RelationAlgebra for binary relations")
        self.signature = Signature(kind, None if kind == "BA" else dimension)
        self.space = TupleSpace(base_size, dimension)

    @property
    def zero(self) -> Element:
        return Element(self.space, 0)

    @property
    def one(self) -> Element:
        return Element(self.space, self.space.full_mask)

    def element(self, tuples: Iterable) -> Element:
        bits = 0
        for t in tuples:
            bits |= 1 << self.space.encode(t)
        return Element(self.space, bits)

    def from_bits(self, bits: int) -> Element:
        return Element(self.space, bits)

    def random_element(self, rng) -> Element:
        return Element(self.space, rng.getrandbits(self.space.size))

    def elements(self) -> Iterator[Element]:
        """All 2**size subsets; only sensible for very small spaces."""
        for bits in range(1 << self.space.size):
            yield Element(self.space, bits)

    def contains(self, x) -> bool:
        return isinstance(x, Element) and x.space == self.space

    def discriminator(self, x: Element) -> Element:
        """c_0 c_1 ... c_{n-1} x; the full space exactly when x is nonzero."""
        if not self.contains(x):
            raise SpaceMismatchError("element does not belong to this algebra")
        out = x
        for i in range(self.space.dimension):
            out = cyl(i, out)
        return out

    def apply(self, op: OpRef, *args: Element) -> Element:
        if not self.signature.allows(op):
            raise SignatureError(f"{op} is not in the {self.signature.label} signature")
        name, params = op
        for a in args:
            if not self.contains(a):
                raise SpaceMismatchError("operand from a different space")
        if name == "zero":
            return self.zero
        if name == "one":
            return self.one
        if name == "not":
            return ~args[0]
        if name == "and":
            return args[0] & args[1]
        if name == "or":
            return args[0] | args[1]
        if name == "impl":
            return ~args[0] | args[1]
        if name == "cyl":
            return cyl(params[0], args[0])
        if name == "subst":
            return subst(params[0], params[1], args[0])
        if name == "diag":
            return diag(self.space, params[0], params[1])
        if name == "disc":
            return self.discriminator(args[0])
        raise SignatureError(f"unsupported operator {name!r}")

    def __repr__(self):
        return (
            f"SetAlgebra({self.signature.label}, base={self.space.base_size}, "
            f"n={self.space.dimension})"
        )


class RaElement:
    """An immutable binary relation on {0, ..., u-1}, stored as a bitset.

    The pair (a, b) occupies bit a*u + b.
    """

    __slots__ = ("base_size", "bits")

    def __init__(self, base_size: int, bits: int):
        self.base_size = base_size
        self.bits = bits & ((1 << (base_size * base_size)) - 1)

    def _peer(self, other: "RaElement") -> "RaElement":
        if not isinstance(other, RaElement):
            raise TypeError(f"expected an RaElement, got {type(other).__name__}")
        if other.base_size != self.base_size:
            raise SpaceMismatchError(
                f"relations on bases {self.base_size} and {other.base_size}"
            )
        return other

    @property
    def full_mask(self) -> int:
        return (1 << (self.base_size * self.base_size)) - 1

    def __and__(self, other):
        return RaElement(self.base_size, self.bits & self._peer(other).bits)

    def __or__(self, other):
        return RaElement(self.base_size, self.bits | self._peer(other).bits)

    def __xor__(self, other):
        return RaElement(self.base_size, self.bits ^ self._peer(other).bits)

    def __sub__(self, other):
        return RaElement(self.base_size, self.bits & ~self._peer(other).bits)

    def __invert__(self):
        return RaElement(self.base_size, self.full_mask & ~self.bits)

    def __le__(self, other):
        return self.bits & ~self._peer(other).bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __eq__(self, other):
        return (
            isinstance(other, RaElement)
            and self.base_size == other.base_size
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash(("ra", self.base_size, self.bits))

    def __bool__(self):
        return self.bits != 0

    @property
    def count(self) -> int:
        return self.bits.bit_count()

    def has_pair(self, a: int, b: int) -> bool:
        return (self.bits >> (a * self.base_size + b)) & 1 == 1

    def pairs(self) -> Iterator[tuple[int, int]]:
        u = self.base_size
        bits = self.bits
        while bits:
            low = bits & -bits
            pos = low.bit_length() - 1
            yield divmod(pos, u)
            bits ^= low

    def serialize(self) -> str:
        width = (self.base_size * self.base_size + 3) // 4
        return f"rel:{self.base_size}:{self.bits:0{width}x}"

    @classmethod
    def deserialize(cls, text: str) -> "RaElement":
        head, _, payload = text.partition(":")
        u_str, _, hexbits = payload.partition(":")
        if head != "rel" or not hexbits:
            raise ValueError(f"malformed relation text {text!r}")
        return cls(int(u_str), int(hexbits, 16))

    def __repr__(self):
        return f"RaElement(base={self.base_size}, count={self.count})"


class RelationAlgebra:
    """All binary relations on a finite base, with ;, converse and Id."""

    def __init__(self, base_size: int):
        if base_size < 1:
            raise ValueError("base size must be at least 1")
        if base_size * base_size > MAX_SPACE_BITS:
            raise CapacityError(f"base {base_size} exceeds the desk-scale budget")
        self.signature = Signature("RA")
        self.base_size = base_size

    @property
    def zero(self) -> RaElement:
        return RaElement(self.base_size, 0)

    @property
    def one(self) -> RaElement:
        return RaElement(self.base_size, (1 << (self.base_size**2)) - 1)

    @property
    def identity(self) -> RaElement:
        u = self.base_size
        bits = 0
        for a in range(u):
            bits |= 1 << (a * u + a)
        return RaElement(u, bits)

    def element(self, pairs: Iterable[tuple[int, int]]) -> RaElement:
        u = self.base_size
        bits = 0
        for a, b in pairs:
            if not (0 <= a < u and 0 <= b < u):
                raise ValueError(f"pair ({a}, {b}) outside base {u}")
            bits |= 1 << (a * u + b)
        return RaElement(u, bits)

    def random_element(self, rng) -> RaElement:
        return RaElement(self.base_size, rng.getrandbits(self.base_size**2))

    def contains(self, x) -> bool:
        return isinstance(x, RaElement) and x.base_size == self.base_size

    def compose(self, r: RaElement, s: RaElement) -> RaElement:
        r._peer(s)
        u = self.base_size
        row_mask = (1 << u) - 1
        s_rows = [(s.bits >> (b * u)) & row_mask for b in range(u)]
        out = 0
        for a in range(u):
            row = (r.bits >> (a * u)) & row_mask
            acc = 0
            while row:
                low = row & -row
                acc |= s_rows[low.bit_length() - 1]
                row ^= low
            out |= acc << (a * u)
        return RaElement(u, out)

    def converse(self, r: RaElement) -> RaElement:
        u = self.base_size
        bits = 0
        for a, b in r.pairs():
            bits |= 1 << (b * u + a)
        return RaElement(u, bits)

    def residual(self, r: RaElement, s: RaElement) -> RaElement:
        """Boolean residual r -> s, that is -r + s."""
        return ~r | s

    def apply(self, op: OpRef, *args: RaElement) -> RaElement:
        if not self.signature.allows(op):
            raise SignatureError(f"{op} is not in the RA signature")
        name = op[0]
        for a in args:
            if not self.contains(a):
                raise SpaceMismatchError("operand on a different base")
        if name == "zero":
            return self.zero
        if name == "one":
            return self.one
        if name == "id":
            return self.identity
        if name == "not":
            return ~args[0]
        if name == "and":
            return args[0] & args[1]
        if name == "or":
            return args[0] | args[1]
        if name == "impl":
            return ~args[0] | args[1]
        if name == "conv":
            return self.converse(args[0])
        if name == "comp":
            return self.compose(args[0], args[1])
        raise SignatureError(f"unsupported operator {name!r}")

    def __repr__(self):
        return f"RelationAlgebra(base={self.base_size})"
