"""Finite relational models, satisfaction sets, and pointwise evaluation.

satisfaction_set computes {s in carrier^n : the formula holds under s} as a
bitset Element, working bottom-up with cylindrifications for quantifiers.
holds evaluates one assignment recursively and accepts an optional
quantifier domain, which relativizes every quantifier to a subset of the
carrier (free variables may still take any value).
"""

import json

from .errors import UnboundVariableError
from .formulas import (
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Vocabulary,
    max_var_index,
)
from .spaces import Element, TupleSpace, cyl, diag


class ModelFinite:
    """A finite model: carrier labels plus one tuple table per relation."""

    def __init__(self, carrier, relations, vocabulary: Vocabulary | None = None):
        self.carrier = list(carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier labels must be unique")
        self._pos = {label: i for i, label in enumerate(self.carrier)}
        self.relations: dict[str, frozenset] = {}
        for name, table in relations.items():
            rows = set()
            for row in table:
                idx = tuple(self._pos[v] for v in row)
                rows.add(idx)
            self.relations[name] = frozenset(rows)
        if vocabulary is None:
            arities = {}
            for name, rows in self.relations.items():
                arities[name] = len(next(iter(rows))) if rows else 2
            vocabulary = Vocabulary.of(**arities)
        self.vocabulary = vocabulary
        for name, rows in self.relations.items():
            k = vocabulary.arity(name)
            if any(len(r) != k for r in rows):
                raise ValueError(f"relation {name} has rows of the wrong arity")

    @property
    def carrier_size(self) -> int:
        return len(self.carrier)

    def index(self, label) -> int:
        return self._pos[label]

    def rel_holds(self, name: str, idx_tuple: tuple) -> bool:
        return idx_tuple in self.relations[name]

    def relation_table(self, name: str) -> frozenset:
        return self.relations[name]

    def to_json(self) -> str:
        payload = {
            "carrier": self.carrier,
            "relations": {
                name: sorted([self.carrier[i] for i in row] for row in rows)
                for name, rows in self.relations.items()
            },
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ModelFinite":
        payload = json.loads(text)
        return cls(payload["carrier"], payload["relations"])

    def __repr__(self):
        rels = ", ".join(f"{n}/{self.vocabulary.arity(n)}" for n in sorted(self.relations))
        return f"ModelFinite(|carrier|={len(self.carrier)}, {rels})"


def satisfaction_set(model: ModelFinite, f: Formula, n: int, *, _atom_cache=None):
    """All satisfying assignments, as an Element over carrier^n."""
    top = max_var_index(f)
    if top >= n:
        raise UnboundVariableError(f"formula uses v{top}, allowed indices are < {n}")
    space = TupleSpace(model.carrier_size, n)
    cache = _atom_cache if _atom_cache is not None else {}

    def atom_element(g: Atom) -> Element:
        key = (g.rel, g.args, space.base_size, space.dimension)
        got = cache.get(key)
        if got is not None:
            return got
        bits = 0
        for row in model.relations[g.rel]:
            mask = space.full_mask
            for var, value in zip(g.args, row):
                mask &= space.digit_mask(var, value)
                if not mask:
                    break
            bits |= mask
        out = Element(space, bits)
        cache[key] = out
        return out

    def sat(g) -> Element:
        if isinstance(g, Atom):
            return atom_element(g)
        if isinstance(g, Eq):
            return diag(space, g.left, g.right)
        if isinstance(g, Not):
            return ~sat(g.body)
        if isinstance(g, And):
            return sat(g.left) & sat(g.right)
        if isinstance(g, Or):
            return sat(g.left) | sat(g.right)
        if isinstance(g, Implies):
            return ~sat(g.left) | sat(g.right)
        if isinstance(g, Iff):
            return ~(sat(g.left) ^ sat(g.right))
        if isinstance(g, Exists):
            return cyl(g.var, sat(g.body))
        if isinstance(g, Forall):
            return ~cyl(g.var, ~sat(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return sat(f)


def holds(model, f: Formula, assignment=None, *, quantifier_domain=None) -> bool:
    """Evaluate one assignment; quantifiers range over `quantifier_domain`
    when given (any model-like object with carrier_size and rel_holds works).
    """
    env: dict[int, int] = dict(assignment or {})
    domain = (
        range(model.carrier_size) if quantifier_domain is None else quantifier_domain
    )

    def ev(g) -> bool:
        if isinstance(g, Atom):
            try:
                row = tuple(env[a] for a in g.args)
            except KeyError as exc:
                raise UnboundVariableError(f"v{exc.args[0]} is unassigned") from None
            return model.rel_holds(g.rel, row)
        if isinstance(g, Eq):
            return env[g.left] == env[g.right]
        if isinstance(g, Not):
            return not ev(g.body)
        if isinstance(g, And):
            return ev(g.left) and ev(g.right)
        if isinstance(g, Or):
            return ev(g.left) or ev(g.right)
        if isinstance(g, Implies):
            return not ev(g.left) or ev(g.right)
        if isinstance(g, Iff):
            return ev(g.left) == ev(g.right)
        if isinstance(g, (Exists, Forall)):
            want = isinstance(g, Exists)
            old = env.get(g.var)
            for value in domain:
                env[g.var] = value
                if ev(g.body) == want:
                    result = want
                    break
            else:
                result = not want
            if old is None:
                env.pop(g.var, None)
            else:
                env[g.var] = old
            return result
        raise TypeError(f"not a formula: {g!r}")

    return ev(f)


def satisfying_assignments(model: ModelFinite, f: Formula, n: int):
    """Decoded satisfying tuples, mostly for tests and small reports."""
    return list(satisfaction_set(model, f, n).tuples())
