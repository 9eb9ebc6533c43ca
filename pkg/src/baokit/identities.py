"""The one-variable term identities behind redundant generator sets.

Compiling the fixed-point formulas through the restricted correspondence
yields three single-variable terms tau, sigma, delta over the ternary
generator.  On finite bases every subset of the triple space interprets
the generator, and the sweep checks sigma(tau(x)) = x and
delta(tau(x)) = top for all (or randomly sampled) values x.
"""

import random
from dataclasses import dataclass

from .compiler import CompiledTerm, compile_to_term, restrict_formula
from .library import formula_library
from .spaces import SetAlgebra
from .terms import eval_term


@dataclass
class IdentitySweepResult:
    base_size: int
    total: int
    exhaustive: bool
    failures: list  # (identity name, element serialization)

    @property
    def ok(self) -> bool:
        return not self.failures


def order_terms(n: int = 3) -> dict[str, CompiledTerm]:
    """tau, sigma, delta compiled from the fixed-point formulas."""
    lib = formula_library()
    out = {}
    for term_name, formula_name in (("tau", "phi"), ("sigma", "psi"), ("delta", "eta")):
        restricted = restrict_formula(lib[formula_name].formula, n)
        out[term_name] = compile_to_term(restricted, "CA", n)
    return out


def identity_sweep(
    u: int, *, samples: int = 1000, seed: int = 0, exhaustive_limit: int = 4096
) -> IdentitySweepResult:
    """Check sigma(tau(x)) = x and delta(tau(x)) = top over the base.

    All 2**(u**3) generator values are tried when that count stays under
    `exhaustive_limit`; otherwise `samples` seeded random values.
    """
    terms = order_terms(3)
    ambient = SetAlgebra("CA", u, 3)
    size = ambient.space.size
    exhaustive = (1 << size) <= exhaustive_limit
    if exhaustive:
        values = (ambient.from_bits(b) for b in range(1 << size))
        total = 1 << size
    else:
        rng = random.Random(seed)
        values = (ambient.random_element(rng) for _ in range(samples))
        total = samples

    tau, sigma, delta = terms["tau"], terms["sigma"], terms["delta"]
    failures = []
    for x in values:
        image = eval_term(tau.term, {0: x}, ambient)
        back = eval_term(sigma.term, {0: image}, ambient)
        if back != x:
            failures.append(("sigma(tau(x)) = x", x.serialize()))
        if not eval_term(delta.term, {0: image}, ambient).is_full():
            failures.append(("delta(tau(x)) = 1", x.serialize()))
    return IdentitySweepResult(
        base_size=u, total=total, exhaustive=exhaustive, failures=failures
    )
