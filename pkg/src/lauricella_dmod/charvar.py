"""Characteristic-variety generators: (0,1)-initial forms of the family operators."""

from __future__ import annotations

from dataclasses import dataclass

from .families import FamilySpec, operator_family
from .orders import initial_form_01

GLOBAL_GB = "global_gb"
LOCAL_GB = "local_gb"

# Families whose operators form a Groebner basis for a global term order
# generate the whole initial ideal; the A and C generators are only known to
# generate the local initial ideal near the origin.
PROVENANCE = {"B": GLOBAL_GB, "APrime": GLOBAL_GB, "A": LOCAL_GB, "C": LOCAL_GB}


@dataclass
class CharVarGens:
    family: str
    m: int
    gens: list
    provenance: str

    @property
    def ring(self):
        return self.gens[0].ring

    @property
    def exact(self):
        return self.provenance == GLOBAL_GB

    def to_json(self):
        return {
            "family": self.family,
            "m": self.m,
            "provenance": self.provenance,
            "ring": self.ring.to_json(),
            "gens": [g.to_text() for g in self.gens],
        }


def char_gens(spec):
    """``[in_(0,1)(l_1), ..., in_(0,1)(l_m)]`` for the family."""
    gens = [initial_form_01(op) for op in operator_family(spec)]
    return CharVarGens(spec.family, spec.m, gens, PROVENANCE[spec.family])


def printed_gens(spec):
    """Closed-form generators written directly in ``(x, xi)``.

    B (and APrime in ``X``):  x_i xi_i (x_i (1 - x_i) xi_i + sum_{j != i} x_j xi_j)
    A:  x_i xi_i (x_i xi_i - x_i sum_j x_j xi_j)
    """
    if spec.family == "C":
        raise ValueError("no closed form is recorded for the C family")
    ring = spec.algebra.ring
    m = spec.m
    x = [ring.gen(i) for i in range(m)]
    xi = [ring.gen(m + i) for i in range(m)]
    gens = []
    for i in range(m):
        if spec.family in ("B", "APrime"):
            rest = sum((x[j] * xi[j] for j in range(m) if j != i), ring.zero)
            gens.append(x[i] * xi[i] * (x[i] * (1 - x[i]) * xi[i] + rest))
        else:
            total = sum((x[j] * xi[j] for j in range(m)), ring.zero)
            gens.append(x[i] * xi[i] * (x[i] * xi[i] - x[i] * total))
    return CharVarGens(spec.family, m, gens, PROVENANCE[spec.family])


def gens_equal_modulo_rename(g1, g2, rename):
    """Whether ``g1``'s generators equal ``g2``'s after renaming variables.

    ``rename`` maps variable names of ``g1``'s ring to names of ``g2``'s ring;
    unlisted names map to themselves.  The map must be a bijection.
    """
    if g1.m != g2.m:
        raise ValueError("generator lists of different dimension")
    src, dst = g1.ring, g2.ring
    image = [rename.get(n, n) for n in src.names]
    if len(set(image)) != len(image) or set(image) != set(dst.names):
        raise ValueError("rename is not a bijection onto the target variables")
    if len(g1.gens) != len(g2.gens):
        return False
    return all(p.rename(rename, dst) == q for p, q in zip(g1.gens, g2.gens))


def char_gens_for(family, m):
    return char_gens(FamilySpec(family, m))
