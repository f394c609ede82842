"""The fixed ambient lattice U+E8, the embedding records, and the
fiber-configuration compatibility filter.

The ambient basis is (f, g, e1..e8): f, g span a hyperbolic plane U with
f.g = 1, and e1..e8 carry the negated E8 Cartan matrix.  Rank-9 root
configurations are shipped as explicit integer vectors in this basis and
re-verified from scratch by `verify_table1_row`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .lattice import (
    GramLattice,
    LatticeVector,
    RootType,
    Sublattice,
    cartan_negated,
    classify_root_lattice,
    dual_vector,
    gram_of,
    kernel_integer,
    orthogonal_complement,
    primitive_closure,
    quotient_group,
    root_sublattice_embeds,
)

DATA_ENV = "NINEROOTS_DATA"


def default_data_dir() -> str:
    env = os.environ.get(DATA_ENV)
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data")


def num_s_lattice() -> GramLattice:
    """Num(S) = U + E8 in the basis (f, g, e1..e8); signature (1, 9)."""
    G = [[0] * 10 for _ in range(10)]
    G[0][1] = G[1][0] = 1
    E = cartan_negated("E", 8)
    for i in range(8):
        for j in range(8):
            G[2 + i][2 + j] = E[i][j]
    return GramLattice(G)


@dataclass(frozen=True)
class EmbeddingRecord:
    """One rank-9 configuration embedded in U+E8 plus its expected invariants."""

    label: str
    root_type: RootType
    vectors: tuple[tuple[int, ...], ...]
    designated: int                      # index of the curve C among the vectors
    recipe_component: int                # component of the dual vector
    recipe_node: int                     # Bourbaki node index within the component
    recipe_h_multiple: Fraction          # coefficient of H in the isotropic vector
    expected_closure: RootType
    expected_h2: int
    expected_r0: RootType
    variant: str | None = None

    @staticmethod
    def from_json(obj: dict) -> "EmbeddingRecord":
        return EmbeddingRecord(
            label=obj["label"],
            root_type=RootType.parse(obj["root_type"]),
            vectors=tuple(tuple(int(c) for c in row) for row in obj["vectors"]),
            designated=int(obj["designated"]),
            recipe_component=int(obj["recipe"]["component"]),
            recipe_node=int(obj["recipe"]["node"]),
            recipe_h_multiple=Fraction(obj["recipe"]["h_multiple"]),
            expected_closure=RootType.parse(obj["expected"]["closure"]),
            expected_h2=int(obj["expected"]["h2"]),
            expected_r0=RootType.parse(obj["expected"]["r0"]),
            variant=obj.get("variant"),
        )

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "root_type": str(self.root_type),
            "vectors": [[str(c) for c in row] for row in self.vectors],
            "designated": self.designated,
            "recipe": {
                "component": self.recipe_component,
                "node": self.recipe_node,
                "h_multiple": str(self.recipe_h_multiple),
            },
            "expected": {
                "closure": str(self.expected_closure),
                "h2": self.expected_h2,
                "r0": str(self.expected_r0),
            },
            **({"variant": self.variant} if self.variant else {}),
        }


def load_records(data_dir: str | None = None) -> list[EmbeddingRecord]:
    path = os.path.join(data_dir or default_data_dir(), "embeddings.json")
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return [EmbeddingRecord.from_json(o) for o in payload["records"]]


@dataclass
class RowReport:
    label: str
    ok: bool
    checks: list[tuple[str, bool, str]]

    def failures(self):
        return [c for c in self.checks if not c[1]]


def verify_table1_row(rec: EmbeddingRecord) -> RowReport:
    """Re-derive every invariant of one embedding record and compare."""
    amb = num_s_lattice()
    checks: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = ""):
        checks.append((name, bool(ok), detail))

    G0 = gram_of(rec.root_type)
    vecs = [LatticeVector(v, amb) for v in rec.vectors]
    gram_ok = all(
        vecs[i].dot(vecs[j]) == G0.gram[i][j]
        for i in range(len(vecs))
        for j in range(len(vecs))
    )
    check("gram", gram_ok, f"pairings match {rec.root_type}")

    closure = primitive_closure(rec.vectors, amb)
    cl_type = classify_root_lattice(closure.gram())
    check("closure", cl_type == rec.expected_closure,
          f"computed {cl_type}, expected {rec.expected_closure}")

    comp = orthogonal_complement(rec.vectors, amb)
    h2 = None
    if comp.rank == 1:
        hvec = LatticeVector(comp.basis[0], amb)
        h2 = hvec.norm()
        check("h2", h2 == rec.expected_h2, f"computed {h2}, expected {rec.expected_h2}")
    else:
        hvec = None
        check("h2", False, f"complement rank {comp.rank} != 1")

    dual = dual_vector(rec.root_type, rec.recipe_component, rec.recipe_node)
    ecoords = [Fraction(0)] * 10
    for i, v in enumerate(vecs):
        if dual.coords[i]:
            for j in range(10):
                ecoords[j] += dual.coords[i] * v.coords[j]
    if hvec is not None:
        for j in range(10):
            ecoords[j] += rec.recipe_h_multiple * hvec.coords[j]
    E = LatticeVector(tuple(ecoords), amb)
    integral = E.is_integral()
    check("E integral", integral, str(E.coords))
    if integral:
        content = 0
        for c in E.coords:
            content = gcd(content, int(c))
        check("E primitive", content == 1, f"content {content}")
        check("E isotropic", E.norm() == 0, f"E^2 = {E.norm()}")
        ec = E.dot(vecs[rec.designated])
        check("E.C = 1", ec == 1, f"E.C = {ec}")
    else:
        check("E primitive", False, "not integral")
        check("E isotropic", False, "not integral")
        check("E.C = 1", False, "not integral")

    # roots of E-perp inside the embedded copy of R
    evals = [E.dot(v) for v in vecs]
    if all(x.denominator == 1 for x in evals):
        combos = kernel_integer([[int(x) for x in evals]])
        sub_rows = []
        for combo in combos:
            row = [0] * 10
            for i, a in enumerate(combo):
                for j in range(10):
                    row[j] += a * rec.vectors[i][j]
            sub_rows.append(tuple(row))
        sub = Sublattice(amb, tuple(sub_rows))
        try:
            r0 = classify_root_lattice(sub.gram())
            check("r0", r0 == rec.expected_r0,
                  f"computed {r0}, expected {rec.expected_r0}")
            check("r0 rank", r0.rank == 8, f"rank {r0.rank}")
        except ValueError as exc:
            check("r0", False, str(exc))
    else:
        check("r0", False, "non-integral pairings with E")

    ok = all(c[1] for c in checks)
    return RowReport(rec.label, ok, checks)


# ---------------------------------------------------------------------------
# fiber-configuration compatibility
# ---------------------------------------------------------------------------

# Rank-8 root lattices admitting an embedding into E8 (hence candidate fiber
# configurations of an extremal rational elliptic surface).  Verified against
# the exhaustive search in the test suite.
RANK8_FIBER_TYPES: tuple[str, ...] = (
    "E8", "D8", "A8", "E7+A1", "E6+A2", "D5+A3", "A7+A1", "D6+2A1",
    "A5+A2+A1", "2A4", "2D4", "4A2", "2A3+2A1", "D4+4A1", "8A1",
)

# Fiber root types of the extremal rational elliptic surfaces in
# characteristic two, keyed by the surface names used in the data catalog.
CHAR2_EXTREMAL_CONFIGS: dict[str, str] = {
    "X9111": "A8",
    "X8211": "A7+A1",
    "X6321": "A5+A2+A1",
    "X5511": "2A4",
    "X3333": "4A2",
    "X431": "E6+A2",
    "X321": "E7+A1",
    "X141": "D5+A3",
}

# Root types ruled out in characteristic two because the Mordell-Weil group
# E8/R would contain two independent two-torsion sections.
TWO_TORSION_EXCLUDED: tuple[str, ...] = ("2A3+2A1", "D6+2A1", "2D4")


@dataclass(frozen=True)
class Configuration:
    root_type: RootType
    char2_surfaces: tuple[str, ...]
    excluded_reason: str | None
    note: str | None = None

    @property
    def affine(self) -> str:
        return affine_label(self.root_type)


def affine_label(rt: RootType) -> str:
    parts = []
    for part in str(rt).split("+"):
        i = 0
        while i < len(part) and part[i].isdigit():
            i += 1
        parts.append(f"{part[:i]}{part[i]}~{part[i+1:]}")
    return "+".join(parts)


def compatible_configurations(r0: RootType) -> list[Configuration]:
    """Rank-8 fiber configurations accommodating r0, with the char-2 filter."""
    if r0.rank != 8:
        raise ValueError(f"configuration filter needs rank 8, got rank {r0.rank}")
    out = []
    for name in RANK8_FIBER_TYPES:
        t = RootType.parse(name)
        ok, _ = root_sublattice_embeds(r0, t)
        if not ok:
            continue
        surfaces = tuple(sorted(
            s for s, cfg in CHAR2_EXTREMAL_CONFIGS.items() if RootType.parse(cfg) == t
        ))
        reason = None
        if name in TWO_TORSION_EXCLUDED:
            reason = "no extremal surface in characteristic two: E8/R forces (Z/2)^2 torsion"
        elif not surfaces:
            reason = "not realized by an extremal surface in characteristic two"
        note = None
        if t == RootType.parse("E8"):
            note = ("single simple fiber component: incompatible with a rational "
                    "bisection meeting a component with multiplicity one")
        out.append(Configuration(t, surfaces, reason, note))
    out.sort(key=lambda c: str(c.root_type))
    return out


def lemma_3no_check() -> list[tuple[str, tuple[int, ...], bool]]:
    """Quotients E8/R for the two-torsion-excluded types; each contains (2,2)."""
    e8 = RootType.parse("E8")
    out = []
    for name in TWO_TORSION_EXCLUDED:
        rt = RootType.parse(name)
        ok, wit = root_sublattice_embeds(rt, e8)
        if not ok:
            out.append((name, (), False))
            continue
        inv = quotient_group(gram_of(e8), wit[0])
        evens = sum(1 for d in inv if d % 2 == 0)
        out.append((name, inv, evens >= 2))
    return out
