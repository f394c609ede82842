"""Integer lattice kernel: Gram matrices, root enumeration, ADE recognition.

Roots follow the negative-definite convention throughout: a root has
self-intersection -2 and the Gram matrix of a simple system is the negated
Cartan matrix (off-diagonal entries 0 or +1).  All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .linalg import (
    det_int,
    kernel_integer,
    mat_inverse_rational,
    mat_inverse_unimodular,
    mat_mul,
    smith_normal_form,
    symmetric_diagonal_signs,
    transpose,
)

MAX_RANK = 26

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}


@dataclass(frozen=True)
class RootType:
    """Multiset of ADE components, canonically ordered."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        comps = []
        for fam, n in self.components:
            if fam == "A" and n >= 1:
                pass
            elif fam == "D" and n >= 4:
                pass
            elif fam == "E" and n in (6, 7, 8):
                pass
            else:
                raise ValueError(f"invalid ADE component {fam}{n}")
            comps.append((fam, n))
        comps.sort(key=lambda c: (-c[1], -_FAMILY_ORDER[c[0]]))
        object.__setattr__(self, "components", tuple(comps))

    @staticmethod
    def parse(text: str) -> "RootType":
        comps = []
        for part in text.replace(" ", "").split("+"):
            m = re.fullmatch(r"(\d*)([ADE])(\d+)", part)
            if not m:
                raise ValueError(f"cannot parse root type component {part!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            comps.extend([(m.group(2), int(m.group(3)))] * mult)
        return RootType(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    def discriminant(self) -> int:
        """|det| of the Gram matrix: product of the component discriminants."""
        d = 1
        for fam, n in self.components:
            if fam == "A":
                d *= n + 1
            elif fam == "D":
                d *= 4
            else:
                d *= {6: 3, 7: 2, 8: 1}[n]
        return d

    def __str__(self):
        groups: list[tuple[tuple[str, int], int]] = []
        for c in self.components:
            if groups and groups[-1][0] == c:
                groups[-1] = (c, groups[-1][1] + 1)
            else:
                groups.append((c, 1))
        return "+".join(
            (f"{m}{fam}{n}" if m > 1 else f"{fam}{n}") for (fam, n), m in groups
        )

    def __repr__(self):
        return f"RootType({str(self)!r})"


class GramLattice:
    """A lattice presented by a symmetric integer Gram matrix."""

    def __init__(self, gram):
        g = [list(map(int, row)) for row in gram]
        n = len(g)
        if n > MAX_RANK:
            raise ValueError(f"rank {n} exceeds cap {MAX_RANK}")
        for i in range(n):
            if len(g[i]) != n:
                raise ValueError("Gram matrix is not square")
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        self.rank = n
        self.gram = tuple(tuple(row) for row in g)

    def dot(self, v, w) -> Fraction:
        acc = Fraction(0)
        for i in range(self.rank):
            gi = self.gram[i]
            if v[i]:
                acc += v[i] * sum(Fraction(gi[j]) * w[j] for j in range(self.rank))
        return acc

    def signature(self) -> tuple[int, int, int]:
        """(positive, negative, zero) inertia, computed exactly."""
        return symmetric_diagonal_signs(self.gram)

    def is_negative_definite(self) -> bool:
        p, n, z = self.signature()
        return p == 0 and z == 0 and n == self.rank

    def determinant(self) -> int:
        return det_int([list(r) for r in self.gram])

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __repr__(self):
        return f"GramLattice(rank={self.rank})"


@dataclass(frozen=True)
class LatticeVector:
    """Coordinates (exact rationals or integers) in a fixed ambient basis."""

    coords: tuple
    ambient: GramLattice

    def __post_init__(self):
        if len(self.coords) != self.ambient.rank:
            raise ValueError("coordinate length does not match ambient rank")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def dot(self, other: "LatticeVector") -> Fraction:
        return self.ambient.dot(self.coords, other.coords)

    def norm(self) -> Fraction:
        return self.dot(self)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __add__(self, other):
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)),
                             self.ambient)

    def __sub__(self, other):
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)),
                             self.ambient)

    def scale(self, c):
        c = Fraction(c)
        return LatticeVector(tuple(c * x for x in self.coords), self.ambient)


@dataclass(frozen=True)
class Sublattice:
    """An explicit sublattice: integer basis rows inside an ambient lattice."""

    ambient: GramLattice
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> GramLattice:
        B = [list(b) for b in self.basis]
        G = [list(r) for r in self.ambient.gram]
        return GramLattice(mat_mul(mat_mul(B, G), transpose(B)))

    def vectors(self) -> list[LatticeVector]:
        return [LatticeVector(b, self.ambient) for b in self.basis]


# ---------------------------------------------------------------------------
# Cartan matrices and duals
# ---------------------------------------------------------------------------

def _adjacency(fam: str, n: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram, Bourbaki numbering, nodes 1..n."""
    if fam == "A":
        return [(i, i + 1) for i in range(1, n)]
    if fam == "D":
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
    if n >= 7:
        edges.append((6, 7))
    if n == 8:
        edges.append((7, 8))
    return edges


def cartan_negated(fam: str, n: int) -> list[list[int]]:
    M = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in _adjacency(fam, n):
        M[a - 1][b - 1] = 1
        M[b - 1][a - 1] = 1
    return M


def gram_of(rt: RootType) -> GramLattice:
    """Block-diagonal negated Cartan matrix of an ADE multiset."""
    n = rt.rank
    G = [[0] * n for _ in range(n)]
    off = 0
    for fam, k in rt.components:
        block = cartan_negated(fam, k)
        for i in range(k):
            for j in range(k):
                G[off + i][off + j] = block[i][j]
        off += k
    return GramLattice(G)


def component_offsets(rt: RootType) -> list[int]:
    offs, off = [], 0
    for _, k in rt.components:
        offs.append(off)
        off += k
    return offs


def dual_vector(rt: RootType, comp_index: int, node_index: int) -> LatticeVector:
    """The rational vector pairing delta_ij against the simple roots.

    Node indices are 1-based Bourbaki labels within the chosen component.
    """
    fam, k = rt.components[comp_index]
    if not 1 <= node_index <= k:
        raise IndexError(f"node {node_index} out of range for {fam}{k}")
    inv = mat_inverse_rational(cartan_negated(fam, k))
    col = [inv[i][node_index - 1] for i in range(k)]
    coords = [Fraction(0)] * rt.rank
    off = component_offsets(rt)[comp_index]
    for i in range(k):
        coords[off + i] = col[i]
    return LatticeVector(tuple(coords), gram_of(rt))


# ---------------------------------------------------------------------------
# short vectors
# ---------------------------------------------------------------------------

def _floor_add_sqrt(a: Fraction, f: Fraction) -> int:
    """floor(a + sqrt(f)) for f >= 0, exactly."""
    if f < 0:
        raise ValueError("negative radicand")
    s_int = isqrt(f.numerator * f.denominator) // f.denominator
    k = int(a) + s_int  # near the answer; adjust exactly
    while _le_sqrt(k + 1 - a, f):
        k += 1
    while not _le_sqrt(k - a, f):
        k -= 1
    return k


def _le_sqrt(x: Fraction, f: Fraction) -> bool:
    """x <= sqrt(f), exactly (f >= 0)."""
    if x <= 0:
        return True
    return x * x <= f


def _cholesky(Q) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q positive definite: Q(x) = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2."""
    n = len(Q)
    A = [[Fraction(Q[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    r = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            r[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= A[i][j] * A[i][k] / d[i]
                A[k][j] = A[j][k]
    return d, r


def short_vectors(L: GramLattice, norm: int) -> list[LatticeVector]:
    """All integer vectors of the given (negative) norm, lexicographically sorted."""
    if norm >= 0:
        raise ValueError("norm must be negative (negative-definite convention)")
    if not L.is_negative_definite():
        raise ValueError("short-vector enumeration needs a negative-definite lattice")
    target = Fraction(-norm)
    n = L.rank
    Q = [[-L.gram[i][j] for j in range(n)] for i in range(n)]
    d, r = _cholesky(Q)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def rec(i: int, rem: Fraction):
        if i < 0:
            if rem == 0 and any(x):
                out.append(tuple(x))
            return
        c = sum(r[i][j] * x[j] for j in range(i + 1, n)) if i + 1 < n else Fraction(0)
        bound = rem / d[i]
        hi = _floor_add_sqrt(-c, bound)
        lo = -_floor_add_sqrt(c, bound)
        for xi in range(lo, hi + 1):
            x[i] = xi
            rec(i - 1, rem - d[i] * (xi + c) ** 2)
        x[i] = 0

    rec(n - 1, target)
    out = [v for v in out if L.dot(v, v) == norm]
    out.sort()
    return [LatticeVector(v, L) for v in out]


# ---------------------------------------------------------------------------
# ADE classification
# ---------------------------------------------------------------------------

def _lex_positive(v) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


def classify_root_lattice(L: GramLattice) -> RootType:
    """ADE type of the sublattice generated by the norm -2 vectors.

    Raises ValueError when those vectors do not span L up to finite index or
    the resulting diagram is not a disjoint union of ADE diagrams.
    """
    roots = [tuple(int(c) for c in v.coords) for v in short_vectors(L, -2)]
    if not roots:
        raise ValueError("not a root lattice: no norm -2 vectors")
    pos = [v for v in roots if _lex_positive(v)]
    posset = set(pos)
    simple = []
    for v in pos:
        decomposable = any(
            tuple(a - b for a, b in zip(v, w)) in posset for w in pos if w != v
        )
        if not decomposable:
            simple.append(v)
    # rank check: simple roots must span a finite-index sublattice
    M = [list(s) for s in simple]
    D, _, _ = smith_normal_form(M)
    rk = sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])
    if rk != L.rank or len(simple) != L.rank:
        raise ValueError(
            f"not a root lattice: {len(simple)} simple roots of rank {rk} in rank {L.rank}"
        )
    pair = [[L.dot(a, b) for b in simple] for a in simple]
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            if pair[i][j] not in (0, 1):
                raise ValueError("not a root lattice: simple system pairing outside {0,1}")
    # connected components of the adjacency graph
    n = len(simple)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in range(n):
                if not seen[w] and pair[u][w] == 1:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    types = []
    for comp in comps:
        types.append(_identify_diagram(comp, pair))
    return RootType(tuple(types))


def _identify_diagram(nodes: list[int], pair) -> tuple[str, int]:
    n = len(nodes)
    deg = {u: sum(1 for w in nodes if w != u and pair[u][w] == 1) for u in nodes}
    edge_count = sum(deg.values()) // 2
    if edge_count != n - 1:
        raise ValueError("not a root lattice: component has a cycle")
    branch = [u for u in nodes if deg[u] >= 3]
    if any(deg[u] > 3 for u in nodes) or len(branch) > 1:
        raise ValueError("not a root lattice: diagram outside ADE")
    if not branch:
        return ("A", n)
    b = branch[0]
    arms = []
    for start in (w for w in nodes if pair[b][w] == 1 and w != b):
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in nodes if w not in (prev, cur) and pair[cur][w] == 1]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", arms[2] + 3)
    if arms == [1, 2, 2]:
        return ("E", 6)
    if arms == [1, 2, 3]:
        return ("E", 7)
    if arms == [1, 2, 4]:
        return ("E", 8)
    raise ValueError(f"not a root lattice: arm lengths {arms}")


# ---------------------------------------------------------------------------
# saturation, complements, quotients
# ---------------------------------------------------------------------------

def _int_rows(vectors) -> list[list[int]]:
    rows = []
    for v in vectors:
        coords = v.coords if isinstance(v, LatticeVector) else v
        row = []
        for c in coords:
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError("integral vectors required")
            row.append(int(c))
        rows.append(row)
    return rows


def primitive_closure(vectors, ambient: GramLattice) -> Sublattice:
    """Saturation (Q-span intersected with the ambient lattice) via SNF."""
    M = _int_rows(vectors)
    k = len(M)
    D, _, V = smith_normal_form(M)
    rk = sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])
    if rk != k:
        raise ValueError("dependent input vectors")
    Vinv = mat_inverse_unimodular(V)
    basis = tuple(tuple(Vinv[i]) for i in range(k))
    return Sublattice(ambient, basis)


def orthogonal_complement(vectors, ambient: GramLattice) -> Sublattice:
    """Z-basis of everything orthogonal to the given integral vectors."""
    M = _int_rows(vectors)
    A = mat_mul(M, [list(r) for r in ambient.gram])
    cols = kernel_integer(A)
    return Sublattice(ambient, tuple(tuple(c) for c in cols))


def quotient_group(ambient: GramLattice, basis) -> tuple[int, ...]:
    """Invariant factors (> 1) of ambient / <basis> for a full-rank sublattice."""
    M = _int_rows(basis)
    if len(M) != ambient.rank:
        raise ValueError("sublattice is not full rank in the ambient lattice")
    D, _, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(ambient.rank)]
    if any(d == 0 for d in diag):
        raise ValueError("sublattice is not full rank in the ambient lattice")
    return tuple(d for d in diag if d != 1)


def index_in_saturation(vectors, ambient: GramLattice) -> int:
    M = _int_rows(vectors)
    D, _, _ = smith_normal_form(M)
    idx = 1
    for i in range(len(M)):
        if D[i][i] == 0:
            raise ValueError("dependent input vectors")
        idx *= D[i][i]
    return idx


# ---------------------------------------------------------------------------
# embedding search
# ---------------------------------------------------------------------------

def _simple_root_order(rt: RootType) -> tuple[GramLattice, list[int]]:
    """Gram of rt with components sorted big-first (already canonical)."""
    return gram_of(rt), component_offsets(rt)


_PAIRING_CACHE: dict[RootType, tuple] = {}


def _root_pairing_table(target: RootType):
    """Roots of the target plus pairing bitmasks (orthogonal / adjacent)."""
    if target in _PAIRING_CACHE:
        return _PAIRING_CACHE[target]
    GT = gram_of(target)
    roots = [tuple(int(c) for c in v.coords) for v in short_vectors(GT, -2)]
    G = [list(r) for r in GT.gram]
    n = GT.rank
    images = []
    for v in roots:
        images.append([sum(G[i][j] * v[j] for j in range(n)) for i in range(n)])
    orth = []
    adj = []
    for v in roots:
        om = am = 0
        for j, w in enumerate(images):
            p = sum(v[i] * w[i] for i in range(n))
            if p == 0:
                om |= 1 << j
            elif p == 1:
                am |= 1 << j
        orth.append(om)
        adj.append(am)
    # representatives for first-root symmetry reduction: the root automorphisms
    # act transitively on the roots of each component, so the first chosen root
    # may be normalized to the first root supported on each component block.
    offs = component_offsets(target)
    blocks = [(o, o + k) for o, (_, k) in zip(offs, target.components)]
    rep_mask = 0
    seen_comp: set[tuple[str, int]] = set()
    for ci, comp in enumerate(target.components):
        if comp in seen_comp:
            continue
        seen_comp.add(comp)
        lo, hi = blocks[ci]
        for j, v in enumerate(roots):
            if any(v[lo:hi]) and not any(v[:lo]) and not any(v[hi:]):
                rep_mask |= 1 << j
                break
    _PAIRING_CACHE[target] = (roots, orth, adj, rep_mask)
    return _PAIRING_CACHE[target]


def root_sublattice_embeds(r0: RootType, target: RootType,
                           max_witnesses: int = 1) -> tuple[bool, list[list[tuple[int, ...]]]]:
    """Search for an isometric copy of r0's simple system among target's roots.

    Returns (found, witnesses); a witness lists one coordinate vector in the
    target basis per simple root of r0.  The search is exhaustive, so a False
    answer is a proof of non-embeddability.
    """
    if r0.rank > target.rank:
        return False, []
    if (r0, target) in _EMBED_CACHE and max_witnesses == 1:
        return _EMBED_CACHE[(r0, target)]
    roots, orth, adj, rep_mask = _root_pairing_table(target)
    nroots = len(roots)
    full_mask = (1 << nroots) - 1
    G0, offs = _simple_root_order(r0)
    k = r0.rank
    comps = r0.components
    first_node = {offs[ci]: ci for ci in range(len(comps))}

    witnesses: list[list[tuple[int, ...]]] = []
    choice = [0] * k

    def rec(level: int, allowed: int) -> bool:
        if level == k:
            witnesses.append([roots[c] for c in choice])
            return len(witnesses) >= max_witnesses
        cand_mask = allowed
        if level == 0:
            cand_mask &= rep_mask
        elif level in first_node:
            ci = first_node[level]
            if comps[ci] == comps[ci - 1]:
                # identical components are interchangeable: increasing indices
                cand_mask &= full_mask ^ ((1 << (choice[offs[ci - 1]] + 1)) - 1)
        m = cand_mask
        while m:
            low = m & -m
            cand = low.bit_length() - 1
            m ^= low
            choice[level] = cand
            if level + 1 == k:
                if rec(level + 1, 0):
                    return True
                continue
            # constraint mask for the next simple root against all chosen ones
            nm = full_mask
            for prev in range(level + 1):
                want = G0.gram[prev][level + 1]
                nm &= orth[choice[prev]] if want == 0 else adj[choice[prev]]
            if rec(level + 1, nm):
                return True
        return False

    rec(0, full_mask)
    result = (bool(witnesses), witnesses)
    if max_witnesses == 1:
        _EMBED_CACHE[(r0, target)] = result
    return result


_EMBED_CACHE: dict[tuple[RootType, RootType], tuple] = {}


def embed_gram_in_roots(g0_rows, target: RootType,
                        max_witnesses: int = 1) -> list[list[tuple[int, ...]]]:
    """Find tuples of target roots realizing an explicit root-basis Gram.

    The Gram must have -2 on the diagonal and 0/1 off the diagonal (a simple
    system in the negative-definite convention), in any node order.
    """
    k = len(g0_rows)
    roots, orth, adj, rep_mask = _root_pairing_table(target)
    nroots = len(roots)
    full_mask = (1 << nroots) - 1
    witnesses: list[list[tuple[int, ...]]] = []
    choice = [0] * k

    def rec(level: int, allowed: int) -> bool:
        if level == k:
            witnesses.append([roots[c] for c in choice])
            return len(witnesses) >= max_witnesses
        m = allowed & (rep_mask if level == 0 else full_mask)
        while m:
            low = m & -m
            cand = low.bit_length() - 1
            m ^= low
            choice[level] = cand
            if level + 1 == k:
                if rec(level + 1, 0):
                    return True
                continue
            nm = full_mask
            for prev in range(level + 1):
                want = g0_rows[prev][level + 1]
                nm &= orth[choice[prev]] if want == 0 else adj[choice[prev]]
            if rec(level + 1, nm):
                return True
        return False

    rec(0, full_mask)
    return witnesses


def smith_normal_form_public(M):
    """Re-export with the verification contract U*M*V = D."""
    return smith_normal_form(M)
