"""Graded embeddings of matrix algebras and regularization of factor decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import CycNumber
from .groups import FiniteAbelianGroup, GroupElement
from .linalg import SpanSolver, nullspace
from .matrices import Matrix
from .gradings import (Cocycle, ElementaryUnits, GradedAlgebra, GradedMap,
                       elementary_grading, cocycle_from_units, centralizer,
                       homogeneous_matrix_units, matrix_degree_for_tuple)


class EmbeddingConditionError(ValueError):
    """Raised when a tuple fails the repeated-ratio block condition."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


def find_block_violation(h: Sequence[GroupElement], k: int, m: int, r: int) -> Optional[int]:
    """First position i where consecutive ratios h_i^(-1) h_(i+1) differ across
    the m size-k blocks, or None when the pattern repeats (zero-based)."""
    h = tuple(h)
    if k < 1 or m < 1 or r < 0:
        raise ValueError(f"need k, m >= 1 and r >= 0, got k={k}, m={m}, r={r}")
    if len(h) != k * m + r:
        raise ValueError(f"tuple length {len(h)} != k*m + r = {k * m + r}")
    for i in range(k - 1):
        base = h[i].inverse() * h[i + 1]
        for block in range(1, m):
            offset = block * k
            if h[i + offset].inverse() * h[i + offset + 1] != base:
                return i
    return None


def check_block_condition(h: Sequence[GroupElement], k: int, m: int, r: int) -> bool:
    return find_block_violation(h, k, m, r) is None


def block_diagonal_embedding(domain: GradedAlgebra, m: int, r: int,
                             target: Sequence[GroupElement]) -> GradedMap:
    """Graded embedding X -> diag(X, ..., X, 0) of an elementary M_k into M_(km+r).

    Requires the repeated-ratio condition on the target tuple and that its
    k-prefix is a translate of the domain tuple.
    """
    if domain.elementary_tuple is None:
        raise ValueError("the domain must carry an elementary tuple")
    source = domain.elementary_tuple
    target = tuple(target)
    k = len(source)
    violation = find_block_violation(target, k, m, r)
    if violation is not None:
        raise EmbeddingConditionError(
            violation, f"target tuple ratio at position {violation} differs between blocks")
    shift = target[0] * source[0].inverse()
    for alpha in range(k):
        if target[alpha] != shift * source[alpha]:
            raise ValueError(f"target prefix is not a translate of the source tuple at index {alpha}")
    n = k * m + r
    codomain = elementary_grading(domain.group, target)
    pairs = []
    for i in range(k):
        for j in range(k):
            image = Matrix.zeros(n)
            for block in range(m):
                image = image + Matrix.unit(n, i + block * k, j + block * k)
            pairs.append((Matrix.unit(k, i, j), image))
    return GradedMap(domain, codomain, tuple(pairs))


@dataclass(frozen=True)
class GradedVectorSpace:
    """F^n with homogeneous coordinates; deg v_i = g_i^(-1) for the tuple entry g_i."""

    group: FiniteAbelianGroup
    degrees: Tuple[GroupElement, ...]

    @staticmethod
    def from_tuple(group: FiniteAbelianGroup, tau: Sequence[GroupElement]) -> "GradedVectorSpace":
        return GradedVectorSpace(group, tuple(g.inverse() for g in tau))

    @property
    def n(self) -> int:
        return len(self.degrees)

    def induced_tuple(self) -> Tuple[GroupElement, ...]:
        return tuple(d.inverse() for d in self.degrees)

    def coordinate_classes(self) -> Dict[GroupElement, List[int]]:
        classes: Dict[GroupElement, List[int]] = {}
        for index, d in enumerate(self.degrees):
            classes.setdefault(d, []).append(index)
        return classes

    def vector_degree(self, vector: Sequence[CycNumber]) -> Optional[GroupElement]:
        degree = None
        for i, x in enumerate(vector):
            if x.is_zero():
                continue
            if degree is None:
                degree = self.degrees[i]
            elif degree != self.degrees[i]:
                return None
        return degree


@dataclass(frozen=True)
class ModuleSplit:
    """Decomposition V = V_1 + ... + V_m + V_0 under a copy of M_k."""

    summands: Tuple[Tuple[Tuple[CycNumber, ...], ...], ...]
    annihilated: Tuple[Tuple[CycNumber, ...], ...]
    change_of_basis: Matrix
    induced_tuple: Tuple[GroupElement, ...]

    @property
    def copies(self) -> int:
        return len(self.summands)


def split_module_decomposition(space: GradedVectorSpace,
                               unit_images: Sequence[Sequence[Matrix]]) -> ModuleSplit:
    """Split F^n into irreducible modules over a homogeneous copy of M_k.

    unit_images[i][j] realizes the matrix unit E_ij inside End(F^n); all images
    must be homogeneous and satisfy the unit relations.  Each summand basis is
    built as v_i = E_ik v from a homogeneous v spanning a line of E_kk V.
    """
    n = space.n
    tau = space.induced_tuple()
    k = len(unit_images)
    if k < 1 or any(len(row) != k for row in unit_images):
        raise ValueError("unit images must form a square k x k table")
    for i in range(k):
        for j in range(k):
            if unit_images[i][j].n != n:
                raise ValueError("unit images must act on the given space")
    for i in range(k):
        for j in range(k):
            for a in range(k):
                for b in range(k):
                    product = unit_images[i][j] * unit_images[a][b]
                    expected = unit_images[i][b] if j == a else Matrix.zeros(n)
                    if product != expected:
                        raise ValueError(f"images of E_{i}{j} and E_{a}{b} violate the unit relations")
    degrees_c: List[Optional[GroupElement]] = []
    for j in range(k):
        d = matrix_degree_for_tuple(unit_images[0][j], tau)
        if d is None:
            raise ValueError(f"image of E_0{j} is not homogeneous")
        degrees_c.append(d)
    identity_g = space.group.identity()
    c_tuple = [identity_g] + [degrees_c[j] for j in range(1, k)]
    for i in range(k):
        for j in range(k):
            d = matrix_degree_for_tuple(unit_images[i][j], tau) \
                if not unit_images[i][j].is_zero() else None
            if unit_images[i][j].is_zero():
                raise ValueError(f"image of E_{i}{j} is zero")
            if d != c_tuple[i].inverse() * c_tuple[j]:
                raise ValueError(f"image degrees are inconsistent at ({i},{j})")

    classes = space.coordinate_classes()
    zero = CycNumber.zero()

    def homogeneous_column_basis(m: Matrix) -> List[Tuple[CycNumber, ...]]:
        """Homogeneous basis of the column space of a degree-e idempotent."""
        out: List[Tuple[CycNumber, ...]] = []
        solver = SpanSolver()
        for d in sorted(classes, key=GroupElement.sort_key):
            for j in classes[d]:
                col = m.column(j)
                if any(not x.is_zero() for x in col) and solver.add(col):
                    out.append(col)
        return out

    e_c = Matrix.zeros(n)
    for i in range(k):
        e_c = e_c + unit_images[i][i]
    if e_c * e_c != e_c:
        raise ValueError("sum of diagonal unit images is not idempotent")

    corner = unit_images[k - 1][k - 1]
    anchors = homogeneous_column_basis(corner)
    summands: List[Tuple[Tuple[CycNumber, ...], ...]] = []
    for w in anchors:
        vectors = [unit_images[i][k - 1].apply(w) for i in range(k)]
        summands.append(tuple(vectors))

    # homogeneous kernel of e_c
    annihilated: List[Tuple[CycNumber, ...]] = []
    for d in sorted(classes, key=GroupElement.sort_key):
        idx = classes[d]
        rows = []
        for i in range(n):
            row = [e_c.entries[i][j] for j in idx]
            if any(not x.is_zero() for x in row):
                rows.append(row)
        for sol in nullspace(rows, len(idx)):
            vec = [zero] * n
            for c, j in zip(sol, idx):
                vec[j] = c
            annihilated.append(tuple(vec))

    columns = [v for summand in summands for v in summand] + annihilated
    if len(columns) != n:
        raise ValueError(f"module split produced {len(columns)} vectors for dimension {n}")
    basis_matrix = Matrix([[columns[j][i] for j in range(n)] for i in range(n)])
    inverse = basis_matrix.inverse()  # raises when the vectors are dependent
    m_copies = len(summands)
    for i in range(k):
        for j in range(k):
            conjugated = inverse * unit_images[i][j] * basis_matrix
            expected = Matrix.zeros(n)
            for block in range(m_copies):
                expected = expected + Matrix.unit(n, i + block * k, j + block * k)
            if conjugated != expected:
                raise ValueError("change of basis does not realize the block-diagonal form")

    induced: List[GroupElement] = []
    for vec in columns:
        d = space.vector_degree(vec)
        if d is None:
            raise ValueError("module split produced a non-homogeneous basis vector")
        induced.append(d.inverse())
    return ModuleSplit(tuple(summands), tuple(annihilated), basis_matrix, tuple(induced))


@dataclass(frozen=True)
class DecompositionPair:
    """R = C * D with C elementary-graded, D fine with a fixed homogeneous basis."""

    algebra: GradedAlgebra
    c_basis: Tuple[Matrix, ...]
    d_units: Dict[GroupElement, Matrix]
    identity: Matrix

    def support(self) -> Tuple[GroupElement, ...]:
        return tuple(sorted(self.d_units, key=GroupElement.sort_key))

    def cocycle(self) -> Cocycle:
        return cocycle_from_units(self.algebra.group, self.d_units)

    def verify(self) -> List[str]:
        """Structural checks; returns a list of human-readable problems."""
        problems = []
        n = self.algebra.n
        for c in self.c_basis:
            for t, x in self.d_units.items():
                if c * x != x * c:
                    problems.append(f"factor bases do not commute at degree {t}")
        if len(self.c_basis) * len(self.d_units) != n * n:
            problems.append(
                f"dimension product {len(self.c_basis)}*{len(self.d_units)} != {n * n}")
        products = [c * x for c in self.c_basis for x in self.d_units.values()]
        solver = SpanSolver()
        for m in products:
            solver.add(m.flatten())
        if solver.rank != n * n:
            problems.append("products of the two factors do not span the algebra")
        c_degrees = set()
        for c in self.c_basis:
            d = self.algebra.degree_of(c)
            if d is None:
                problems.append("a C-basis element is not homogeneous")
            else:
                c_degrees.add(d)
        identity_g = self.algebra.group.identity()
        overlap = c_degrees & set(self.support())
        if overlap - {identity_g}:
            problems.append(f"factor supports overlap beyond the identity: {sorted(overlap, key=GroupElement.sort_key)}")
        try:
            co = self.cocycle()
            violation = co.first_identity_violation()
            if violation is not None:
                problems.append(f"cocycle identity fails at {violation}")
        except ValueError as exc:
            problems.append(str(exc))
        return problems


@dataclass(frozen=True)
class RegularizationResult:
    """Adjusted fine factor and its centralizer after straightening an embedding."""

    pair: DecompositionPair
    psi: Dict[GroupElement, Matrix]
    multipliers: Dict[GroupElement, Matrix]
    c_units: ElementaryUnits
    corner_equal: bool


def regularize_decomposition(phi: GradedMap, source: DecompositionPair,
                             target: DecompositionPair) -> RegularizationResult:
    """Straighten a graded injection so its image meshes with the target factors.

    Writes phi(X_t) = A_t X_t' with A_t in the elementary factor, corrects the
    multipliers to A_t' = A_t phi(e1) + e2 - phi(e1), and returns the adjusted
    fine basis X_t'' = A_t' X_t' together with its centralizer and the
    homogeneous matrix units certifying that centralizer elementary.
    """
    algebra2 = phi.codomain
    support = source.support()
    if support != target.support():
        raise ValueError("fine factors have different supports")
    if not source.cocycle().equals(target.cocycle()):
        raise ValueError("fine factors have different cocycles")
    e2 = target.identity
    phi_e1 = phi.apply(source.identity)
    c_solver = SpanSolver([c.flatten() for c in target.c_basis])
    identity_g = algebra2.group.identity()

    multipliers: Dict[GroupElement, Matrix] = {}
    adjusted: Dict[GroupElement, Matrix] = {}
    for t in support:
        x_t = source.d_units[t]
        x_t_prime = target.d_units[t]
        a_t = phi.apply(x_t) * x_t_prime.inverse()
        if not c_solver.contains(a_t.flatten()):
            raise ValueError(f"multiplier at {t} lies outside the elementary factor; the map is not graded")
        degree = algebra2.degree_of(a_t)
        if degree != identity_g:
            raise ValueError(f"multiplier at {t} has degree {degree}, expected the identity")
        multipliers[t] = a_t
        a_t_corrected = a_t * phi_e1 + e2 - phi_e1
        adjusted[t] = a_t_corrected * x_t_prime

    alpha = target.cocycle()
    for t in support:
        for s in support:
            lhs = adjusted[t] * adjusted[s]
            rhs = adjusted[t * s].scale(alpha(t, s))
            if lhs != rhs:
                raise ValueError(f"adjusted basis breaks the cocycle relation at ({t},{s})")
    if adjusted[identity_g] != e2:
        raise ValueError("adjusted basis does not recover the identity")

    new_centralizer = centralizer(algebra2, list(adjusted.values()))
    grouped: Dict[GroupElement, List[Matrix]] = {}
    for m in new_centralizer:
        d = algebra2.degree_of(m)
        if d is None:
            raise ValueError("centralizer basis is not homogeneous")
        grouped.setdefault(d, []).append(m)
    units = homogeneous_matrix_units(grouped, e2)

    # the straightened fine basis must stay compatible with the original map
    for a in source.c_basis:
        phi_a = phi.apply(a)
        for t in support:
            if phi_a * adjusted[t] != phi_a * phi.apply(source.d_units[t]):
                raise ValueError(f"adjusted basis is incompatible with the map at degree {t}")

    image_solver = SpanSolver()
    for c in source.c_basis:
        for x in source.d_units.values():
            image_solver.add(phi.apply(c * x).flatten())
    corner_solver = SpanSolver()
    for component in algebra2.components.values():
        for basis_matrix in component:
            corner_solver.add((phi_e1 * basis_matrix * phi_e1).flatten())
    corner_equal = (image_solver.rank == corner_solver.rank
                    and all(corner_solver.contains(row) for row in image_solver.echelon_rows()))
    if corner_equal:
        phi_c1 = SpanSolver([phi.apply(c).flatten() for c in source.c_basis])
        cut = SpanSolver([(phi_e1 * m * phi_e1).flatten() for m in new_centralizer])
        if cut.rank != phi_c1.rank or not all(phi_c1.contains(r) for r in cut.echelon_rows()):
            raise ValueError("corner of the new elementary factor does not match the mapped one")

    pair = DecompositionPair(algebra2, tuple(new_centralizer), dict(adjusted), e2)
    return RegularizationResult(pair, dict(adjusted), multipliers, units, corner_equal)
