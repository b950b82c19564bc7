"""Chains of graded matrix algebras: unfolding, Bratteli diagrams, finitary limits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .equivalence import OMEGA, Count, DefiningSequence, Signature
from .embeddings import find_block_violation
from .groups import FiniteAbelianGroup, GroupElement
from .gradings import GradedAlgebra, IdentityComponentIdeal, elementary_grading


@dataclass(frozen=True)
class DoubleStep:
    """tau -> (tau, tau) realized by the unital embedding X -> diag(X, X)."""

    def extend(self, tau: Tuple[GroupElement, ...]) -> Tuple[GroupElement, ...]:
        return tau + tau

    def images(self, j: int, n: int) -> Tuple[int, ...]:
        return (j, j + n)

    @property
    def unital(self) -> bool:
        return True


@dataclass(frozen=True)
class TwistStep:
    """tau -> (tau, a*tau) realized by the unital embedding X -> diag(X, X)."""

    a: GroupElement

    def extend(self, tau: Tuple[GroupElement, ...]) -> Tuple[GroupElement, ...]:
        return tau + tuple(self.a * g for g in tau)

    def images(self, j: int, n: int) -> Tuple[int, ...]:
        return (j, j + n)

    @property
    def unital(self) -> bool:
        return True


@dataclass(frozen=True)
class BlockStep:
    """tau -> explicit target tuple realized by X -> diag(X, ..., X, 0)."""

    k: int
    m: int
    r: int
    target: Tuple[GroupElement, ...]

    def extend(self, tau: Tuple[GroupElement, ...]) -> Tuple[GroupElement, ...]:
        if len(tau) != self.k:
            raise ValueError(f"block step expects a source tuple of length {self.k}, got {len(tau)}")
        violation = find_block_violation(self.target, self.k, self.m, self.r)
        if violation is not None:
            raise ValueError(f"block step target fails the ratio condition at position {violation}")
        shift = self.target[0] * tau[0].inverse()
        for alpha in range(self.k):
            if self.target[alpha] != shift * tau[alpha]:
                raise ValueError(f"block step target prefix is not a translate of the source at index {alpha}")
        return self.target

    def images(self, j: int, n: int) -> Tuple[int, ...]:
        return tuple(j + l * self.k for l in range(self.m))

    @property
    def unital(self) -> bool:
        return self.r == 0


ChainStep = Union[DoubleStep, TwistStep, BlockStep]


@dataclass(frozen=True)
class ChainSpec:
    """Base tuple and extension rules; the rules repeat cyclically past the end."""

    group: FiniteAbelianGroup
    base: Tuple[GroupElement, ...]
    steps: Tuple[ChainStep, ...]

    def __post_init__(self):
        if not self.base:
            raise ValueError("the base tuple must be non-empty")
        if not self.steps:
            raise ValueError("need at least one step")
        for g in self.base:
            if g.group != self.group:
                raise ValueError("base tuple entries must belong to the stated group")

    def step_at(self, i: int) -> ChainStep:
        return self.steps[i % len(self.steps)]

    def unfold(self, depth: int) -> List[Tuple[GroupElement, ...]]:
        """Tuples at levels 1..depth; step i extends level i to level i+1."""
        if depth < 1:
            raise ValueError(f"depth must be >= 1, got {depth}")
        tuples = [self.base]
        for i in range(depth - 1):
            try:
                tuples.append(self.step_at(i).extend(tuples[-1]))
            except ValueError as exc:
                raise ValueError(f"step {i} rejected: {exc}") from exc
        return tuples


def _tuple_ideals(tau: Sequence[GroupElement]) -> List[IdentityComponentIdeal]:
    classes: Dict[GroupElement, List[int]] = {}
    for index, g in enumerate(tau):
        classes.setdefault(g, []).append(index)
    return [IdentityComponentIdeal(g, tuple(classes[g]))
            for g in sorted(classes, key=GroupElement.sort_key)]


class BratteliDiagram:
    """Leveled multigraph of identity-component ideals along a chain.

    levels[i] is a tuple of (degree, block dimension) pairs sorted by degree;
    edges[i] maps (source degree, target degree) to a positive multiplicity.
    """

    def __init__(self, levels: Sequence[Sequence[Tuple[GroupElement, int]]],
                 edges: Sequence[Dict[Tuple[GroupElement, GroupElement], int]]):
        if len(edges) != len(levels) - 1:
            raise ValueError("need exactly one edge layer between consecutive levels")
        self.levels = tuple(tuple(level) for level in levels)
        self.edges = tuple(dict(layer) for layer in edges)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def multiplicity(self, level: int, source: GroupElement, target: GroupElement) -> int:
        return self.edges[level].get((source, target), 0)

    def to_json_dict(self) -> dict:
        levels = [[{"degree": list(g.exponents), "dimension": d} for g, d in level]
                  for level in self.levels]
        edges = []
        for layer in self.edges:
            ordered = sorted(layer.items(),
                             key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key()))
            edges.append([{"from": list(g.exponents), "to": list(h.exponents),
                           "multiplicity": m} for (g, h), m in ordered])
        return {"levels": levels, "edges": edges}

    def to_dot(self) -> str:
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        names: Dict[Tuple[int, GroupElement], str] = {}
        for i, level in enumerate(self.levels):
            members = []
            for j, (g, d) in enumerate(level):
                name = f"n{i}_{j}"
                names[(i, g)] = name
                members.append(f'{name} [label="{g}:{d}"];')
            lines.append("  { rank=same; " + " ".join(members) + " }")
        for i, layer in enumerate(self.edges):
            ordered = sorted(layer.items(),
                             key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key()))
            for (g, h), m in ordered:
                lines.append(f'  {names[(i, g)]} -> {names[(i + 1, h)]} [label="{m}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def bratteli_of_chain(spec: ChainSpec, depth: int) -> BratteliDiagram:
    """Diagram of the first `depth` levels; edges traced through diagonal units.

    Multiplicity from class g to class h counts the images of one diagonal
    unit of class g that land in class h; the count must not depend on the
    chosen representative, and for unital steps the block dimensions satisfy
    dim_(i+1)(h) = sum_g mult(g -> h) * dim_i(g).
    """
    tuples = spec.unfold(depth)
    levels = []
    for tau in tuples:
        levels.append([(ideal.degree, ideal.block_dimension) for ideal in _tuple_ideals(tau)])
    edges: List[Dict[Tuple[GroupElement, GroupElement], int]] = []
    for i in range(depth - 1):
        source, target = tuples[i], tuples[i + 1]
        step = spec.step_at(i)
        n = len(source)
        classes: Dict[GroupElement, List[int]] = {}
        for index, g in enumerate(source):
            classes.setdefault(g, []).append(index)
        layer: Dict[Tuple[GroupElement, GroupElement], int] = {}
        for g, members in classes.items():
            counts: Optional[Dict[GroupElement, int]] = None
            for j in members:
                local: Dict[GroupElement, int] = {}
                for jp in step.images(j, n):
                    local[target[jp]] = local.get(target[jp], 0) + 1
                if counts is None:
                    counts = local
                elif counts != local:
                    raise ValueError(
                        f"edge multiplicities at level {i + 1} depend on the representative of class {g}")
            assert counts is not None
            for h, m in counts.items():
                layer[(g, h)] = m
        if step.unital:
            source_dims = {g: len(members) for g, members in classes.items()}
            for h, dim in levels[i + 1]:
                total = sum(layer.get((g, h), 0) * source_dims[g] for g in source_dims)
                if total != dim:
                    raise ValueError(
                        f"dimension bookkeeping fails at level {i + 2}, class {h}: {total} != {dim}")
        edges.append(layer)
    return BratteliDiagram(levels, edges)


def diagrams_equal(d1: BratteliDiagram, d2: BratteliDiagram) -> bool:
    """Levelwise equality of degree labels, block dimensions, and multiplicities."""
    return d1.levels == d2.levels and d1.edges == d2.edges


_STABILIZATION_SLACK = 4


def steinitz_signature(spec: ChainSpec) -> Signature:
    """Limiting multiplicity of each degree along the chain, with omega entries.

    Simulates whole cycles of the step list on the multiplicity vector.  Both
    the support and the set of still-growing degrees are monotone under a
    cycle, so they stabilize; stabilized growth marks an entry as omega.
    """
    group = spec.group
    counts: Dict[GroupElement, int] = {}
    for g in spec.base:
        counts[g] = counts.get(g, 0) + 1

    def run_cycle(state: Dict[GroupElement, int], start: int) -> Dict[GroupElement, int]:
        current = dict(state)
        for offset, step in enumerate(spec.steps):
            if isinstance(step, DoubleStep):
                current = {g: 2 * c for g, c in current.items()}
            elif isinstance(step, TwistStep):
                shifted = {}
                for g, c in current.items():
                    shifted[g] = shifted.get(g, 0) + c
                    shifted[step.a * g] = shifted.get(step.a * g, 0) + c
                current = shifted
            else:
                raise ValueError(
                    f"step {start + offset} is an explicit block step; "
                    "limiting signatures require steps that repeat uniformly")
        return current

    support = frozenset(counts)
    growing: frozenset = frozenset()
    limit = 2 * group.order + _STABILIZATION_SLACK
    for cycle in range(limit):
        nxt = run_cycle(counts, cycle * len(spec.steps))
        new_support = frozenset(g for g, c in nxt.items() if c > 0)
        new_growing = frozenset(g for g in nxt if nxt.get(g, 0) > counts.get(g, 0))
        if new_support == support and new_growing == growing and cycle > 0:
            mapping: Dict[GroupElement, Count] = {}
            for g in new_support:
                mapping[g] = OMEGA if g in new_growing else counts[g]
            return Signature.from_mapping(group, mapping)
        support, growing, counts = new_support, new_growing, nxt
    raise RuntimeError("signature simulation did not stabilize; this should be impossible")


@dataclass(frozen=True)
class FinitaryGrading:
    """Elementary grading of finitary matrices given by an infinite tuple limit."""

    group: FiniteAbelianGroup
    spec: ChainSpec
    sequence: DefiningSequence

    def prefix(self, depth: int) -> Tuple[GroupElement, ...]:
        return self.spec.unfold(depth)[-1]

    def prefixes(self) -> Iterator[Tuple[GroupElement, ...]]:
        """Nested prefix tuples, one per level, without end."""
        tau = self.spec.base
        yield tau
        i = 0
        while True:
            tau = self.spec.step_at(i).extend(tau)
            i += 1
            yield tau

    def truncation(self, depth: int) -> GradedAlgebra:
        return elementary_grading(self.group, self.prefix(depth))

    def signature(self) -> Signature:
        return self.sequence.signature()


def chain_union_finitary(spec: ChainSpec) -> FinitaryGrading:
    """Union of the chain along corner embeddings, as a finitary grading.

    Every step must extend the previous tuple by an exact prefix so that each
    term sits in the upper-left corner of the next; the limiting tuple is then
    well-defined and its counting function is the Steinitz signature.
    """
    probe = spec.unfold(len(spec.steps) + 2)
    for i in range(len(probe) - 1):
        shorter, longer = probe[i], probe[i + 1]
        if longer[:len(shorter)] != shorter:
            raise ValueError(f"step {i} rejected: the extended tuple does not keep "
                             "the previous tuple as its prefix")
    signature = steinitz_signature(spec)
    sequence = DefiningSequence.finitary(spec.group, dict(signature.counts))
    return FinitaryGrading(spec.group, spec, sequence)
