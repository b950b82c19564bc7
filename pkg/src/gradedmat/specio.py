"""JSON forms of groups, matrices, gradings, maps, and chains."""

from __future__ import annotations

from typing import Any, Dict, List, Tuple, Union

from .chains import BlockStep, ChainSpec, ChainStep, DoubleStep, TwistStep
from .cyclotomic import parse_scalar
from .equivalence import OMEGA, EquivalenceWitness, Signature
from .groups import FiniteAbelianGroup, GroupElement
from .gradings import GradedAlgebra, GradedMap, elementary_grading, epsilon_grading, \
    induced_tensor_grading
from .matrices import Matrix


class SpecError(ValueError):
    """Semantic error in a spec document, carrying the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _expect(obj: Any, kind: type, path: str, what: str) -> Any:
    if not isinstance(obj, kind) or isinstance(obj, bool):
        raise SpecError(path, f"expected {what}, got {type(obj).__name__}")
    return obj


def _field(obj: Dict[str, Any], name: str, path: str) -> Any:
    if name not in obj:
        raise SpecError(f"{path}.{name}", "missing field")
    return obj[name]


def parse_group(obj: Any, path: str = "group") -> FiniteAbelianGroup:
    data = _expect(obj, dict, path, "an object")
    factors = _expect(_field(data, "factors", path), list, f"{path}.factors", "a list")
    if not factors:
        raise SpecError(f"{path}.factors", "need at least one cyclic factor")
    out = []
    for i, f in enumerate(factors):
        out.append(_expect(f, int, f"{path}.factors[{i}]", "an integer"))
    try:
        return FiniteAbelianGroup(tuple(out))
    except ValueError as exc:
        raise SpecError(f"{path}.factors", str(exc)) from exc


def parse_element(obj: Any, group: FiniteAbelianGroup, path: str) -> GroupElement:
    data = _expect(obj, list, path, "a list of exponents")
    if len(data) != len(group.factors):
        raise SpecError(path, f"expected {len(group.factors)} exponents, got {len(data)}")
    exps = [_expect(x, int, f"{path}[{i}]", "an integer") for i, x in enumerate(data)]
    return group.element(tuple(exps))


def parse_element_key(text: str, group: FiniteAbelianGroup, path: str) -> GroupElement:
    try:
        exps = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SpecError(path, f"bad element key {text!r}") from exc
    if len(exps) != len(group.factors):
        raise SpecError(path, f"expected {len(group.factors)} exponents in key {text!r}")
    return group.element(exps)


def parse_tuple(obj: Any, group: FiniteAbelianGroup, path: str) -> Tuple[GroupElement, ...]:
    data = _expect(obj, list, path, "a list of elements")
    if not data:
        raise SpecError(path, "tuple must be non-empty")
    return tuple(parse_element(x, group, f"{path}[{i}]") for i, x in enumerate(data))


def parse_matrix(obj: Any, path: str) -> Matrix:
    data = _expect(obj, dict, path, "an object")
    n = _expect(_field(data, "n", path), int, f"{path}.n", "an integer")
    if n < 1:
        raise SpecError(f"{path}.n", "size must be positive")
    entries = _expect(_field(data, "entries", path), list, f"{path}.entries", "a list of rows")
    if len(entries) != n:
        raise SpecError(f"{path}.entries", f"expected {n} rows, got {len(entries)}")
    rows = []
    for i, row in enumerate(entries):
        row = _expect(row, list, f"{path}.entries[{i}]", "a list")
        if len(row) != n:
            raise SpecError(f"{path}.entries[{i}]", f"expected {n} entries, got {len(row)}")
        parsed = []
        for j, cell in enumerate(row):
            cell = _expect(cell, str, f"{path}.entries[{i}][{j}]", "a scalar string")
            try:
                parsed.append(parse_scalar(cell))
            except ValueError as exc:
                raise SpecError(f"{path}.entries[{i}][{j}]", str(exc)) from exc
        rows.append(parsed)
    return Matrix(rows)


def element_to_json(g: GroupElement) -> List[int]:
    return list(g.exponents)


def element_key(g: GroupElement) -> str:
    return ",".join(str(x) for x in g.exponents)


def matrix_to_json(m: Matrix) -> dict:
    return {"n": m.n, "entries": [[x.to_string() for x in row] for row in m.entries]}


def group_to_json(group: FiniteAbelianGroup) -> dict:
    return {"factors": list(group.factors)}


GradingOrMap = Union[GradedAlgebra, GradedMap]


def parse_grading(obj: Any, path: str = "spec") -> GradedAlgebra:
    """Grading spec of kind elementary | epsilon | tensor | explicit."""
    data = _expect(obj, dict, path, "an object")
    kind = _expect(_field(data, "kind", path), str, f"{path}.kind", "a string")
    if kind == "elementary":
        group = parse_group(_field(data, "group", path), f"{path}.group")
        tau = parse_tuple(_field(data, "tuple", path), group, f"{path}.tuple")
        return elementary_grading(group, tau)
    if kind == "epsilon":
        n = _expect(_field(data, "n", path), int, f"{path}.n", "an integer")
        if n < 1:
            raise SpecError(f"{path}.n", "size must be positive")
        if "group" in data:
            group = parse_group(data["group"], f"{path}.group")
            a = parse_element(_field(data, "a", path), group, f"{path}.a") \
                if "a" in data else None
            b = parse_element(_field(data, "b", path), group, f"{path}.b") \
                if "b" in data else None
            try:
                return epsilon_grading(n, group=group, a=a, b=b)
            except ValueError as exc:
                raise SpecError(path, str(exc)) from exc
        return epsilon_grading(n)
    if kind == "tensor":
        left = parse_grading(_field(data, "left", path), f"{path}.left")
        right = parse_grading(_field(data, "right", path), f"{path}.right")
        if left.group != right.group:
            raise SpecError(path, "tensor factors must be graded by the same group")
        try:
            return induced_tensor_grading(left, right)
        except ValueError as exc:
            raise SpecError(path, str(exc)) from exc
    if kind == "explicit":
        group = parse_group(_field(data, "group", path), f"{path}.group")
        comps = _expect(_field(data, "components", path), dict,
                        f"{path}.components", "an object")
        if not comps:
            raise SpecError(f"{path}.components", "need at least one component")
        parsed: Dict[GroupElement, List[Matrix]] = {}
        n = None
        for key in sorted(comps):
            g = parse_element_key(key, group, f"{path}.components.{key}")
            mats = _expect(comps[key], list, f"{path}.components.{key}", "a list")
            out = []
            for i, m in enumerate(mats):
                mat = parse_matrix(m, f"{path}.components.{key}[{i}]")
                if n is None:
                    n = mat.n
                elif mat.n != n:
                    raise SpecError(f"{path}.components.{key}[{i}]",
                                    f"matrix size {mat.n} != {n}")
                out.append(mat)
            if out:
                parsed[g] = out
        if n is None:
            raise SpecError(f"{path}.components", "all components are empty")
        try:
            return GradedAlgebra(group, n, parsed)
        except ValueError as exc:
            raise SpecError(path, str(exc)) from exc
    raise SpecError(f"{path}.kind", f"unknown grading kind {kind!r}")


def parse_map(obj: Any, path: str = "spec") -> GradedMap:
    """Map spec: domain and codomain gradings plus basis-image pairs."""
    data = _expect(obj, dict, path, "an object")
    kind = _expect(_field(data, "kind", path), str, f"{path}.kind", "a string")
    if kind != "map":
        raise SpecError(f"{path}.kind", f"expected 'map', got {kind!r}")
    domain = parse_grading(_field(data, "domain", path), f"{path}.domain")
    codomain = parse_grading(_field(data, "codomain", path), f"{path}.codomain")
    if domain.group != codomain.group:
        raise SpecError(path, "domain and codomain must be graded by the same group")
    pairs_obj = _expect(_field(data, "pairs", path), list, f"{path}.pairs", "a list")
    if not pairs_obj:
        raise SpecError(f"{path}.pairs", "need at least one pair")
    pairs = []
    for i, pair in enumerate(pairs_obj):
        pair = _expect(pair, list, f"{path}.pairs[{i}]", "a [source, image] pair")
        if len(pair) != 2:
            raise SpecError(f"{path}.pairs[{i}]", "expected exactly two matrices")
        src = parse_matrix(pair[0], f"{path}.pairs[{i}][0]")
        img = parse_matrix(pair[1], f"{path}.pairs[{i}][1]")
        if src.n != domain.n:
            raise SpecError(f"{path}.pairs[{i}][0]", f"matrix size {src.n} != {domain.n}")
        if img.n != codomain.n:
            raise SpecError(f"{path}.pairs[{i}][1]", f"matrix size {img.n} != {codomain.n}")
        pairs.append((src, img))
    return GradedMap(domain, codomain, tuple(pairs))


def parse_grading_or_map(obj: Any, path: str = "spec") -> GradingOrMap:
    data = _expect(obj, dict, path, "an object")
    kind = _expect(_field(data, "kind", path), str, f"{path}.kind", "a string")
    if kind == "map":
        return parse_map(obj, path)
    return parse_grading(obj, path)


def grading_to_json(algebra: GradedAlgebra) -> dict:
    """Serialize as elementary when a defining tuple is known, else explicitly."""
    if algebra.elementary_tuple is not None:
        return {"kind": "elementary", "group": group_to_json(algebra.group),
                "tuple": [element_to_json(g) for g in algebra.elementary_tuple]}
    components = {}
    for g in sorted(algebra.components, key=GroupElement.sort_key):
        components[element_key(g)] = [matrix_to_json(m) for m in algebra.components[g]]
    return {"kind": "explicit", "group": group_to_json(algebra.group),
            "components": components}


def map_to_json(gmap: GradedMap) -> dict:
    return {"kind": "map",
            "domain": grading_to_json(gmap.domain),
            "codomain": grading_to_json(gmap.codomain),
            "pairs": [[matrix_to_json(a), matrix_to_json(b)] for a, b in gmap.pairs]}


def parse_chain(obj: Any, path: str = "spec") -> ChainSpec:
    data = _expect(obj, dict, path, "an object")
    group = parse_group(_field(data, "group", path), f"{path}.group")
    base = parse_tuple(_field(data, "base", path), group, f"{path}.base")
    steps_obj = _expect(_field(data, "steps", path), list, f"{path}.steps", "a list")
    if not steps_obj:
        raise SpecError(f"{path}.steps", "need at least one step")
    steps: List[ChainStep] = []
    for i, step in enumerate(steps_obj):
        step = _expect(step, dict, f"{path}.steps[{i}]", "an object")
        kind = _expect(_field(step, "kind", f"{path}.steps[{i}]"), str,
                       f"{path}.steps[{i}].kind", "a string")
        if kind == "double":
            steps.append(DoubleStep())
        elif kind == "twist":
            a = parse_element(_field(step, "a", f"{path}.steps[{i}]"), group,
                              f"{path}.steps[{i}].a")
            steps.append(TwistStep(a))
        elif kind == "block":
            k = _expect(_field(step, "k", f"{path}.steps[{i}]"), int,
                        f"{path}.steps[{i}].k", "an integer")
            m = _expect(_field(step, "m", f"{path}.steps[{i}]"), int,
                        f"{path}.steps[{i}].m", "an integer")
            r = _expect(_field(step, "r", f"{path}.steps[{i}]"), int,
                        f"{path}.steps[{i}].r", "an integer")
            target = parse_tuple(_field(step, "tuple", f"{path}.steps[{i}]"), group,
                                 f"{path}.steps[{i}].tuple")
            steps.append(BlockStep(k, m, r, target))
        else:
            raise SpecError(f"{path}.steps[{i}].kind", f"unknown step kind {kind!r}")
    try:
        return ChainSpec(group, base, tuple(steps))
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc


def chain_to_json(spec: ChainSpec) -> dict:
    steps = []
    for step in spec.steps:
        if isinstance(step, DoubleStep):
            steps.append({"kind": "double"})
        elif isinstance(step, TwistStep):
            steps.append({"kind": "twist", "a": element_to_json(step.a)})
        else:
            steps.append({"kind": "block", "k": step.k, "m": step.m, "r": step.r,
                          "tuple": [element_to_json(g) for g in step.target]})
    return {"group": group_to_json(spec.group),
            "base": [element_to_json(g) for g in spec.base],
            "steps": steps}


def signature_to_json(sig: Signature) -> list:
    out = []
    for g, count in sig.counts:
        out.append({"degree": element_to_json(g),
                    "count": "omega" if count is OMEGA else count})
    return out


def witness_to_json(witness: EquivalenceWitness) -> dict:
    out: Dict[str, Any] = {"shift": element_to_json(witness.shift)}
    if witness.beta is not None:
        out["beta"] = list(witness.beta)
    if witness.class_pairing is not None:
        out["class_pairing"] = [[element_to_json(g), element_to_json(h)]
                                for g, h in witness.class_pairing]
    return out
