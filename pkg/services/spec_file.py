"""Reads algebra/module spec files (YAML) into algebras and modules.

Node marks from ``yaml.compose`` are kept so that errors inside polynomial strings
point at the absolute line and column of the file.
"""

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
import yaml
from yaml.constructor import SafeConstructor
from yaml.nodes import MappingNode, Node, ScalarNode, SequenceNode
from exceptions import DuplicateDefinition, InvalidStructure, ParseError, UnknownGenerator
from services import algebras, modules
from services.algebras import CommutativeAlgebra
from services.conformal import ConformalAlgebra, Vector
from services.exactpoly import MultiPoly
from services.modules import ConformalModule
from services.polyparse import BUILTIN_ATOMS, parse_poly, parse_scalar

SHORTHAND = re.compile(r"^p_(\d+)_(\d+)$|^p_(\d)(\d)$")

LIE_STRUCTURES = {
    "sl2": algebras.sl2,
    "nonabelian2": algebras.two_dim_nonabelian,
}


@dataclass
class SpecFile:
    algebra: ConformalAlgebra
    modules: dict[str, ConformalModule] = field(default_factory=dict)
    constants: dict[str, MultiPoly] = field(default_factory=dict)
    commutative: CommutativeAlgebra | None = None

    @property
    def virasoro(self) -> str | None:
        return self.algebra.virasoro

    def module(self, name: str | None = None) -> ConformalModule:
        if not self.modules:
            raise InvalidStructure("the spec file declares no module")
        if name is None:
            return next(iter(self.modules.values()))
        try:
            return self.modules[name]
        except KeyError as e:
            raise UnknownGenerator(f"no module named '{name}'") from e


def _where(node: Node) -> tuple[int, int]:
    mark = node.start_mark
    quoted = isinstance(node, ScalarNode) and node.style in ('"', "'")
    return mark.line + 1, mark.column + 1 + (1 if quoted else 0)


def _fail(node: Node, message: str):
    line, column = _where(node)
    raise ParseError(message, line, column)


def _mapping(node: Node, what: str) -> dict[str, tuple[Node, Node]]:
    if not isinstance(node, MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for key, value in node.value:
        if not isinstance(key, ScalarNode):
            _fail(key, f"keys of {what} must be plain names")
        if key.value in out:
            line, column = _where(key)
            raise DuplicateDefinition(f"'{key.value}' is defined twice in {what} (line {line}, column {column})")
        out[key.value] = (key, value)
    return out


def _sequence(node: Node, what: str) -> list[Node]:
    if not isinstance(node, SequenceNode):
        _fail(node, f"{what} must be a list")
    return node.value


def _text(node: Node, what: str) -> str:
    if not isinstance(node, ScalarNode):
        _fail(node, f"{what} must be a single value")
    return node.value


def _plain(node: Node):
    constructor = SafeConstructor()
    return constructor.construct_object(node, deep=True)


def _poly(node: Node, constants: dict[str, MultiPoly]) -> MultiPoly:
    line, column = _where(node)
    return parse_poly(_text(node, "a polynomial"), constants, line, column)


def _scalar_param(params: dict, key: str, default="0"):
    if key not in params:
        return parse_scalar(default)
    _, node = params[key]
    line, column = _where(node)
    return parse_scalar(_text(node, key), line, column)


def _int_param(params: dict, key: str, default: int | None = None) -> int | None:
    if key not in params:
        return default
    _, node = params[key]
    value = _plain(node)
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(node, f"'{key}' must be an integer")
    return value


def _constants(node: Node | None) -> dict[str, MultiPoly]:
    constants: dict[str, MultiPoly] = {}
    if node is None:
        return constants
    for name, (key, value) in _mapping(node, "constants").items():
        if name in BUILTIN_ATOMS or name == "i" or not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
            _fail(key, f"'{name}' cannot be used as a constant name")
        constants[name] = _poly(value, constants)
    return constants


def _builtin_algebra(kind: str, params: dict, node: Node) -> tuple[ConformalAlgebra, CommutativeAlgebra | None]:
    if kind == "virasoro":
        return algebras.virasoro(), None
    if kind in ("current", "vir_semidirect_current"):
        g_name = _text(params["g"][1], "g") if "g" in params else "sl2"
        if g_name == "abelian":
            labels = [str(x) for x in _plain(params["labels"][1])] if "labels" in params else ["x"]
            g = algebras.abelian(labels)
        elif g_name in LIE_STRUCTURES:
            g = LIE_STRUCTURES[g_name]()
        else:
            _fail(params["g"][1], f"unknown Lie algebra '{g_name}'")
        if kind == "current":
            return algebras.current(g, name=f"Cur({g_name})"), None
        return algebras.vir_semidirect_current(_scalar_param(params, "a", "1"), g), None
    if kind == "block":
        return algebras.block(_scalar_param(params, "p", "1"), _int_param(params, "truncation", 8)), None
    if kind == "map_virasoro":
        comm = algebras.truncated_polynomial_algebra(_int_param(params, "n", 3))
        return algebras.map_virasoro(comm, _int_param(params, "truncation")), comm
    if kind == "graded_weight_line":
        return algebras.graded_weight_line(_scalar_param(params, "a1", "1")), None
    _fail(node, f"unknown builtin algebra '{kind}'")


def _pair(key: str, key_node: Node, gens: tuple[str, ...], grading) -> tuple[int, int]:
    match = SHORTHAND.match(key)
    if match:
        first, second = [int(x) for x in match.groups() if x is not None]
        lookup = list(grading) if grading is not None else list(range(len(gens)))
        try:
            return lookup.index(first), lookup.index(second)
        except ValueError:
            line, column = _where(key_node)
            raise UnknownGenerator(f"'{key}' addresses no generator (line {line}, column {column})") from None
    labels = key.split()
    if len(labels) != 2:
        _fail(key_node, f"bracket key '{key}' must name two generators")
    out = []
    for label in labels:
        if label not in gens:
            line, column = _where(key_node)
            raise UnknownGenerator(f"'{label}' is not a declared generator (line {line}, column {column})")
        out.append(gens.index(label))
    return out[0], out[1]


def _explicit_algebra(params: dict, node: Node, constants: dict[str, MultiPoly]) -> ConformalAlgebra:
    if "generators" not in params:
        _fail(node, "an explicit algebra needs 'generators'")
    gens = tuple(str(x) for x in _plain(params["generators"][1]))
    if len(set(gens)) != len(gens):
        raise DuplicateDefinition("generator labels must be unique")
    grading = tuple(_plain(params["grades"][1])) if "grades" in params else None
    truncation = _int_param(params, "truncation")
    virasoro = _text(params["virasoro"][1], "virasoro") if "virasoro" in params else None
    if virasoro is not None and virasoro not in gens:
        raise UnknownGenerator(f"virasoro generator '{virasoro}' is not declared")

    table: dict[tuple[int, int], Vector] = {}
    brackets = _mapping(params["brackets"][1], "brackets") if "brackets" in params else {}
    for key, (key_node, value) in brackets.items():
        i, j = _pair(key, key_node, gens, grading)
        if (i, j) in table:
            line, column = _where(key_node)
            raise DuplicateDefinition(f"[{gens[i]} λ {gens[j]}] is defined twice (line {line}, column {column})")
        if isinstance(value, MappingNode):
            vec = {}
            for target, (t_node, poly_node) in _mapping(value, key).items():
                if target not in gens:
                    line, column = _where(t_node)
                    raise UnknownGenerator(f"'{target}' is not a declared generator (line {line}, column {column})")
                vec[gens.index(target)] = _poly(poly_node, constants)
        else:
            poly = _poly(value, constants)
            if grading is not None:
                wanted = grading[i] + grading[j]
                if wanted not in grading:
                    if poly:
                        _fail(value, f"no generator of grade {wanted} to receive [{gens[i]} λ {gens[j]}]")
                    vec = {}
                else:
                    vec = {grading.index(wanted): poly}
            elif len(gens) == 1:
                vec = {0: poly}
            else:
                _fail(value, "ungraded tables need {target: polynomial} entries")
        table[(i, j)] = vec
    name = _text(params["name"][1], "name") if "name" in params else "A"
    return algebras.from_table(name, gens, table, grading, truncation, virasoro)


def _module(
    name: str, node: Node, A: ConformalAlgebra, comm: CommutativeAlgebra | None,
    constants: dict[str, MultiPoly], known: dict[str, ConformalModule],
) -> ConformalModule:
    params = _mapping(node, f"module {name}")
    if "builtin" in params:
        kind = _text(params["builtin"][1], "builtin")
        label = A.virasoro or A.gens[A.virasoro_index()]
        if kind == "rank_one_vir":
            return modules.rank_one_vir(_scalar_param(params, "a"), _scalar_param(params, "b"), label)
        if kind == "trivial":
            return modules.trivial_module(A, _int_param(params, "rank", 1))
        if kind == "adjoint":
            return modules.adjoint_module(A)
        if kind == "theorem":
            raw = {key: _plain(value) for key, (_, value) in params.items() if key not in ("builtin", "case")}
            return modules.rank_one_theorem_module(A, _int_param(params, "case", 1), raw)
        if kind == "map_virasoro":
            if comm is None:
                _fail(node, "map_virasoro modules need the map_virasoro builtin algebra")
            character = {str(k): parse_scalar(str(v)) for k, v in (_plain(params["character"][1]) or {}).items()}
            return modules.map_virasoro_module(
                A, comm, character, _scalar_param(params, "delta"), _scalar_param(params, "c")
            )
        if kind == "direct_sum":
            parts = [str(x) for x in _plain(params["of"][1])]
            missing = [p for p in parts if p not in known]
            if len(parts) != 2 or missing:
                _fail(params["of"][1], "direct_sum needs two previously declared modules")
            return modules.direct_sum(known[parts[0]], known[parts[1]])
        _fail(params["builtin"][1], f"unknown builtin module '{kind}'")

    if "basis" not in params or "actions" not in params:
        _fail(node, f"module {name} needs 'basis' and 'actions'")
    basis = tuple(str(x) for x in _plain(params["basis"][1]))
    if len(set(basis)) != len(basis):
        raise DuplicateDefinition(f"basis labels of module {name} must be unique")
    actions = {}
    for label, (key_node, mat_node) in _mapping(params["actions"][1], f"actions of {name}").items():
        if label not in A.gens:
            line, column = _where(key_node)
            raise UnknownGenerator(f"'{label}' is not a generator of {A.name} (line {line}, column {column})")
        rows = _sequence(mat_node, f"action of {label}")
        matrix = []
        for row in rows:
            entries = _sequence(row, f"row of the action of {label}")
            if len(entries) != len(basis) or len(rows) != len(basis):
                _fail(row, f"action of {label} must be a {len(basis)}x{len(basis)} matrix")
            matrix.append([_poly(entry, constants) for entry in entries])
        actions[label] = matrix
    return ConformalModule(name=name, basis=basis, actions=actions)


def parse_spec(text: str) -> SpecFile:
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        raise ParseError(e.problem or "invalid YAML", mark.line + 1, mark.column + 1) from e
    except yaml.YAMLError as e:
        raise ParseError(str(e)) from e
    if root is None:
        raise ParseError("the spec file is empty")
    top = _mapping(root, "the spec file")
    if "algebra" not in top:
        _fail(root, "the spec file needs an 'algebra' section")

    constants = _constants(top["constants"][1] if "constants" in top else None)
    alg_node = top["algebra"][1]
    params = _mapping(alg_node, "algebra")
    comm = None
    if "builtin" in params:
        A, comm = _builtin_algebra(_text(params["builtin"][1], "builtin"), params, params["builtin"][1])
    else:
        A = _explicit_algebra(params, alg_node, constants)

    spec = SpecFile(algebra=A, constants=constants, commutative=comm)
    if "modules" in top:
        for mod_node in _sequence(top["modules"][1], "modules"):
            fields = _mapping(mod_node, "a module")
            name = _text(fields["name"][1], "name") if "name" in fields else f"M{len(spec.modules) + 1}"
            if name in spec.modules:
                raise DuplicateDefinition(f"module '{name}' is defined twice")
            built = _module(name, mod_node, A, comm, constants, spec.modules)
            spec.modules[name] = replace(built, name=name)
    return spec


def load_spec(path: str | Path) -> SpecFile:
    return parse_spec(Path(path).read_text(encoding="utf-8"))
