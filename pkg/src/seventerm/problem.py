"""Problem files: a JSON object with "group", "normal_subgroup", "module", "options".

Schema::

    {
      "group": {"builtin": "S3"}              # or {"order": n, "table": [[...], ...]}
      "normal_subgroup": [0, 3, 4],
      "module": {
        "invariants": [3],                    # d_1 | d_2 | ..., each >= 2
        "action": [[[1]], [[2]], ...]         # one k x k matrix per group element,
      },                                      # column j = image of generator j;
                                              # omit "action" for the trivial action
      "options": {"degree_max": 3, "checks": "all", "seed": 0, "name": "...",
                  "description": "..."}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .groups import BUILTIN_GROUPS, FiniteGroup, GModule, GroupError, builtin_group, make_extension
from .linalg import FgAbGroup

CHECKS = ("all", "exactness", "coincidence")
TOP_KEYS = ("group", "normal_subgroup", "module", "options")
OPTION_KEYS = ("degree_max", "checks", "seed", "name", "description")


class ProblemError(ValueError):
    """Validation failure; ``path`` names the offending field."""

    def __init__(self, path: str, msg: str, witness=None):
        text = f"{path}: {msg}" + ("" if witness is None else f" (witness {witness})")
        super().__init__(text)
        self.path = path
        self.witness = witness


@dataclass
class Options:
    degree_max: int = 3
    checks: str = "all"
    seed: int = 0
    name: str = ""
    description: str = ""


@dataclass
class ProblemSpec:
    table: tuple
    normal_subgroup: tuple
    invariants: tuple
    action: tuple
    group_name: str | None = None
    options: Options = field(default_factory=Options)

    def build(self):
        """``(GroupExtension, GModule)``; raises :class:`ProblemError` on invalid data."""
        G = _group(self.table, self.group_name)
        try:
            ext = make_extension(G, self.normal_subgroup)
        except GroupError as e:
            raise ProblemError("normal_subgroup", str(e), e.witness) from None
        M = FgAbGroup.from_invariants(self.invariants)
        try:
            module = GModule(G, M, self.action)
        except GroupError as e:
            path = "module.action"
            if e.witness is not None and len(e.witness) == 1:
                path = f"module.action[{e.witness[0]}]"
            raise ProblemError(path, str(e), e.witness) from None
        return ext, module


def _group(table, name) -> FiniteGroup:
    try:
        G = FiniteGroup(table, name=name)
    except GroupError as e:
        raise ProblemError("group.table", str(e), e.witness) from None
    return G


def _int(x, path):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ProblemError(path, f"expected an integer, got {x!r}")
    return x


def _int_list(x, path):
    if not isinstance(x, list):
        raise ProblemError(path, "expected a list")
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(x)]


def from_dict(data) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ProblemError("<root>", "expected a JSON object")
    for key in data:
        if key not in TOP_KEYS:
            raise ProblemError(key, "unknown top-level key")
    for key in TOP_KEYS[:3]:
        if key not in data:
            raise ProblemError(key, "missing required key")

    g = data["group"]
    if isinstance(g, str):
        g = {"builtin": g}
    if not isinstance(g, dict):
        raise ProblemError("group", "expected an object")
    name = None
    if "builtin" in g:
        name = g["builtin"]
        if name not in BUILTIN_GROUPS:
            raise ProblemError("group.builtin", f"unknown group {name!r}; "
                               f"known: {', '.join(sorted(BUILTIN_GROUPS))}")
        table = builtin_group(name).table
    elif "table" in g:
        rows = g["table"]
        if not isinstance(rows, list) or not rows:
            raise ProblemError("group.table", "expected a non-empty list of rows")
        table = tuple(tuple(_int_list(r, f"group.table[{i}]")) for i, r in enumerate(rows))
        if "order" in g and _int(g["order"], "group.order") != len(table):
            raise ProblemError("group.order", f"order {g['order']} does not match the "
                               f"{len(table)}-row table")
    else:
        raise ProblemError("group", 'needs "builtin" or "table"')
    n = len(table)

    N = _int_list(data["normal_subgroup"], "normal_subgroup")
    for i, x in enumerate(N):
        if not 0 <= x < n:
            raise ProblemError(f"normal_subgroup[{i}]", f"index {x} out of range 0..{n - 1}")

    m = data["module"]
    if not isinstance(m, dict):
        raise ProblemError("module", "expected an object")
    for key in m:
        if key not in ("invariants", "action"):
            raise ProblemError(f"module.{key}", "unknown key")
    if "invariants" not in m:
        raise ProblemError("module.invariants", "missing required key")
    inv = _int_list(m["invariants"], "module.invariants")
    for i, d in enumerate(inv):
        if d < 2:
            raise ProblemError(f"module.invariants[{i}]", "invariant factors must be >= 2")
        if i and d % inv[i - 1]:
            raise ProblemError(f"module.invariants[{i}]", "invariant factors must form a "
                               "divisibility chain")
    k = len(inv)
    if "action" in m:
        act = m["action"]
        if not isinstance(act, list) or len(act) != n:
            raise ProblemError("module.action", f"expected {n} matrices, one per group element")
        action = []
        for gi, A in enumerate(act):
            path = f"module.action[{gi}]"
            if not isinstance(A, list) or len(A) != k:
                raise ProblemError(path, f"expected a {k}x{k} matrix")
            rows = tuple(tuple(_int_list(r, f"{path}[{i}]")) for i, r in enumerate(A))
            if any(len(r) != k for r in rows):
                raise ProblemError(path, f"expected a {k}x{k} matrix")
            action.append(tuple(tuple(x % inv[i] for x in r) for i, r in enumerate(rows)))
        action = tuple(action)
    else:
        eye = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        action = (eye,) * n

    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise ProblemError("options", "expected an object")
    for key in opts:
        if key not in OPTION_KEYS:
            raise ProblemError(f"options.{key}", "unknown option")
    o = Options()
    if "degree_max" in opts:
        o.degree_max = _int(opts["degree_max"], "options.degree_max")
        if o.degree_max not in (2, 3):
            raise ProblemError("options.degree_max", "must be 2 or 3")
    if "checks" in opts:
        if opts["checks"] not in CHECKS:
            raise ProblemError("options.checks", f"must be one of {', '.join(CHECKS)}")
        o.checks = opts["checks"]
    if "seed" in opts:
        o.seed = _int(opts["seed"], "options.seed")
    for key in ("name", "description"):
        if key in opts:
            if not isinstance(opts[key], str):
                raise ProblemError(f"options.{key}", "expected a string")
            setattr(o, key, opts[key])

    spec = ProblemSpec(tuple(table), tuple(sorted(set(N))), tuple(inv), action, name, o)
    spec.build()
    return spec


def to_dict(spec: ProblemSpec) -> dict:
    if spec.group_name is not None:
        group = {"builtin": spec.group_name}
    else:
        group = {"order": len(spec.table), "table": [list(r) for r in spec.table]}
    o = spec.options
    return {
        "group": group,
        "normal_subgroup": list(spec.normal_subgroup),
        "module": {
            "invariants": list(spec.invariants),
            "action": [[list(r) for r in A] for A in spec.action],
        },
        "options": {"name": o.name, "description": o.description, "degree_max": o.degree_max,
                    "checks": o.checks, "seed": o.seed},
    }


def emit(spec: ProblemSpec) -> str:
    return json.dumps(to_dict(spec), indent=2) + "\n"


def parse_text(text: str) -> ProblemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError("<file>", f"malformed JSON: {e}") from None
    return from_dict(data)


def parse_problem(source: str | Path) -> ProblemSpec:
    """A built-in fixture name or a path to a problem file."""
    from .fixtures import FIXTURES, fixture
    if str(source) in FIXTURES:
        return fixture(str(source))
    path = Path(source)
    if not path.is_file():
        raise ProblemError("<input>", f"{source!r} is neither a file nor a fixture name "
                           f"({', '.join(sorted(FIXTURES))})")
    return parse_text(path.read_text())
