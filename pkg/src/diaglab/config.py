"""Definition files: TOML documents naming lists, string sets, integer sets,
pairing maps and the experiments to run on them.

The grammar is documented in ``docs/definition-format.md``; this module
accepts version ``diaglab/1``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import census as cz
from . import numerosity as nm
from .diagonal import SWAP, DiagonalRule
from .errors import DefinitionError, InputError
from .exactdigits import parse as parse_digits
from .translist import (
    Constant,
    GeometricOnes,
    Interleave,
    Shifted,
    SpacedPair,
    Spike,
    Table,
    build_list,
    flatten_to_omega,
)

FORMAT = "diaglab/1"
KINDS = ("diagonal", "induction", "census", "numerosity")
CENSUS_MODES = ("auto", cz.EXHAUSTIVE, cz.PREFIX, cz.SAMPLED, "counted")

_PARAMS = {
    "diagonal": {"list", "horizon", "rule"},
    "induction": {"list", "n_max", "rule", "search_bound"},
    "census": {"strings", "mode", "samples", "seed", "budget", "rule"},
    "numerosity": {"a", "b", "n_max", "pairing"},
}


@dataclass
class ExperimentConfig:
    kind: str
    index: int
    params: dict
    # resolved engine inputs
    inputs: dict = field(default_factory=dict)

    def echo(self):
        return {"kind": self.kind, **{k: self.params[k] for k in sorted(self.params)}}


@dataclass
class Definition:
    source: str
    lists: dict
    strings: dict
    sets: dict
    pairings: dict
    experiments: list


class _Locator:
    """Maps table/key paths back to source lines for error messages."""

    def __init__(self, text):
        self.lines = text.splitlines()

    def header(self, header, nth=0):
        seen = 0
        for i, line in enumerate(self.lines, 1):
            if line.strip() == header:
                if seen == nth:
                    return i
                seen += 1
        return None

    def key(self, header, key, nth=0):
        start = self.header(header, nth) if header else 0
        if start is None:
            return None
        pat = re.compile(rf"\s*{re.escape(key)}\s*=")
        # lines after the header, up to the next table header
        for i in range(start, len(self.lines)):
            line = self.lines[i]
            if line.strip().startswith("["):
                break
            if pat.match(line):
                return i + 1
        return start or None


# -- generator expressions -----------------------------------------------


def parse_family(text):
    """``geometric_ones``, ``spaced_pair(step=2)``, ``spike(1)``, ``constant("0.[1]")``,
    ``interleave(g1, g2)``, ``shifted(g, 3)``, ``table("0.1[0]", ...)``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse generator {text!r}: {exc.msg}") from None

    def lit(node, kind):
        if isinstance(node, ast.Constant) and type(node.value) is kind:
            return node.value
        raise InputError(f"expected {kind.__name__} literal in generator {text!r}")

    def build(node):
        if isinstance(node, ast.Name):
            if node.id == "geometric_ones":
                return GeometricOnes()
            if node.id == "spaced_pair":
                return SpacedPair()
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn, args = node.func.id, node.args
            kw = {k.arg: k.value for k in node.keywords}
            if fn == "geometric_ones" and not args and not kw:
                return GeometricOnes()
            if fn == "spaced_pair" and not args and set(kw) <= {"step"}:
                return SpacedPair(lit(kw["step"], int) if "step" in kw else 1)
            if fn == "spike" and len(args) <= 1 and not kw:
                return Spike(lit(args[0], int) if args else 0)
            if fn == "constant" and len(args) == 1 and not kw:
                return Constant(parse_digits(lit(args[0], str)))
            if fn == "interleave" and len(args) == 2 and not kw:
                return Interleave(build(args[0]), build(args[1]))
            if fn == "shifted" and len(args) == 2 and not kw:
                return Shifted(build(args[0]), lit(args[1], int))
            if fn == "table" and not kw:
                return Table(tuple(parse_digits(lit(a, str)) for a in args))
        raise InputError(f"unknown or malformed generator {ast.unparse(node)!r}")

    return build(tree.body)


def parse_rule(value):
    if value is None or value == "swap":
        return SWAP
    if isinstance(value, dict):
        try:
            return DiagonalRule({int(k): int(v) for k, v in value.items()})
        except ValueError:
            raise InputError(f"rule entries must be digits, got {value!r}") from None
    raise InputError(f"rule must be \"swap\" or a digit table, got {value!r}")


def parse_predicate(text):
    text = text.strip()
    if text == "all":
        return cz.always
    m = re.fullmatch(r"last_equal\((\d+)\)", text)
    if m:
        return cz.last_equal(int(m.group(1)))
    raise InputError(f"unknown predicate {text!r}; expected all or last_equal(k)")


# -- loading -------------------------------------------------------------


def loads(text, source="<string>"):
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        lines = text.splitlines()
        token = None
        if exc.lineno and exc.lineno <= len(lines):
            rest = lines[exc.lineno - 1][max(exc.colno - 1, 0) :]
            token = rest.split()[0] if rest.split() else ""
        raise DefinitionError(exc.msg, line=exc.lineno, token=token) from None
    loc = _Locator(text)

    fmt = doc.get("format")
    if fmt != FORMAT:
        raise DefinitionError(
            f"expected format = \"{FORMAT}\", got {fmt!r}", line=loc.key(None, "format"), token=fmt
        )

    def fail(msg, header, key=None, token=None, nth=0):
        line = loc.key(header, key, nth) if key else loc.header(header, nth)
        raise DefinitionError(msg, line=line, token=token)

    lists = {}
    for name, body in doc.get("lists", {}).items():
        hdr = f"[lists.{name}]"
        try:
            lists[name] = _build_list(name, body)
        except InputError as exc:
            key, token = _blame(body, str(exc))
            fail(str(exc), hdr, key, token=token)

    strings = {}
    for name, body in doc.get("strings", {}).items():
        hdr = f"[strings.{name}]"
        try:
            if "members" in body:
                elems = tuple(cz.parse_string(s) for s in body["members"])
                strings[name] = cz.FiniteStringSet(elems, name)
            else:
                pred = parse_predicate(body.get("predicate", "all"))
                strings[name] = cz.enumerate_strings(int(body["length"]), pred, name=name)
        except (InputError, KeyError, ValueError) as exc:
            fail(f"bad string set: {exc}", hdr, "predicate" if "predicate" in body else None)

    sets = {}
    for name, body in doc.get("sets", {}).items():
        hdr = f"[sets.{name}]"
        try:
            sets[name] = nm.LabelledSet(name, nm.parse_set(body["expr"], sets).member)
        except (InputError, KeyError) as exc:
            fail(f"bad set: {exc}", hdr, "expr", token=body.get("expr"))

    pairings = {}
    for name, body in doc.get("pairings", {}).items():
        hdr = f"[pairings.{name}]"
        try:
            pairings[name] = nm.parse_pairing(body["expr"], body.get("name", body["expr"]))
        except (InputError, KeyError) as exc:
            fail(f"bad pairing: {exc}", hdr, "expr", token=body.get("expr"))

    experiments = []
    for i, body in enumerate(doc.get("experiment", [])):
        hdr = "[[experiment]]"
        kind = body.get("kind")
        if kind not in KINDS:
            fail(f"unknown experiment kind {kind!r}; expected one of {', '.join(KINDS)}", hdr, "kind", kind, i)
        params = {k: v for k, v in body.items() if k != "kind"}
        extra = set(params) - _PARAMS[kind]
        if extra:
            key = sorted(extra)[0]
            fail(f"unknown {kind} parameter {key!r}", hdr, key, key, i)
        exp = ExperimentConfig(kind, i, params)
        try:
            _resolve(exp, lists, strings, sets, pairings)
        except InputError as exc:
            key = next((k for k in params if str(params[k]) in str(exc)), None)
            fail(str(exc), hdr, key, str(params[key]) if key else None, i)
        experiments.append(exp)
    if not experiments:
        raise DefinitionError("definition has no [[experiment]] entries")
    return Definition(source, lists, strings, sets, pairings, experiments)


def _blame(body, message):
    """The list key (and value) an error message most likely refers to."""
    for key in ("prefix", "tail", "generator", "prefix_family"):
        values = body.get(key, [])
        for v in [values] if isinstance(values, str) else values:
            if isinstance(v, str) and v in message:
                return key, v
    key = next((k for k in ("generator", "prefix_family", "prefix", "tail") if k in body), None)
    return key, (str(body[key]) if key else None)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), source=str(path))


def _build_list(name, body):
    if "prefix_family" in body:
        fam = parse_family(body["prefix_family"])
        prefix = tuple(fam.entry(j) for j in range(1, int(body.get("prefix_count", 0)) + 1))
    else:
        prefix = tuple(parse_digits(s) for s in body.get("prefix", []))
    if "generator" not in body:
        raise InputError(f"list {name!r} has no generator")
    generator = parse_family(body["generator"])
    tail = tuple(parse_digits(s) for s in body.get("tail", []))
    lst = build_list(
        prefix,
        generator,
        tail,
        alphabet=tuple(body.get("alphabet", (0, 1))),
        horizon=int(body.get("horizon", 100)),
        name=body.get("title", name),
    )
    return flatten_to_omega(lst) if body.get("flatten", False) else lst


def _int_param(params, key, lo=None):
    if key not in params:
        return
    v = params[key]
    if type(v) is not int:
        raise InputError(f"{key} must be an integer, got {v!r}")
    if lo is not None and v < lo:
        raise InputError(f"{key} must be >= {lo}, got {v}")


def _resolve(exp, lists, strings, sets, pairings):
    p = exp.params
    for key, lo in (("horizon", 1), ("n_max", 1), ("samples", 1), ("seed", 0), ("budget", 1), ("search_bound", 1)):
        _int_param(p, key, lo)
    if exp.kind in ("diagonal", "induction"):
        ref = p.get("list")
        if ref not in lists:
            raise InputError(f"list {ref!r} is not defined")
        exp.inputs["list"] = lists[ref]
        exp.inputs["rule"] = parse_rule(p.get("rule"))
    elif exp.kind == "census":
        ref = p.get("strings")
        if ref not in strings:
            raise InputError(f"string set {ref!r} is not defined")
        exp.inputs["strings"] = strings[ref]
        exp.inputs["rule"] = parse_rule(p.get("rule"))
        if p.get("mode", "auto") not in CENSUS_MODES:
            raise InputError(f"census mode {p['mode']!r} is not one of {', '.join(CENSUS_MODES)}")
    else:
        for side in ("a", "b"):
            ref = p.get(side)
            if not isinstance(ref, str):
                raise InputError(f"numerosity needs set {side!r}")
            exp.inputs[side] = sets[ref] if ref in sets else nm.parse_set(ref, sets)
        if "pairing" in p:
            ref = p["pairing"]
            exp.inputs["pairing"] = pairings[ref] if ref in pairings else nm.parse_pairing(ref)
