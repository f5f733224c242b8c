"""JSON file formats for games, characteristic functions, matching problems,
and decision problems.

Rationals are encoded as plain integers or exact strings "a/b"; writers are
canonical so a parse/dump round trip is byte-identical.  Parse errors name the
offending JSON path.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .coop import TUGame
from .decisions import DecisionProblem, OptimismConstraint
from .errors import FormatError
from .games import NormalFormGame
from .matching import MarriageProblem
from .rational import json_number, to_fraction


def _fail(path: str, message: str) -> FormatError:
    return FormatError(f"{path}: {message}")


def _require(obj: Mapping, key: str, path: str):
    if not isinstance(obj, dict):
        raise _fail(path, "expected a JSON object")
    if key not in obj:
        raise _fail(path, f"missing required field {key!r}")
    return obj[key]


def _load_json(text: str, source: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _rational_at(value, path: str) -> Fraction:
    try:
        return to_fraction(value)
    except FormatError as exc:
        raise _fail(path, str(exc)) from None


# -- normal-form games ---------------------------------------------------


def parse_game(text: str, source: str = "game") -> NormalFormGame:
    doc = _load_json(text, source)
    players = _require(doc, "players", source)
    strategies = _require(doc, "strategies", source)
    payoffs = _require(doc, "payoffs", source)
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise _fail(f"{source}.players", "expected a list of strings")
    if not isinstance(strategies, list) or len(strategies) != len(players):
        raise _fail(f"{source}.strategies", f"expected {len(players)} strategy lists")
    for i, strats in enumerate(strategies):
        if not isinstance(strats, list) or not all(isinstance(s, str) for s in strats):
            raise _fail(f"{source}.strategies[{i}]", "expected a list of strings")
    shape = [len(s) for s in strategies]

    def walk(node, depth: int, path: str):
        if depth == len(shape):
            if not isinstance(node, list) or len(node) != len(players):
                raise _fail(path, f"expected {len(players)} payoffs")
            return [_rational_at(v, f"{path}[{k}]") for k, v in enumerate(node)]
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise _fail(path, f"expected {shape[depth]} entries")
        return [walk(child, depth + 1, f"{path}[{k}]") for k, child in enumerate(node)]

    tensor = walk(payoffs, 0, f"{source}.payoffs")
    try:
        return NormalFormGame(players, strategies, tensor)
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from exc


def dump_game(game: NormalFormGame) -> str:
    def encode(node):
        if isinstance(node, list) and node and isinstance(node[0], Fraction):
            return [json_number(v) for v in node]
        if isinstance(node, list):
            return [encode(child) for child in node]
        return node

    doc = {
        "players": list(game.players),
        "strategies": [list(s) for s in game.strategies],
        "payoffs": encode(game.nested_payoffs()),
    }
    return json.dumps(doc, indent=2) + "\n"


# -- characteristic functions --------------------------------------------


def _coalition_key(mask: int, n: int) -> str:
    return ",".join(str(i + 1) for i in range(n) if mask >> i & 1)


def parse_tu_game(text: str, source: str = "game") -> TUGame:
    doc = _load_json(text, source)
    n = _require(doc, "n", source)
    worth = _require(doc, "worth", source)
    if not isinstance(n, int) or n < 1:
        raise _fail(f"{source}.n", "expected a positive integer")
    if not isinstance(worth, dict):
        raise _fail(f"{source}.worth", "expected an object keyed by coalitions")
    by_mask: dict[int, Fraction] = {}
    for key, value in worth.items():
        path = f"{source}.worth[{key!r}]"
        try:
            members = [int(tok) for tok in key.split(",")]
        except ValueError:
            raise _fail(path, "coalition keys are comma-joined player numbers") from None
        if members != sorted(members) or len(set(members)) != len(members):
            raise _fail(path, "coalition keys must list players sorted, once each")
        if not all(1 <= p <= n for p in members):
            raise _fail(path, f"player numbers must lie in 1..{n}")
        mask = sum(1 << (p - 1) for p in members)
        by_mask[mask] = _rational_at(value, path)
    full = (1 << n) - 1
    missing = [m for m in range(1, full + 1) if m not in by_mask]
    if missing:
        raise _fail(
            f"{source}.worth",
            f"all {full} coalitions are mandatory; missing "
            f"{_coalition_key(missing[0], n)!r}"
            + (f" and {len(missing) - 1} more" if len(missing) > 1 else ""),
        )
    return TUGame(n, by_mask)


def dump_tu_game(game: TUGame) -> str:
    masks = sorted(range(1, game.grand_coalition + 1), key=lambda m: (bin(m).count("1"), m))
    doc = {
        "n": game.n,
        "worth": {_coalition_key(m, game.n): json_number(game.worth(m)) for m in masks},
    }
    return json.dumps(doc, indent=2) + "\n"


# -- marriage problems ----------------------------------------------------


def parse_marriage(text: str, source: str = "problem") -> MarriageProblem:
    doc = _load_json(text, source)
    side_a = _require(doc, "A", source)
    side_b = _require(doc, "B", source)
    prefs = _require(doc, "prefs", source)
    for name, side in (("A", side_a), ("B", side_b)):
        if not isinstance(side, list) or not all(isinstance(x, str) for x in side):
            raise _fail(f"{source}.{name}", "expected a list of strings")
    if not isinstance(prefs, dict):
        raise _fail(f"{source}.prefs", "expected an object of preference lists")
    for person, ranking in prefs.items():
        if not isinstance(ranking, list) or not all(isinstance(x, str) for x in ranking):
            raise _fail(f"{source}.prefs[{person!r}]", "expected a list of labels")
    try:
        return MarriageProblem(side_a, side_b, prefs)
    except Exception as exc:
        raise FormatError(f"{source}: {exc}") from exc


def dump_marriage(problem: MarriageProblem) -> str:
    doc = {
        "A": list(problem.side_a),
        "B": list(problem.side_b),
        "prefs": {p: list(problem.prefs[p]) for p in problem.everyone()},
    }
    return json.dumps(doc, indent=2) + "\n"


# -- decision problems -----------------------------------------------------


def parse_decision(text: str, source: str = "problem") -> tuple[DecisionProblem, OptimismConstraint]:
    doc = _load_json(text, source)
    acts = _require(doc, "acts", source)
    states = _require(doc, "states", source)
    utility = _require(doc, "utility", source)
    if not isinstance(acts, list) or not isinstance(states, list):
        raise _fail(source, "acts and states must be lists of strings")
    if not isinstance(utility, dict):
        raise _fail(f"{source}.utility", "expected an object of per-act state tables")

    table = {}
    for act, row in utility.items():
        if not isinstance(row, dict):
            raise _fail(f"{source}.utility[{act!r}]", "expected an object keyed by state")
        for state, value in row.items():
            table[(act, state)] = _rational_at(value, f"{source}.utility[{act!r}][{state!r}]")

    try:
        problem = DecisionProblem(
            acts,
            states,
            table,
            feasible_acts=doc.get("feasible_acts"),
            feasible_states=doc.get("feasible_states"),
            antagonist=bool(doc.get("antagonist", False)),
        )
    except Exception as exc:
        raise FormatError(f"{source}: {exc}") from exc

    def parse_oc(field: str) -> dict:
        raw = doc.get(field, {})
        if not isinstance(raw, dict):
            raise _fail(f"{source}.{field}", "expected an object keyed by 'act,state'")
        out = {}
        wildcard = raw.get("*")
        for key, allowed in raw.items():
            if key == "*":
                continue
            parts = key.split(",")
            if len(parts) != 2:
                raise _fail(f"{source}.{field}[{key!r}]", "keys look like 'act,state' or '*'")
            if not isinstance(allowed, list):
                raise _fail(f"{source}.{field}[{key!r}]", "expected a list of labels")
            out[(parts[0], parts[1])] = tuple(allowed)
        if wildcard is not None:
            if not isinstance(wildcard, list):
                raise _fail(f"{source}.{field}['*']", "expected a list of labels")
            for profile in problem.feasible_pairs():
                out.setdefault(profile, tuple(wildcard))
        return out

    oc_states = parse_oc("oc_states")
    oc_acts = parse_oc("oc_acts")
    if not oc_states:
        oc = OptimismConstraint.constant(problem)
        if oc_acts:
            oc = OptimismConstraint(oc.dm_states, oc_acts)
    else:
        oc = OptimismConstraint(oc_states, oc_acts or None)
    return problem, oc


# -- path helpers ----------------------------------------------------------


def read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc


def load_game(path: str) -> NormalFormGame:
    return parse_game(read_text(path), source=path)


def load_tu_game(path: str) -> TUGame:
    return parse_tu_game(read_text(path), source=path)


def load_marriage(path: str) -> MarriageProblem:
    return parse_marriage(read_text(path), source=path)


def load_decision(path: str) -> tuple[DecisionProblem, OptimismConstraint]:
    return parse_decision(read_text(path), source=path)
