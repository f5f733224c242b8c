"""Finite normal-form games with exact rational payoffs.

A game is an immutable dense payoff tensor over labelled strategies.  All
operations here are pure functions; every payoff is a `Fraction`, so results
reproduce bit-exactly and comparisons never depend on floating tolerances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    InvalidDistributionError,
    InvalidProfileError,
    InvalidScaleError,
)
from .rational import to_fraction

PureProfile = tuple[int, ...]
MixedProfile = tuple[tuple[Fraction, ...], ...]
ValueVector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class NormalFormGame:
    """An n-player game: player labels, per-player strategy labels, payoff tensor.

    ``payoffs`` is a nested sequence indexed by strategy indices in player
    order; the innermost sequence holds one payoff per player.  Cells are
    stored flat in row-major order and the instance is immutable after
    construction.
    """

    __slots__ = ("players", "strategies", "shape", "_cells", "_strides")

    def __init__(self, players: Sequence[str], strategies: Sequence[Sequence[str]], payoffs) -> None:
        self.players = tuple(str(p) for p in players)
        if not self.players:
            raise ValueError("a game needs at least one player")
        if len(set(self.players)) != len(self.players):
            raise ValueError("player labels must be unique")
        self.strategies = tuple(tuple(str(s) for s in strats) for strats in strategies)
        if len(self.strategies) != len(self.players):
            raise ValueError(
                f"{len(self.players)} players but {len(self.strategies)} strategy lists"
            )
        for i, strats in enumerate(self.strategies):
            if not strats:
                raise ValueError(f"player {self.players[i]!r} has an empty strategy list")
            if len(set(strats)) != len(strats):
                raise ValueError(f"duplicate strategy label for player {self.players[i]!r}")
        self.shape = tuple(len(s) for s in self.strategies)

        strides = []
        acc = 1
        for size in reversed(self.shape):
            strides.append(acc)
            acc *= size
        self._strides = tuple(reversed(strides))

        cells: list[tuple[Fraction, ...]] = [None] * acc  # type: ignore[list-item]
        self._fill(payoffs, 0, (), cells)
        self._cells = tuple(cells)

    def _fill(self, node, depth: int, prefix: PureProfile, cells: list) -> None:
        n = len(self.players)
        if depth == n:
            if not isinstance(node, (list, tuple)) or len(node) != n:
                raise ValueError(
                    f"payoffs{_path(prefix)}: expected {n} payoffs per cell"
                )
            cells[self._index(prefix)] = tuple(to_fraction(v) for v in node)
            return
        if not isinstance(node, (list, tuple)) or len(node) != self.shape[depth]:
            raise ValueError(
                f"payoffs{_path(prefix)}: expected {self.shape[depth]} entries"
            )
        for k, child in enumerate(node):
            self._fill(child, depth + 1, prefix + (k,), cells)

    def _index(self, profile: PureProfile) -> int:
        return sum(i * s for i, s in zip(profile, self._strides))

    # -- basic queries ----------------------------------------------------

    @property
    def num_players(self) -> int:
        return len(self.players)

    def profiles(self) -> Iterator[PureProfile]:
        """All pure profiles in lexicographic index order."""
        return itertools.product(*(range(k) for k in self.shape))

    def validate_profile(self, profile: PureProfile) -> None:
        if len(profile) != len(self.shape):
            raise InvalidProfileError(
                f"profile has {len(profile)} entries for a {len(self.shape)}-player game"
            )
        for i, s in enumerate(profile):
            if not isinstance(s, int) or not 0 <= s < self.shape[i]:
                raise InvalidProfileError(
                    f"strategy index {s!r} out of range for player {self.players[i]!r}"
                )

    def payoff(self, profile: PureProfile) -> ValueVector:
        """The tensor cell for a pure profile."""
        self.validate_profile(profile)
        return self._cells[self._index(profile)]

    def payoff_unchecked(self, profile: PureProfile) -> ValueVector:
        return self._cells[self._index(profile)]

    def validate_mixed(self, profile: MixedProfile) -> None:
        if len(profile) != len(self.shape):
            raise InvalidDistributionError(
                f"mixed profile has {len(profile)} entries for a "
                f"{len(self.shape)}-player game"
            )
        for i, dist in enumerate(profile):
            if len(dist) != self.shape[i]:
                raise InvalidDistributionError(
                    f"player {self.players[i]!r}: distribution over {len(dist)} "
                    f"strategies, game has {self.shape[i]}"
                )
            total = ZERO
            for q in dist:
                if not isinstance(q, Fraction):
                    raise InvalidDistributionError(
                        f"player {self.players[i]!r}: probabilities must be Fractions"
                    )
                if q < 0:
                    raise InvalidDistributionError(
                        f"player {self.players[i]!r}: negative probability {q}"
                    )
                total += q
            if total != ONE:
                raise InvalidDistributionError(
                    f"player {self.players[i]!r}: probabilities sum to {total}, not 1"
                )

    def expected_payoff(self, profile: MixedProfile) -> ValueVector:
        """Multilinear expectation of the payoff tensor, exact.

        Agrees with `payoff` on degenerate profiles.  Only support cells are
        visited, so degenerate lookups stay cheap.
        """
        self.validate_mixed(profile)
        supports = [
            [(s, q) for s, q in enumerate(dist) if q != 0] for dist in profile
        ]
        totals = [ZERO] * len(self.players)
        for combo in itertools.product(*supports):
            weight = ONE
            for _, q in combo:
                weight *= q
            cell = self._cells[self._index(tuple(s for s, _ in combo))]
            for i, u in enumerate(cell):
                totals[i] += weight * u
        return tuple(totals)

    # -- label helpers -----------------------------------------------------

    def profile_labels(self, profile: PureProfile) -> tuple[str, ...]:
        self.validate_profile(profile)
        return tuple(self.strategies[i][s] for i, s in enumerate(profile))

    def profile_from_labels(self, labels: Sequence[str]) -> PureProfile:
        if len(labels) != len(self.shape):
            raise InvalidProfileError(
                f"expected {len(self.shape)} strategy labels, got {len(labels)}"
            )
        out = []
        for i, label in enumerate(labels):
            try:
                out.append(self.strategies[i].index(label))
            except ValueError:
                raise InvalidProfileError(
                    f"player {self.players[i]!r} has no strategy {label!r}"
                ) from None
        return tuple(out)

    def degenerate(self, profile: PureProfile) -> MixedProfile:
        """The mixed profile putting probability 1 on a pure profile."""
        self.validate_profile(profile)
        return tuple(
            tuple(ONE if s == profile[i] else ZERO for s in range(self.shape[i]))
            for i in range(len(self.shape))
        )

    def nested_payoffs(self) -> list:
        """Rebuild the nested tensor (used by the file writer)."""

        def build(depth: int, prefix: PureProfile):
            if depth == len(self.shape):
                return list(self._cells[self._index(prefix)])
            return [build(depth + 1, prefix + (k,)) for k in range(self.shape[depth])]

        return build(0, ())

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalFormGame):
            return NotImplemented
        return (
            self.players == other.players
            and self.strategies == other.strategies
            and self._cells == other._cells
        )

    def __hash__(self) -> int:
        return hash((self.players, self.strategies, self._cells))

    def __repr__(self) -> str:
        dims = "x".join(str(k) for k in self.shape)
        return f"NormalFormGame({dims}, players={list(self.players)})"


def _path(prefix: PureProfile) -> str:
    return "".join(f"[{i}]" for i in prefix)


class ConstantSumCheck(NamedTuple):
    is_constant_sum: bool
    constant: Fraction | None


def is_constant_sum(game: NormalFormGame) -> ConstantSumCheck:
    """Whether every cell's payoffs sum to one and the same constant."""
    cells = iter(game._cells)
    constant = sum(next(cells), ZERO)
    for cell in cells:
        if sum(cell, ZERO) != constant:
            return ConstantSumCheck(False, None)
    return ConstantSumCheck(True, constant)


def affine_transform(game: NormalFormGame, player: int, alpha, beta) -> NormalFormGame:
    """Rescale one player's payoffs to alpha*u + beta, alpha > 0."""
    alpha = to_fraction(alpha)
    beta = to_fraction(beta)
    if alpha <= 0:
        raise InvalidScaleError(f"scale factor must be positive, got {alpha}")
    if not 0 <= player < game.num_players:
        raise InvalidProfileError(f"no player with index {player}")
    new = NormalFormGame.__new__(NormalFormGame)
    for attr in ("players", "strategies", "shape", "_strides"):
        setattr(new, attr, getattr(game, attr))
    new._cells = tuple(
        tuple(alpha * u + beta if i == player else u for i, u in enumerate(cell))
        for cell in game._cells
    )
    return new


def fictitious_extension(game: NormalFormGame, constant) -> NormalFormGame:
    """Append a one-strategy player absorbing the residual up to `constant`.

    The new player's payoff in each cell is constant minus the cell sum, so
    the extended game is constant-sum at exactly `constant`.
    """
    constant = to_fraction(constant)
    label = "fictitious"
    while label in game.players:
        label += "'"
    new = NormalFormGame.__new__(NormalFormGame)
    new.players = game.players + (label,)
    new.strategies = game.strategies + (("only",),)
    new.shape = game.shape + (1,)
    strides = []
    acc = 1
    for size in reversed(new.shape):
        strides.append(acc)
        acc *= size
    new._strides = tuple(reversed(strides))
    new._cells = tuple(
        cell + (constant - sum(cell, ZERO),) for cell in game._cells
    )
    return new
