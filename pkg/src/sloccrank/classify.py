"""Rank signatures, family assignment, Dicke scans, and table reproduction.

A state's signature is the vector of coefficient-matrix ranks taken over a
list of qubit swap sets.  Signatures split the state space into families:
states related by invertible local operators always share a signature, so a
signature mismatch is a proof of inequivalence.

The three built-in tables cover the parameterized four-qubit families
``L_a2b2``, ``span_0kPsi``, ``L_ab3`` and ``L_abc2`` (the latter two share a
table, with c locked to a).  Regions are verified by sampling: boundary
constraints such as a = -b are imposed by construction on exact rationals,
generic constraints draw random nonzero rationals, and a separate pool of
unconstrained draws must never land outside the listed cells.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, NamedTuple

from .coeffmatrix import IDENTITY, QubitPermutation, coefficient_matrix
from .rank import exact_rank
from .states import PureState, dicke_state, family_state

__all__ = [
    "FamilySignature",
    "rank_signature",
    "family_of",
    "DickeScanRow",
    "dicke_rank_scan",
    "CellReport",
    "TableReport",
    "classify_table",
    "TABLE_IDS",
]


@dataclass(frozen=True)
class FamilySignature:
    """Ranks of a state's coefficient matrices over an ordered list of swaps."""

    sigmas: tuple[QubitPermutation, ...]
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.sigmas) != len(self.ranks):
            raise ValueError("sigmas and ranks must have the same length")

    def to_json_dict(self) -> dict:
        return {"sigmas": [s.to_text() for s in self.sigmas], "ranks": list(self.ranks)}


def rank_signature(state: PureState, sigmas) -> FamilySignature:
    sigmas = tuple(sigmas)
    ranks = tuple(exact_rank(coefficient_matrix(state, sigma)).rank for sigma in sigmas)
    return FamilySignature(sigmas, ranks)


def family_of(state: PureState) -> int:
    """The state's family index: its rank under the default bipartition."""
    return exact_rank(coefficient_matrix(state)).rank


class DickeScanRow(NamedTuple):
    ell: int
    rank: int
    distinct_nonzero_rows: int
    row_multiplicities: tuple[int, ...]


def dicke_rank_scan(n: int) -> list[DickeScanRow]:
    """Rank and row structure of every Dicke matrix with ell <= n//2.

    For each excitation count the matrix rank is ell + 1, the distinct
    nonzero rows number ell + 1, and the rows whose row bits carry j ones
    (j <= ell) repeat exactly C(n//2, j) times.  The mirrored state with
    n - ell excitations must show the same rank.  All of this is computed
    from the matrices and re-checked here; a mismatch raises, since it would
    mean the rank engine or the generators are broken.
    """
    if n < 2:
        raise ValueError("need at least 2 qubits")
    half = n // 2
    out = []
    for ell in range(1, half + 1):
        matrix = coefficient_matrix(dicke_state(n, ell))
        rank = exact_rank(matrix).rank

        groups: dict[tuple, list[int]] = {}
        for row_index, row in enumerate(matrix.entries):
            if any(row):
                groups.setdefault(row, []).append(row_index)
        distinct = len(groups)

        by_weight: dict[int, int] = {}
        for indices in groups.values():
            weights = {index.bit_count() for index in indices}
            if len(weights) != 1:
                raise RuntimeError(f"Dicke scan n={n} ell={ell}: mixed-weight identical rows")
            (weight,) = weights
            if weight in by_weight:
                raise RuntimeError(f"Dicke scan n={n} ell={ell}: two row values share weight {weight}")
            by_weight[weight] = len(indices)
        if sorted(by_weight) != list(range(ell + 1)):
            raise RuntimeError(f"Dicke scan n={n} ell={ell}: nonzero rows at unexpected weights")
        multiplicities = tuple(by_weight[j] for j in range(ell + 1))

        mirror = exact_rank(coefficient_matrix(dicke_state(n, n - ell))).rank
        predicted = tuple(comb(half, j) for j in range(ell + 1))
        if rank != ell + 1 or distinct != ell + 1 or multiplicities != predicted or mirror != rank:
            raise RuntimeError(f"Dicke scan n={n} ell={ell}: rank structure mismatch")
        out.append(DickeScanRow(ell, rank, distinct, multiplicities))
    return out


# --- table reproduction ----------------------------------------------------

Params = dict[str, Fraction]


@dataclass(frozen=True)
class _Cell:
    region: str
    signature: tuple[int, ...]
    # predicate/sampler are None for a region listed as empty
    predicate: Callable[[Params], bool] | None
    sampler: Callable[[random.Random], Params] | None


@dataclass(frozen=True)
class _Group:
    """One parameterized family within a table."""

    family: str | None
    build: Callable[[Params], PureState]
    unconstrained: Callable[[random.Random], Params]
    cells: tuple[_Cell, ...]


@dataclass(frozen=True)
class _TableLayout:
    sigmas: tuple[QubitPermutation, ...]
    groups: tuple[_Group, ...]


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.choice((1, 2)))


def _nonzero_fraction(rng: random.Random) -> Fraction:
    while True:
        value = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if value:
            return value


def _two_free(names: tuple[str, str]) -> Callable[[random.Random], Params]:
    first, second = names

    def draw(rng: random.Random) -> Params:
        return {first: _random_fraction(rng), second: _random_fraction(rng)}

    return draw


def _sample_both_zero(names):
    def draw(rng: random.Random) -> Params:
        return {names[0]: Fraction(0), names[1]: Fraction(0)}

    return draw


def _sample_one_zero(names):
    def draw(rng: random.Random) -> Params:
        zero_first = rng.random() < 0.5
        value = _nonzero_fraction(rng)
        if zero_first:
            return {names[0]: Fraction(0), names[1]: value}
        return {names[0]: value, names[1]: Fraction(0)}

    return draw


def _sample_equal_up_to_sign(names):
    def draw(rng: random.Random) -> Params:
        value = _nonzero_fraction(rng)
        sign = 1 if rng.random() < 0.5 else -1
        return {names[0]: value, names[1]: sign * value}

    return draw


def _sample_equal_nonzero(names):
    def draw(rng: random.Random) -> Params:
        value = _nonzero_fraction(rng)
        return {names[0]: value, names[1]: value}

    return draw


def _sample_generic(names, forbid_sign: bool):
    def draw(rng: random.Random) -> Params:
        first = _nonzero_fraction(rng)
        while True:
            second = _nonzero_fraction(rng)
            if second == first:
                continue
            if forbid_sign and second == -first:
                continue
            return {names[0]: first, names[1]: second}

    return draw


def _sample_first_nonzero(names):
    def draw(rng: random.Random) -> Params:
        return {names[0]: _nonzero_fraction(rng), names[1]: Fraction(0)}

    return draw


def _sample_second_nonzero(names):
    def draw(rng: random.Random) -> Params:
        return {names[0]: Fraction(0), names[1]: _nonzero_fraction(rng)}

    return draw


def _verstraete_layout() -> _TableLayout:
    names = ("a", "b")
    cells = (
        _Cell(
            "a=b=0", (2, 1),
            lambda p: p["a"] == 0 and p["b"] == 0,
            _sample_both_zero(names),
        ),
        _Cell(
            "ab=0 & a≠b", (3, 3),
            lambda p: p["a"] * p["b"] == 0 and p["a"] != p["b"],
            _sample_one_zero(names),
        ),
        _Cell(
            "a=±b & a≠0", (4, 2),
            lambda p: p["a"] != 0 and (p["a"] == p["b"] or p["a"] == -p["b"]),
            _sample_equal_up_to_sign(names),
        ),
        _Cell(
            "ab≠0 & a≠±b", (4, 3),
            lambda p: p["a"] * p["b"] != 0 and p["a"] != p["b"] and p["a"] != -p["b"],
            _sample_generic(names, forbid_sign=True),
        ),
    )
    group = _Group(
        family=None,
        build=lambda p: family_state("L_a2b2", a=p["a"], b=p["b"]),
        unconstrained=_two_free(names),
        cells=cells,
    )
    return _TableLayout(sigmas=(IDENTITY, QubitPermutation(((1, 4),))), groups=(group,))


def _lamata_layout() -> _TableLayout:
    names = ("alpha", "beta")
    cells = (
        _Cell(
            "α=β=0", (1, 2),
            lambda p: p["alpha"] == 0 and p["beta"] == 0,
            _sample_both_zero(names),
        ),
        _Cell(
            "α=β≠0", (1, 4),
            lambda p: p["alpha"] == p["beta"] != 0,
            _sample_equal_nonzero(names),
        ),
        _Cell(
            "αβ=0 & α≠β", (2, 3),
            lambda p: p["alpha"] * p["beta"] == 0 and p["alpha"] != p["beta"],
            _sample_one_zero(names),
        ),
        _Cell(
            "αβ≠0 & α≠β", (2, 4),
            lambda p: p["alpha"] * p["beta"] != 0 and p["alpha"] != p["beta"],
            _sample_generic(names, forbid_sign=False),
        ),
    )
    group = _Group(
        family=None,
        build=lambda p: family_state("span_0kPsi", alpha=p["alpha"], beta=p["beta"]),
        unconstrained=_two_free(names),
        cells=cells,
    )
    return _TableLayout(sigmas=(IDENTITY, QubitPermutation(((1, 4),))), groups=(group,))


def _chterental_layout() -> _TableLayout:
    names = ("a", "b")
    lab3_cells = (
        _Cell("∅", (1,), None, None),
        _Cell(
            "a=b=0", (2,),
            lambda p: p["a"] == 0 and p["b"] == 0,
            _sample_both_zero(names),
        ),
        _Cell(
            "ab=0 & a≠b", (3,),
            lambda p: p["a"] * p["b"] == 0 and p["a"] != p["b"],
            _sample_one_zero(names),
        ),
        _Cell(
            "ab≠0", (4,),
            lambda p: p["a"] * p["b"] != 0,
            _sample_generic(names, forbid_sign=False),
        ),
    )
    labc2_cells = (
        _Cell(
            "a=b=0", (1,),
            lambda p: p["a"] == 0 and p["b"] == 0,
            _sample_both_zero(names),
        ),
        _Cell(
            "a=0 & b≠0", (2,),
            lambda p: p["a"] == 0 and p["b"] != 0,
            _sample_second_nonzero(names),
        ),
        _Cell(
            "a≠0 & b=0", (3,),
            lambda p: p["a"] != 0 and p["b"] == 0,
            _sample_first_nonzero(names),
        ),
        _Cell(
            "ab≠0", (4,),
            lambda p: p["a"] * p["b"] != 0,
            _sample_generic(names, forbid_sign=False),
        ),
    )
    groups = (
        _Group(
            family="L_ab3",
            build=lambda p: family_state("L_ab3", a=p["a"], b=p["b"]),
            unconstrained=_two_free(names),
            cells=lab3_cells,
        ),
        _Group(
            # the table fixes c = a for this family
            family="L_abc2",
            build=lambda p: family_state("L_abc2", a=p["a"], b=p["b"], c=p["a"]),
            unconstrained=_two_free(names),
            cells=labc2_cells,
        ),
    )
    return _TableLayout(sigmas=(IDENTITY,), groups=groups)


_TABLES: dict[str, Callable[[], _TableLayout]] = {
    "verstraete": _verstraete_layout,
    "lamata": _lamata_layout,
    "chterental": _chterental_layout,
}

TABLE_IDS = tuple(sorted(_TABLES))


@dataclass
class CellReport:
    region: str
    signature: tuple[int, ...]
    samples: int
    passed: bool
    family: str | None = None
    witness: dict | None = None

    def to_json_dict(self) -> dict:
        payload: dict = {}
        if self.family is not None:
            payload["family"] = self.family
        payload["region"] = self.region
        payload["signature"] = list(self.signature)
        payload["samples"] = self.samples
        payload["pass"] = self.passed
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


@dataclass
class TableReport:
    table: str
    cells: list[CellReport]
    unconstrained_hits: dict[str, int]
    unconstrained_failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(cell.passed for cell in self.cells) and not self.unconstrained_failures

    def to_json_dict(self) -> dict:
        payload = {
            "table": self.table,
            "cells": [cell.to_json_dict() for cell in self.cells],
            "unconstrained_hits": self.unconstrained_hits,
            "pass": self.passed,
        }
        if self.unconstrained_failures:
            payload["unconstrained_failures"] = self.unconstrained_failures
        return payload


def _params_repr(params: Params) -> dict:
    return {key: str(value) for key, value in sorted(params.items())}


def _hit_key(family: str | None, ranks: tuple[int, ...]) -> str:
    body = ",".join(str(r) for r in ranks)
    return f"{family}:{body}" if family else body


def classify_table(table: str, samples_per_cell: int, seed: int) -> TableReport:
    """Reproduce one of the built-in family tables by exact sampling.

    Every nonempty cell is sampled ``samples_per_cell`` times inside its
    region and the computed signature must equal the cell's.  On top of
    that, 10x as many unconstrained parameter draws per family are routed
    to whichever region they satisfy and must reproduce that cell's
    signature, so no draw can ever land in a region listed as empty.
    """
    if table not in _TABLES:
        raise ValueError(f"unknown table {table!r}; expected one of {list(TABLE_IDS)}")
    if samples_per_cell < 1:
        raise ValueError("samples_per_cell must be at least 1")
    layout = _TABLES[table]()
    rng = random.Random(seed)
    cell_reports: list[CellReport] = []
    empty_cells: list[tuple[CellReport, str | None]] = []

    for group in layout.groups:
        for cell in group.cells:
            if cell.sampler is None:
                report = CellReport(cell.region, cell.signature, 0, True, family=group.family)
                cell_reports.append(report)
                empty_cells.append((report, group.family))
                continue
            passed = True
            witness = None
            for _ in range(samples_per_cell):
                params = cell.sampler(rng)
                signature = rank_signature(group.build(params), layout.sigmas).ranks
                if signature != cell.signature:
                    passed = False
                    witness = {"params": _params_repr(params), "signature": list(signature)}
                    break
            cell_reports.append(
                CellReport(cell.region, cell.signature, samples_per_cell, passed,
                           family=group.family, witness=witness)
            )

    hits: dict[str, int] = {}
    failures: list[dict] = []
    draws = samples_per_cell * 10
    for group in layout.groups:
        for _ in range(draws):
            params = group.unconstrained(rng)
            signature = rank_signature(group.build(params), layout.sigmas).ranks
            key = _hit_key(group.family, signature)
            hits[key] = hits.get(key, 0) + 1
            matches = [
                cell for cell in group.cells
                if cell.predicate is not None and cell.predicate(params)
            ]
            if len(matches) != 1 or signature != matches[0].signature:
                failures.append(
                    {
                        "family": group.family,
                        "params": _params_repr(params),
                        "signature": list(signature),
                        "matched_regions": [cell.region for cell in matches],
                    }
                )

    for report, family in empty_cells:
        key = _hit_key(family, report.signature)
        if key in hits:
            report.passed = False
            report.witness = {"unconstrained_hits": hits[key]}

    return TableReport(
        table=table,
        cells=cell_reports,
        unconstrained_hits={key: hits[key] for key in sorted(hits)},
        unconstrained_failures=failures,
    )
