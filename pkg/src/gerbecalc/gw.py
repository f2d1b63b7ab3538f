"""Gerbe Gromov-Witten bookkeeping over an abstract base theory.

Base invariants are external data (a user table or seeded pseudo-random
rationals); nothing here computes invariants of the base from geometry.
The module scales and twists them into gerbe invariants, assembles
truncated descendant potentials as exponential generating functions, and
verifies exactly, coefficient by coefficient, that the gerbe potential
equals the character-summed, Novikov-twisted base potentials.

Curve classes live in the free monoid Z^m >= 0 and enter only through the
Novikov exponent and a mod-r pairing residue.  Cohomology of the base is an
abstract indexed basis with no grading or products.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Mapping, Sequence

from .abelian import FiniteAbelianGroup, evaluate_character
from .admissibility import ContactType, is_admissible
from .exactnum import CyclotomicNumber, Rational

logger = logging.getLogger(__name__)

CurveClass = tuple[int, ...]


class CoverageError(LookupError):
    """A base-table key outside the declared truncation was requested."""


@dataclass(frozen=True)
class GerbeSpec:
    """The band order r and the linear pairing residues defining k(beta)."""

    band_order: int
    pairing: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairing", tuple(self.pairing))
        if self.band_order < 1:
            raise ValueError(f"band order must be positive, got {self.band_order}")
        if any(not 0 <= a < self.band_order for a in self.pairing):
            raise ValueError(
                f"pairing residues must lie in [0, {self.band_order}), got {self.pairing}"
            )

    @property
    def beta_rank(self) -> int:
        return len(self.pairing)

    def group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup((self.band_order,))


def _check_curve_class(beta, rank: int) -> CurveClass:
    beta = tuple(beta)
    if len(beta) != rank:
        raise ValueError(f"curve class {beta} has rank {len(beta)}, expected {rank}")
    if any(not isinstance(x, int) or x < 0 for x in beta):
        raise ValueError(f"curve class {beta} must have nonnegative integer entries")
    return beta


def pairing_value(spec: GerbeSpec, beta) -> int:
    """The residue k(beta) = sum a_i beta_i mod r; additive in beta."""
    beta = _check_curve_class(beta, spec.beta_rank)
    return sum(a * b for a, b in zip(spec.pairing, beta)) % spec.band_order


@dataclass(frozen=True, order=True)
class Insertion:
    """A base cohomology class index with a descendant power."""

    class_index: int
    psi_power: int

    def __post_init__(self) -> None:
        if self.class_index < 0 or self.psi_power < 0:
            raise ValueError(f"insertion indices must be nonnegative, got {self}")


@dataclass(frozen=True, order=True)
class SectorInsertion:
    """An insertion decorated with a group element of mu_r (sector basis)."""

    sector: int
    class_index: int
    psi_power: int

    def underlying(self) -> Insertion:
        return Insertion(self.class_index, self.psi_power)


@dataclass(frozen=True, order=True)
class CharacterInsertion:
    """An insertion decorated with a character of mu_r (rho basis)."""

    character: int
    class_index: int
    psi_power: int

    def underlying(self) -> Insertion:
        return Insertion(self.class_index, self.psi_power)


@dataclass(frozen=True)
class Truncation:
    """Finite truncation bounds: insertion count, psi power, curve classes."""

    n_max: int
    j_max: int
    betas: tuple[CurveClass, ...]

    def __post_init__(self) -> None:
        if self.n_max < 0 or self.j_max < 0:
            raise ValueError("truncation bounds must be nonnegative")
        betas = tuple(sorted({tuple(b) for b in self.betas}))
        if not betas:
            raise ValueError("truncation needs at least one curve class")
        ranks = {len(b) for b in betas}
        if len(ranks) != 1:
            raise ValueError(f"curve classes of mixed rank: {sorted(ranks)}")
        if any(x < 0 for b in betas for x in b):
            raise ValueError("curve classes must be effective (componentwise >= 0)")
        object.__setattr__(self, "betas", betas)

    @property
    def rank(self) -> int:
        return len(self.betas[0])


def _canonical_insertions(insertions: Iterable[Insertion]) -> tuple[Insertion, ...]:
    return tuple(sorted(insertions))


class BaseTheoryTable:
    """Finite table of base-theory descendant invariants at a fixed genus.

    Keys are (curve class, canonically sorted insertions); values are exact
    rationals.  Inside the declared truncation a missing key reads as 0 and
    is reported once on the warning channel; outside it the lookup raises
    CoverageError, so "the invariant is zero" and "no data was supplied"
    stay distinguishable.
    """

    def __init__(
        self,
        basis_size: int,
        genus: int,
        truncation: Truncation,
        entries: Mapping[tuple[CurveClass, tuple[Insertion, ...]], Fraction],
    ) -> None:
        if basis_size < 1:
            raise ValueError(f"basis size must be positive, got {basis_size}")
        if genus < 0:
            raise ValueError(f"genus must be nonnegative, got {genus}")
        self.basis_size = basis_size
        self.genus = genus
        self.truncation = truncation
        self._entries = dict(entries)
        self._warned: set = set()

    @classmethod
    def from_records(
        cls,
        basis_size: int,
        genus: int,
        truncation: Truncation,
        records: Iterable[tuple[int, CurveClass, Sequence[Insertion], Fraction]],
    ) -> "BaseTheoryTable":
        table = cls(basis_size, genus, truncation, {})
        for g, beta, insertions, value in records:
            beta = _check_curve_class(beta, truncation.rank)
            key = (beta, _canonical_insertions(insertions))
            table._require_inside(g, key[0], key[1])
            value = Fraction(value)
            if key in table._entries and table._entries[key] != value:
                raise ValueError(
                    f"conflicting values for {key}: {table._entries[key]} vs {value}"
                )
            table._entries[key] = value
        return table

    @classmethod
    def seeded(
        cls, basis_size: int, genus: int, truncation: Truncation, seed: int
    ) -> "BaseTheoryTable":
        """Deterministic pseudo-random table covering the whole truncation."""
        rng = Random(seed)
        variables = [
            Insertion(i, j)
            for i in range(basis_size)
            for j in range(truncation.j_max + 1)
        ]
        entries = {}
        for beta in truncation.betas:
            for n in range(truncation.n_max + 1):
                for combo in itertools.combinations_with_replacement(variables, n):
                    entries[(beta, combo)] = Fraction(
                        rng.randint(-99, 99), rng.randint(1, 12)
                    )
        return cls(basis_size, genus, truncation, entries)

    def _require_inside(
        self, genus: int, beta: CurveClass, insertions: tuple[Insertion, ...]
    ) -> None:
        tr = self.truncation
        if genus != self.genus:
            raise CoverageError(f"genus {genus} outside the table's genus {self.genus}")
        if beta not in tr.betas:
            raise CoverageError(f"curve class {beta} outside the truncation")
        if len(insertions) > tr.n_max:
            raise CoverageError(
                f"{len(insertions)} insertions exceed the truncation bound {tr.n_max}"
            )
        for ins in insertions:
            if ins.class_index >= self.basis_size:
                raise CoverageError(
                    f"class index {ins.class_index} outside the basis of size {self.basis_size}"
                )
            if ins.psi_power > tr.j_max:
                raise CoverageError(
                    f"psi power {ins.psi_power} exceeds the truncation bound {tr.j_max}"
                )

    def lookup(
        self, genus: int, beta, insertions: Sequence[Insertion]
    ) -> Fraction:
        beta = _check_curve_class(beta, self.truncation.rank)
        key = (beta, _canonical_insertions(insertions))
        self._require_inside(genus, key[0], key[1])
        try:
            return self._entries[key]
        except KeyError:
            if key not in self._warned:
                self._warned.add(key)
                logger.warning(
                    "base table has no entry for genus=%s beta=%s insertions=%s; using 0",
                    genus,
                    beta,
                    [(i.class_index, i.psi_power) for i in key[1]],
                )
            return Fraction(0)


def character_twist(spec: GerbeSpec, rho: int, k: int) -> CyclotomicNumber:
    """chi_rho evaluated at zeta_r^(-k), the Novikov twist of a curve class."""
    group = spec.group()
    return evaluate_character(
        group, group.character((rho,)), group.element((-k,))
    )


def gerbe_invariant_sector(
    spec: GerbeSpec,
    base: BaseTheoryTable,
    genus: int,
    beta,
    insertions: Sequence[SectorInsertion],
) -> Rational:
    """Gerbe invariant with sector-basis insertions.

    r^(2g-1) times the underlying base invariant when the sector tuple is
    admissible for k(beta), and exactly 0 otherwise.  The base table must
    cover the underlying key either way.
    """
    beta = _check_curve_class(beta, spec.beta_rank)
    value = base.lookup(genus, beta, [s.underlying() for s in insertions])
    r = spec.band_order
    types = [ContactType.from_residue(s.sector, r) for s in insertions]
    if not is_admissible(types, r, pairing_value(spec, beta)):
        return Fraction(0)
    return Fraction(r) ** (2 * genus - 1) * value


def gerbe_invariant_rho(
    spec: GerbeSpec,
    base: BaseTheoryTable,
    genus: int,
    beta,
    insertions: Sequence[CharacterInsertion],
) -> CyclotomicNumber:
    """Gerbe invariant with character-basis insertions, in Q(zeta_r).

    Zero unless all characters agree on a common rho; in that case
    r^(2g-2) * base value * chi_rho(zeta_r^(-k)).  The empty tuple is the
    plain gerbe invariant: r^(2g-1) * base value when k(beta) = 0, else 0.
    """
    beta = _check_curve_class(beta, spec.beta_rank)
    value = base.lookup(genus, beta, [s.underlying() for s in insertions])
    r = spec.band_order
    k = pairing_value(spec, beta)
    if not insertions:
        if k != 0:
            return CyclotomicNumber.zero(r)
        scalar = Fraction(r) ** (2 * genus - 1) * value
        return CyclotomicNumber.from_rational(scalar, r)
    characters = {s.character % r for s in insertions}
    if len(characters) > 1:
        return CyclotomicNumber.zero(r)
    rho = characters.pop()
    scalar = Fraction(r) ** (2 * genus - 2) * value
    return character_twist(spec, rho, k) * scalar


@dataclass(frozen=True, eq=False)
class PotentialSeries:
    """A truncated descendant potential with exact cyclotomic coefficients.

    Keys are (curve class, sorted variable monomial); variables are
    (class_index, psi_power) pairs in the base basis and
    (class_index, character, psi_power) triples in the gerbe basis.  Only
    nonzero coefficients are stored.
    """

    basis: str
    genus: int
    truncation: Truncation
    coefficients: dict

    def sorted_items(self) -> list:
        return sorted(self.coefficients.items())

    def to_records(self) -> list[dict]:
        records = []
        for (beta, monomial), coeff in self.sorted_items():
            records.append(
                {
                    "beta": list(beta),
                    "monomial": [list(v) for v in monomial],
                    "coefficient": coeff.to_dict(),
                }
            )
        return records


def _monomial_weight(monomial: tuple) -> Fraction:
    # EGF bookkeeping: coefficient = invariant / product of multiplicities!
    weight = 1
    for _, group in itertools.groupby(monomial):
        weight *= math.factorial(sum(1 for _ in group))
    return Fraction(1, weight)


def build_potential(
    spec: GerbeSpec,
    base: BaseTheoryTable,
    genus: int,
    truncation: Truncation,
    basis: str = "gerbe",
    workers: int = 1,
) -> PotentialSeries:
    """Assemble the truncated genus-g potential in the requested basis.

    The coefficient of Q^beta on a variable multiset is the corresponding
    invariant divided by the product of the multiplicities' factorials, so
    the series is the usual exponential generating function written on
    monomial keys.  Basis "gerbe" uses (class_index, character, psi_power)
    variables and the character-basis gerbe invariants; basis "base" uses
    (class_index, psi_power) variables and the raw base table.
    """
    if basis not in ("gerbe", "base"):
        raise ValueError(f"unknown basis {basis!r}")
    r = spec.band_order
    if basis == "gerbe":
        variables = [
            (i, rho, j)
            for i in range(base.basis_size)
            for rho in range(r)
            for j in range(truncation.j_max + 1)
        ]
    else:
        variables = [
            (i, j) for i in range(base.basis_size) for j in range(truncation.j_max + 1)
        ]

    keys = [
        (beta, combo)
        for beta in truncation.betas
        for n in range(truncation.n_max + 1)
        for combo in itertools.combinations_with_replacement(variables, n)
    ]

    def coefficient(key):
        beta, monomial = key
        if basis == "gerbe":
            value = gerbe_invariant_rho(
                spec,
                base,
                genus,
                beta,
                [CharacterInsertion(rho, i, j) for (i, rho, j) in monomial],
            )
        else:
            raw = base.lookup(genus, beta, [Insertion(i, j) for (i, j) in monomial])
            value = CyclotomicNumber.from_rational(raw)
        return value * _monomial_weight(monomial)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(coefficient, keys, chunksize=64))
    else:
        values = [coefficient(key) for key in keys]

    coefficients = {
        key: value for key, value in zip(keys, values) if not value.is_zero()
    }
    return PotentialSeries(basis, genus, truncation, coefficients)


def substitute_novikov(
    series: PotentialSeries, spec: GerbeSpec, rho: int
) -> PotentialSeries:
    """Twist Novikov variables by chi_rho and relabel variables into sector rho.

    Each Q^beta coefficient picks up chi_rho(zeta_r^(-k(beta))) and every
    base variable (i, j) becomes the gerbe variable (i, rho, j).  Acts on
    coefficients: the twisted values already live in Q(zeta_r).
    """
    if series.basis != "base":
        raise ValueError("substitution needs a base-basis series")
    rho = rho % spec.band_order
    twists = {
        beta: character_twist(spec, rho, pairing_value(spec, beta))
        for beta in series.truncation.betas
    }
    coefficients = {}
    for (beta, monomial), coeff in series.coefficients.items():
        relabeled = tuple((i, rho, j) for (i, j) in monomial)
        value = coeff * twists[beta]
        if not value.is_zero():
            coefficients[(beta, relabeled)] = value
    return PotentialSeries("gerbe", series.genus, series.truncation, coefficients)


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    """Outcome of the exact termwise comparison of the two potentials."""

    passed: bool
    keys_compared: int
    first_differing_key: tuple | None = None
    lhs_value: CyclotomicNumber | None = None
    rhs_value: CyclotomicNumber | None = None

    @staticmethod
    def _encode_key(key: tuple) -> dict:
        beta, monomial = key
        return {"beta": list(beta), "monomial": [list(v) for v in monomial]}

    def to_dict(self) -> dict:
        out = {
            "status": "pass" if self.passed else "fail",
            "keys_compared": self.keys_compared,
            "first_differing_key": None,
            "lhs_value": None,
            "rhs_value": None,
        }
        if not self.passed and self.first_differing_key is not None:
            out["first_differing_key"] = self._encode_key(self.first_differing_key)
            out["lhs_value"] = self.lhs_value.to_dict()
            out["rhs_value"] = self.rhs_value.to_dict()
        return out


def verify_decomposition(
    spec: GerbeSpec,
    base: BaseTheoryTable,
    genus: int,
    truncation: Truncation,
    workers: int = 1,
) -> DecompositionReport:
    """Exact check that the gerbe potential decomposes over the characters.

    The left side is the gerbe-basis potential built from character-basis
    invariants.  The right side sums, over every character rho of mu_r, the
    base potential with Novikov variables twisted by chi_rho and variables
    relabeled into sector rho, then scales by r^(2g-2).  Both sides are
    compared coefficient by coefficient over the union of their keys in
    total key order; the first difference, if any, is reported.
    """
    r = spec.band_order
    lhs = build_potential(spec, base, genus, truncation, "gerbe", workers=workers)
    base_series = build_potential(spec, base, genus, truncation, "base", workers=workers)
    scalar = Fraction(r) ** (2 * genus - 2)
    rhs: dict = {}
    for rho in range(r):
        for key, value in substitute_novikov(base_series, spec, rho).coefficients.items():
            if key in rhs:
                rhs[key] = rhs[key] + value
            else:
                rhs[key] = value
    rhs = {key: value * scalar for key, value in rhs.items()}

    all_keys = sorted(set(lhs.coefficients) | set(rhs))
    zero = CyclotomicNumber.zero(r)
    for key in all_keys:
        left = lhs.coefficients.get(key, zero)
        right = rhs.get(key, zero)
        if left != right:
            return DecompositionReport(False, len(all_keys), key, left, right)
    return DecompositionReport(True, len(all_keys))
