"""The seven families of finite U(2) subgroups acting freely on S^3.

Each family is given by explicit quaternion-pair generators with integer
parameters and a coprimality condition:

    family                      condition          order   generators
    -----------------------------------------------------------------------
    cyclic L(q,p)               (q,p)=1            p       one diagonal pair
    dihedral product            (m,2n)=1           4mn     [e^{i pi/m},1], [1,e^{i pi/n}], [1,j]
    tetrahedral product         (m,6)=1            24m     ... binary tetrahedral pairs
    octahedral product          (m,6)=1            48m
    icosahedral product         (m,30)=1           120m    (golden ratio entries)
    index-2 diagonal            (m,2)=2,(m,n)=1    4mn     [e^{i pi/(2m)}, j] replaces [1,j]
    index-3 diagonal            (m,6)=3            24m     diagonal order-3 extension

The module enumerates each group by breadth-first closure of the generators,
deduplicating up to simultaneous negation of the pair, and provides the
structural checks used downstream: freeness on S^3 (no eigenvalue 1 away from
the identity), eigenvalue statistics, and normalization of the cyclic
singularity labels L(alpha, beta).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import ClosureOverflow, InvalidParameters, NotCoprime, SnapFailure
from .quaternions import (EQ_TOL, IHAT, JHAT, ONE, GroupElement, Quaternion,
                          circle)

TAU = (1.0 + math.sqrt(5.0)) / 2.0


# ---------------------------------------------------------------------------
# Group specifications
# ---------------------------------------------------------------------------

class Family(str, Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    TETRAHEDRAL = "tetrahedral"
    OCTAHEDRAL = "octahedral"
    ICOSAHEDRAL = "icosahedral"
    INDEX2 = "index2"
    INDEX3 = "index3"


# h = order of the Mobius (PGL(2,C)) image; the index-2/index-3 diagonal
# families project onto the dihedral and tetrahedral rotation groups.
_PGL_ORDER = {
    Family.DIHEDRAL: lambda m, n: 2 * n,
    Family.TETRAHEDRAL: lambda m, n: 12,
    Family.OCTAHEDRAL: lambda m, n: 24,
    Family.ICOSAHEDRAL: lambda m, n: 60,
    Family.INDEX2: lambda m, n: 2 * n,
    Family.INDEX3: lambda m, n: 12,
}


@dataclass(frozen=True)
class GroupSpec:
    """One catalog family with its integer parameters."""

    family: Family
    m: int | None = None
    n: int | None = None
    q: int | None = None
    p: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def cyclic(cls, q: int, p: int) -> "GroupSpec":
        if p < 1:
            raise InvalidParameters(f"cyclic requires p >= 1, got p={p}")
        return cls(Family.CYCLIC, q=q % p if p > 1 else 0, p=p)

    @classmethod
    def dihedral(cls, m: int, n: int) -> "GroupSpec":
        return cls(Family.DIHEDRAL, m=m, n=n)

    @classmethod
    def tetrahedral(cls, m: int) -> "GroupSpec":
        return cls(Family.TETRAHEDRAL, m=m)

    @classmethod
    def octahedral(cls, m: int) -> "GroupSpec":
        return cls(Family.OCTAHEDRAL, m=m)

    @classmethod
    def icosahedral(cls, m: int) -> "GroupSpec":
        return cls(Family.ICOSAHEDRAL, m=m)

    @classmethod
    def index2(cls, m: int, n: int) -> "GroupSpec":
        return cls(Family.INDEX2, m=m, n=n)

    @classmethod
    def index3(cls, m: int) -> "GroupSpec":
        return cls(Family.INDEX3, m=m)

    # -- structure ---------------------------------------------------------

    def validate(self) -> "GroupSpec":
        """Check the catalog conditions; raise InvalidParameters otherwise."""
        f = self.family
        if f is Family.CYCLIC:
            if self.p is None or self.q is None or self.p < 1:
                raise InvalidParameters("cyclic needs parameters q, p with p >= 1")
            if math.gcd(self.q, self.p) != 1:
                raise InvalidParameters(
                    f"cyclic L({self.q},{self.p}): gcd(q,p) must be 1")
            return self
        if self.m is None or self.m < 1:
            raise InvalidParameters(f"{f.value} needs a positive parameter m")
        if f in (Family.DIHEDRAL, Family.INDEX2):
            if self.n is None or self.n < 1:
                raise InvalidParameters(f"{f.value} needs a positive parameter n")
        if f is Family.DIHEDRAL and math.gcd(self.m, 2 * self.n) != 1:
            raise InvalidParameters(
                f"dihedral(m={self.m},n={self.n}): gcd(m,2n) must be 1")
        if f in (Family.TETRAHEDRAL, Family.OCTAHEDRAL) and math.gcd(self.m, 6) != 1:
            raise InvalidParameters(f"{f.value}(m={self.m}): gcd(m,6) must be 1")
        if f is Family.ICOSAHEDRAL and math.gcd(self.m, 30) != 1:
            raise InvalidParameters(f"icosahedral(m={self.m}): gcd(m,30) must be 1")
        if f is Family.INDEX2:
            if self.m % 2 != 0 or math.gcd(self.m, self.n) != 1:
                raise InvalidParameters(
                    f"index2(m={self.m},n={self.n}): needs m even and gcd(m,n)=1")
        if f is Family.INDEX3 and math.gcd(self.m, 6) != 3:
            raise InvalidParameters(f"index3(m={self.m}): gcd(m,6) must be 3")
        return self

    @property
    def is_cyclic(self) -> bool:
        return self.family is Family.CYCLIC

    @property
    def is_degenerate_cyclic(self) -> bool:
        """n = 1 members of the dihedral-shaped families are cyclic groups."""
        return self.family in (Family.DIHEDRAL, Family.INDEX2) and self.n == 1

    def expected_order(self) -> int:
        f = self.family
        if f is Family.CYCLIC:
            return self.p
        if f in (Family.DIHEDRAL, Family.INDEX2):
            return 4 * self.m * self.n
        if f in (Family.TETRAHEDRAL, Family.INDEX3):
            return 24 * self.m
        if f is Family.OCTAHEDRAL:
            return 48 * self.m
        return 120 * self.m

    def pgl_image_order(self) -> int:
        """Order h of the induced Mobius group on the Hopf base."""
        if self.is_cyclic:
            raise InvalidParameters("PGL image order is only used for non-cyclic specs")
        return _PGL_ORDER[self.family](self.m, self.n)

    def quotient_index(self) -> int:
        """|Gamma| / 4m, the modulus in the central self-intersection formula."""
        return self.expected_order() // (4 * self.m)

    def label(self) -> str:
        if self.family is Family.CYCLIC:
            return f"cyclic(q={self.q},p={self.p})"
        if self.family in (Family.DIHEDRAL, Family.INDEX2):
            return f"{self.family.value}(m={self.m},n={self.n})"
        return f"{self.family.value}(m={self.m})"

    def key(self) -> str:
        """Filesystem/config-safe identifier."""
        if self.family is Family.CYCLIC:
            return f"cyclic_q{self.q}_p{self.p}"
        if self.family in (Family.DIHEDRAL, Family.INDEX2):
            return f"{self.family.value}_m{self.m}_n{self.n}"
        return f"{self.family.value}_m{self.m}"


# ---------------------------------------------------------------------------
# Cyclic singularity labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CyclicType:
    """Lens label L(alpha, beta), normalized to 1 <= alpha <= beta - 1."""

    beta: int
    alpha: int

    @property
    def is_trivial(self) -> bool:
        return self.beta == 1

    def dual(self) -> "CyclicType":
        return canonical_cyclic(self.beta - self.alpha, self.beta)

    def conjugate(self) -> "CyclicType":
        """The inverse label L(alpha^{-1} mod beta, beta)."""
        if self.is_trivial:
            return self
        return canonical_cyclic(pow(self.alpha, -1, self.beta), self.beta)

    def conj_key(self) -> tuple[int, int]:
        """Canonical form insensitive to alpha <-> alpha^{-1}."""
        if self.is_trivial:
            return (1, 0)
        return (self.beta, min(self.alpha, pow(self.alpha, -1, self.beta)))

    def __str__(self) -> str:
        return f"L({self.alpha},{self.beta})"


def canonical_cyclic(a: int, beta: int) -> CyclicType:
    """Normalize (a, beta) to the representative with 1 <= a <= beta - 1.

    beta = 1 gives the trivial type L(0,1); otherwise a must be a unit
    modulo beta.
    """
    if beta < 1:
        raise NotCoprime(f"beta must be positive, got {beta}")
    if beta == 1:
        return CyclicType(1, 0)
    a_mod = a % beta
    if math.gcd(a_mod, beta) != 1:
        raise NotCoprime(f"gcd({a},{beta}) != 1")
    return CyclicType(beta, a_mod)


# ---------------------------------------------------------------------------
# Generators (quaternion pairs of the catalog table)
# ---------------------------------------------------------------------------

def generators_of(spec: GroupSpec) -> list[GroupElement]:
    """Generator pairs for the family; the Hopf-fiber rotation
    [e^{i pi/m}, 1] always comes first in the non-cyclic lists."""
    spec.validate()
    f, m, n = spec.family, spec.m, spec.n
    if f is Family.CYCLIC:
        q, p = spec.q, spec.p
        if p == 1:
            return [GroupElement(ONE, ONE)]
        # 2k = q+1 (mod p); for even p, q is odd so q+1 is even.
        if p % 2 == 1:
            k = ((q + 1) * pow(2, -1, p)) % p
        else:
            k = ((q + 1) // 2) % p
        return [GroupElement(circle(2 * math.pi * k / p),
                             circle(2 * math.pi * (1 - k) / p))]

    fiber = GroupElement(circle(math.pi / m), ONE)
    if f is Family.DIHEDRAL:
        return [fiber,
                GroupElement(ONE, circle(math.pi / n)),
                GroupElement(ONE, JHAT)]
    if f is Family.TETRAHEDRAL:
        return [fiber,
                GroupElement(ONE, Quaternion(0.5, 0.5, 0.5, -0.5)),
                GroupElement(ONE, Quaternion(0.5, 0.5, 0.5, 0.5))]
    if f is Family.OCTAHEDRAL:
        return [fiber,
                GroupElement(ONE, circle(math.pi / 4)),
                GroupElement(ONE, Quaternion(0.5, 0.5, 0.5, 0.5))]
    if f is Family.ICOSAHEDRAL:
        return [fiber,
                GroupElement(ONE, Quaternion(0.5, TAU / 2, 0.0, -0.5 / TAU)),
                GroupElement(ONE, Quaternion(TAU / 2, 0.5, 0.5 / TAU, 0.0))]
    if f is Family.INDEX2:
        return [fiber,
                GroupElement(ONE, circle(math.pi / n)),
                GroupElement(circle(math.pi / (2 * m)), JHAT)]
    # index-3 diagonal inside the tetrahedral product
    return [fiber,
            GroupElement(ONE, IHAT),
            GroupElement(ONE, JHAT),
            GroupElement(circle(math.pi / (3 * m)),
                         Quaternion(-0.5, -0.5, -0.5, 0.5))]


def gamma_prime_generators(spec: GroupSpec) -> list[GroupElement]:
    """The generator set with the Hopf-fiber rotation omitted (the subgroup
    used in the deformation character sum)."""
    if spec.is_cyclic:
        raise InvalidParameters("gamma-prime is defined for non-cyclic specs")
    return generators_of(spec)[1:]


# ---------------------------------------------------------------------------
# Vectorized element storage
#
# Every catalog element has a circle left member, so a group element is
# three complex numbers (a, b1, b2) with |a| = 1, |b1|^2 + |b2|^2 = 1,
# modulo joint negation.  Enumeration and all per-element statistics work on
# (N, 3) complex arrays.
# ---------------------------------------------------------------------------

def _row_of(g: GroupElement) -> np.ndarray:
    a = g.left_phase()
    return np.array([a, g.right.z1, g.right.z2], dtype=complex)

def _element_of(row: np.ndarray) -> GroupElement:
    a, b1, b2 = complex(row[0]), complex(row[1]), complex(row[2])
    return GroupElement(Quaternion(a.real, a.imag, 0.0, 0.0),
                        Quaternion.from_complex_pair(b1, b2))


def _canonical_rows(arr: np.ndarray) -> np.ndarray:
    """Fix the joint sign: first nonzero coefficient of alpha positive."""
    re_a, im_a = arr[:, 0].real, arr[:, 0].imag
    s = np.where(np.abs(re_a) > EQ_TOL, np.sign(re_a), np.sign(im_a))
    return arr * s[:, None]


def _row_keys(arr: np.ndarray) -> list[bytes]:
    grid = np.round(arr.view(np.float64).reshape(len(arr), 6) * 1e6).astype(np.int64)
    grid = np.ascontiguousarray(grid)
    return [grid[i].tobytes() for i in range(len(grid))]


def _compose_rows(rows: np.ndarray, gen: np.ndarray) -> np.ndarray:
    """gen o row for every row (apply row first): [ag*ar, beta_r * beta_g]."""
    a = gen[0] * rows[:, 0]
    b1 = rows[:, 1] * gen[1] - rows[:, 2] * np.conj(gen[2])
    b2 = rows[:, 1] * gen[2] + rows[:, 2] * np.conj(gen[1])
    return np.stack([a, b1, b2], axis=1)


@dataclass
class FiniteGroup:
    """An enumerated subgroup: spec (if any), generators, and all elements
    as canonical (a, b1, b2) rows with the identity first."""

    spec: GroupSpec | None
    generators: list[GroupElement]
    rows: np.ndarray
    _elements: list[GroupElement] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def elements(self) -> list[GroupElement]:
        if self._elements is None:
            self._elements = [_element_of(r) for r in self.rows]
        return self._elements

    def element_at(self, i: int) -> GroupElement:
        return _element_of(self.rows[i])

    @classmethod
    def from_elements(cls, elements: list[GroupElement],
                      spec: GroupSpec | None = None) -> "FiniteGroup":
        rows = _canonical_rows(np.array([_row_of(g) for g in elements]))
        return cls(spec, list(elements), rows)

    def eigen_data(self) -> tuple[np.ndarray, np.ndarray]:
        """(theta, phi) per element: eigenvalues are exp(i(theta +- phi))."""
        theta = np.angle(self.rows[:, 0])
        c = np.clip(self.rows[:, 1].real, -1.0, 1.0)
        return theta, np.arccos(c)

    def eigenvalue_one_count(self, tol: float = 1e-6) -> int:
        theta, phi = self.eigen_data()
        d1 = np.abs(np.exp(1j * (theta + phi)) - 1.0)
        d2 = np.abs(np.exp(1j * (theta - phi)) - 1.0)
        return int(np.count_nonzero(np.minimum(d1, d2) < tol))


def generate_closure(generators: list[GroupElement],
                     max_order: int,
                     spec: GroupSpec | None = None) -> FiniteGroup:
    """Breadth-first closure of the generators under composition.

    Deduplication is up to joint negation (quotient by the kernel of the
    double cover).  Raises ClosureOverflow past 2 * max_order elements,
    which signals numerical drift rather than a genuine group.
    """
    gen_rows = _canonical_rows(np.array([_row_of(g) for g in generators]))
    identity = np.array([[1.0 + 0j, 1.0 + 0j, 0.0 + 0j]])
    seen: dict[bytes, int] = {}
    chunks: list[np.ndarray] = []
    count = 0

    frontier = _canonical_rows(identity)
    for k in _row_keys(frontier):
        seen[k] = count
        count += 1
    chunks.append(frontier)

    while len(frontier):
        batches = [_compose_rows(frontier, g) for g in gen_rows]
        cand = _canonical_rows(np.concatenate(batches, axis=0))
        # Drop intra-batch duplicates in C before touching the dict.
        grid = np.round(cand.view(np.float64).reshape(len(cand), 6) * 1e6)
        grid = np.ascontiguousarray(grid.astype(np.int64))
        _, first = np.unique(grid, axis=0, return_index=True)
        first = np.sort(first)
        cand, grid = cand[first], grid[first]
        fresh_idx = []
        for i in range(len(grid)):
            k = grid[i].tobytes()
            if k not in seen:
                seen[k] = count
                count += 1
                fresh_idx.append(i)
        if count > 2 * max_order:
            raise ClosureOverflow(
                f"closure exceeded {2 * max_order} elements (expected {max_order})")
        if not fresh_idx:
            break
        frontier = cand[fresh_idx]
        chunks.append(frontier)

    return FiniteGroup(spec, list(generators), np.concatenate(chunks, axis=0))


def _enumerate_cyclic(spec: GroupSpec) -> FiniteGroup:
    # Single commuting generator: powers are the whole closure.
    gen = generators_of(spec)[0]
    p = spec.p
    k = np.arange(p)
    a0 = np.angle(_row_of(gen)[0])
    b0 = np.angle(_row_of(gen)[1])
    rows = np.stack([np.exp(1j * a0 * k),
                     np.exp(1j * b0 * k),
                     np.zeros(p, dtype=complex)], axis=1)
    rows = _canonical_rows(rows)
    # Deduplicate in case the pair representative hits the kernel early
    # (cannot happen for valid L(q,p), but keep the closure honest).
    _, idx = np.unique(
        np.round(rows.view(np.float64).reshape(p, 6) * 1e6).astype(np.int64),
        axis=0, return_index=True)
    rows = rows[np.sort(idx)]
    return FiniteGroup(spec, [gen], rows)


def enumerate_group(spec: GroupSpec) -> FiniteGroup:
    """All elements of the group, identity first."""
    spec.validate()
    if spec.is_cyclic:
        return _enumerate_cyclic(spec)
    return generate_closure(generators_of(spec), spec.expected_order(), spec)


def enumerate_gamma_prime(spec: GroupSpec) -> FiniteGroup:
    """Closure of the generators without the Hopf-fiber rotation.

    For the product families this is the binary polyhedral group itself;
    for the index-2 and index-3 diagonal families it is the whole group.
    """
    return generate_closure(gamma_prime_generators(spec), spec.expected_order())


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------

def is_fixed_point_free(group: FiniteGroup, tol: float = 1e-6) -> bool:
    """True iff no element besides the identity has eigenvalue 1 (no complex
    reflections, equivalently the action on S^3 is free)."""
    return group.eigenvalue_one_count(tol) == 1


def snap_fraction(x: float, max_den: int, tol: float = 1e-7) -> Fraction:
    """Nearest fraction with denominator <= max_den; raise if not close."""
    f = Fraction(x).limit_denominator(max_den)
    if abs(float(f) - x) > tol:
        raise SnapFailure(f"{x} is not a fraction with denominator <= {max_den}")
    return f


def cyclic_equivalent_type(group: FiniteGroup) -> CyclicType | None:
    """Lens label of a cyclic group, or None if no single generator exists.

    A free cyclic group of order N contains an element whose matrix is
    conjugate to diag(zeta_N, zeta_N^q); normalizing the exponent pair by
    the inverse of the first gives q, reported insensitive to the
    conjugation swap q <-> q^{-1}.
    """
    n = group.order
    if n == 1:
        return canonical_cyclic(0, 1)
    theta, phi = group.eigen_data()
    two_pi = 2 * math.pi
    x1 = np.mod(theta + phi, two_pi) / two_pi * n
    x2 = np.mod(theta - phi, two_pi) / two_pi * n
    for i in range(n):
        k1, k2 = round(float(x1[i])), round(float(x2[i]))
        if abs(x1[i] - k1) > 1e-6 * n or abs(x2[i] - k2) > 1e-6 * n:
            raise SnapFailure("eigenvalue angle is not a multiple of 2pi/N")
        k1, k2 = k1 % n, k2 % n
        if math.gcd(k1, n) == 1:
            q = (k2 * pow(k1, -1, n)) % n
            if math.gcd(q, n) != 1:
                continue        # eigenvalue 1 somewhere: not free, not a lens
            q = min(q, pow(q, -1, n))
            return canonical_cyclic(q, n)
    return None


def eigenvalue_histogram(group: FiniteGroup) -> Counter:
    """Multiset of eigenvalue pairs, keyed by the exact pair of angle
    fractions (angle / 2pi, sorted), with element counts.

    Angles in a finite matrix group of order N are rational with denominator
    dividing N, so snapping to denominator <= N is exact.
    """
    theta, phi = group.eigen_data()
    two_pi = 2 * math.pi
    a1 = np.mod(theta + phi, two_pi) / two_pi
    a2 = np.mod(theta - phi, two_pi) / two_pi
    counts: Counter = Counter()
    for x, y in zip(a1, a2):
        fx = snap_fraction(float(x), group.order) % 1
        fy = snap_fraction(float(y), group.order) % 1
        counts[tuple(sorted((fx, fy)))] += 1
    return counts
