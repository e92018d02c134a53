"""Exact rational matrix representations of presented groups.

Covers relator verification, dual (inverse-transpose) representations, the
search for an invariant nondegenerate bilinear form (a conjugacy between a
representation and its dual), companion-matrix cyclic representations and the
symplectic check.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .group_algebra import Word, format_word
from .laurent import LaurentPolynomial, T, check_companion_f, render
from .presentations import Presentation


class RepresentationError(ValueError):
    """Invalid matrices or a relator that does not map to the identity."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("float entries are not exact; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


class RationalMatrix:
    """Immutable square matrix with :class:`Fraction` entries."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(_frac(x) for x in row) for row in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c) -> "RationalMatrix":
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "RationalMatrix":
        return cls([[0] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix([[a * c for a in r] for r in self.rows])

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows))

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def det(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n = len(a)
        d = Fraction(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            if p != k:
                a[k], a[p] = a[p], a[k]
                d = -d
            d *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    for j in range(k, n):
                        a[i][j] -= f * a[k][j]
        return d

    def inverse(self) -> "RationalMatrix":
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k]), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            a[k], a[p] = a[p], a[k]
            piv = a[k][k]
            a[k] = [x / piv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return RationalMatrix(r[n:] for r in a)

    def __pow__(self, e: int) -> "RationalMatrix":
        base = self if e >= 0 else self.inverse()
        out = RationalMatrix.identity(self.n)
        for _ in range(abs(e)):
            out = out @ base
        return out

    def is_identity(self) -> bool:
        return self == RationalMatrix.identity(self.n)

    def charpoly(self) -> LaurentPolynomial:
        """Characteristic polynomial ``det(t I - M)``."""
        from .laurent import det

        n = self.n
        rows = [[(T if i == j else 0) - LaurentPolynomial.constant(self.rows[i][j]) for j in range(n)]
                for i in range(n)]
        return det(rows)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"RationalMatrix({self.to_json()})"


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace over Q, via reduced row echelon form."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class MatrixRep:
    presentation: Presentation
    images: tuple[RationalMatrix, ...]
    descriptor: str = ""

    @property
    def n(self) -> int:
        return self.images[0].n

    @property
    def sl_flag(self) -> bool:
        return all(X.det() == 1 for X in self.images)

    def image(self, w: Word) -> RationalMatrix:
        out = RationalMatrix.identity(self.n)
        inv = {}
        for g, e in w:
            if e == 1:
                out = out @ self.images[g]
            else:
                if g not in inv:
                    inv[g] = self.images[g].inverse()
                out = out @ inv[g]
        return out

    def conjugate(self, P: RationalMatrix) -> "MatrixRep":
        """The representation ``g -> P^-1 gamma(g) P``."""
        Pi = P.inverse()
        return MatrixRep(self.presentation, tuple(Pi @ X @ P for X in self.images),
                         f"{self.descriptor} conjugated" if self.descriptor else "conjugated")


def verify(p: Presentation, images, descriptor: str = "") -> MatrixRep:
    """Check that ``images`` (a list, or a name -> matrix map) define a representation."""
    if isinstance(images, Mapping):
        missing = [g for g in p.generator_names if g not in images]
        if missing:
            raise RepresentationError(f"no image for generator(s) {', '.join(missing)}")
        extra = [g for g in images if g not in p.generator_names]
        if extra:
            raise RepresentationError(f"image given for unknown generator(s) {', '.join(extra)}")
        images = [images[g] for g in p.generator_names]
    images = tuple(X if isinstance(X, RationalMatrix) else RationalMatrix(X) for X in images)
    if len(images) != p.num_generators:
        raise RepresentationError(f"expected {p.num_generators} images, got {len(images)}")
    n = images[0].n
    if n == 0:
        raise RepresentationError("zero-dimensional representation")
    for name, X in zip(p.generator_names, images):
        if X.n != n:
            raise RepresentationError(f"dimension mismatch: image of {name} is {X.n}x{X.n}, expected {n}x{n}")
        if X.det() == 0:
            raise RepresentationError(f"image of {name} is singular")
    rep = MatrixRep(p, images, descriptor)
    for i, r in enumerate(p.relators):
        if not rep.image(r).is_identity():
            raise RepresentationError(
                f"relator {i + 1} ({format_word(r, p.generator_names)}) does not map to the identity"
            )
    return rep


def trivial_rep(p: Presentation, n: int = 1) -> MatrixRep:
    I = RationalMatrix.identity(n)
    return verify(p, [I] * p.num_generators, descriptor="trivial" if n == 1 else f"trivial{n}")


def dual(rep: MatrixRep) -> MatrixRep:
    """Replace every image by its inverse-transpose."""
    images = tuple(X.inverse().transpose() for X in rep.images)
    desc = rep.descriptor[:-5] if rep.descriptor.endswith(" dual") else f"{rep.descriptor} dual"
    return MatrixRep(rep.presentation, images, desc)


def preserves_form(rep: MatrixRep, A: RationalMatrix) -> bool:
    """``X A X^t == A`` for every generator image ``X``."""
    return all(X @ A @ X.transpose() == A for X in rep.images)


class DualVerdict(str, enum.Enum):
    WITNESS = "witness"
    NONE_CERTAIN = "none-certain"
    NONE_CAVEAT = "none-caveat"


@dataclass(frozen=True)
class WitnessResult:
    verdict: DualVerdict
    witness: RationalMatrix | None = None
    nullity: int = 0

    def __bool__(self):
        return self.witness is not None


def invariant_forms(rep: MatrixRep) -> list[RationalMatrix]:
    """Basis of ``{A : X A X^t = A for all generator images X}``."""
    n = rep.n
    rows = []
    for X in rep.images:
        x = X.rows
        for i in range(n):
            for j in range(n):
                row = [x[i][k] * x[j][l] for k in range(n) for l in range(n)]
                row[i * n + j] -= 1
                rows.append(row)
    basis = nullspace(rows, n * n)
    return [RationalMatrix([v[i * n:(i + 1) * n] for i in range(n)]) for v in basis]


def _combine(basis: Sequence[RationalMatrix], coeffs: Sequence[int]) -> RationalMatrix:
    n = basis[0].n
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c, B in zip(coeffs, basis):
        if c:
            for i in range(n):
                for j in range(n):
                    acc[i][j] += c * B.rows[i][j]
    return RationalMatrix(acc)


def conj_to_dual_witness(rep: MatrixRep, trials: int = 64, bound: int = 8, seed: int = 0,
                         grid_budget: int = 4096) -> WitnessResult:
    """Look for an invertible ``A`` with ``gamma(x) A gamma(x)^t = A`` on all generators.

    The condition is linear in ``A``.  Over its exact nullspace, basis vectors
    are tried first, then seeded random integer combinations.  If all of those
    are singular, ``det(sum c_i B_i)`` is a polynomial of degree at most ``n``
    in each ``c_i``, so it vanishes identically iff it vanishes on the grid
    ``{0..n}^d``; that grid is searched when it fits in ``grid_budget``.
    """
    basis = invariant_forms(rep)
    d = len(basis)
    if d == 0:
        return WitnessResult(DualVerdict.NONE_CERTAIN, None, 0)
    for B in basis:
        if B.det() != 0:
            return WitnessResult(DualVerdict.WITNESS, B, d)
    if d > 1:
        rng = random.Random(seed)
        for _ in range(trials):
            coeffs = [rng.randint(-bound, bound) for _ in range(d)]
            A = _combine(basis, coeffs)
            if A.det() != 0:
                return WitnessResult(DualVerdict.WITNESS, A, d)
    if (rep.n + 1) ** d <= grid_budget:
        for coeffs in itertools.product(range(rep.n + 1), repeat=d):
            A = _combine(basis, coeffs)
            if A.det() != 0:
                return WitnessResult(DualVerdict.WITNESS, A, d)
        return WitnessResult(DualVerdict.NONE_CERTAIN, None, d)
    return WitnessResult(DualVerdict.NONE_CAVEAT, None, d)


def standard_symplectic_form(n: int) -> RationalMatrix:
    if n % 2:
        raise ValueError(f"symplectic form needs even dimension, got {n}")
    h = n // 2
    return RationalMatrix([[1 if j == i + h else -1 if i == j + h else 0 for j in range(n)]
                           for i in range(n)])


def is_symplectic(rep: MatrixRep) -> bool:
    return preserves_form(rep, standard_symplectic_form(rep.n))


def companion_matrix(f: LaurentPolynomial) -> RationalMatrix:
    """Companion matrix of ``(t - 1) f(t)``: ones below the diagonal, last column ``-a_i``.

    Its determinant is ``(-1)^n * p(0)`` for ``p = (t - 1) f`` of degree ``n``,
    so it lies in SL_n(Z) exactly when ``(-1)^(n+1) f(0) = 1``.
    """
    check_companion_f(f)
    p = (T - 1) * f
    n = p.high
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeff(i)
    return RationalMatrix(rows)


def cyclic_rep(p: Presentation, f: LaurentPolynomial) -> MatrixRep:
    """Send every generator to the companion matrix of ``(t - 1) f(t)``."""
    C = companion_matrix(f)
    # conjugation relators always hold for a constant assignment; anything
    # else goes through verify, which names the failing relator
    return verify(p, [C] * p.num_generators, descriptor=f"cyclic f={render(f)}")


# -- file format ---------------------------------------------------------

def from_json(doc: Mapping, p: Presentation) -> MatrixRep:
    """Load ``{"n": 2, "images": {...}}`` or ``{"type": "cyclic", "f": {"coeffs": [...]}}``."""
    kind = doc.get("type", "explicit")
    if kind == "cyclic":
        from .laurent import from_coeffs

        fdoc = doc.get("f")
        if isinstance(fdoc, Mapping):
            f = from_coeffs([int(c) for c in fdoc["coeffs"]], int(fdoc.get("low", 0)))
        else:
            f = from_coeffs([int(c) for c in fdoc])
        return cyclic_rep(p, f)
    if kind == "trivial":
        return trivial_rep(p, int(doc.get("n", 1)))
    if kind != "explicit":
        raise RepresentationError(f"unknown representation type {kind!r}")
    images = doc.get("images")
    if images is None:
        raise RepresentationError("representation JSON needs 'images'")
    try:
        if isinstance(images, Mapping):
            mats = {g: RationalMatrix(m) for g, m in images.items()}
        else:
            mats = [RationalMatrix(m) for m in images]
    except (ValueError, ZeroDivisionError) as exc:
        raise RepresentationError(f"bad matrix entry: {exc}") from None
    rep = verify(p, mats, descriptor=doc.get("name", "explicit"))
    if "n" in doc and int(doc["n"]) != rep.n:
        raise RepresentationError(f"declared n={doc['n']} but images are {rep.n}x{rep.n}")
    return rep


def to_json(rep: MatrixRep) -> dict:
    return {
        "n": rep.n,
        "images": {g: X.to_json() for g, X in zip(rep.presentation.generator_names, rep.images)},
    }


# -- two-generator families on a three-generator Wirtinger presentation ---

def trefoil_gl2(p: Presentation, a) -> MatrixRep:
    """``x0 -> [[a,0],[1,1]]``, ``x1 -> [[a,-(a^2-a+1)],[0,1]]``, ``x2 -> X1^-1 X0 X1``."""
    a = _frac(a)
    if a == 0:
        raise RepresentationError("a must be nonzero")
    X0 = RationalMatrix([[a, 0], [1, 1]])
    X1 = RationalMatrix([[a, -(a * a - a + 1)], [0, 1]])
    return verify(p, [X0, X1, X1.inverse() @ X0 @ X1], descriptor=f"trefoil-gl2 a={a}")


def trefoil_sl2(p: Presentation, s) -> MatrixRep:
    """Non-abelian SL_2(Q) family: upper and lower triangular images with eigenvalues ``s, 1/s``."""
    s = _frac(s)
    if s == 0:
        raise RepresentationError("s must be nonzero")
    u = -(s ** 4 - s ** 2 + 1) / s ** 2
    X0 = RationalMatrix([[s, 1], [0, 1 / s]])
    X1 = RationalMatrix([[s, 0], [u, 1 / s]])
    return verify(p, [X0, X1, X0 @ X1 @ X0.inverse()], descriptor=f"trefoil-sl2 s={s}")


def abelian_rep(p: Presentation, X) -> MatrixRep:
    """Every generator to the same matrix; valid whenever relators have exponent sum zero."""
    X = X if isinstance(X, RationalMatrix) else RationalMatrix(X)
    return verify(p, [X] * p.num_generators, descriptor="abelian")


def direct_sum(a: MatrixRep, b: MatrixRep, interleave: bool = False) -> MatrixRep:
    """Block sum; ``interleave`` orders coordinates as (a1.., b1.., a2.., b2..) for 2x2 halves.

    With two SL_2 summands and ``interleave=True`` the images preserve the
    standard symplectic form ``[[0, I], [-I, 0]]``.
    """
    n, m = a.n, b.n
    images = []
    for X, Y in zip(a.images, b.images):
        rows = [[Fraction(0)] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                rows[i][j] = X.rows[i][j]
        for i in range(m):
            for j in range(m):
                rows[n + i][n + j] = Y.rows[i][j]
        images.append(RationalMatrix(rows))
    if interleave:
        if n != 2 or m != 2:
            raise ValueError("interleaving is defined for two 2-dimensional summands")
        perm = [0, 2, 1, 3]
        images = [RationalMatrix([[Z.rows[perm[i]][perm[j]] for j in range(4)] for i in range(4)])
                  for Z in images]
    return verify(a.presentation, images, descriptor=f"{a.descriptor} + {b.descriptor}")
