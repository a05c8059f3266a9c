"""Exact sparse linear algebra over the rationals.

Everything downstream (chain complexes, homology, spectral sequences) reduces to
rank / kernel / image / solve computations here, so this module is deliberately
boring: immutable sparse matrices with `fractions.Fraction` entries, and a single
deterministic elimination routine that all higher-level operations share.

Determinism contract: for a fixed input matrix, every function returns a unique
canonical answer. Reduced row echelon form is unique per se; bases of kernels,
images and quotient complements are canonicalized by re-echelonizing, so none of
them depend on pivot choices. The pivot rule (leftmost eligible column, then
smallest bit-size entry, ties broken by row index) only affects speed, not
results. Elimination
runs on rows rescaled to coprime integers, which keeps arithmetic in `int` and
avoids Fraction normalization churn; the bit-size rule is applied to those
rescaled entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Rational = Fraction

# A sparse vector: coordinate index -> nonzero rational value.
Vec = Dict[int, Fraction]

# Ambient dimensions past this limit abort with a sizing report instead of
# grinding; large exterior powers are the usual culprit.
AMBIENT_LIMIT = 500_000


class ResourceGuardError(RuntimeError):
    """An operation would allocate an ambient space beyond AMBIENT_LIMIT."""

    def __init__(self, label: str, size: int, limit: int = AMBIENT_LIMIT):
        super().__init__(
            f"{label} needs an ambient space of dimension {size}, "
            f"above the limit {limit}")
        self.sizing = {"label": label, "size": size, "limit": limit}


def guard_ambient(label: str, size: int, limit: int = AMBIENT_LIMIT) -> None:
    if size > limit:
        raise ResourceGuardError(label, size, limit)


def vec_clean(v: Mapping[int, Fraction]) -> Vec:
    """Drop explicit zeros and coerce values to Fraction."""
    return {i: Fraction(x) for i, x in v.items() if x != 0}


def vec_add(u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
    out: Vec = dict(u)
    for i, x in v.items():
        s = out.get(i, Fraction(0)) + x
        if s:
            out[i] = s
        elif i in out:
            del out[i]
    return out


def vec_sub(u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
    return vec_add(u, vec_scale(Fraction(-1), v))


def vec_scale(a: Fraction, v: Mapping[int, Fraction]) -> Vec:
    if a == 0:
        return {}
    return {i: a * x for i, x in v.items()}


class SparseMatrix:
    """Immutable sparse rational matrix.

    Entries are stored as a dict (row, col) -> Fraction with zeros dropped.
    Do not mutate `entries` after construction; all operations return new
    matrices.
    """

    __slots__ = ("rows", "cols", "entries", "_row_cache", "_col_cache")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[Tuple[int, int], Fraction] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        clean: Dict[Tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
                fv = Fraction(v)
                if fv:
                    clean[(r, c)] = fv
        self.entries = clean
        self._row_cache: Optional[List[Vec]] = None
        self._col_cache: Optional[List[Vec]] = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_dense(data: Sequence[Sequence]) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense input")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = Fraction(v)
        return SparseMatrix(rows, cols, entries)

    @staticmethod
    def from_rows(rows: Sequence[Mapping[int, Fraction]], cols: int) -> "SparseMatrix":
        entries = {}
        for r, row in enumerate(rows):
            for c, v in row.items():
                if v:
                    entries[(r, c)] = Fraction(v)
        return SparseMatrix(len(rows), cols, entries)

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(n, n, {(i, i): Fraction(1) for i in range(n)})

    @staticmethod
    def zeros(rows: int, cols: int) -> "SparseMatrix":
        return SparseMatrix(rows, cols, {})

    # -- access ------------------------------------------------------------

    def entry(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), Fraction(0))

    def row(self, r: int) -> Vec:
        if self._row_cache is None:
            cache: List[Vec] = [dict() for _ in range(self.rows)]
            for (i, j), v in self.entries.items():
                cache[i][j] = v
            self._row_cache = cache
        return dict(self._row_cache[r])

    def column(self, c: int) -> Vec:
        if self._col_cache is None:
            cache: List[Vec] = [dict() for _ in range(self.cols)]
            for (i, j), v in self.entries.items():
                cache[j][i] = v
            self._col_cache = cache
        return dict(self._col_cache[c])

    def row_dicts(self) -> List[Vec]:
        return [self.row(r) for r in range(self.rows)]

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        raise TypeError("SparseMatrix is not hashable")

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- arithmetic --------------------------------------------------------

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            s = entries.get(k, Fraction(0)) + v
            if s:
                entries[k] = s
            elif k in entries:
                del entries[k]
        return SparseMatrix(self.rows, self.cols, entries)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols,
                            {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, a: Fraction) -> "SparseMatrix":
        a = Fraction(a)
        if a == 0:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix(self.rows, self.cols,
                            {k: a * v for k, v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in matmul: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}")
        # group self's entries by column once, then scatter other's entries
        by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (k, c), bv in other.entries.items():
            hits = by_col.get(k)
            if not hits:
                continue
            for r, av in hits:
                key = (r, c)
                s = acc.get(key, Fraction(0)) + av * bv
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        return SparseMatrix(self.rows, other.cols, acc)

    def apply(self, v: Mapping[int, Fraction]) -> Vec:
        """Matrix times sparse column vector."""
        out: Vec = {}
        for j, x in v.items():
            if x == 0:
                continue
            for i, a in self.column(j).items():
                s = out.get(i, Fraction(0)) + a * x
                if s:
                    out[i] = s
                elif i in out:
                    del out[i]
        return out

    # -- block assembly ----------------------------------------------------

    @staticmethod
    def hstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        if not blocks:
            raise ValueError("hstack of nothing")
        rows = blocks[0].rows
        entries = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack row mismatch")
            for (r, c), v in b.entries.items():
                entries[(r, c + off)] = v
            off += b.cols
        return SparseMatrix(rows, off, entries)

    @staticmethod
    def vstack(blocks: Sequence["SparseMatrix"]) -> "SparseMatrix":
        if not blocks:
            raise ValueError("vstack of nothing")
        cols = blocks[0].cols
        entries = {}
        off = 0
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack col mismatch")
            for (r, c), v in b.entries.items():
                entries[(r + off, c)] = v
            off += b.rows
        return SparseMatrix(off, cols, entries)

    # -- serialization -----------------------------------------------------

    def to_entry_list(self) -> List[List[int]]:
        """Sorted [[row, col, numerator, denominator], ...] encoding."""
        out = []
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            out.append([r, c, v.numerator, v.denominator])
        return out

    @staticmethod
    def from_entry_list(rows: int, cols: int,
                        items: Iterable[Sequence[int]]) -> "SparseMatrix":
        entries = {}
        for r, c, num, den in items:
            entries[(int(r), int(c))] = Fraction(int(num), int(den))
        return SparseMatrix(rows, cols, entries)


# -- elimination core -------------------------------------------------------


def _scaled_int_rows(m: SparseMatrix) -> List[Dict[int, int]]:
    """Rescale each row to coprime integer entries (sign preserved)."""
    out: List[Dict[int, int]] = []
    for i in range(m.rows):
        rd = m.row(i)
        if not rd:
            out.append({})
            continue
        den = 1
        for v in rd.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = {c: v.numerator * (den // v.denominator) for c, v in rd.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def _eliminate(rows: List[Dict[int, int]], full: bool) -> List[Tuple[int, int]]:
    """Integer row elimination, in place: a left-to-right column sweep.

    Returns [(pivot_col, row_index), ...] in increasing pivot-column order.
    Within a column the pivot is the candidate with the smallest bit size,
    ties broken by row index. With full=True the pivot column is cleared from
    every other row (RREF up to row scaling); otherwise only from rows not yet
    chosen as pivots (enough for rank).
    """
    n = len(rows)
    active = set(range(n))
    pivots: List[Tuple[int, int]] = []
    sweep = sorted({c for r in rows for c in r})
    for col in sweep:
        best: Optional[Tuple[int, int]] = None  # (bits, row)
        for i in active:
            v = rows[i].get(col)
            if v:
                key = ((-v if v < 0 else v).bit_length(), i)
                if best is None or key < best:
                    best = key
        if best is None:
            continue
        pi = best[1]
        active.discard(pi)
        prow = rows[pi]
        pval = prow[col]
        pivots.append((col, pi))
        targets = [j for j in range(n) if j != pi] if full else list(active)
        for i in targets:
            row = rows[i]
            coef = row.get(col)
            if not coef:
                continue
            new: Dict[int, int] = {}
            for c in set(row) | set(prow):
                v = pval * row.get(c, 0) - coef * prow.get(c, 0)
                if v:
                    new[c] = v
            if new:
                g = 0
                for v in new.values():
                    g = math.gcd(g, v)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
            rows[i] = new
    return pivots


def rref(m: SparseMatrix) -> Tuple[SparseMatrix, Tuple[int, ...]]:
    """Canonical reduced row echelon form.

    Returns (R, pivot_cols): R has one row per pivot, ordered by pivot column,
    each pivot entry 1 and alone in its column. Zero rows are dropped, so R is
    the canonical basis of the row space. Uniqueness of RREF makes the result
    independent of the pivot strategy.
    """
    rows = _scaled_int_rows(m)
    pivots = sorted(_eliminate(rows, full=True))
    entries: Dict[Tuple[int, int], Fraction] = {}
    for out_i, (pc, ri) in enumerate(pivots):
        row = rows[ri]
        pv = row[pc]
        for c, v in row.items():
            entries[(out_i, c)] = Fraction(v, pv)
    return (SparseMatrix(len(pivots), m.cols, entries),
            tuple(pc for pc, _ in pivots))


def rank(m: SparseMatrix) -> int:
    rows = _scaled_int_rows(m)
    return len(_eliminate(rows, full=False))


def kernel_basis(m: SparseMatrix) -> SparseMatrix:
    """Canonical basis of the right kernel, one vector per row.

    Built from the RREF free columns, then re-echelonized so the answer is the
    canonical (RREF) basis of the kernel subspace.
    """
    R, piv = rref(m)
    pivset = set(piv)
    raw: List[Vec] = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v: Vec = {f: Fraction(1)}
        for i, p in enumerate(piv):
            coef = R.entry(i, f)
            if coef:
                v[p] = -coef
        raw.append(v)
    K, _ = rref(SparseMatrix.from_rows(raw, m.cols))
    return K


def image_basis(m: SparseMatrix) -> SparseMatrix:
    """Canonical basis of the column space, one vector per row (length m.rows)."""
    R, _ = rref(m.transpose())
    return R


def solve_matrix(a: SparseMatrix, b: SparseMatrix) -> Optional[SparseMatrix]:
    """Least-structure exact solve: X with a @ X == b, or None.

    Free variables are set to zero, so the solution is canonical. Consistency
    is read off the RREF of the augmented matrix (a pivot landing in the
    augmented block means no solution).
    """
    if a.rows != b.rows:
        raise ValueError("solve: row count mismatch")
    R, piv = rref(SparseMatrix.hstack([a, b]))
    entries: Dict[Tuple[int, int], Fraction] = {}
    for i, p in enumerate(piv):
        if p >= a.cols:
            return None
        for c, v in R.row(i).items():
            if c >= a.cols:
                entries[(p, c - a.cols)] = v
    return SparseMatrix(a.cols, b.cols, entries)


def solve_vector(a: SparseMatrix, b: Mapping[int, Fraction]) -> Optional[Vec]:
    B = SparseMatrix(a.rows, 1, {(i, 0): Fraction(v) for i, v in b.items() if v})
    X = solve_matrix(a, B)
    if X is None:
        return None
    return {r: v for (r, _c), v in X.entries.items()}


# -- subspaces and quotients -------------------------------------------------


def inverse(m: SparseMatrix) -> SparseMatrix:
    """Exact inverse of a square matrix (ValueError when singular)."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    inv = solve_matrix(m, SparseMatrix.identity(m.rows))
    if inv is None or rank(m) < m.rows:
        raise ValueError("matrix is singular")
    return inv


def random_unimodular(rng, n: int) -> SparseMatrix:
    """Seeded determinant-1 matrix: unit lower times unit upper triangular."""
    lo = {(i, i): Fraction(1) for i in range(n)}
    up = {(i, i): Fraction(1) for i in range(n)}
    for i in range(n):
        for j in range(i):
            if rng.random() < 0.5:
                lo[(i, j)] = Fraction(rng.randint(-2, 2))
            if rng.random() < 0.5:
                up[(j, i)] = Fraction(rng.randint(-2, 2))
    return SparseMatrix(n, n, lo) @ SparseMatrix(n, n, up)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its canonical RREF row basis."""

    ambient_dim: int
    basis: SparseMatrix            # dim x ambient_dim, canonical RREF
    pivots: Tuple[int, ...]

    @staticmethod
    def from_matrix_rows(m: SparseMatrix) -> "Subspace":
        R, piv = rref(m)
        return Subspace(m.cols, R, piv)

    @staticmethod
    def from_vectors(ambient_dim: int,
                     vectors: Iterable[Mapping[int, Fraction]]) -> "Subspace":
        return Subspace.from_matrix_rows(
            SparseMatrix.from_rows([vec_clean(v) for v in vectors], ambient_dim))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, SparseMatrix.zeros(0, ambient_dim), ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, SparseMatrix.identity(ambient_dim),
                        tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def reduce(self, v: Mapping[int, Fraction]) -> Vec:
        """Canonical residue of v modulo this subspace (pivot coords cleared)."""
        out = vec_clean(v)
        for i, p in enumerate(self.pivots):
            coef = out.get(p)
            if coef:
                out = vec_sub(out, vec_scale(coef, self.basis.row(i)))
        return out

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.dim))

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("subspace sum: ambient mismatch")
        return Subspace.from_matrix_rows(
            SparseMatrix.vstack([self.basis, other.basis]))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)


@dataclass(frozen=True)
class QuotientStructure:
    """Projection/section pair realizing Q^n / subspace concretely.

    projection (q x n) kills exactly the subspace; section (n x q) picks the
    canonical complement spanned by the subspace's free coordinates, so
    projection @ section is the q x q identity.
    """

    subspace: Subspace
    projection: SparseMatrix
    section: SparseMatrix

    @property
    def dim(self) -> int:
        return self.projection.rows


def quotient_structure(sub: Subspace) -> QuotientStructure:
    n = sub.ambient_dim
    pivset = set(sub.pivots)
    free = [c for c in range(n) if c not in pivset]
    q = len(free)
    proj: Dict[Tuple[int, int], Fraction] = {}
    sec: Dict[Tuple[int, int], Fraction] = {}
    for j, f in enumerate(free):
        proj[(j, f)] = Fraction(1)
        sec[(f, j)] = Fraction(1)
        for i, p in enumerate(sub.pivots):
            coef = sub.basis.entry(i, f)
            if coef:
                proj[(j, p)] = -coef
    return QuotientStructure(sub, SparseMatrix(q, n, proj), SparseMatrix(n, q, sec))
