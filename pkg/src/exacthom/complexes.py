"""Chain complexes over Q: homology, chain maps, tensor products, double
complexes, total complexes and the spectral sequence of the column filtration.

Grading convention: a complex is a finite list of dimensions for degrees
0..max_degree and differentials d_n: C_n -> C_{n-1}. A complex is *truncated*
when degrees above max_degree were cut off by a degree bound rather than being
genuinely zero; homology in the top degree of a truncated complex is only an
upper bound (the missing d_{max+1} could kill classes), and results carry that
flag rather than silently overclaiming.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactlin import (
    SparseMatrix,
    Subspace,
    Vec,
    image_basis,
    inverse,
    kernel_basis,
    random_unimodular,
    rank,
    solve_vector,
)


@dataclass(frozen=True)
class ChainComplex:
    """Bounded chain complex of finite-dimensional Q-vector spaces.

    dims[n] is the dimension in degree n; differentials[n] maps degree n to
    degree n-1 and must have shape dims[n-1] x dims[n]. Missing keys mean the
    zero map. `truncated=True` marks an artificial top cut.
    """

    dims: Tuple[int, ...]
    differentials: Dict[int, SparseMatrix] = field(default_factory=dict)
    truncated: bool = True

    def __post_init__(self):
        if not self.dims:
            raise ValueError("complex needs at least degree 0")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        for n, m in self.differentials.items():
            if not 1 <= n <= self.max_degree:
                raise ValueError(f"differential index {n} out of range")
            if (m.rows, m.cols) != (self.dims[n - 1], self.dims[n]):
                raise ValueError(
                    f"d_{n} has shape {m.rows}x{m.cols}, expected "
                    f"{self.dims[n - 1]}x{self.dims[n]}")

    @property
    def max_degree(self) -> int:
        return len(self.dims) - 1

    def d(self, n: int) -> SparseMatrix:
        """Differential out of degree n (zero matrix when absent)."""
        if 1 <= n <= self.max_degree and n in self.differentials:
            return self.differentials[n]
        src = self.dims[n] if 0 <= n <= self.max_degree else 0
        tgt = self.dims[n - 1] if 0 <= n - 1 <= self.max_degree else 0
        return SparseMatrix.zeros(tgt, src)


def verify_complex(c: ChainComplex) -> dict:
    """Check d_{n-1} @ d_n == 0 for all composable pairs.

    Returns {"ok": bool, "failures": [{"degree": n, "entry": [r, c, num, den]}]}
    where the entry is the first nonzero witness of d^2 in lexicographic order.
    """
    failures = []
    for n in range(2, c.max_degree + 1):
        prod = c.d(n - 1) @ c.d(n)
        if not prod.is_zero():
            r, col = min(prod.entries)
            v = prod.entries[(r, col)]
            failures.append({"degree": n,
                             "entry": [r, col, v.numerator, v.denominator]})
    return {"ok": not failures, "failures": failures}


@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers with per-degree reliability flags and cycle representatives.

    flags[n] is "exact" or "upper_bound"; the latter only occurs in the top
    degree of a truncated complex, where unseen boundaries from degree
    max_degree+1 could lower the number.
    """

    betti: Tuple[int, ...]
    flags: Tuple[str, ...]
    representatives: Tuple[Tuple[Vec, ...], ...]

    def as_report(self) -> dict:
        return {
            "betti": list(self.betti),
            "flags": list(self.flags),
        }


def homology(c: ChainComplex) -> HomologyResult:
    betti: List[int] = []
    flags: List[str] = []
    reps: List[Tuple[Vec, ...]] = []
    for n in range(c.max_degree + 1):
        if n == 0:
            cycles = SparseMatrix.identity(c.dims[0])
        else:
            cycles = kernel_basis(c.d(n))
        if n < c.max_degree:
            bnd = image_basis(c.d(n + 1))
        else:
            bnd = SparseMatrix.zeros(0, c.dims[n])
        bsub = Subspace.from_matrix_rows(bnd)
        reduced = [bsub.reduce(cycles.row(i)) for i in range(cycles.rows)]
        hsub = Subspace.from_vectors(c.dims[n], reduced)
        betti.append(hsub.dim)
        reps.append(tuple(hsub.basis.row(i) for i in range(hsub.dim)))
        top_unreliable = c.truncated and n == c.max_degree and c.max_degree > 0
        if c.truncated and c.max_degree == 0:
            top_unreliable = True
        flags.append("upper_bound" if top_unreliable else "exact")
    return HomologyResult(tuple(betti), tuple(flags), tuple(reps))


def betti_numbers(c: ChainComplex) -> List[int]:
    return list(homology(c).betti)


def truncate_complex(c: ChainComplex, new_max: int) -> ChainComplex:
    """Cut a complex down to degrees 0..new_max (marked truncated unless the
    cut keeps the genuine top of a complete complex)."""
    if new_max >= c.max_degree:
        return c
    dims = c.dims[: new_max + 1]
    diffs = {n: m for n, m in c.differentials.items() if n <= new_max}
    return ChainComplex(dims, diffs, truncated=True)


# -- chain maps ---------------------------------------------------------------


@dataclass(frozen=True)
class ChainMap:
    """Degreewise linear map between complexes; components[n] is tgt_n x src_n."""

    src: ChainComplex
    tgt: ChainComplex
    components: Dict[int, SparseMatrix]

    def component(self, n: int) -> SparseMatrix:
        if n in self.components:
            return self.components[n]
        src = self.src.dims[n] if 0 <= n <= self.src.max_degree else 0
        tgt = self.tgt.dims[n] if 0 <= n <= self.tgt.max_degree else 0
        return SparseMatrix.zeros(tgt, src)


def verify_chain_map(f: ChainMap) -> dict:
    """Check the squares d^tgt_n f_n == f_{n-1} d^src_n."""
    failures = []
    top = min(f.src.max_degree, f.tgt.max_degree)
    for n in range(1, top + 1):
        lhs = f.tgt.d(n) @ f.component(n)
        rhs = f.component(n - 1) @ f.src.d(n)
        if lhs != rhs:
            diff = lhs - rhs
            r, c = min(diff.entries)
            v = diff.entries[(r, c)]
            failures.append({"degree": n,
                             "entry": [r, c, v.numerator, v.denominator]})
    return {"ok": not failures, "failures": failures}


def induced_on_homology(f: ChainMap,
                        hsrc: Optional[HomologyResult] = None,
                        htgt: Optional[HomologyResult] = None) -> Dict[int, SparseMatrix]:
    """Matrices of H_n(f) in the canonical representative bases."""
    hsrc = hsrc or homology(f.src)
    htgt = htgt or homology(f.tgt)
    out: Dict[int, SparseMatrix] = {}
    top = min(f.src.max_degree, f.tgt.max_degree)
    for n in range(top + 1):
        sreps = hsrc.representatives[n]
        treps = htgt.representatives[n]
        tgt_dim = f.tgt.dims[n]
        bnd = image_basis(f.tgt.d(n + 1)) if n < f.tgt.max_degree \
            else SparseMatrix.zeros(0, tgt_dim)
        # columns: target homology reps, then boundaries; solve for coordinates
        cols = [SparseMatrix.from_rows(list(treps), tgt_dim).transpose(),
                bnd.transpose()]
        system = SparseMatrix.hstack(cols)
        entries: Dict[Tuple[int, int], Fraction] = {}
        for j, z in enumerate(sreps):
            img = f.component(n).apply(z)
            x = solve_vector(system, img)
            if x is None:
                raise ValueError(
                    f"image of a cycle is not a cycle mod boundaries in degree {n}; "
                    "not a chain map?")
            for i in range(len(treps)):
                v = x.get(i)
                if v:
                    entries[(i, j)] = v
        out[n] = SparseMatrix(len(treps), len(sreps), entries)
    return out


def quasi_iso_degrees(f: ChainMap) -> Dict[int, bool]:
    """Degrees where H_n(f) is an isomorphism (square and full rank)."""
    hsrc, htgt = homology(f.src), homology(f.tgt)
    induced = induced_on_homology(f, hsrc, htgt)
    out = {}
    for n, m in induced.items():
        out[n] = m.rows == m.cols and rank(m) == m.rows
    return out


# -- tensor products ----------------------------------------------------------


def tensor_complexes(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign: d(x0y) = dx0y + (-1)^p x0dy.

    Basis layout in degree n: blocks (p, q=n-p) with p ascending; inside a
    block the index is i * dim(B_q) + j.
    """
    amax, bmax = a.max_degree, b.max_degree
    nmax = amax + bmax

    def blocks(n: int) -> List[Tuple[int, int, int]]:
        out = []
        off = 0
        for p in range(max(0, n - bmax), min(amax, n) + 1):
            q = n - p
            out.append((p, q, off))
            off += a.dims[p] * b.dims[q]
        return out

    dims = []
    for n in range(nmax + 1):
        bl = blocks(n)
        total = 0
        if bl:
            p, q, off = bl[-1]
            total = off + a.dims[p] * b.dims[q]
        dims.append(total)

    diffs: Dict[int, SparseMatrix] = {}
    for n in range(1, nmax + 1):
        src_blocks = blocks(n)
        tgt_off = {(p, q): off for p, q, off in blocks(n - 1)}
        entries: Dict[Tuple[int, int], Fraction] = {}
        for p, q, off in src_blocks:
            bq = b.dims[q]
            # d_A tensor id into block (p-1, q)
            if p >= 1 and (p - 1, q) in tgt_off:
                toff = tgt_off[(p - 1, q)]
                for (r, c), v in a.d(p).entries.items():
                    for j in range(bq):
                        entries[(toff + r * bq + j, off + c * bq + j)] = v
            # (-1)^p id tensor d_B into block (p, q-1)
            if q >= 1 and (p, q - 1) in tgt_off:
                toff = tgt_off[(p, q - 1)]
                sgn = Fraction(-1) if p % 2 else Fraction(1)
                bq1 = b.dims[q - 1]
                for (r, c), v in b.d(q).entries.items():
                    for i in range(a.dims[p]):
                        entries[(toff + i * bq1 + r, off + i * bq + c)] = sgn * v
        diffs[n] = SparseMatrix(dims[n - 1], dims[n], entries)
    return ChainComplex(tuple(dims), diffs,
                        truncated=a.truncated or b.truncated)


def kunneth_check(a: ChainComplex, b: ChainComplex) -> dict:
    """Compare betti(a (x) b) with the convolution of betti(a) and betti(b).

    Over a field the two agree in every degree. Only meaningful for complete
    complexes; truncated inputs yield an "inconclusive" verdict.
    """
    if a.truncated or b.truncated:
        return {"check": "kunneth", "verdict": "inconclusive",
                "reason": "truncated input"}
    t = tensor_complexes(a, b)
    lhs = betti_numbers(t)
    ba, bb = betti_numbers(a), betti_numbers(b)
    rhs = [sum(ba[p] * bb[n - p]
               for p in range(max(0, n - b.max_degree), min(a.max_degree, n) + 1))
           for n in range(t.max_degree + 1)]
    return {"check": "kunneth", "lhs": lhs, "rhs": rhs,
            "verdict": "pass" if lhs == rhs else "fail"}


# -- double complexes ---------------------------------------------------------


@dataclass(frozen=True)
class DoubleComplex:
    """First-quadrant double complex with anticommuting squares.

    cells[(p, q)] is the dimension at bidegree (p, q); missing keys mean 0.
    vert[(p, q)]: (p, q) -> (p, q-1); horiz[(p, q)]: (p, q) -> (p-1, q).
    Convention: vert^2 = 0, horiz^2 = 0, vert horiz + horiz vert = 0, and the
    total differential is the plain sum vert + horiz (any signs needed to
    anticommute are already baked into the stored matrices).
    """

    max_p: int
    max_q: int
    cells: Dict[Tuple[int, int], int]
    vert: Dict[Tuple[int, int], SparseMatrix]
    horiz: Dict[Tuple[int, int], SparseMatrix]

    def dim(self, p: int, q: int) -> int:
        if 0 <= p <= self.max_p and 0 <= q <= self.max_q:
            return self.cells.get((p, q), 0)
        return 0

    def d_vert(self, p: int, q: int) -> SparseMatrix:
        m = self.vert.get((p, q))
        return m if m is not None else SparseMatrix.zeros(self.dim(p, q - 1),
                                                          self.dim(p, q))

    def d_horiz(self, p: int, q: int) -> SparseMatrix:
        m = self.horiz.get((p, q))
        return m if m is not None else SparseMatrix.zeros(self.dim(p - 1, q),
                                                          self.dim(p, q))


def verify_double_complex(d: DoubleComplex) -> dict:
    """Shape checks plus the three square identities, with witnesses."""
    failures = []
    for (p, q), m in d.vert.items():
        if (m.rows, m.cols) != (d.dim(p, q - 1), d.dim(p, q)):
            failures.append({"kind": "shape_vert", "cell": [p, q]})
    for (p, q), m in d.horiz.items():
        if (m.rows, m.cols) != (d.dim(p - 1, q), d.dim(p, q)):
            failures.append({"kind": "shape_horiz", "cell": [p, q]})
    if failures:
        return {"ok": False, "failures": failures}
    for p in range(d.max_p + 1):
        for q in range(d.max_q + 1):
            if d.dim(p, q) == 0:
                continue
            if q >= 2 and not (d.d_vert(p, q - 1) @ d.d_vert(p, q)).is_zero():
                failures.append({"kind": "vert_squared", "cell": [p, q]})
            if p >= 2 and not (d.d_horiz(p - 1, q) @ d.d_horiz(p, q)).is_zero():
                failures.append({"kind": "horiz_squared", "cell": [p, q]})
            if p >= 1 and q >= 1:
                anti = (d.d_vert(p - 1, q) @ d.d_horiz(p, q)
                        + d.d_horiz(p, q - 1) @ d.d_vert(p, q))
                if not anti.is_zero():
                    failures.append({"kind": "anticommute", "cell": [p, q]})
    return {"ok": not failures, "failures": failures}


@dataclass(frozen=True)
class TotalComplex:
    """Total complex of a double complex plus the cell layout per degree.

    layout[n] lists (p, q, offset) for the cells on the antidiagonal p+q=n in
    ascending p; the complex's degree-n space is their concatenation.
    """

    complex: ChainComplex
    layout: Dict[int, List[Tuple[int, int, int]]]

    def filtration_columns(self, n: int, p_max: int) -> List[int]:
        """Coordinate indices of the subspace F_{p_max} in degree n."""
        cols: List[int] = []
        for p, q, off in self.layout.get(n, []):
            if p <= p_max:
                cols.extend(range(off, off + (self.layout_dim(n, p, q))))
        return cols

    def layout_dim(self, n: int, p: int, q: int) -> int:
        lay = self.layout.get(n, [])
        for i, (pp, qq, off) in enumerate(lay):
            if (pp, qq) == (p, q):
                nxt = lay[i + 1][2] if i + 1 < len(lay) else self.complex.dims[n]
                return nxt - off
        return 0


def total_complex(d: DoubleComplex, truncated: bool = False) -> TotalComplex:
    nmax = d.max_p + d.max_q
    layout: Dict[int, List[Tuple[int, int, int]]] = {}
    dims: List[int] = []
    for n in range(nmax + 1):
        off = 0
        lay = []
        for p in range(max(0, n - d.max_q), min(d.max_p, n) + 1):
            q = n - p
            dim = d.dim(p, q)
            if dim:
                lay.append((p, q, off))
                off += dim
        layout[n] = lay
        dims.append(off)
    diffs: Dict[int, SparseMatrix] = {}
    for n in range(1, nmax + 1):
        tgt_off = {(p, q): off for p, q, off in layout[n - 1]}
        entries: Dict[Tuple[int, int], Fraction] = {}
        for p, q, off in layout[n]:
            if (p, q - 1) in tgt_off:
                toff = tgt_off[(p, q - 1)]
                for (r, c), v in d.d_vert(p, q).entries.items():
                    entries[(toff + r, off + c)] = v
            if (p - 1, q) in tgt_off:
                toff = tgt_off[(p - 1, q)]
                for (r, c), v in d.d_horiz(p, q).entries.items():
                    key = (toff + r, off + c)
                    s = entries.get(key, Fraction(0)) + v
                    if s:
                        entries[key] = s
                    elif key in entries:
                        del entries[key]
        diffs[n] = SparseMatrix(dims[n - 1], dims[n], entries)
    cx = ChainComplex(tuple(dims), diffs, truncated=truncated)
    return TotalComplex(cx, layout)


# -- spectral sequence of the column filtration -------------------------------


class SpectralSequence:
    """Pages of the column-filtration spectral sequence of a double complex.

    pages[r][(p, q)] is dim E^r_{p,q} (zero entries omitted);
    page_maps[r][(p, q)] is the matrix of d^r: E^r_{p,q} -> E^r_{p-r,q+r-1}
    in the canonical representative bases (omitted when either side is 0).
    """

    def __init__(self, dc: DoubleComplex, max_page: Optional[int] = None):
        self.dc = dc
        self.tot = total_complex(dc)
        self.stable_page = dc.max_p + dc.max_q + 1
        self.max_page = self.stable_page if max_page is None else max_page
        self._a_cache: Dict[Tuple[int, int, int], Subspace] = {}
        self._den_cache: Dict[Tuple[int, int, int], Subspace] = {}
        self._rep_cache: Dict[Tuple[int, int, int], List[Vec]] = {}
        self.pages: List[Dict[Tuple[int, int], int]] = []
        self.page_maps: List[Dict[Tuple[int, int], SparseMatrix]] = []
        for r in range(self.max_page + 1):
            self.pages.append(self._page_dims(r))
            self.page_maps.append(self._page_maps(r))

    # approximant A^r_{p,q} = {x in F_p Tot_{p+q} : dx in F_{p-r}}
    # (only p and the total degree n = p+q matter; q may be negative when a
    # denominator term reaches past the grid)
    def _approximant(self, r: int, p: int, q: int) -> Subspace:
        key = (r, p, q)
        hit = self._a_cache.get(key)
        if hit is not None:
            return hit
        n = p + q
        nmax = self.tot.complex.max_degree
        if n < 0 or n > nmax:
            sub = Subspace.zero(0)
            self._a_cache[key] = sub
            return sub
        if p < 0:
            sub = Subspace.zero(self.tot.complex.dims[n])
            self._a_cache[key] = sub
            return sub
        ambient = self.tot.complex.dims[n]
        cols = self.tot.filtration_columns(n, p)
        if n == 0:
            rows_banned: List[int] = []
            dmat = SparseMatrix.zeros(0, ambient)
        else:
            dmat = self.tot.complex.d(n)
            rows_banned = [i for pp, qq, off in self.tot.layout.get(n - 1, [])
                           if pp > p - r
                           for i in range(off, off + self.tot.layout_dim(n - 1, pp, qq))]
        # kernel of the banned-rows submatrix restricted to F_p columns
        sub_entries = {}
        row_pos = {ri: k for k, ri in enumerate(rows_banned)}
        col_pos = {ci: k for k, ci in enumerate(cols)}
        for (i, j), v in dmat.entries.items():
            if i in row_pos and j in col_pos:
                sub_entries[(row_pos[i], col_pos[j])] = v
        restricted = SparseMatrix(len(rows_banned), len(cols), sub_entries)
        kb = kernel_basis(restricted)
        vectors = []
        for i in range(kb.rows):
            vectors.append({cols[j]: v for j, v in kb.row(i).items()})
        sub = Subspace.from_vectors(ambient, vectors)
        self._a_cache[key] = sub
        return sub

    def _boundary_image(self, r: int, p: int, q: int) -> Subspace:
        """d(A^{r}_{p, q}) as a subspace one total degree down."""
        n = p + q
        nmax = self.tot.complex.max_degree
        tgt_dim = self.tot.complex.dims[n - 1] if 0 <= n - 1 <= nmax else 0
        if n < 1 or n > nmax:
            return Subspace.zero(tgt_dim)
        src = self._approximant(r, p, q)
        if src.dim == 0:
            return Subspace.zero(tgt_dim)
        dmat = self.tot.complex.d(n)
        vecs = [dmat.apply(src.basis.row(i)) for i in range(src.dim)]
        return Subspace.from_vectors(tgt_dim, vecs)

    def _denominator(self, r: int, p: int, q: int) -> Subspace:
        key = (r, p, q)
        hit = self._den_cache.get(key)
        if hit is not None:
            return hit
        if r == 0:
            # E^0 is the associated graded: denominator is F_{p-1}
            n = p + q
            ambient = (self.tot.complex.dims[n]
                       if 0 <= n <= self.tot.complex.max_degree else 0)
            cols = self.tot.filtration_columns(n, p - 1)
            den = Subspace.from_vectors(
                ambient, [{c: Fraction(1)} for c in cols])
        else:
            den = self._approximant(r - 1, p - 1, q + 1).sum(
                self._boundary_image(r - 1, p + r - 1, q - r + 2))
        self._den_cache[key] = den
        return den

    def _reps(self, r: int, p: int, q: int) -> List[Vec]:
        key = (r, p, q)
        hit = self._rep_cache.get(key)
        if hit is not None:
            return hit
        a = self._approximant(r, p, q)
        den = self._denominator(r, p, q)
        reduced = [den.reduce(a.basis.row(i)) for i in range(a.dim)]
        canon = Subspace.from_vectors(a.ambient_dim, reduced)
        reps = [canon.basis.row(i) for i in range(canon.dim)]
        self._rep_cache[key] = reps
        return reps

    def _page_dims(self, r: int) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for p in range(self.dc.max_p + 1):
            for q in range(self.dc.max_q + 1):
                if self.dc.dim(p, q) == 0:
                    continue
                dim = len(self._reps(r, p, q))
                if dim:
                    out[(p, q)] = dim
        return out

    def _page_maps(self, r: int) -> Dict[Tuple[int, int], SparseMatrix]:
        out: Dict[Tuple[int, int], SparseMatrix] = {}
        dims = self.pages[r]
        for (p, q), srcdim in dims.items():
            tp, tq = p - r, q + r - 1
            tgtdim = dims.get((tp, tq), 0)
            if tgtdim == 0:
                continue
            n = p + q
            dmat = self.tot.complex.d(n)
            tgt_a = self._approximant(r, tp, tq)
            tgt_den = self._denominator(r, tp, tq)
            tgt_reps = self._reps(r, tp, tq)
            system = SparseMatrix.hstack(
                [SparseMatrix.from_rows(tgt_reps, tgt_a.ambient_dim).transpose(),
                 tgt_den.basis.transpose()])
            entries: Dict[Tuple[int, int], Fraction] = {}
            for j, z in enumerate(self._reps(r, p, q)):
                img = dmat.apply(z)
                if not tgt_a.contains(img):
                    raise AssertionError(
                        f"page {r} differential leaves its target at {(p, q)}")
                x = solve_vector(system, img)
                if x is None:
                    raise AssertionError(
                        f"page {r} differential not expressible at {(p, q)}")
                for i in range(len(tgt_reps)):
                    v = x.get(i)
                    if v:
                        entries[(i, j)] = v
            m = SparseMatrix(tgtdim, srcdim, entries)
            if not m.is_zero():
                out[(p, q)] = m
        return out

    def infinity_dims(self) -> Dict[Tuple[int, int], int]:
        if self.max_page >= self.stable_page:
            return self.pages[self.stable_page]
        # recompute at the stable page if the caller asked for fewer pages
        return self._page_dims(self.stable_page)

    def convergence_report(self) -> dict:
        """Check sum of E^infinity dims along each antidiagonal against betti(Tot)."""
        einf = self.infinity_dims()
        tot_betti = betti_numbers(self.tot.complex)
        rows = []
        ok = True
        for n in range(self.tot.complex.max_degree + 1):
            s = sum(dim for (p, q), dim in einf.items() if p + q == n)
            match = (s == tot_betti[n])
            ok = ok and match
            rows.append({"degree": n, "e_infinity_sum": s,
                         "total_betti": tot_betti[n], "match": match})
        return {"check": "spectral_convergence", "stable_page": self.stable_page,
                "rows": rows, "verdict": "pass" if ok else "fail"}


def spectral_sequence(dc: DoubleComplex,
                      max_page: Optional[int] = None) -> SpectralSequence:
    return SpectralSequence(dc, max_page)


# -- serialization ------------------------------------------------------------


def complex_to_json(c: ChainComplex) -> dict:
    return {
        "dims": {str(n): c.dims[n] for n in range(c.max_degree + 1)},
        "differentials": {str(n): c.d(n).to_entry_list()
                          for n in range(1, c.max_degree + 1)},
    }


def complex_from_json(obj: Mapping) -> ChainComplex:
    dims_raw = obj["dims"]
    degrees = sorted(int(k) for k in dims_raw)
    if degrees != list(range(len(degrees))):
        raise ValueError("dims keys must be contiguous 0..max_degree")
    dims = tuple(int(dims_raw[str(n)]) for n in degrees)
    diffs: Dict[int, SparseMatrix] = {}
    for k, items in obj.get("differentials", {}).items():
        n = int(k)
        if not 1 <= n < len(dims):
            raise ValueError(f"differential key {n} out of range")
        diffs[n] = SparseMatrix.from_entry_list(dims[n - 1], dims[n], items)
    return ChainComplex(dims, diffs)


# -- seeded random families ---------------------------------------------------


def random_complex(seed: int, max_degree: int = 4,
                   max_new_per_degree: int = 2) -> Tuple[ChainComplex, List[int]]:
    """Seeded complete complex with known homology.

    Built as a direct sum of dots (surviving classes) and length-one intervals
    (cancelled pairs), then conjugated degreewise by random determinant-1
    matrices. Over a field every bounded complex is isomorphic to such a sum,
    so the family covers all isomorphism classes. Returns (complex, betti).
    """
    rng = random.Random(seed)
    dots = [rng.randint(0, max_new_per_degree) for _ in range(max_degree + 1)]
    intervals = [0] + [rng.randint(0, max_new_per_degree)
                       for _ in range(max_degree)]  # intervals[n]: top at n
    dims = []
    for n in range(max_degree + 1):
        tops = intervals[n] if n >= 1 else 0
        bottoms = intervals[n + 1] if n + 1 <= max_degree else 0
        dims.append(dots[n] + tops + bottoms)
    diffs: Dict[int, SparseMatrix] = {}
    for n in range(1, max_degree + 1):
        entries = {}
        tops = intervals[n]
        for j in range(tops):
            src = dots[n] + j
            tgt = dots[n - 1] + (intervals[n - 1] if n - 1 >= 1 else 0) + j
            entries[(tgt, src)] = Fraction(1)
        diffs[n] = SparseMatrix(dims[n - 1], dims[n], entries)
    g = [random_unimodular(rng, dims[n]) for n in range(max_degree + 1)]
    ginv = [inverse(m) for m in g]
    conj = {n: g[n - 1] @ diffs[n] @ ginv[n] for n in range(1, max_degree + 1)}
    return (ChainComplex(tuple(dims), conj, truncated=False), dots)


def random_double_complex(seed: int, max_p: int = 4, max_q: int = 4,
                          max_cell_dim: int = 3) -> DoubleComplex:
    """Seeded first-quadrant double complex with anticommuting squares.

    Direct sum of dots, anticommuting unit squares, and alternating staircase
    zigzags (sink/source alternation, so no two unit maps ever compose), then a
    cellwise determinant-1 change of basis. Staircases are what make higher
    page differentials appear, so the family exercises d^r for r >= 2.
    """
    rng = random.Random(seed)
    cells: Dict[Tuple[int, int], int] = {}
    vert_entries: Dict[Tuple[int, int], Dict[Tuple[int, int], Fraction]] = {}
    horiz_entries: Dict[Tuple[int, int], Dict[Tuple[int, int], Fraction]] = {}

    def new_slot(p: int, q: int) -> Optional[int]:
        d = cells.get((p, q), 0)
        if d >= max_cell_dim:
            return None
        cells[(p, q)] = d + 1
        return d

    def add_arrow(table, key, r, c, val):
        table.setdefault(key, {})[(r, c)] = Fraction(val)

    for _ in range(rng.randint(3, 8)):
        kind = rng.choice(["dot", "square", "zigzag", "zigzag"])
        if kind == "dot":
            p, q = rng.randint(0, max_p), rng.randint(0, max_q)
            new_slot(p, q)
        elif kind == "square":
            if max_p < 1 or max_q < 1:
                continue
            p, q = rng.randint(1, max_p), rng.randint(1, max_q)
            s00 = new_slot(p, q)
            s10 = new_slot(p - 1, q)
            s01 = new_slot(p, q - 1)
            s11 = new_slot(p - 1, q - 1)
            if None in (s00, s10, s01, s11):
                continue
            add_arrow(horiz_entries, (p, q), s10, s00, 1)
            add_arrow(horiz_entries, (p, q - 1), s11, s01, 1)
            add_arrow(vert_entries, (p, q), s01, s00, 1)
            add_arrow(vert_entries, (p - 1, q), s11, s10, -1)
        else:
            # staircase: X_i -> Y_i horizontally, X_{i+1} -> Y_i vertically,
            # X_i = (p-i, q+i), Y_i = (p-i-1, q+i); all Y cells are sinks
            length = rng.randint(1, 3)
            p = rng.randint(1, max_p) if max_p >= 1 else 0
            q = rng.randint(0, max_q)
            slots: Dict[Tuple[int, int], int] = {}
            plan = []
            ok = True
            for i in range(length):
                xi, yi = (p - i, q + i), (p - i - 1, q + i)
                if xi[0] < 0 or yi[0] < 0 or xi[1] > max_q:
                    break
                plan.append((xi, yi))
            if not plan:
                continue
            for xi, yi in plan:
                for cell in (xi, yi):
                    if cell not in slots:
                        s = new_slot(*cell)
                        if s is None:
                            ok = False
                            break
                        slots[cell] = s
                if not ok:
                    break
            if not ok:
                continue
            for i, (xi, yi) in enumerate(plan):
                add_arrow(horiz_entries, xi, slots[yi], slots[xi], 1)
                if i >= 1:
                    prev_y = plan[i - 1][1]
                    add_arrow(vert_entries, xi, slots[prev_y], slots[xi],
                              -1 if i % 2 else 1)

    def dim(p, q):
        return cells.get((p, q), 0)

    vert = {k: SparseMatrix(dim(k[0], k[1] - 1), dim(*k), v)
            for k, v in vert_entries.items()}
    horiz = {k: SparseMatrix(dim(k[0] - 1, k[1]), dim(*k), v)
             for k, v in horiz_entries.items()}
    # cellwise change of basis
    g = {k: random_unimodular(rng, d) for k, d in cells.items()}
    ginv = {k: inverse(m) for k, m in g.items()}

    def conj(table, tgt_of):
        out = {}
        for (p, q), m in table.items():
            tp, tq = tgt_of(p, q)
            gt = g.get((tp, tq), SparseMatrix.identity(m.rows))
            out[(p, q)] = gt @ m @ ginv[(p, q)]
        return out

    return DoubleComplex(
        max_p, max_q, cells,
        conj(vert, lambda p, q: (p, q - 1)),
        conj(horiz, lambda p, q: (p - 1, q)))
