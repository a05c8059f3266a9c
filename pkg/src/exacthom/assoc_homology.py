"""Homology of finite-dimensional associative algebras over Q.

Builds, from a structure-constant presentation: the Hochschild complex
(boundary b), the unit-augmented bar complex (boundary b', used for the
H-unitality test), the cyclic quotient complex (mod the signed cyclic rotation),
the two-column-type cyclic double complexes, and the degree-shifted unital
double complex driven by the degree-raising boundary B.

Sign conventions, fixed once and verified exactly by the operator identity
tests:

  b (a_0 x ... x a_n)  = sum_{i<n} (-1)^i (... a_i a_{i+1} ...)
                         + (-1)^n (a_n a_0 x a_1 x ... x a_{n-1})
  b' = b without the wrap-around term
  t (a_0 x ... x a_n)  = (-1)^n (a_n x a_0 x ... x a_{n-1})
  N  = 1 + t + ... + t^n          on (n+1)-fold tensors
  s (x) = 1 x x                   (needs a two-sided unit)
  B  = (1 - t) s N

These satisfy b^2 = 0, b'^2 = 0, t^(n+1) = 1, b (1-t) = (1-t) b',
N b = b' N, B^2 = 0 and b B + B b = 0.
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
    quotient_structure,
    random_unimodular,
    vec_add,
    vec_clean,
    vec_scale,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    DoubleComplex,
    TotalComplex,
    betti_numbers,
    homology,
    quasi_iso_degrees,
    total_complex,
    truncate_complex,
    verify_chain_map,
    verify_double_complex,
)


class AlgebraAxiomError(ValueError):
    """Structure constants that fail associativity or the unit axioms."""


class MissingUnitError(ValueError):
    """A construction that needs a two-sided unit got a non-unital algebra."""


@dataclass(frozen=True)
class StructureConstantAlgebra:
    """Finite-dimensional associative algebra given by structure constants.

    mult[(i, j)] holds the coordinates of e_i * e_j (missing key = zero
    product). Associativity and, when given, the two-sided unit axioms are
    checked exactly at construction time.
    """

    dim: int
    mult: Dict[Tuple[int, int], Vec]
    unit: Optional[Vec] = None
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim <= 0:
            raise AlgebraAxiomError("algebra dimension must be positive")
        if self.names and len(self.names) != self.dim:
            raise AlgebraAxiomError("names length != dim")
        for (i, j), v in self.mult.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise AlgebraAxiomError(f"mult index ({i},{j}) out of range")
            for k in v:
                if not 0 <= k < self.dim:
                    raise AlgebraAxiomError(f"mult target {k} out of range")
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.product(self.basis_product(i, j),
                                       {k: Fraction(1)})
                    rhs = self.product({i: Fraction(1)},
                                       self.basis_product(j, k))
                    if lhs != rhs:
                        raise AlgebraAxiomError(
                            f"associativity fails on basis triple ({i},{j},{k})")
        if self.unit is not None:
            u = vec_clean(self.unit)
            for i in range(self.dim):
                e = {i: Fraction(1)}
                if self.product(u, e) != e or self.product(e, u) != e:
                    raise AlgebraAxiomError(
                        f"stored unit is not two-sided on basis element {i}")

    def basis_product(self, i: int, j: int) -> Vec:
        return dict(self.mult.get((i, j), {}))

    def product(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                coef = a * b
                if not coef:
                    continue
                for k, c in self.mult.get((i, j), {}).items():
                    s = out.get(k, Fraction(0)) + coef * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return out

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def name_of(self, i: int) -> str:
        return self.names[i] if self.names else f"b{i}"


# -- serialization ------------------------------------------------------------


def algebra_to_json(a: StructureConstantAlgebra) -> dict:
    mult = []
    for (i, j) in sorted(a.mult):
        for k in sorted(a.mult[(i, j)]):
            v = a.mult[(i, j)][k]
            mult.append([i, j, k, v.numerator, v.denominator])
    unit = None
    if a.unit is not None:
        unit = []
        for i in range(a.dim):
            v = a.unit.get(i, Fraction(0))
            unit.append([v.numerator, v.denominator])
    return {"dim": a.dim,
            "basis": [a.name_of(i) for i in range(a.dim)],
            "mult": mult,
            "unit": unit}


def algebra_from_json(obj: Mapping) -> StructureConstantAlgebra:
    dim = int(obj["dim"])
    mult: Dict[Tuple[int, int], Vec] = {}
    for i, j, k, num, den in obj.get("mult", []):
        mult.setdefault((int(i), int(j)), {})[int(k)] = Fraction(int(num), int(den))
    unit = None
    if obj.get("unit") is not None:
        unit = {i: Fraction(int(num), int(den))
                for i, (num, den) in enumerate(obj["unit"])
                if num != 0}
    names = tuple(obj.get("basis", ())) or tuple(f"b{i}" for i in range(dim))
    return StructureConstantAlgebra(dim, mult, unit, names)


# -- built-in families --------------------------------------------------------


def field_q() -> StructureConstantAlgebra:
    return StructureConstantAlgebra(1, {(0, 0): {0: Fraction(1)}},
                                    {0: Fraction(1)}, ("1",))


def dual_numbers() -> StructureConstantAlgebra:
    """Q[eps]/(eps^2)."""
    mult = {(0, 0): {0: Fraction(1)},
            (0, 1): {1: Fraction(1)},
            (1, 0): {1: Fraction(1)}}
    return StructureConstantAlgebra(2, mult, {0: Fraction(1)}, ("1", "eps"))


def truncated_polynomials(m: int) -> StructureConstantAlgebra:
    """Q[x]/(x^m), basis 1, x, ..., x^(m-1)."""
    if m < 1:
        raise ValueError("need m >= 1")
    mult = {}
    for i in range(m):
        for j in range(m):
            if i + j < m:
                mult[(i, j)] = {i + j: Fraction(1)}
    names = tuple("1" if i == 0 else f"x^{i}" if i > 1 else "x" for i in range(m))
    return StructureConstantAlgebra(m, mult, {0: Fraction(1)}, names)


def matrix_algebra(m: int) -> StructureConstantAlgebra:
    """Full matrix algebra M_m(Q) on the elementary matrices e_ij."""
    if m < 1:
        raise ValueError("need m >= 1")
    dim = m * m
    mult = {}
    for i in range(m):
        for j in range(m):
            for k in range(m):
                for l in range(m):
                    if j == k:
                        mult[(i * m + j, k * m + l)] = {i * m + l: Fraction(1)}
    unit = {i * m + i: Fraction(1) for i in range(m)}
    names = tuple(f"e{i + 1}{j + 1}" for i in range(m) for j in range(m))
    return StructureConstantAlgebra(dim, mult, unit, names)


def cyclic_group_algebra(m: int) -> StructureConstantAlgebra:
    """Group algebra Q[Z/m]."""
    if m < 1:
        raise ValueError("need m >= 1")
    mult = {(i, j): {(i + j) % m: Fraction(1)} for i in range(m) for j in range(m)}
    names = tuple(f"g^{i}" if i > 1 else ("1" if i == 0 else "g") for i in range(m))
    return StructureConstantAlgebra(m, mult, {0: Fraction(1)}, names)


def zero_multiplication(d: int) -> StructureConstantAlgebra:
    """d-dimensional algebra with all products zero (not H-unital)."""
    if d < 1:
        raise ValueError("need d >= 1")
    return StructureConstantAlgebra(d, {}, None,
                                    tuple(f"z{i}" for i in range(d)))


def left_unital_two_dim() -> StructureConstantAlgebra:
    """Two-dimensional algebra with a left unit but no right unit.

    Basis (e, x) with ee=e, ex=x, xe=0, xx=0; e is a left unit only, so the
    stored unit is None, yet the algebra is H-unital (1 x -) is still a
    contracting homotopy for b'.
    """
    mult = {(0, 0): {0: Fraction(1)}, (0, 1): {1: Fraction(1)}}
    return StructureConstantAlgebra(2, mult, None, ("e", "x"))


def direct_sum(a: StructureConstantAlgebra,
               b: StructureConstantAlgebra) -> StructureConstantAlgebra:
    dim = a.dim + b.dim
    mult: Dict[Tuple[int, int], Vec] = {}
    for (i, j), v in a.mult.items():
        mult[(i, j)] = dict(v)
    for (i, j), v in b.mult.items():
        mult[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in v.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = dict(a.unit)
        unit.update({k + a.dim: c for k, c in b.unit.items()})
    names = tuple([f"l.{a.name_of(i)}" for i in range(a.dim)]
                  + [f"r.{b.name_of(i)}" for i in range(b.dim)])
    return StructureConstantAlgebra(dim, mult, unit, names)


_FAMILIES = {
    "rationals": lambda params: field_q(),
    "dual_numbers": lambda params: dual_numbers(),
    "truncated_polynomials": lambda params: truncated_polynomials(int(params["m"])),
    "matrix_algebra": lambda params: matrix_algebra(int(params["m"])),
    "cyclic_group_algebra": lambda params: cyclic_group_algebra(int(params["m"])),
    "zero_multiplication": lambda params: zero_multiplication(int(params["d"])),
    "left_unital": lambda params: left_unital_two_dim(),
    "product_of_fields": lambda params: direct_sum(field_q(), field_q()),
}


def make_algebra(spec: Mapping) -> StructureConstantAlgebra:
    """Build from {"family": ..., "params": {...}} or a full structure-constant
    JSON object (the presence of a "family" key decides)."""
    if "family" in spec:
        fam = spec["family"]
        if fam not in _FAMILIES:
            raise ValueError(
                f"unknown algebra family {fam!r}; known: {sorted(_FAMILIES)}")
        return _FAMILIES[fam](spec.get("params", {}))
    return algebra_from_json(spec)


def change_of_basis(a: StructureConstantAlgebra,
                    g: SparseMatrix) -> StructureConstantAlgebra:
    """Transport the structure constants through an invertible matrix g whose
    columns are the new basis vectors in the old coordinates."""
    ginv = inverse(g)
    mult: Dict[Tuple[int, int], Vec] = {}
    for i in range(a.dim):
        fi = g.column(i)
        for j in range(a.dim):
            prod = a.product(fi, g.column(j))
            coords = ginv.apply(prod)
            if coords:
                mult[(i, j)] = coords
    unit = ginv.apply(a.unit) if a.unit is not None else None
    return StructureConstantAlgebra(a.dim, mult, unit,
                                    tuple(f"v{i}" for i in range(a.dim)))


def random_algebra(seed: int, max_dim: int = 3) -> StructureConstantAlgebra:
    """Seeded random valid algebra of dimension <= max_dim: a built-in family
    conjugated by a random determinant-1 change of basis."""
    rng = random.Random(seed)
    pool = [field_q(), dual_numbers(), truncated_polynomials(2),
            cyclic_group_algebra(2), zero_multiplication(1),
            zero_multiplication(2), left_unital_two_dim(),
            direct_sum(field_q(), field_q())]
    if max_dim >= 3:
        pool += [truncated_polynomials(3), cyclic_group_algebra(3),
                 zero_multiplication(3), direct_sum(field_q(), dual_numbers())]
    base = rng.choice(pool)
    return change_of_basis(base, random_unimodular(rng, base.dim))


# -- tensor power indexing ----------------------------------------------------


def tensor_rank(d: int, t: Sequence[int]) -> int:
    idx = 0
    for x in t:
        idx = idx * d + x
    return idx


def tensor_unrank(d: int, m: int, idx: int) -> Tuple[int, ...]:
    out = []
    for _ in range(m):
        out.append(idx % d)
        idx //= d
    return tuple(reversed(out))


# -- boundary operators -------------------------------------------------------


def hochschild_boundary(a: StructureConstantAlgebra, n: int) -> SparseMatrix:
    """b: A^(x)(n+1) -> A^(x)n (chain degree n to n-1)."""
    return _boundary(a, n, wrap=True)


def bar_boundary(a: StructureConstantAlgebra, n: int) -> SparseMatrix:
    """b': same faces as b but without the wrap-around term."""
    return _boundary(a, n, wrap=False)


def _boundary(a: StructureConstantAlgebra, n: int, wrap: bool) -> SparseMatrix:
    d = a.dim
    rows, cols = d ** n, d ** (n + 1)
    acc: Dict[Tuple[int, int], Fraction] = {}

    def put(r: int, c: int, v: Fraction):
        s = acc.get((r, c), Fraction(0)) + v
        if s:
            acc[(r, c)] = s
        elif (r, c) in acc:
            del acc[(r, c)]

    for idx in range(cols):
        t = tensor_unrank(d, n + 1, idx)
        for i in range(n):
            sign = Fraction(-1) if i % 2 else Fraction(1)
            for k, coef in a.mult.get((t[i], t[i + 1]), {}).items():
                put(tensor_rank(d, t[:i] + (k,) + t[i + 2:]), idx, sign * coef)
        if wrap and n >= 1:
            sign = Fraction(-1) if n % 2 else Fraction(1)
            for k, coef in a.mult.get((t[n], t[0]), {}).items():
                put(tensor_rank(d, (k,) + t[1:n]), idx, sign * coef)
        if n == 0:
            pass  # both b and b' are zero out of degree 0
    return SparseMatrix(rows, cols, acc)


def cyclic_operator(dim: int, n: int) -> SparseMatrix:
    """Signed rotation t on (n+1)-fold tensors: last factor to the front,
    sign (-1)^n."""
    size = dim ** (n + 1)
    sign = Fraction(-1) if n % 2 else Fraction(1)
    entries = {}
    for idx in range(size):
        t = tensor_unrank(dim, n + 1, idx)
        entries[(tensor_rank(dim, (t[n],) + t[:n]), idx)] = sign
    return SparseMatrix(size, size, entries)


def norm_operator(dim: int, n: int) -> SparseMatrix:
    """N = 1 + t + ... + t^n on (n+1)-fold tensors."""
    size = dim ** (n + 1)
    sign_t = -1 if n % 2 else 1
    acc: Dict[Tuple[int, int], Fraction] = {}
    for idx in range(size):
        t = tensor_unrank(dim, n + 1, idx)
        for j in range(n + 1):
            rot = t[n + 1 - j:] + t[:n + 1 - j]
            sign = Fraction(sign_t ** j)
            key = (tensor_rank(dim, rot), idx)
            s = acc.get(key, Fraction(0)) + sign
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
    return SparseMatrix(size, size, acc)


def unit_insertion(a: StructureConstantAlgebra, n: int) -> SparseMatrix:
    """s: A^(x)(n+1) -> A^(x)(n+2), x -> 1 (x) x. Needs a two-sided unit."""
    if a.unit is None:
        raise MissingUnitError("unit insertion needs a unital algebra")
    d = a.dim
    rows, cols = d ** (n + 2), d ** (n + 1)
    entries = {}
    for idx in range(cols):
        t = tensor_unrank(d, n + 1, idx)
        for k, coef in a.unit.items():
            entries[(tensor_rank(d, (k,) + t), idx)] = coef
    return SparseMatrix(rows, cols, entries)


def connes_b_operator(a: StructureConstantAlgebra, n: int) -> SparseMatrix:
    """Degree-raising boundary B = (1 - t) s N out of chain degree n."""
    d = a.dim
    one_minus = (SparseMatrix.identity(d ** (n + 2))
                 - cyclic_operator(d, n + 1))
    return one_minus @ unit_insertion(a, n) @ norm_operator(d, n)


# -- complexes ----------------------------------------------------------------


def hochschild_complex(a: StructureConstantAlgebra,
                       max_degree: int) -> ChainComplex:
    dims = tuple(a.dim ** (n + 1) for n in range(max_degree + 1))
    diffs = {n: hochschild_boundary(a, n) for n in range(1, max_degree + 1)}
    return ChainComplex(dims, diffs, truncated=True)


def bar_complex(a: StructureConstantAlgebra, max_degree: int) -> ChainComplex:
    dims = tuple(a.dim ** (n + 1) for n in range(max_degree + 1))
    diffs = {n: bar_boundary(a, n) for n in range(1, max_degree + 1)}
    return ChainComplex(dims, diffs, truncated=True)


def connes_quotient_complex(
        a: StructureConstantAlgebra,
        max_degree: int) -> Tuple[ChainComplex, List]:
    """Quotient of the Hochschild complex by im(1 - t), with the induced
    boundary. Returns the complex and the per-degree quotient structures.

    Well-definedness (b maps im(1-t) into im(1-t), via b(1-t) = (1-t)b') is
    asserted exactly in every degree, not assumed.
    """
    quots = []
    dims = []
    for n in range(max_degree + 1):
        size = a.dim ** (n + 1)
        one_minus = SparseMatrix.identity(size) - cyclic_operator(a.dim, n)
        sub = Subspace.from_matrix_rows(image_basis(one_minus))
        q = quotient_structure(sub)
        quots.append((q, one_minus))
        dims.append(q.dim)
    diffs = {}
    for n in range(1, max_degree + 1):
        qn, one_minus_n = quots[n]
        qm, _ = quots[n - 1]
        b = hochschild_boundary(a, n)
        if not (qm.projection @ b @ one_minus_n).is_zero():
            raise AssertionError(
                f"cyclic rotation image is not b-stable in degree {n}")
        diffs[n] = qm.projection @ b @ qn.section
    return (ChainComplex(tuple(dims), diffs, truncated=True),
            [q for q, _ in quots])


def cyclic_bicomplex(a: StructureConstantAlgebra, bound: int) -> DoubleComplex:
    """Cyclic double complex: columns alternate (b, -b') vertically, rows
    alternate (1 - t, N) horizontally; all squares anticommute exactly."""
    d = a.dim
    cells = {(p, q): d ** (q + 1) for p in range(bound + 1)
             for q in range(bound + 1)}
    b = {q: hochschild_boundary(a, q) for q in range(1, bound + 1)}
    bprime_neg = {q: -bar_boundary(a, q) for q in range(1, bound + 1)}
    one_minus = {q: SparseMatrix.identity(d ** (q + 1)) - cyclic_operator(d, q)
                 for q in range(bound + 1)}
    norm = {q: norm_operator(d, q) for q in range(bound + 1)}
    vert = {}
    horiz = {}
    for p in range(bound + 1):
        for q in range(bound + 1):
            if q >= 1:
                vert[(p, q)] = b[q] if p % 2 == 0 else bprime_neg[q]
            if p >= 1:
                horiz[(p, q)] = one_minus[q] if p % 2 == 1 else norm[q]
    return DoubleComplex(bound, bound, cells, vert, horiz)


def bB_bicomplex(a: StructureConstantAlgebra, bound: int) -> DoubleComplex:
    """Unital mixed double complex: cell (p, q) = (q - p + 1)-fold tensors for
    q >= p, vertical b, horizontal B. Raises MissingUnitError otherwise."""
    if a.unit is None:
        raise MissingUnitError("the (b, B) double complex needs a unit")
    d = a.dim
    b = {m: hochschild_boundary(a, m) for m in range(1, bound + 1)}
    big_b = {m: connes_b_operator(a, m) for m in range(bound)}
    cells = {}
    vert = {}
    horiz = {}
    for p in range(bound + 1):
        for q in range(p, bound + 1):
            m = q - p  # chain degree held at this cell
            cells[(p, q)] = d ** (m + 1)
            if q > p:
                vert[(p, q)] = b[m]
            if p >= 1:
                horiz[(p, q)] = big_b[m]
    return DoubleComplex(bound, bound, cells, vert, horiz)


# -- derived reports ----------------------------------------------------------


def hochschild_report(a: StructureConstantAlgebra, max_degree: int) -> dict:
    h = homology(hochschild_complex(a, max_degree))
    return {"check": "hochschild_homology", "betti": list(h.betti),
            "flags": list(h.flags)}


def connes_report(a: StructureConstantAlgebra, max_degree: int) -> dict:
    cx, _ = connes_quotient_complex(a, max_degree)
    h = homology(cx)
    return {"check": "cyclic_quotient_homology", "dims": list(cx.dims),
            "betti": list(h.betti), "flags": list(h.flags)}


def h_unitality_report(a: StructureConstantAlgebra, max_degree: int) -> dict:
    """Bar-complex acyclicity in positive degrees, the homological unitality
    test. Degrees 1..max_degree-1 are decided exactly; the top degree of the
    truncation is only an upper bound and is excluded from the verdict."""
    h = homology(bar_complex(a, max_degree))
    reliable = list(range(1, max_degree))
    failures = [n for n in reliable if h.betti[n] != 0]
    return {
        "check": "h_unitality",
        "betti": list(h.betti),
        "flags": list(h.flags),
        "degrees_decided": reliable,
        "first_failure": failures[0] if failures else None,
        "verdict": "pass" if not failures else "fail",
    }


def _column_zero_projection(tot: TotalComplex, conn: ChainComplex,
                            quots, max_degree: int) -> ChainMap:
    """Chain map Tot(cyclic bicomplex) -> cyclic quotient complex: project to
    the column-0 cell, then to the quotient."""
    comps = {}
    for n in range(max_degree + 1):
        lay = tot.layout.get(n, [])
        entries = {}
        for p, q, off in lay:
            if p != 0:
                continue
            proj = quots[n].projection
            for (r, c), v in proj.entries.items():
                entries[(r, off + c)] = v
        comps[n] = SparseMatrix(conn.dims[n], tot.complex.dims[n], entries)
    src = truncate_complex(tot.complex, max_degree)
    return ChainMap(src, conn, comps)


def cyclic_comparison_report(a: StructureConstantAlgebra, bound: int = 4) -> dict:
    """Compare the three models of cyclic homology through degree bound-1:

    - total complex of the cyclic double complex,
    - the cyclic quotient complex,
    - (unital only) total complex of the (b, B) double complex,

    and verify that projecting the first onto column 0 is a chain map inducing
    isomorphisms on homology in all decided degrees.
    """
    reliable = list(range(bound))
    cc = cyclic_bicomplex(a, bound)
    vr = verify_double_complex(cc)
    if not vr["ok"]:
        raise AssertionError(f"cyclic double complex invalid: {vr}")
    tot = total_complex(cc, truncated=True)
    tot_sliced = truncate_complex(tot.complex, bound)
    conn, quots = connes_quotient_complex(a, bound)
    proj = _column_zero_projection(tot, conn, quots, bound)
    pv = verify_chain_map(proj)
    if not pv["ok"]:
        raise AssertionError(f"column-0 projection is not a chain map: {pv}")
    qiso = quasi_iso_degrees(proj)
    tot_betti = betti_numbers(tot_sliced)
    conn_betti = betti_numbers(conn)
    report = {
        "check": "cyclic_comparison",
        "degrees_decided": reliable,
        "total_cyclic_betti": tot_betti,
        "quotient_betti": conn_betti,
        "projection_quasi_iso": {str(n): bool(qiso.get(n, False))
                                 for n in reliable},
        "unital": a.is_unital,
    }
    agree = all(tot_betti[n] == conn_betti[n] for n in reliable)
    quasi = all(qiso.get(n, False) for n in reliable)
    if a.is_unital:
        bb = bB_bicomplex(a, bound)
        vb = verify_double_complex(bb)
        if not vb["ok"]:
            raise AssertionError(f"(b, B) double complex invalid: {vb}")
        bb_tot = truncate_complex(total_complex(bb, truncated=True).complex,
                                  bound)
        bb_betti = betti_numbers(bb_tot)
        report["bB_betti"] = bb_betti
        agree = agree and all(bb_betti[n] == conn_betti[n] for n in reliable)
    report["verdict"] = "pass" if (agree and quasi) else "fail"
    return report
