"""
Exact integer and rational linear algebra.

IntMatrix and RatMatrix are sympy DomainMatrix instances over ZZ and QQ.
Every function here also accepts plain nested lists of ints, Rationals or
Fractions, which are converted on entry.
"""
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Rational, sympify
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp


def _to_domain_element(value, domain):
    value = sympify(value)
    if domain == QQ:
        return QQ(int(value.p), int(value.q))
    if value.q != 1:
        raise ValueError(f"{value} is not an integer")
    return domain(int(value.p))


def to_domain_matrix(rows, domain, ncols: Optional[int] = None) -> DomainMatrix:
    """
    Build a DomainMatrix from nested lists, or convert an existing one.

    Args:
        rows: Nested lists (or a DomainMatrix)
        domain: ZZ, QQ or GF(p)
        ncols: Column count, required when rows is empty

    Returns:
        DomainMatrix over domain
    """
    if isinstance(rows, DomainMatrix):
        if rows.domain == domain:
            return rows
        ncols = rows.shape[1]
        rows = rows.to_Matrix().tolist()

    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0

    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix rows")

    entries = [[_to_domain_element(e, domain) for e in r] for r in rows]
    return DomainMatrix(entries, (len(entries), ncols), domain)


def int_matrix(rows, ncols: Optional[int] = None) -> DomainMatrix:
    return to_domain_matrix(rows, ZZ, ncols)


def rat_matrix(rows, ncols: Optional[int] = None) -> DomainMatrix:
    return to_domain_matrix(rows, QQ, ncols)


def as_rows(m: DomainMatrix) -> List[List]:
    """Entries of m as sympy Integers / Rationals."""
    return m.to_Matrix().tolist()


def _as_rational_matrix(m) -> DomainMatrix:
    if isinstance(m, DomainMatrix):
        return m if m.domain == QQ else m.convert_to(QQ)
    return rat_matrix(m)


def smith_normal_form(m) -> Tuple[DomainMatrix, DomainMatrix, DomainMatrix]:
    """
    Smith normal form with transforms.

    Args:
        m: Integer matrix

    Returns:
        (U, D, V) with U*m*V == D, D diagonal with d1 | d2 | ..., U and V
        unimodular
    """
    m = m if isinstance(m, DomainMatrix) and m.domain == ZZ else int_matrix(m)
    rows, cols = m.shape

    if rows == 0 or cols == 0:
        return (
            DomainMatrix.eye(rows, ZZ).to_dense(),
            m,
            DomainMatrix.eye(cols, ZZ).to_dense(),
        )

    d, u, v = smith_normal_decomp(m.to_dense())
    return u, d, v


def rank_rational(m) -> int:
    """
    Exact rank over the rationals.

    Rows are cleared of denominators and reduced fraction-free over ZZ.

    Args:
        m: Integer or rational matrix

    Returns:
        rank
    """
    m = _as_rational_matrix(m)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0

    _, numerators = m.clear_denoms_rowwise(convert=True)
    _, _, pivots = numerators.rref_den()
    return len(pivots)


def rank_mod_p(m, p: int, shape: Optional[Tuple[int, int]] = None) -> int:
    """
    Rank over the prime field GF(p).

    Args:
        m: Integer matrix (entries are reduced mod p), or a sparse
            {row: {col: value}} mapping
        p: Prime
        shape: (rows, cols), required for the sparse form

    Returns:
        rank
    """
    gf = GF(p)
    if isinstance(m, dict):
        if shape is None:
            raise ValueError("a sparse matrix needs an explicit shape")
        sparse = {
            r: {c: gf(int(v)) for c, v in line.items() if int(v) % p}
            for r, line in m.items()
        }
        sparse = {r: line for r, line in sparse.items() if line}
        if not sparse or 0 in shape:
            return 0
        return DomainMatrix(sparse, shape, gf).rank()

    if isinstance(m, DomainMatrix):
        rows, cols = m.shape
    else:
        m = [list(r) for r in m]
        rows, cols = len(m), len(m[0]) if m else 0
    if rows == 0 or cols == 0:
        return 0
    return to_domain_matrix(m, gf).rank()


def kernel_basis(m, ncols: Optional[int] = None) -> List[Tuple[Rational, ...]]:
    """
    Basis of the right null space over the rationals.

    Args:
        m: Integer or rational matrix
        ncols: Column count when m is an empty list

    Returns:
        list of rational vectors; empty iff m has full column rank
    """
    if not isinstance(m, DomainMatrix):
        m = rat_matrix(m, ncols)
    m = _as_rational_matrix(m)
    rows, cols = m.shape

    if cols == 0:
        return []
    if rows == 0:
        return [tuple(Rational(int(i == j)) for j in range(cols)) for i in range(cols)]

    null = m.nullspace()
    return [tuple(Rational(v) for v in row) for row in as_rows(null)]


def primitive_vector(v: Sequence) -> Tuple[int, ...]:
    """
    Scale a rational vector to a primitive integer vector in the same direction.

    Args:
        v: Nonzero vector with integer or rational entries

    Returns:
        tuple of ints with gcd 1
    """
    v = [sympify(x) for x in v]
    den = 1
    for x in v:
        den = den * int(x.q) // gcd(den, int(x.q))
    ints = [int(x * den) for x in v]

    g = gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def integer_kernel_basis(m, ncols: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Rational kernel basis with each vector scaled to a primitive integer vector."""
    return [primitive_vector(v) for v in kernel_basis(m, ncols)]


def solve_rational(a, b: Sequence) -> Optional[Tuple[Rational, ...]]:
    """
    Solve the square system a x = b exactly.

    Args:
        a: Square rational matrix
        b: Right-hand side

    Returns:
        tuple of Rationals, or None if a is singular
    """
    a = _as_rational_matrix(a)
    n = a.shape[0]
    if n == 0:
        return ()
    if a.det() == QQ.zero:
        return None

    rhs = rat_matrix([[x] for x in b], 1)
    x = a.lu_solve(rhs)
    return tuple(Rational(row[0]) for row in as_rows(x))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))
