"""Lattice-level integer linear algebra.

Built on the sparse kernels from the selected backend: Hermite and Smith
normal forms, integer kernels, exact solving and lattice quotients.  All
vectors at this level are either plain lists (dense, for the public
matrix API) or dicts mapping coordinate -> nonzero int (sparse, used by
the homology pipeline).
"""

from dataclasses import dataclass

from ..errors import NoIntegerSolution, RelationOutsideKernel
from ._backend import echelon_insert, echelon_reduce, snf_factors, vec_axpy
from .matrix import IntMatrix


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors and free rank of a finitely generated abelian group."""

    torsion: tuple
    free_rank: int

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion entries must form a divisibility chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion entries must be at least 2")
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")

    @classmethod
    def from_factors(cls, factors, ambient_rank):
        """Invariants of Z^ambient_rank modulo a sublattice with the given
        Smith diagonal (one entry per unit of rank, 1s included)."""
        return cls(tuple(f for f in factors if f != 1), ambient_rank - len(factors))

    def describe(self):
        parts = ["Z_%d" % t for t in self.torsion]
        if self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        return " + ".join(parts) if parts else "0"

    def is_elementary_two_group(self):
        return self.free_rank == 0 and all(t == 2 for t in self.torsion)


def _sparse(vec):
    return {i: v for i, v in enumerate(vec) if v}


def _dense(row, n):
    out = [0] * n
    for i, v in row.items():
        out[i] = v
    return out


def hnf(m):
    """Row Hermite normal form.

    Returns (h, u) with u unimodular and u @ m = h; h is in row-echelon
    form with positive pivots and the entries above each pivot reduced
    into [0, pivot).
    """
    h = [row[:] for row in m.data]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]

    def axpy(i, isrc, q):
        hi, hs = h[i], h[isrc]
        for j in range(ncols):
            hi[j] -= q * hs[j]
        ui, us = u[i], u[isrc]
        for j in range(nrows):
            ui[j] -= q * us[j]

    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if h[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(h[i][c]))
            if i0 != r:
                h[r], h[i0] = h[i0], h[r]
                u[r], u[i0] = u[i0], u[r]
            if h[r][c] < 0:
                h[r] = [-v for v in h[r]]
                u[r] = [-v for v in u[r]]
            clean = True
            for i in range(r + 1, nrows):
                if h[i][c]:
                    axpy(i, r, h[i][c] // h[r][c])
                    if h[i][c]:
                        clean = False
            if clean:
                for i in range(r):
                    if h[i][c]:
                        axpy(i, r, h[i][c] // h[r][c])
                r += 1
                break
    return IntMatrix(h), IntMatrix(u)


@dataclass(frozen=True)
class SmithResult:
    """Diagonal of the Smith normal form plus cokernel invariants."""

    factors: tuple
    invariants: AbelianInvariants


def snf(m):
    """Smith diagonal of m and the invariants of Z^rows / (column span)."""
    factors = tuple(snf_factors([_sparse(row) for row in m.data]))
    return SmithResult(factors, AbelianInvariants.from_factors(factors, m.rows))


class ColumnSolver:
    """Integer-combination solver for a fixed family of sparse vectors.

    Vectors live in Z^data_dim and are registered with integer tags.
    Internally each vector is stored augmented with a unit bookkeeping
    coordinate at offset data_dim + tag, and everything is kept in one
    shared echelon basis.  This yields, in one structure, membership
    tests, particular solutions of Sum_c x_c r_c = b, and a basis of the
    kernel {x : Sum_c x_c r_c = 0}.
    """

    def __init__(self, data_dim):
        self.off = data_dim
        self.pivots = {}
        self._ntags = 0

    def add(self, vec, tag=None):
        if tag is None:
            tag = self._ntags
        self._ntags = max(self._ntags, tag + 1)
        row = {i: v for i, v in vec.items() if v}
        row[self.off + tag] = 1
        echelon_insert(self.pivots, row)

    def kernel_basis(self):
        """Basis of the integer kernel, as sparse dicts over the tags."""
        off = self.off
        rows = [
            (j, row) for j, row in self.pivots.items() if j >= off
        ]
        rows.sort()
        return [{c - off: v for c, v in row.items()} for _, row in rows]

    def solve(self, b):
        """A particular x with Sum_c x_c r_c = b, or NoIntegerSolution."""
        _, rem = echelon_reduce(self.pivots, dict(b))
        if any(c < self.off for c in rem):
            raise NoIntegerSolution("target is not an integer combination")
        return {c - self.off: -v for c, v in rem.items()}


class Echelon:
    """A lattice held as an integer row-echelon basis (sparse rows)."""

    __slots__ = ("pivots",)

    def __init__(self, rows=None):
        self.pivots = {}
        if rows:
            for row in rows:
                self.insert(dict(row))

    @property
    def rank(self):
        return len(self.pivots)

    def insert(self, row):
        """Add a vector to the lattice; consumes `row`.  True iff the
        rank increased."""
        return echelon_insert(self.pivots, row)

    def reduce(self, row):
        return echelon_reduce(self.pivots, row)

    def contains(self, row):
        _, rem = echelon_reduce(self.pivots, dict(row))
        return not rem

    def pivot_cols(self):
        return sorted(self.pivots)

    def rows(self):
        return [self.pivots[j] for j in sorted(self.pivots)]

    def clone(self):
        out = Echelon()
        out.pivots = {j: dict(row) for j, row in self.pivots.items()}
        return out

    def normalize(self):
        """Reduce entries above each pivot into [0, pivot); canonical form."""
        for j in sorted(self.pivots, reverse=True):
            prow = self.pivots[j]
            pval = prow[j]
            for i, row in self.pivots.items():
                if i < j and j in row:
                    q = row[j] // pval
                    if q:
                        vec_axpy(row, prow, -q)

    def same_lattice(self, other):
        if self.rank != other.rank or set(self.pivots) != set(other.pivots):
            return False
        return all(other.contains(row) for row in self.pivots.values())


def kernel_lattice(m):
    """Z-basis of {v : m @ v = 0}; saturated by construction."""
    solver = ColumnSolver(m.rows)
    for c in range(m.cols):
        solver.add(_sparse(m.column(c)), tag=c)
    return [_dense(row, m.cols) for row in solver.kernel_basis()]


def solve(m, b):
    """A particular integer solution of m @ x = b."""
    solver = ColumnSolver(m.rows)
    for c in range(m.cols):
        solver.add(_sparse(m.column(c)), tag=c)
    return _dense(solver.solve(_sparse(b)), m.cols)


def quotient_invariants(kernel_basis, relation_vectors):
    """Invariants of (lattice spanned by kernel_basis) / (relations).

    Every relation vector must lie in the span of kernel_basis; the
    relations are expressed in those coordinates and the quotient is
    read off a Smith normal form.
    """
    if not kernel_basis:
        for r in relation_vectors:
            if any(r):
                raise RelationOutsideKernel("nonzero relation in a zero lattice")
        return AbelianInvariants((), 0)
    dim = len(kernel_basis[0])
    solver = ColumnSolver(dim)
    for i, vec in enumerate(kernel_basis):
        solver.add(_sparse(vec), tag=i)
    coords = []
    for r in relation_vectors:
        try:
            coords.append(solver.solve(_sparse(r)))
        except NoIntegerSolution as exc:
            raise RelationOutsideKernel(str(exc)) from exc
    factors = snf_factors(coords)
    return AbelianInvariants.from_factors(factors, len(kernel_basis))
