"""Dense exact matrices, the subspace lattice, projectors, closure dimension.

Everything here is over one FieldSpec.  Row reduction is fraction-free
(Bareiss) in symbolic mode so polynomial growth stays controlled; in
specialized mode plain Gaussian elimination over rationals is used.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, FieldMismatch, StructuralError
from .scalars import FieldSpec, QPoly, Scalar, poly_gcd


def _coerce(field: FieldSpec, v) -> Scalar:
    if isinstance(v, Scalar):
        if v.field != field:
            raise FieldMismatch("entry from a different field")
        return v
    if isinstance(v, str):
        return field.parse(v)
    if isinstance(v, (int, Fraction)):
        return field.from_fraction(v)
    raise FieldMismatch(f"cannot coerce {type(v).__name__} to Scalar")


class MatrixE:
    """Immutable dense matrix of Scalars sharing one field."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FieldSpec, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise StructuralError("matrix shape must be positive")
        w = len(rows[0])
        for r in rows:
            if len(r) != w:
                raise StructuralError("ragged matrix rows")
            for e in r:
                if not isinstance(e, Scalar) or e.field != field:
                    raise FieldMismatch("matrix entries must share the field")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixE is immutable")

    @staticmethod
    def build(field: FieldSpec, rows) -> "MatrixE":
        """Build from entries that may be ints, Fractions, literals, Scalars."""
        return MatrixE(field, [[_coerce(field, v) for v in r] for r in rows])

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "MatrixE":
        z, o = field.zero(), field.one()
        return MatrixE(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(field: FieldSpec, r: int, c: int) -> "MatrixE":
        z = field.zero()
        return MatrixE(field, [[z] * c for _ in range(r)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixE)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def _shape_check(self, other, same=True):
        if not isinstance(other, MatrixE):
            raise FieldMismatch("expected a matrix")
        if self.field != other.field:
            raise FieldMismatch("matrices from different fields")
        if same and (self.nrows != other.nrows or self.ncols != other.ncols):
            raise StructuralError("shape mismatch")

    def __add__(self, other):
        self._shape_check(other)
        return MatrixE(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        self._shape_check(other)
        return MatrixE(
            self.field,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return MatrixE(self.field, [[-a for a in r] for r in self.rows])

    def scale(self, s: Scalar) -> "MatrixE":
        return MatrixE(self.field, [[s * a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if not isinstance(other, MatrixE):
            return NotImplemented
        self._shape_check(other, same=False)
        if self.ncols != other.nrows:
            raise StructuralError("inner dimensions differ")
        cols = list(zip(*other.rows))
        z = self.field.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = z
                for a, b in zip(r, c):
                    if not (a.is_zero() or b.is_zero()):
                        s = s + a * b
                row.append(s)
            out.append(row)
        return MatrixE(self.field, out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not self.is_square() or n < 0:
            raise DomainError("matrix powers need a square base and n >= 0")
        out = MatrixE.identity(self.field, self.nrows)
        for _ in range(n):
            out = out * self
        return out

    def transpose(self) -> "MatrixE":
        return MatrixE(self.field, list(zip(*self.rows)))

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise StructuralError("vector length mismatch")
        z = self.field.zero()
        out = []
        for r in self.rows:
            s = z
            for a, v in zip(r, vec):
                if not (a.is_zero() or v.is_zero()):
                    s = s + a * v
            out.append(s)
        return tuple(out)

    def trace(self) -> Scalar:
        if not self.is_square():
            raise DomainError("trace of a non-square matrix")
        s = self.field.zero()
        for i, r in enumerate(self.rows):
            s = s + r[i]
        return s

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"<MatrixE {self.nrows}x{self.ncols} [{body}]>"


# ---------------------------------------------------------------------------
# row reduction


def _poly_lcm(a: QPoly, b: QPoly) -> QPoly:
    return a.mul(b.divexact(poly_gcd(a, b)))


def _rref_field(rows, field):
    """Gauss-Jordan over Scalars.  rows: list of lists, consumed."""
    m, n = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if not rows[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(m):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def _rref_bareiss(rows, field):
    """Fraction-free forward pass, then scalar back-substitution."""
    m, n = len(rows), len(rows[0])
    one = QPoly.const(1)
    P = []
    for row in rows:
        den = one
        for e in row:
            if not e.b.is_one():
                den = _poly_lcm(den, e.b)
        P.append([e.a.mul(den.divexact(e.b)) for e in row])
    prev = one
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if not P[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        P[r], P[pr] = P[pr], P[r]
        piv = P[r][c]
        for i in range(r + 1, m):
            f = P[i][c]
            if f.is_zero():
                # still divide through to keep the Bareiss invariant
                for j in range(c + 1, n):
                    P[i][j] = piv.mul(P[i][j]).divexact(prev)
            else:
                for j in range(c + 1, n):
                    P[i][j] = piv.mul(P[i][j]).sub(f.mul(P[r][j])).divexact(prev)
                P[i][c] = QPoly.zero()
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    # back-substitute over the field
    out = []
    for i in range(r):
        out.append([Scalar._sym_raw(field, p, QPoly.const(1)) for p in P[i]])
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        inv = out[i][c].inverse()
        out[i] = [e * inv for e in out[i]]
        for k in range(i):
            f = out[k][c]
            if not f.is_zero():
                out[k] = [a - f * b for a, b in zip(out[k], out[i])]
    return tuple(tuple(row) for row in out), tuple(pivots)


def rref(vectors, field: FieldSpec):
    """Reduced row echelon form of a stack of vectors.

    Returns (rows, pivots) with zero rows dropped and pivot entries 1.
    """
    rows = [list(r) for r in vectors if any(not e.is_zero() for e in r)]
    if not rows:
        return (), ()
    if field.mode == "symbolic":
        return _rref_bareiss(rows, field)
    return _rref_field(rows, field)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of F^n held as a canonical reduced-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, basis, pivots):
        # trusted constructor; use from_vectors for arbitrary spans
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_vectors(field: FieldSpec, ambient_dim: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise StructuralError("vector length differs from ambient dimension")
        basis, pivots = rref(vectors, field)
        return Subspace(field, ambient_dim, basis, pivots)

    @staticmethod
    def zero(field: FieldSpec, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, (), ())

    @staticmethod
    def full(field: FieldSpec, ambient_dim: int) -> "Subspace":
        rows = MatrixE.identity(field, ambient_dim).rows
        return Subspace(field, ambient_dim, rows, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def _residue(self, vec):
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if not f.is_zero():
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        if len(vec) != self.ambient_dim:
            raise StructuralError("vector length differs from ambient dimension")
        return all(e.is_zero() for e in self._residue(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._match(other)
        return all(self.contains(v) for v in other.basis)

    def _match(self, other):
        if not isinstance(other, Subspace):
            raise DomainError("expected a Subspace")
        if self.field != other.field:
            raise FieldMismatch("subspaces over different fields")
        if self.ambient_dim != other.ambient_dim:
            raise DomainError("ambient dimension mismatch")

    def sum(self, other: "Subspace") -> "Subspace":
        self._match(other)
        return Subspace.from_vectors(
            self.field, self.ambient_dim, list(self.basis) + list(other.basis)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: reduce rows [u|u] and [w|0]; zero left halves carry
        # the intersection in their right halves
        self._match(other)
        n = self.ambient_dim
        z = self.field.zero()
        stacked = [tuple(row) + tuple(row) for row in self.basis]
        stacked += [tuple(row) + (z,) * n for row in other.basis]
        rr, _ = rref(stacked, self.field)
        out = [r[n:] for r in rr if all(e.is_zero() for e in r[:n])]
        return Subspace.from_vectors(self.field, n, out)

    def __repr__(self):
        return f"<Subspace dim {self.dim} in F^{self.ambient_dim}>"


# ---------------------------------------------------------------------------
# decompositions and projectors


class Decomposition:
    """Ordered list of subspaces whose sum is direct and fills the space."""

    __slots__ = ("field", "ambient_dim", "subspaces", "_cob", "_inv")

    def __init__(self, subspaces):
        subspaces = tuple(subspaces)
        if not subspaces:
            raise StructuralError("decomposition needs at least one component")
        field = subspaces[0].field
        n = subspaces[0].ambient_dim
        total = 0
        for s in subspaces:
            if s.field != field or s.ambient_dim != n:
                raise StructuralError("components disagree on the ambient space")
            if s.dim == 0:
                raise StructuralError("zero component in a decomposition")
            total += s.dim
        if total != n:
            raise StructuralError("component dimensions do not fill the space")
        # columns of the change of basis are the concatenated basis vectors
        cols = [v for s in subspaces for v in s.basis]
        cob = MatrixE(field, list(zip(*cols)))
        inv = _inverse_or_none(cob)
        if inv is None:
            raise StructuralError("component sum is not direct")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "subspaces", subspaces)
        object.__setattr__(self, "_cob", cob)
        object.__setattr__(self, "_inv", inv)

    def __setattr__(self, name, value):
        raise AttributeError("Decomposition is immutable")

    def __len__(self):
        return len(self.subspaces)

    def __getitem__(self, i):
        return self.subspaces[i]


def _inverse_or_none(M: MatrixE):
    if not M.is_square():
        raise DomainError("only square matrices invert")
    n = M.nrows
    ident = MatrixE.identity(M.field, n)
    aug = [list(r) + list(e) for r, e in zip(M.rows, ident.rows)]
    rr, pivots = rref(aug, M.field)
    if pivots != tuple(range(n)):
        return None
    return MatrixE(M.field, [r[n:] for r in rr])


def inverse(M: MatrixE) -> MatrixE:
    out = _inverse_or_none(M)
    if out is None:
        raise DomainError("matrix is singular")
    return out


def kernel(M: MatrixE) -> Subspace:
    """Null space of M acting on column vectors."""
    rr, pivots = rref(M.rows, M.field)
    n = M.ncols
    free = [c for c in range(n) if c not in pivots]
    z, o = M.field.zero(), M.field.one()
    vecs = []
    for f in free:
        v = [z] * n
        v[f] = o
        for row, p in zip(rr, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.from_vectors(M.field, n, vecs)


def image(M: MatrixE) -> Subspace:
    """Column space of M."""
    return Subspace.from_vectors(M.field, M.nrows, list(zip(*M.rows)))


def eigenspace(M: MatrixE, theta: Scalar) -> Subspace:
    if not M.is_square():
        raise DomainError("eigenspaces need a square matrix")
    return kernel(M - MatrixE.identity(M.field, M.nrows).scale(theta))


def projector(dec: Decomposition, i: int) -> MatrixE:
    """Projection onto component i along the other components."""
    if not 0 <= i < len(dec):
        raise DomainError("component index out of range")
    lo = 0
    for k in range(i):
        lo += dec[k].dim
    hi = lo + dec[i].dim
    C, Cinv = dec._cob, dec._inv
    n = dec.ambient_dim
    z = dec.field.zero()
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            s = z
            for k in range(lo, hi):
                a, b = C.rows[r][k], Cinv.rows[k][c]
                if not (a.is_zero() or b.is_zero()):
                    s = s + a * b
            row.append(s)
        out.append(row)
    return MatrixE(dec.field, out)


# ---------------------------------------------------------------------------
# generated algebra closure


def _flatten(M: MatrixE):
    return tuple(e for r in M.rows for e in r)


def _unflatten(field, vec, n):
    return MatrixE(field, [vec[i * n:(i + 1) * n] for i in range(n)])


def algebra_closure_dim(gens) -> int:
    """Dimension of the unital algebra of n x n matrices generated by gens.

    Iterates span <- span + span * gens until stable; the identity seeds
    the span so every word in the generators is reached.
    """
    gens = list(gens)
    if not gens:
        raise DomainError("need at least one generator")
    field = gens[0].field
    n = gens[0].nrows
    for g in gens:
        if not g.is_square() or g.nrows != n or g.field != field:
            raise StructuralError("generators must be square, equal size, one field")
    vecs = [_flatten(MatrixE.identity(field, n))] + [_flatten(g) for g in gens]
    span = Subspace.from_vectors(field, n * n, vecs)
    for _ in range(n * n):
        prods = []
        for row in span.basis:
            M = _unflatten(field, row, n)
            for g in gens:
                v = _flatten(M * g)
                if not span.contains(v):
                    prods.append(v)
        if not prods:
            return span.dim
        span = Subspace.from_vectors(field, n * n, list(span.basis) + prods)
    return span.dim


def minimal_polynomial(M: MatrixE):
    """Monic minimal polynomial coefficients, constant term first."""
    if not M.is_square():
        raise DomainError("minimal polynomial of a non-square matrix")
    field = M.field
    n = M.nrows
    echelon = []  # (vector, combo) pairs, forward-reduced
    power = MatrixE.identity(field, n)
    k = 0
    while True:
        v = list(_flatten(power))
        combo = [field.zero()] * (k + 1)
        combo[k] = field.one()
        for row, rcombo, p in echelon:
            f = v[p]
            if not f.is_zero():
                v = [a - f * b for a, b in zip(v, row)]
                for j in range(len(rcombo)):
                    combo[j] = combo[j] - f * rcombo[j]
        p = next((i for i, e in enumerate(v) if not e.is_zero()), None)
        if p is None:
            return combo
        inv = v[p].inverse()
        v = [e * inv for e in v]
        combo = [e * inv for e in combo]
        echelon.append((v, combo, p))
        power = power * M
        k += 1
