"""Exact arithmetic over the Gaussian rationals Q(i).

``ExactScalar`` is a complex number with :class:`fractions.Fraction` real and
imaginary parts; ``Mat`` is an immutable square matrix of them.  ``RationalSpan``
does incremental sparse row reduction over Q on matrices viewed as real
vectors, which is all the membership, coordinate and closure computations
downstream need.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ExactScalar",
    "Mat",
    "RationalSpan",
    "as_scalar",
    "format_rational",
    "parse_rational",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    """Canonical text form: ``"p/q"`` in lowest terms with q > 0, or ``"p"``."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"malformed rational {text!r}")
    q = Fraction(text)
    return q


class ExactScalar:
    """Gaussian rational ``re + im*i``; immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "ExactScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # arithmetic
    def __add__(self, other):
        other = as_scalar(other)
        return ExactScalar._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        return ExactScalar._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return ExactScalar._make(-self.re, -self.im)

    def __mul__(self, other):
        other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return ExactScalar._make(a * c, _ZERO)
        return ExactScalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        if not other:
            raise ZeroDivisionError("division by exact zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def inverse(self) -> "ExactScalar":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of exact zero")
        return ExactScalar._make(self.re / n, -self.im / n)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        im = format_rational(abs(self.im))
        if not self.re:
            return ("-" if self.im < 0 else "") + f"{im} i"
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{im} i"

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse ``"p/q"``, ``"r/s i"`` or ``"p/q+r/s i"`` (either sign)."""
        s = text.strip().replace(" ", "")
        num = r"\d+(?:/\d+)?"
        m = re.fullmatch(rf"([+-]?{num})", s)
        if m:
            return cls(Fraction(m.group(1)))
        m = re.fullmatch(rf"([+-]?)({num})?i", s)
        if m:
            im = Fraction(m.group(2) or 1)
            return cls(0, -im if m.group(1) == "-" else im)
        m = re.fullmatch(rf"([+-]?{num})([+-])({num})?i", s)
        if m:
            im = Fraction(m.group(3) or 1)
            return cls(Fraction(m.group(1)), -im if m.group(2) == "-" else im)
        raise ValueError(f"malformed exact scalar {text!r}")


I = ExactScalar._make(_ZERO, _ONE)


def as_scalar(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, str):
        return ExactScalar.parse(x)
    if isinstance(x, (int, Rational)):
        return ExactScalar._make(Fraction(x), _ZERO)
    raise TypeError(f"cannot convert {type(x).__name__} to ExactScalar")


class Mat:
    """Immutable square matrix over Q(i).

    Real and imaginary parts are stored as separate tuples of Fractions so the
    common all-real case never touches complex multiplication.
    """

    __slots__ = ("dim", "_re", "_im", "_real", "_hash")

    def __init__(self, rows: Sequence[Sequence], *, _parts=None):
        if _parts is not None:
            re_rows, im_rows = _parts
        else:
            rows = [list(r) for r in rows]
            n = len(rows)
            if n == 0 or any(len(r) != n for r in rows):
                raise ValueError("Mat requires a non-empty square grid")
            re_rows, im_rows = [], []
            for r in rows:
                sr = [as_scalar(x) for x in r]
                re_rows.append(tuple(x.re for x in sr))
                im_rows.append(tuple(x.im for x in sr))
            re_rows, im_rows = tuple(re_rows), tuple(im_rows)
        self.dim = len(re_rows)
        self._re = re_rows
        self._im = im_rows
        self._real = not any(any(r) for r in im_rows)
        self._hash = None

    # construction helpers
    @classmethod
    def _from_parts(cls, re_rows, im_rows) -> "Mat":
        return cls((), _parts=(tuple(map(tuple, re_rows)), tuple(map(tuple, im_rows))))

    @classmethod
    def zeros(cls, n: int) -> "Mat":
        z = tuple(tuple(_ZERO for _ in range(n)) for _ in range(n))
        return cls((), _parts=(z, z))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        re_rows = tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
        z = tuple(tuple(_ZERO for _ in range(n)) for _ in range(n))
        return cls((), _parts=(re_rows, z))

    @classmethod
    def diag(cls, values: Sequence) -> "Mat":
        n = len(values)
        vals = [as_scalar(v) for v in values]
        re_rows = [[_ZERO] * n for _ in range(n)]
        im_rows = [[_ZERO] * n for _ in range(n)]
        for i, v in enumerate(vals):
            re_rows[i][i] = v.re
            im_rows[i][i] = v.im
        return cls._from_parts(re_rows, im_rows)

    @classmethod
    def unit(cls, n: int, i: int, j: int, value=1) -> "Mat":
        v = as_scalar(value)
        re_rows = [[_ZERO] * n for _ in range(n)]
        im_rows = [[_ZERO] * n for _ in range(n)]
        re_rows[i][j] = v.re
        im_rows[i][j] = v.im
        return cls._from_parts(re_rows, im_rows)

    @classmethod
    def block_diag(cls, blocks: Sequence["Mat"]) -> "Mat":
        n = sum(b.dim for b in blocks)
        re_rows = [[_ZERO] * n for _ in range(n)]
        im_rows = [[_ZERO] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.dim):
                re_rows[off + i][off:off + b.dim] = b._re[i]
                im_rows[off + i][off:off + b.dim] = b._im[i]
            off += b.dim
        return cls._from_parts(re_rows, im_rows)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["Mat | None"]], sizes: Sequence[int]) -> "Mat":
        """Assemble from a square grid of blocks; ``None`` means a zero block."""
        n = sum(sizes)
        offs = [sum(sizes[:k]) for k in range(len(sizes))]
        re_rows = [[_ZERO] * n for _ in range(n)]
        im_rows = [[_ZERO] * n for _ in range(n)]
        for bi, row in enumerate(grid):
            for bj, blk in enumerate(row):
                if blk is None:
                    continue
                if blk.dim != sizes[bi] or sizes[bi] != sizes[bj]:
                    # non-square blocks are passed as lists of lists instead
                    raise ValueError("block size mismatch")
                for i in range(blk.dim):
                    re_rows[offs[bi] + i][offs[bj]:offs[bj] + blk.dim] = blk._re[i]
                    im_rows[offs[bi] + i][offs[bj]:offs[bj] + blk.dim] = blk._im[i]
        return cls._from_parts(re_rows, im_rows)

    # access
    def __getitem__(self, ij) -> ExactScalar:
        i, j = ij
        return ExactScalar._make(self._re[i][j], self._im[i][j])

    def rows(self) -> list[list[ExactScalar]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def is_real(self) -> bool:
        return self._real

    def real_part(self) -> "Mat":
        z = tuple(tuple(_ZERO for _ in range(self.dim)) for _ in range(self.dim))
        return Mat((), _parts=(self._re, z))

    def imag_part(self) -> "Mat":
        z = tuple(tuple(_ZERO for _ in range(self.dim)) for _ in range(self.dim))
        return Mat((), _parts=(self._im, z))

    def nonzeros(self) -> Iterator[tuple[int, int, Fraction, Fraction]]:
        for i in range(self.dim):
            ri, ii = self._re[i], self._im[i]
            for j in range(self.dim):
                if ri[j] or ii[j]:
                    yield i, j, ri[j], ii[j]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._re) and self._real

    def _check(self, other: "Mat"):
        if not isinstance(other, Mat):
            raise TypeError("expected Mat")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    # arithmetic
    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        re_rows = [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._re, other._re)]
        im_rows = [tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._im, other._im)]
        return Mat((), _parts=(tuple(re_rows), tuple(im_rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        re_rows = [tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._re, other._re)]
        im_rows = [tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._im, other._im)]
        return Mat((), _parts=(tuple(re_rows), tuple(im_rows)))

    def __neg__(self) -> "Mat":
        return Mat((), _parts=(tuple(tuple(-a for a in r) for r in self._re),
                               tuple(tuple(-a for a in r) for r in self._im)))

    def scale(self, c) -> "Mat":
        c = as_scalar(c)
        if not c.im:
            k = c.re
            return Mat((), _parts=(tuple(tuple(a * k for a in r) for r in self._re),
                                   tuple(tuple(a * k for a in r) for r in self._im)))
        cr, ci = c.re, c.im
        re_rows = tuple(tuple(a * cr - b * ci for a, b in zip(r, s)) for r, s in zip(self._re, self._im))
        im_rows = tuple(tuple(a * ci + b * cr for a, b in zip(r, s)) for r, s in zip(self._re, self._im))
        return Mat((), _parts=(re_rows, im_rows))

    def __mul__(self, c) -> "Mat":
        if isinstance(c, Mat):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Mat":
        return self.scale(as_scalar(1) / as_scalar(c))

    @staticmethod
    def _sparse_rows(rows):
        return [[(j, v) for j, v in enumerate(r) if v] for r in rows]

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        n = self.dim
        ar = self._sparse_rows(self._re)
        br = other._re
        if self._real and other._real:
            out = []
            for i in range(n):
                acc = [_ZERO] * n
                for k, a in ar[i]:
                    for j, b in enumerate(br[k]):
                        if b:
                            acc[j] += a * b
                out.append(tuple(acc))
            z = tuple(tuple(_ZERO for _ in range(n)) for _ in range(n))
            return Mat((), _parts=(tuple(out), z))
        ai = self._sparse_rows(self._im)
        bi = other._im
        out_r, out_i = [], []
        for i in range(n):
            accr = [_ZERO] * n
            acci = [_ZERO] * n
            for k, a in ar[i]:
                rr, ri = br[k], bi[k]
                for j in range(n):
                    if rr[j]:
                        accr[j] += a * rr[j]
                    if ri[j]:
                        acci[j] += a * ri[j]
            for k, a in ai[i]:
                rr, ri = br[k], bi[k]
                for j in range(n):
                    if ri[j]:
                        accr[j] -= a * ri[j]
                    if rr[j]:
                        acci[j] += a * rr[j]
            out_r.append(tuple(accr))
            out_i.append(tuple(acci))
        return Mat((), _parts=(tuple(out_r), tuple(out_i)))

    @property
    def T(self) -> "Mat":
        return Mat((), _parts=(tuple(zip(*self._re)), tuple(zip(*self._im))))

    def conj(self) -> "Mat":
        return Mat((), _parts=(self._re, tuple(tuple(-a for a in r) for r in self._im)))

    @property
    def H(self) -> "Mat":
        """Conjugate transpose."""
        return Mat((), _parts=(tuple(zip(*self._re)),
                               tuple(tuple(-a for a in r) for r in zip(*self._im))))

    def trace(self) -> ExactScalar:
        n = self.dim
        return ExactScalar._make(sum((self._re[i][i] for i in range(n)), _ZERO),
                                 sum((self._im[i][i] for i in range(n)), _ZERO))

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.dim == other.dim and self._re == other._re and self._im == other._im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._re, self._im))
        return self._hash

    def __repr__(self):
        return "Mat(" + repr(self.to_json()) + ")"

    # linear algebra
    def _gauss(self, rhs: "Mat | None"):
        n = self.dim
        a = [[self[i, j] for j in range(n)] for i in range(n)]
        b = None if rhs is None else [[rhs[i, j] for j in range(n)] for i in range(n)]
        det = as_scalar(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return as_scalar(0), None
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                if b is not None:
                    b[col], b[piv] = b[piv], b[col]
                det = -det
            p = a[col][col]
            det = det * p
            pinv = p.inverse()
            a[col] = [x * pinv for x in a[col]]
            if b is not None:
                b[col] = [x * pinv for x in b[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    if b is not None:
                        b[r] = [x - f * y for x, y in zip(b[r], b[col])]
        return det, b

    def det(self) -> ExactScalar:
        return self._gauss(None)[0]

    def inverse(self) -> "Mat":
        det, b = self._gauss(Mat.identity(self.dim))
        if b is None:
            raise ValueError("matrix is singular")
        return Mat(b)

    def rank(self) -> int:
        """Rank over Q(i)."""
        # complex rank = real rank of the realification divided by two
        n = self.dim
        rows = []
        for i in range(n):
            rows.append(list(self._re[i]) + [-x for x in self._im[i]])
            rows.append(list(self._im[i]) + list(self._re[i]))
        return _dense_rank(rows) // 2

    # serialization
    def to_json(self) -> list[list[str]]:
        return [[str(self[i, j]) for j in range(self.dim)] for i in range(self.dim)]

    @classmethod
    def from_json(cls, data) -> "Mat":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix JSON must be a list of row lists")
        return cls([[ExactScalar.parse(x) if isinstance(x, str) else x for x in r] for r in data])

    def to_numpy(self):
        import numpy as np

        return np.array([[complex(self[i, j]) for j in range(self.dim)] for i in range(self.dim)])

    # vector view over Q: keys (i, j, 0 | 1)
    def vec(self) -> dict:
        out = {}
        for i, j, r, m in self.nonzeros():
            if r:
                out[(i, j, 0)] = r
            if m:
                out[(i, j, 1)] = m
        return out

    @classmethod
    def from_vec(cls, n: int, v: dict) -> "Mat":
        re_rows = [[_ZERO] * n for _ in range(n)]
        im_rows = [[_ZERO] * n for _ in range(n)]
        for (i, j, part), x in v.items():
            (im_rows if part else re_rows)[i][j] = x
        return cls._from_parts(re_rows, im_rows)


def _dense_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncol = len(rows[0])
    rank = 0
    for col in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / p
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


class RationalSpan:
    """Real span over Q of a growing list of matrices.

    Rows are kept in reduced echelon form (each pivot key appears in exactly
    one row), so reducing a vector is a single pass over its pivot keys.  Every
    row remembers its expression in terms of the accepted generators, which
    gives exact coordinates and the linear relations among rejected vectors.
    """

    def __init__(self, dim: int, generators: Iterable[Mat] = ()):
        self.dim = dim
        self.basis: list[Mat] = []
        self._rows: dict = {}  # pivot key -> (row dict, combo dict)
        for g in generators:
            self.add(g)

    def __len__(self):
        return len(self.basis)

    def _reduce(self, v: dict):
        v = dict(v)
        combo: dict = {}
        for key in [k for k in v if k in self._rows]:
            c = v.get(key)
            if not c:
                continue
            row, rcombo = self._rows[key]
            for k2, x in row.items():
                y = v.get(k2, _ZERO) - c * x
                if y:
                    v[k2] = y
                else:
                    v.pop(k2, None)
            for g, x in rcombo.items():
                y = combo.get(g, _ZERO) + c * x
                if y:
                    combo[g] = y
                else:
                    combo.pop(g, None)
        return v, combo

    def add(self, m: Mat):
        """Insert ``m``; return ``None`` if independent, else the coordinates
        of ``m`` in the current basis (a linear relation)."""
        if m.dim != self.dim:
            raise ValueError("dimension mismatch")
        return self.add_vector(m.vec(), m)

    def add_vector(self, v: dict, m: "Mat | None" = None):
        """Like :meth:`add` for a raw sparse vector; ``m`` is what gets stored."""
        resid, combo = self._reduce(v)
        if not resid:
            return _coords(combo, len(self.basis))
        idx = len(self.basis)
        self.basis.append(m if m is not None else v)
        pivot = min(resid)
        p = resid[pivot]
        row = {k: x / p for k, x in resid.items()}
        # resid = m - sum(combo) so row = (gen_idx - combo) / p
        rcombo = {g: -x / p for g, x in combo.items()}
        rcombo[idx] = _ONE / p
        for key, (orow, ocombo) in self._rows.items():
            c = orow.get(pivot)
            if not c:
                continue
            for k2, x in row.items():
                y = orow.get(k2, _ZERO) - c * x
                if y:
                    orow[k2] = y
                else:
                    orow.pop(k2, None)
            for g, x in rcombo.items():
                y = ocombo.get(g, _ZERO) - c * x
                if y:
                    ocombo[g] = y
                else:
                    ocombo.pop(g, None)
        self._rows[pivot] = (row, rcombo)
        return None

    def contains(self, m: Mat) -> bool:
        if m.dim != self.dim:
            return False
        resid, _ = self._reduce(m.vec())
        return not resid

    def residual(self, m: Mat) -> Mat:
        """Component of ``m`` left after reduction against the span."""
        resid, _ = self._reduce(m.vec())
        return Mat.from_vec(self.dim, resid)

    def coordinates(self, m: Mat) -> list[Fraction]:
        """Exact coordinates of ``m`` in :attr:`basis`; raises if not in span."""
        resid, combo = self._reduce(m.vec())
        if resid:
            raise ValueError("matrix is not in the span")
        return _coords(combo, len(self.basis))

    def combine(self, coeffs: Sequence[Fraction]) -> Mat:
        return linear_combination(coeffs, self.basis, self.dim)


def _coords(combo: dict, n: int) -> list[Fraction]:
    out = [_ZERO] * n
    for g, x in combo.items():
        out[g] = x
    return out


def linear_combination(coeffs: Sequence, mats: Sequence[Mat], dim: int) -> Mat:
    acc: dict = {}
    for c, m in zip(coeffs, mats):
        c = _frac(c)
        if not c:
            continue
        for k, x in m.vec().items():
            y = acc.get(k, _ZERO) + c * x
            if y:
                acc[k] = y
            else:
                acc.pop(k, None)
    return Mat.from_vec(dim, acc)


def nullspace(vectors: Sequence[Mat], dim: int) -> list[list[Fraction]]:
    """Basis of the real-linear relations ``sum c_j vectors[j] = 0``."""
    span = RationalSpan(dim)
    accepted: list[int] = []
    rels = []
    for j, v in enumerate(vectors):
        rel = span.add(v)
        if rel is None:
            accepted.append(j)
        else:
            c = [_ZERO] * len(vectors)
            c[j] = _ONE
            for pos, x in zip(accepted, rel):
                c[pos] -= x
            rels.append(c)
    return rels
