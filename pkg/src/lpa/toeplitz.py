"""Finitary infinite matrices, the global determinant, and the realization of
the Toeplitz-graph algebra inside row/column-finite matrices.

A finitary matrix touches finitely many entries of an N x N array; an
augmented matrix is the infinite identity plus a finitary perturbation.  The
global determinant of ``I + M`` is the common value of all corner
determinants once the corner contains the support of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra, corpus, fields, linalg


class ToeplitzError(ValueError):
    pass


@dataclass(frozen=True)
class FinitaryMatrix:
    field: fields.FieldDescriptor
    entries: tuple      # (((i, j), FieldElement), ...) row-major, indices >= 1

    @property
    def support_bound(self):
        return max((max(i, j) for (i, j), _ in self.entries), default=0)

    def entry(self, i, j):
        return dict(self.entries).get((i, j), fields.zero(self.field))

    def __add__(self, other):
        _check(self, other)
        acc = dict(self.entries)
        for pos, c in other.entries:
            s = acc.get(pos, fields.zero(self.field)) + c
            if s.is_zero():
                acc.pop(pos, None)
            else:
                acc[pos] = s
        return _fin(self.field, acc)

    def __sub__(self, other):
        return self + other.scale(-fields.one(self.field))

    def __mul__(self, other):
        _check(self, other)
        cols = {}
        for (i, j), c in other.entries:
            cols.setdefault(i, []).append((j, c))
        acc = {}
        for (i, k), a in self.entries:
            for j, b in cols.get(k, ()):
                s = acc.get((i, j), fields.zero(self.field)) + a * b
                if s.is_zero():
                    acc.pop((i, j), None)
                else:
                    acc[(i, j)] = s
        return _fin(self.field, acc)

    def scale(self, k):
        if k.is_zero():
            return _fin(self.field, {})
        return FinitaryMatrix(
            self.field, tuple((pos, c * k) for pos, c in self.entries)
        )

    def dense(self, n=None):
        n = n or self.support_bound
        m = linalg.zeros(self.field, n)
        rows = [list(r) for r in m.rows]
        for (i, j), c in self.entries:
            if i <= n and j <= n:
                rows[i - 1][j - 1] = c
        return linalg.DenseMatrix(self.field, tuple(tuple(r) for r in rows))

    def __str__(self):
        if not self.entries:
            return "0"
        return " ".join(
            f"({i},{j},{fields.element_str(c)})" for (i, j), c in self.entries
        )


def _check(a, b):
    if a.field != b.field:
        raise ToeplitzError("matrices over different fields")


def _fin(field, acc):
    return FinitaryMatrix(field, tuple(sorted(acc.items(), key=lambda t: t[0])))


def fin_zero(field):
    return _fin(field, {})


def fin_unit(field, i, j, value=None):
    if i < 1 or j < 1:
        raise ToeplitzError("finitary indices start at 1")
    value = fields.one(field) if value is None else value
    if value.is_zero():
        return fin_zero(field)
    return _fin(field, {(i, j): value})


@dataclass(frozen=True)
class AugmentedMatrix:
    """I_infinity + M for a finitary M; equality is entrywise on M."""
    perturbation: FinitaryMatrix

    @property
    def field(self):
        return self.perturbation.field

    def __mul__(self, other):
        m, n = self.perturbation, other.perturbation
        return AugmentedMatrix(m + n + m * n)

    def is_identity(self):
        return not self.perturbation.entries

    def entry(self, i, j):
        base = fields.one(self.field) if i == j else fields.zero(self.field)
        return base + self.perturbation.entry(i, j)

    def dense(self, n):
        return linalg.identity_matrix(self.field, n) + self.perturbation.dense(n)

    def __str__(self):
        if self.is_identity():
            return "I"
        return f"I + [{self.perturbation}]"


def aug_identity(field):
    return AugmentedMatrix(fin_zero(field))


def aug_from_units(field, units):
    """I + sum of (i, j, value) entries."""
    m = fin_zero(field)
    for i, j, value in units:
        m = m + fin_unit(field, i, j, value)
    return AugmentedMatrix(m)


def global_det(u):
    """det of I + M at any corner containing the support; computed at the
    support bound and checked at the next size up."""
    n = u.perturbation.support_bound
    if n == 0:
        return fields.one(u.field)
    d = linalg.det_gauss(u.dense(n))
    d_next = linalg.det_gauss(u.dense(n + 1))
    assert d == d_next, "global determinant is not stable under enlarging n"
    return d


def in_GL_inf(u):
    return not global_det(u).is_zero()


def in_SL_inf(u):
    return global_det(u) == fields.one(u.field)


# -- the Toeplitz-graph realization -----------------------------------------

def toeplitz_graph():
    return corpus.load("toeplitz")


def _xy(g, field):
    e = algebra.edge_element(g, field, "e")
    f = algebra.edge_element(g, field, "f")
    X = algebra.star(e) + algebra.star(f)
    Y = e + f
    return X, Y


def shift_generators(g, field):
    """X = e* + f* and Y = e + f, with XY = 1 and YX = u."""
    return _xy(g, field)


def toeplitz_matrix_units(i, j, field, g=None):
    """Y^{i-1} X^{j-1} - Y^i X^j, the (i,j) matrix unit inside the algebra."""
    if i < 1 or j < 1:
        raise ToeplitzError("matrix-unit indices start at 1")
    g = g or toeplitz_graph()
    X, Y = _xy(g, field)
    one = algebra.identity(g, field)

    def power(a, k):
        out = one
        for _ in range(k):
            out = out * a
        return out

    return power(Y, i - 1) * power(X, j - 1) - power(Y, i) * power(X, j)


def toeplitz_embed(x, N):
    """Truncate the row/column-finite realization at N.

    v -> E11, f -> E21, f* -> E12, u -> sum_{2<=i<=N} Eii,
    e -> sum_{2<=i<=N-1} E_{i+1,i}, e* the transpose.  An element whose
    monomials carry at most k edge letters perturbs at most k diagonals, so
    products of such elements are exact on the leading (N - k) corner.
    """
    if N < 2:
        raise ToeplitzError("embedding needs N >= 2")
    g, field = x.graph, x.field
    if tuple(sorted(g.vertices)) != ("u", "v") or sorted(g.edge_map) != ["e", "f"]:
        raise ToeplitzError("toeplitz_embed expects the Toeplitz graph")
    one = fields.one(field)
    images = {
        "u": _fin(field, {(i, i): one for i in range(2, N + 1)}),
        "v": _fin(field, {(1, 1): one}),
        "e": _fin(field, {(i + 1, i): one for i in range(2, N)}),
        "f": _fin(field, {(2, 1): one}),
    }
    ghosts = {
        name: _fin(field, {(j, i): c for (i, j), c in m.entries})
        for name, m in images.items()
    }
    out = fin_zero(field)
    for m, c in x.terms:
        acc = images[m.vertex]
        for e in reversed(m.lam):
            acc = images[e] * acc
        # nu* = (f1 ... fl)* multiplies the ghost images in reversed order
        for e in reversed(m.nu):
            acc = acc * ghosts[e]
        out = out + acc.scale(c)
    return out
