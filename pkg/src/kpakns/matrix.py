"""Small square matrices with noncommutative polynomial entries."""

from __future__ import annotations

from typing import Callable, Sequence

from .ncpoly import FREE, NCPoly, to_latex, to_text


class Matrix:
    __slots__ = ("rows", "n")

    def __init__(self, rows: Sequence[Sequence[NCPoly]]):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def zero(cls, n: int, rules=FREE) -> "Matrix":
        z = NCPoly.zero(rules)
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int, rules=FREE) -> "Matrix":
        return cls.diag([1] * n, rules)

    @classmethod
    def diag(cls, entries, rules=FREE) -> "Matrix":
        n = len(entries)
        z = NCPoly.zero(rules)
        rows = [[z] * n for _ in range(n)]
        for i, e in enumerate(entries):
            rows[i][i] = e if isinstance(e, NCPoly) else NCPoly.const(e, rules)
        return cls(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, f: Callable[[NCPoly], NCPoly]) -> "Matrix":
        return Matrix([[f(e) for e in r] for r in self.rows])

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def scale(self, s) -> "Matrix":
        return self.map(lambda e: e.scale(s))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            n = self.n
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = None
                    for k in range(n):
                        a, b = self.rows[i][k], other.rows[k][j]
                        if a and b:
                            t = a * b
                            acc = t if acc is None else acc + t
                    row.append(acc if acc is not None else NCPoly.zero(self.rows[0][0].rules))
                out.append(row)
            return Matrix(out)
        if isinstance(other, NCPoly):
            return self.map(lambda e: e * other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, NCPoly):
            return self.map(lambda e: other * e)
        return self.scale(other)

    def __bool__(self):
        return any(e for r in self.rows for e in r)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def diagonal(self):
        return [self.rows[i][i] for i in range(self.n)]

    def entries(self):
        for i in range(self.n):
            for j in range(self.n):
                yield (i, j), self.rows[i][j]

    def __str__(self):
        return "[" + "; ".join(", ".join(to_text(e) for e in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self})"

    def to_latex(self) -> str:
        body = r" \\ ".join(" & ".join(to_latex(e) for e in r) for r in self.rows)
        return r"\begin{pmatrix} " + body + r" \end{pmatrix}"


def mcommutator(a: Matrix, b: Matrix) -> Matrix:
    return a * b - b * a


def parse_matrix(rows, rules=FREE) -> Matrix:
    """Build a matrix from nested lists of entry texts."""
    from .ncpoly import parse

    return Matrix([[parse(e, rules) for e in r] for r in rows])
