"""Partitions, skew shapes and semi-standard Young tableaux.

Cells are addressed (row, column), 1-based, with rows growing downwards.
The content of a cell (i, j) is j - i; content-parametrized exponents
elsewhere in the package are keyed on that number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers; () is the empty shape."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing, got {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive, got {parts}")

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def part(self, i: int) -> int:
        """Row length lambda_i (1-based), zero beyond the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def contains(self, i: int, j: int) -> bool:
        return 1 <= i <= len(self.parts) and 1 <= j <= self.parts[i - 1]

    def cells(self) -> list[tuple[int, int]]:
        """All cells in row-major order."""
        return [(i, j) for i, p in enumerate(self.parts, 1) for j in range(1, p + 1)]

    def conjugate(self) -> "Partition":
        """Transpose of the diagram: lambda'_i = #{j : lambda_j >= i}."""
        if not self.parts:
            return Partition(())
        return Partition(
            tuple(sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1))
        )

    @property
    def diagonal_length(self) -> int:
        """Number of cells on the main diagonal."""
        return sum(1 for i, p in enumerate(self.parts, 1) if p >= i)

    def frobenius(self) -> "FrobeniusForm":
        """Arm/leg coordinates p_i = lambda_i - i, q_i = lambda'_i - i along the diagonal."""
        if not self.parts:
            raise ValueError("the empty partition has no Frobenius form")
        con = self.conjugate()
        n = self.diagonal_length
        p = tuple(self.parts[i - 1] - i for i in range(1, n + 1))
        q = tuple(con.parts[i - 1] - i for i in range(1, n + 1))
        return FrobeniusForm(p, q)

    @classmethod
    def from_frobenius(cls, form: "FrobeniusForm") -> "Partition":
        """Inverse of :meth:`frobenius`."""
        n = form.n
        rows = [form.p[i - 1] + i for i in range(1, n + 1)]
        # rows below the diagonal block are read off the leg lengths:
        # column j has length q_j + j, so row i > n holds #{j : q_j + j >= i} cells
        i = n + 1
        while True:
            row = sum(1 for j in range(1, n + 1) if form.q[j - 1] + j >= i)
            if row == 0:
                break
            rows.append(row)
            i += 1
        return cls(tuple(rows))

    def corners(self) -> list[tuple[int, int]]:
        """Removable cells (i, lambda_i) with lambda_i > lambda_{i+1}."""
        out = []
        for i, p in enumerate(self.parts, 1):
            if p > self.part(i + 1):
                out.append((i, p))
        return out

    def as_skew(self) -> "SkewShape":
        return SkewShape(self, Partition(()))

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> "Partition":
        return cls(tuple(data))

    @staticmethod
    def hook(p: int, q: int) -> "Partition":
        """The hook shape (p+1, 1^q) with arm p and leg q."""
        if p < 0 or q < 0:
            raise ValueError("hook arm and leg must be >= 0")
        return Partition((p + 1,) + (1,) * q)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


@dataclass(frozen=True)
class FrobeniusForm:
    """Frobenius coordinates (p_1, ..., p_N | q_1, ..., q_N), both strictly decreasing."""

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(a) for a in self.p)
        q = tuple(int(a) for a in self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if len(p) != len(q) or not p:
            raise ValueError("p and q must be nonempty and of equal length")
        for seq in (p, q):
            if any(a < 0 for a in seq):
                raise ValueError(f"Frobenius coordinates must be >= 0, got {seq}")
            if any(a <= b for a, b in zip(seq, seq[1:])):
                raise ValueError(f"Frobenius coordinates must strictly decrease, got {seq}")

    @property
    def n(self) -> int:
        return len(self.p)

    def __repr__(self) -> str:
        return f"FrobeniusForm(p={self.p}, q={self.q})"


@dataclass(frozen=True)
class SkewShape:
    """Cell set outer minus inner; inner is padded with zero rows as needed."""

    outer: Partition
    inner: Partition = Partition(())

    def __post_init__(self):
        if len(self.inner) > len(self.outer):
            raise ValueError("inner partition has more rows than outer")
        for i in range(1, len(self.inner) + 1):
            if self.inner.part(i) > self.outer.part(i):
                raise ValueError(
                    f"inner row {i} ({self.inner.part(i)}) exceeds outer ({self.outer.part(i)})"
                )

    @property
    def n_rows(self) -> int:
        return len(self.outer)

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def row_span(self, i: int) -> tuple[int, int]:
        """Columns of row i are inner_i + 1 .. outer_i, returned as (inner_i, outer_i)."""
        return self.inner.part(i), self.outer.part(i)

    def contains(self, i: int, j: int) -> bool:
        a, b = self.row_span(i)
        return 1 <= i <= self.n_rows and a < j <= b

    def cells(self) -> list[tuple[int, int]]:
        out = []
        for i in range(1, self.n_rows + 1):
            a, b = self.row_span(i)
            out.extend((i, j) for j in range(a + 1, b + 1))
        return out

    def corners(self) -> list[tuple[int, int]]:
        """Cells with no neighbour to the right and none below."""
        return [
            (i, j)
            for (i, j) in self.cells()
            if not self.contains(i, j + 1) and not self.contains(i + 1, j)
        ]

    def is_straight(self) -> bool:
        return self.inner.size == 0

    def to_json(self) -> dict:
        return {"outer": self.outer.to_json(), "inner": self.inner.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "SkewShape":
        return cls(Partition.from_json(data["outer"]), Partition.from_json(data.get("inner", [])))

    def __repr__(self) -> str:
        if self.is_straight():
            return f"SkewShape{self.outer.parts}"
        return f"SkewShape({self.outer.parts}/{self.inner.parts})"


@dataclass
class Tableau:
    """A filling of a skew shape: rows weakly increase, columns strictly increase."""

    shape: SkewShape
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        cells = self.shape.cells()
        if set(self.entries) != set(cells):
            raise ValueError("entries must cover exactly the cells of the shape")
        for (i, j), v in self.entries.items():
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"entry at ({i},{j}) must be a positive integer")
        for i, j in cells:
            v = self.entries[(i, j)]
            if self.shape.contains(i, j + 1) and self.entries[(i, j + 1)] < v:
                raise ValueError(f"row {i} fails to weakly increase at column {j}")
            if self.shape.contains(i + 1, j) and self.entries[(i + 1, j)] <= v:
                raise ValueError(f"column {j} fails to strictly increase at row {i}")

    def __getitem__(self, cell: tuple[int, int]) -> int:
        return self.entries[cell]

    def row_word(self) -> tuple[int, ...]:
        """Entries read row by row, left to right (the enumeration order key)."""
        return tuple(self.entries[c] for c in self.shape.cells())

    def __repr__(self) -> str:
        rows = []
        for i in range(1, self.shape.n_rows + 1):
            a, b = self.shape.row_span(i)
            rows.append("." * a + "".join(str(self.entries[(i, j)]) for j in range(a + 1, b + 1)))
        return "Tableau[" + "|".join(rows) + "]"


def enumerate_ssyt(shape: SkewShape | Partition, max_entry: int) -> Iterator[Tableau]:
    """Yield every semi-standard filling with entries in 1..max_entry.

    Depth-first fill in row-major order, trying smaller values first, so the
    stream is lexicographic on the row-major entry word. Branches are pruned
    when the value floor (left and above neighbours) or the remaining column
    height makes completion impossible.
    """
    if isinstance(shape, Partition):
        shape = shape.as_skew()
    if max_entry < 1:
        raise ValueError("max_entry must be >= 1")
    cells = shape.cells()
    if not cells:
        yield Tableau(shape, {})
        return
    # cells strictly below (i, j) in its column still need distinct larger values
    below = {
        (i, j): sum(1 for r in range(i + 1, shape.n_rows + 1) if shape.contains(r, j))
        for (i, j) in cells
    }
    entries: dict[tuple[int, int], int] = {}

    def fill(k: int) -> Iterator[Tableau]:
        if k == len(cells):
            yield Tableau(shape, dict(entries))
            return
        i, j = cells[k]
        lo = 1
        if shape.contains(i, j - 1):
            lo = max(lo, entries[(i, j - 1)])
        if shape.contains(i - 1, j):
            lo = max(lo, entries[(i - 1, j)] + 1)
        hi = max_entry - below[(i, j)]
        for v in range(lo, hi + 1):
            entries[(i, j)] = v
            yield from fill(k + 1)
        entries.pop((i, j), None)

    yield from fill(0)
