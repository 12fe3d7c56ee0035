"""Dense linear algebra over GF(2^w).

Matrices are stored row-major as read-only numpy uint8 arrays; all products
go through the field's q x q multiplication table, so every routine here is
exact integer arithmetic.  Row reduction uses leftmost-nonzero pivoting with
pivots normalized to 1, which gives a deterministic echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldContext
from .words import SymbolWord


class InconsistentWordError(ValueError):
    """Known symbols contradict the parity-check matrix on every completion."""


@dataclass(frozen=True)
class MatrixGF:
    ctx: FieldContext
    data: np.ndarray  # 2-D uint8, read-only

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-D")
        if arr.size and int(arr.max()) >= self.ctx.q:
            raise ValueError("matrix entry out of field range")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, rc):
        return int(self.data[rc])

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.ctx == other.ctx and self.data.shape == other.data.shape \
            and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.ctx, self.data.shape, self.data.tobytes()))

    def tolist(self):
        return [[int(v) for v in row] for row in self.data]

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.data))

    def row_slice(self, start: int, stop: int) -> "MatrixGF":
        return MatrixGF(self.ctx, self.data[start:stop])


def from_rows(ctx: FieldContext, rows) -> MatrixGF:
    return MatrixGF(ctx, np.array(rows, dtype=np.uint8).reshape(len(rows), -1))


def zeros(ctx: FieldContext, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(ctx, np.zeros((rows, cols), dtype=np.uint8))


def identity(ctx: FieldContext, n: int) -> MatrixGF:
    return MatrixGF(ctx, np.eye(n, dtype=np.uint8))


def vandermonde(ctx: FieldContext, s: int, w: int, v: int = 0) -> MatrixGF:
    """s x w matrix with entry (r, c) = alpha^(c (v + r)).

    Row r is the evaluation vector (1, alpha^(v+r), alpha^(2(v+r)), ...);
    any s <= w of these rows are linearly independent as long as the s
    evaluation points alpha^(v+r) are distinct, which s <= order(alpha)
    guarantees.
    """
    if w < 1 or s < 0 or v < 0:
        raise ValueError(f"bad Vandermonde parameters s={s}, w={w}, v={v}")
    if s > ctx.q - 1:
        raise ValueError(f"s={s} exceeds order(alpha)={ctx.q - 1} in GF(2^{ctx.w})")
    exp = np.array(ctx.exp_table[: ctx.q - 1], dtype=np.uint8)
    r = np.arange(s, dtype=np.int64)[:, None]
    c = np.arange(w, dtype=np.int64)[None, :]
    return MatrixGF(ctx, exp[(c * (v + r)) % (ctx.q - 1)])


def kronecker(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    """Kronecker product: block (i, j) of the result is a[i, j] * b."""
    if a.ctx != b.ctx:
        raise ValueError("Kronecker product needs matrices over the same field")
    mt = a.ctx.mul_table
    out = mt[a.data[:, None, :, None], b.data[None, :, None, :]]
    return MatrixGF(a.ctx, out.reshape(a.rows * b.rows, a.cols * b.cols))


def stack(blocks) -> MatrixGF:
    """Vertical stack, skipping zero-row blocks."""
    blocks = [blk for blk in blocks if blk.rows > 0]
    if not blocks:
        raise ValueError("nothing to stack")
    ctx = blocks[0].ctx
    if any(blk.ctx != ctx for blk in blocks):
        raise ValueError("stack needs matrices over the same field")
    return MatrixGF(ctx, np.vstack([blk.data for blk in blocks]))


def matmul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.ctx != b.ctx:
        raise ValueError("product needs matrices over the same field")
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    mt = a.ctx.mul_table
    # xor-accumulate a[i,k] * b[k,j] over k
    prod = mt[a.data[:, :, None], b.data[None, :, :]]
    return MatrixGF(a.ctx, np.bitwise_xor.reduce(prod, axis=1))


def mat_vec(m: MatrixGF, vec) -> list:
    v = np.asarray(vec, dtype=np.uint8)
    if v.shape != (m.cols,):
        raise ValueError("vector length mismatch")
    prod = m.ctx.mul_table[m.data, v[None, :]]
    return [int(x) for x in np.bitwise_xor.reduce(prod, axis=1)]


def _eliminate(arr: np.ndarray, ctx: FieldContext):
    """In-place forward elimination; returns (rank, pivot_cols)."""
    mt = ctx.mul_table
    inv = ctx.inv_table
    rows, cols = arr.shape
    rank = 0
    pivot_cols = []
    for col in range(cols):
        sub = arr[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        p = rank + int(nz[0])
        if p != rank:
            arr[[rank, p]] = arr[[p, rank]]
        pivot = arr[rank, col]
        if pivot != 1:
            arr[rank] = mt[arr[rank], inv[pivot]]
        below = arr[rank + 1:, col]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows_hit = rank + 1 + hit
            arr[rows_hit] ^= mt[arr[rank][None, :], below[hit][:, None]]
        pivot_cols.append(col)
        rank += 1
        if rank == rows:
            break
    return rank, pivot_cols


def row_reduce(m: MatrixGF):
    """Row-echelon form with unit pivots.

    Returns (echelon, rank, pivot_cols); the row space is preserved.
    """
    arr = m.data.copy()
    rank, pivot_cols = _eliminate(arr, m.ctx)
    return MatrixGF(m.ctx, arr), rank, pivot_cols


def rank(m: MatrixGF) -> int:
    return row_reduce(m)[1]


def solve_erasures(h: MatrixGF, word: SymbolWord):
    """Fill the erased positions of `word` so that h . c^T = 0.

    Returns the completed SymbolWord when the erased columns of h are
    linearly independent, or None when the system is underdetermined.
    Raises InconsistentWordError when no completion exists at all.
    """
    if len(word) != h.cols:
        raise ValueError(f"word length {len(word)} != matrix columns {h.cols}")
    erased = [i for i, e in enumerate(word.erased) if e]
    syms = np.array(word.symbols, dtype=np.uint8)
    known = np.array([not e for e in word.erased], dtype=bool)
    mt = h.ctx.mul_table
    if known.any():
        syndrome = np.bitwise_xor.reduce(mt[h.data[:, known], syms[known][None, :]], axis=1)
    else:
        syndrome = np.zeros(h.rows, dtype=np.uint8)
    if not erased:
        if syndrome.any():
            raise InconsistentWordError("nonzero syndrome with no erasures")
        return word

    aug = np.hstack([h.data[:, erased], syndrome[:, None]]).copy()
    r, pivots = _eliminate(aug, h.ctx)
    ncols = len(erased)
    if pivots and pivots[-1] == ncols:
        raise InconsistentWordError("known symbols are inconsistent with the parity checks")
    if r < ncols:
        return None
    # unique solution: back-substitute the unit-pivot echelon form
    values = [0] * ncols
    for i in range(ncols - 1, -1, -1):
        acc = int(aug[i, ncols])
        row = aug[i]
        for j in range(i + 1, ncols):
            if row[j]:
                acc ^= h.ctx.mul(int(row[j]), values[j])
        values[i] = acc
    out = list(word.symbols)
    for pos, val in zip(erased, values):
        out[pos] = val
    return SymbolWord(tuple(out), (False,) * len(out))


def to_csv(m: MatrixGF) -> str:
    """One row per line, comma-separated; header `# gf=2^w rows=R cols=C`."""
    lines = [f"# gf=2^{m.ctx.w} rows={m.rows} cols={m.cols}"]
    for row in m.data:
        lines.append(",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"
