"""Product-grid evaluation kernels.

Everything that enumerates tuples (x_1, ..., x_n) with x_i drawn from a
per-coordinate vector funnels through here.  When the field context carries
lookup tables the work is done in numpy on integer encodings (exact: every
operation is a table gather); otherwise a plain nested loop is used.  Grids
are processed in chunks along a flattened cell index so memory stays bounded
regardless of the grid size.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

CHUNK_CELLS = 1 << 20


def grid_size(vectors) -> int:
    return math.prod(len(v) for v in vectors)


def _eval_on_columns(ctx, poly, cols):
    """Evaluate a sparse multivariate polynomial at the points whose i-th
    coordinates are cols[i] (1-D arrays of equal length)."""
    n_points = len(cols[0]) if cols else 0
    acc = np.zeros(n_points, dtype=np.int64)
    pow_cache: dict[tuple[int, int], np.ndarray] = {}
    for coeff, exps in poly.terms:
        term = np.full(n_points, coeff, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                pw = pow_cache.get(key)
                if pw is None:
                    pw = ctx.vpow(cols[i], e)
                    pow_cache[key] = pw
                term = ctx.vmul(term, pw)
        acc = ctx.vadd(acc, term)
    return acc


def iter_solution_indices(ctx, polys, vectors, chunk_cells: int = CHUNK_CELLS):
    """Yield per-chunk index columns (one array per coordinate) of the grid
    points where every polynomial vanishes.  Polynomials are applied one at a
    time to the surviving points only."""
    dims = tuple(len(v) for v in vectors)
    total = math.prod(dims)
    if not ctx.has_tables:
        yield from _iter_solution_indices_scalar(ctx, polys, vectors)
        return
    np_vectors = [np.asarray(v, dtype=np.int64) for v in vectors]
    for start in range(0, total, chunk_cells):
        cells = np.arange(start, min(start + chunk_cells, total), dtype=np.int64)
        idx = np.unravel_index(cells, dims)
        alive = np.arange(cells.size)
        for poly in polys:
            if alive.size == 0:
                break
            cols = [vec[ix[alive]] for vec, ix in zip(np_vectors, idx)]
            vals = _eval_on_columns(ctx, poly, cols)
            alive = alive[vals == 0]
        if alive.size:
            yield tuple(ix[alive] for ix in idx)


def _iter_solution_indices_scalar(ctx, polys, vectors):
    from .multipoly import eval_point

    for multi in product(*(range(len(v)) for v in vectors)):
        point = [v[i] for v, i in zip(vectors, multi)]
        if all(eval_point(ctx, poly, point) == 0 for poly in polys):
            yield tuple(np.array([i]) for i in multi)


def count_solutions(ctx, polys, vectors, weights=None,
                    chunk_cells: int = CHUNK_CELLS) -> int:
    """Number of grid points where all polynomials vanish; with `weights`
    (one integer list per coordinate), the weighted total instead.  The
    result is an exact Python integer of arbitrary size."""
    total = 0
    if weights is not None:
        # weight products (and their per-chunk sums) must not overflow int64;
        # otherwise fall back to exact big integers cell by cell
        log_bound = sum(math.log2(max(w)) for w in weights if max(w) > 0)
        fits64 = log_bound + math.log2(chunk_cells) + 1 < 63
        np_weights = [np.asarray(w, dtype=np.int64) for w in weights]
    for idx in iter_solution_indices(ctx, polys, vectors, chunk_cells):
        n_found = len(idx[0])
        if weights is None:
            total += int(n_found)
        elif fits64:
            prod_w = np.ones(n_found, dtype=np.int64)
            for wvec, ix in zip(np_weights, idx):
                prod_w *= wvec[ix]
            total += int(prod_w.sum())
        else:
            for row in range(n_found):
                w = 1
                for wvec, ix in zip(weights, idx):
                    w *= wvec[int(ix[row])]
                total += w
    return total


def field_weighted_solution_sum(ctx, polys, vectors, weight_vectors,
                                chunk_cells: int = CHUNK_CELLS) -> int:
    """Field sum over the common zero set of prod_i weight_i[y_i], where the
    weights are field elements attached to each coordinate vector."""
    if ctx.has_tables:
        np_weights = [np.asarray(w, dtype=np.int64) for w in weight_vectors]
        total = 0
        for idx in iter_solution_indices(ctx, polys, vectors, chunk_cells):
            prod_w = np.full(len(idx[0]), 1, dtype=np.int64)
            for wvec, ix in zip(np_weights, idx):
                prod_w = ctx.vmul(prod_w, wvec[ix])
            total = ctx.add(total, ctx.vsum(prod_w))
        return total
    total = 0
    for idx in iter_solution_indices(ctx, polys, vectors, chunk_cells):
        for row in range(len(idx[0])):
            w = 1
            for wvec, ix in zip(weight_vectors, idx):
                w = ctx.mul(w, wvec[int(ix[row])])
            total = ctx.add(total, w)
    return total


def field_sum_over_grid(ctx, poly, vectors,
                        chunk_cells: int = CHUNK_CELLS) -> int:
    """Field sum of poly over the whole product grid, by direct enumeration
    (no per-monomial factorization; this is the slow, independent route)."""
    dims = tuple(len(v) for v in vectors)
    total_cells = math.prod(dims)
    if not ctx.has_tables:
        from .multipoly import eval_point

        acc = 0
        for multi in product(*(range(d) for d in dims)):
            point = [v[i] for v, i in zip(vectors, multi)]
            acc = ctx.add(acc, eval_point(ctx, poly, point))
        return acc
    np_vectors = [np.asarray(v, dtype=np.int64) for v in vectors]
    acc = 0
    for start in range(0, total_cells, chunk_cells):
        cells = np.arange(start, min(start + chunk_cells, total_cells),
                          dtype=np.int64)
        idx = np.unravel_index(cells, dims)
        cols = [vec[ix] for vec, ix in zip(np_vectors, idx)]
        vals = _eval_on_columns(ctx, poly, cols)
        acc = ctx.add(acc, ctx.vsum(vals))
    return acc
