"""Jordan canonical decomposition for desk-scale matrices.

Float path: eigenvalues from the QR iteration, clustered by a dedicated
tolerance;
kernel dimensions of (A - lam I)^r give the Weyr staircase, and generalized
eigenvector chains are grown top-down with the convention

    (A - lam I) v^j = v^{j-1},   v^0 = 0.

Exact path: the same staircase over Gaussian rationals, with the eigenvalues
supplied exactly by the caller (root finding itself is float-only).

Jordan structure is discontinuous, so all rank decisions carry explicit
thresholds; inconsistent decisions raise :class:`ChainConstructionFailed`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import ChainConstructionFailed, DimensionMismatch, SingularMatrix
from .matrices import EXACT, FLOAT, CMatrix, GaussianRational


@dataclass
class JordanDecomposition:
    P: CMatrix
    blocks: List[Tuple[complex, int]]
    P_inv: CMatrix
    residual: float

    @property
    def n(self):
        return sum(size for _, size in self.blocks)


def assemble_jordan(blocks, backend=FLOAT):
    """Build the block-diagonal J from an ordered (lam, size) list."""
    n = sum(size for _, size in blocks)
    if backend == EXACT:
        zero, one = GaussianRational(0), GaussianRational(1)
        rows = [[zero] * n for _ in range(n)]
    else:
        rows = [[0j] * n for _ in range(n)]
        one = 1 + 0j
    off = 0
    for lam, size in blocks:
        lam = GaussianRational._coerce(lam) if backend == EXACT else complex(lam)
        if backend == EXACT and lam is None:
            raise ValueError("exact assembly needs exact eigenvalues")
        for i in range(size):
            rows[off + i][off + i] = lam
            if i + 1 < size:
                rows[off + i][off + i + 1] = one
        off += size
    return CMatrix(rows, backend)


# -- eigenvalues --------------------------------------------------------

def eigenvalues(A, tol=1e-2):
    """Clustered eigenvalues [(lam, algebraic multiplicity)].

    Roots within tol * max(1, |lam|) of a cluster mean are merged; the mean
    of a defective cluster is far more accurate than its members.  The raw
    eigenvalues come from the QR iteration (backward stable), which keeps the
    spread of a defective multiplicity-k root near (eps * ||A||)^(1/k) instead
    of the much larger spread that characteristic-polynomial roots exhibit.
    """
    a = A.to_float().to_numpy()
    roots = np.linalg.eigvals(a)
    clusters = []  # list of lists of roots
    for r in sorted(roots, key=lambda x: (x.real, x.imag)):
        for cl in clusters:
            mean = sum(cl) / len(cl)
            if abs(r - mean) <= tol * max(1.0, abs(mean)):
                cl.append(r)
                break
        else:
            clusters.append([r])
    out = [(sum(cl) / len(cl), len(cl)) for cl in clusters]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


# -- float staircase ----------------------------------------------------

def _nullspace_float(m, tol):
    u, s, vh = np.linalg.svd(m)
    scale = max(1.0, s[0] if len(s) else 0.0)
    rank = int(np.sum(s > tol * scale))
    return vh[rank:].conj().T  # orthonormal columns


class _Onb:
    """Incremental orthonormal basis with twice-is-enough Gram-Schmidt."""

    def __init__(self, tol):
        self.cols = []
        self.tol = tol

    def residual(self, v):
        """Orthonormalized component of v outside the span, or None."""
        w = v.astype(complex).copy()
        for _ in range(2):
            for b in self.cols:
                w = w - np.vdot(b, w) * b
        nrm = np.linalg.norm(w)
        if nrm <= self.tol * max(1.0, np.linalg.norm(v)):
            return None
        return w / nrm

    def add(self, v):
        w = self.residual(v)
        if w is not None:
            self.cols.append(w)
        return w


def _chains_for_eigenvalue_float(a, lam, mult, tol):
    n = a.shape[0]
    m = a - lam * np.eye(n)
    kernels = [np.zeros((n, 0))]
    mr = np.eye(n)
    dims = [0]
    while dims[-1] < mult:
        mr = mr @ m
        kern = _nullspace_float(mr, tol)
        if kern.shape[1] <= dims[-1] or kern.shape[1] > mult or len(dims) > mult:
            raise ChainConstructionFailed(
                f"kernel staircase stalled for eigenvalue {lam} "
                f"(dims {dims + [kern.shape[1]]}, multiplicity {mult})"
            )
        kernels.append(kern)
        dims.append(kern.shape[1])
    s = len(dims) - 1
    weyr = [dims[r] - dims[r - 1] for r in range(1, s + 1)]
    if any(weyr[i] < weyr[i + 1] for i in range(s - 1)):
        raise ChainConstructionFailed(
            f"non-monotone Weyr counts {weyr} for eigenvalue {lam}"
        )
    chains = []  # each chain is [v^1, ..., v^r] with M v^j = v^{j-1}
    carried = {r: [] for r in range(1, s + 1)}  # height-r images of taller tops
    for r in range(s, 0, -1):
        need = weyr[r - 1] - (weyr[r] if r < s else 0)
        onb = _Onb(1e-8)
        for j in range(kernels[r - 1].shape[1]):
            onb.add(kernels[r - 1][:, j])
        for v in carried[r]:
            onb.add(v)
        picked = 0
        for j in range(kernels[r].shape[1]):
            if picked == need:
                break
            top = onb.add(kernels[r][:, j])
            if top is None:
                continue
            picked += 1
            chain = [top]
            for _ in range(r - 1):
                chain.append(m @ chain[-1])
            chain.reverse()
            chains.append(chain)
            for height in range(1, r):
                carried[height].append(chain[height - 1])
        if picked < need:
            raise ChainConstructionFailed(
                f"could not complete {need} chains of height {r} "
                f"for eigenvalue {lam}"
            )
    return chains


def jordan_decompose(A, tol=1e-8, eig_tol=1e-2, eigenvalues_hint=None):
    """Compute A = P J P^{-1}.

    Float backend: eigenvalues found numerically (or taken from
    ``eigenvalues_hint`` as [(lam, mult), ...]).  Exact backend: the hint is
    mandatory and everything runs over Gaussian rationals.
    """
    if A.backend == EXACT:
        if eigenvalues_hint is None:
            raise ValueError(
                "exact decomposition needs eigenvalues_hint (root finding is "
                "float-only); or convert with to_float()"
            )
        return _jordan_decompose_exact(A, eigenvalues_hint)
    if A.n > 64:
        raise DimensionMismatch("Jordan computation is limited to n <= 64")
    a = A.to_numpy()
    eigs = eigenvalues_hint or eigenvalues(A, eig_tol)
    if sum(m for _, m in eigs) != A.n:
        raise ChainConstructionFailed(
            f"eigenvalue multiplicities {eigs} do not sum to n={A.n}"
        )
    blocks = []
    cols = []
    for lam, mult in eigs:
        for chain in _chains_for_eigenvalue_float(a, lam, mult, tol):
            blocks.append((complex(lam), len(chain)))
            cols.extend(chain)
    p = np.column_stack(cols)
    if abs(np.linalg.det(p)) < 1e-12:
        raise ChainConstructionFailed("assembled eigenvector matrix is singular")
    p_inv = np.linalg.inv(p)
    P = CMatrix.from_numpy(p)
    P_inv = CMatrix.from_numpy(p_inv)
    J = assemble_jordan(blocks, FLOAT)
    residual = (A - P @ J @ P_inv).row_sum_norm()
    return JordanDecomposition(P=P, blocks=blocks, P_inv=P_inv, residual=residual)


# -- exact staircase ----------------------------------------------------

def _rref_exact(rows, ncols):
    """In-place RREF over Gaussian rationals; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if bool(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and bool(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def _nullspace_exact(m):
    """Basis vectors (tuples) of ker(m) for an exact CMatrix."""
    n = m.n
    rows = [list(r) for r in m.rows]
    pivots = _rref_exact(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    zero, one = GaussianRational(0), GaussianRational(1)
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def _rank_exact(vectors, n):
    rows = [list(v) for v in vectors]
    return len(_rref_exact(rows, n))


def _mat_vec_exact(m, v):
    return tuple(
        sum((row[k] * v[k] for k in range(1, m.n)), row[0] * v[0])
        for row in m.rows
    )


def _jordan_decompose_exact(A, eigs):
    n = A.n
    eigs = [(GaussianRational._coerce(lam), mult) for lam, mult in eigs]
    if any(lam is None for lam, _ in eigs):
        raise ValueError("exact decomposition needs exact eigenvalues")
    if sum(m for _, m in eigs) != n:
        raise ChainConstructionFailed("multiplicities do not sum to n")
    blocks = []
    cols = []
    eye = CMatrix.identity(n, EXACT)
    for lam, mult in eigs:
        m = A - eye.scale(lam)
        kernels = [[]]
        mr = eye
        dims = [0]
        while dims[-1] < mult:
            mr = mr @ m
            kern = _nullspace_exact(mr)
            if len(kern) <= dims[-1] or len(dims) > mult:
                raise ChainConstructionFailed(
                    f"kernel staircase stalled for eigenvalue {lam} "
                    "(wrong eigenvalue or multiplicity?)"
                )
            kernels.append(kern)
            dims.append(len(kern))
        s = len(dims) - 1
        weyr = [dims[r] - dims[r - 1] for r in range(1, s + 1)]
        carried = {r: [] for r in range(1, s + 1)}
        for r in range(s, 0, -1):
            need = weyr[r - 1] - (weyr[r] if r < s else 0)
            block = list(kernels[r - 1]) + carried[r]
            picked = 0
            for cand in kernels[r]:
                if picked == need:
                    break
                if _rank_exact(block + [cand], n) == len(block) + 1:
                    block.append(cand)
                    picked += 1
                    chain = [cand]
                    for _ in range(r - 1):
                        chain.append(_mat_vec_exact(m, chain[-1]))
                    chain.reverse()
                    blocks.append((lam, r))
                    cols.append(chain)
                    for height in range(1, r):
                        carried[height].append(chain[height - 1])
            if picked < need:
                raise ChainConstructionFailed(
                    f"could not complete chains of height {r} for {lam}"
                )
    flat = [v for chain in cols for v in chain]
    P = CMatrix([[flat[j][i] for j in range(n)] for i in range(n)], EXACT)
    P_inv = P.inverse()
    J = assemble_jordan(blocks, EXACT)
    diff = A - P @ J @ P_inv
    residual = 0.0 if diff.is_zero() else diff.row_sum_norm()
    return JordanDecomposition(P=P, blocks=blocks, P_inv=P_inv, residual=residual)


def verify_decomposition(A, dec, tol=1e-8):
    """Recompute ||A - P J P^{-1}|| and ||P P_inv - I||; ok iff both <= tol."""
    if dec.n != A.n:
        raise DimensionMismatch(f"decomposition is {dec.n}x{dec.n}, A is {A.n}x{A.n}")
    backend = A.backend
    P = dec.P if dec.P.backend == backend else dec.P.to_float()
    P_inv = dec.P_inv if dec.P_inv.backend == backend else dec.P_inv.to_float()
    if backend == FLOAT:
        A = A.to_float()
    if backend == EXACT and (P.backend != EXACT or P_inv.backend != EXACT):
        raise ValueError("exact verification needs exact P and P_inv")
    J = assemble_jordan(dec.blocks, backend)
    eye = CMatrix.identity(A.n, backend)
    inv_err = (P @ P_inv - eye).row_sum_norm()
    residual = (A - P @ J @ P_inv).row_sum_norm()
    return {"residual": residual, "ok": residual <= tol and inv_err <= tol}
