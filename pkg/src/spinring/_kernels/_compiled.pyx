# Compiled sweep kernel for the four-site ring. Same contract as the pure
# backend in reference.py, built without it: the Hamiltonian templates come
# straight from bit arithmetic, so agreement between the two backends is a
# real cross-check rather than shared code.
#
# Everything is real symmetric, so the per-point pipeline is LAPACK dsyevd
# on the 16x16 Hamiltonian, Gibbs weights, a bit-table pair reduction to
# 4x4, and two dsyev calls for the Wootters step. The whole batch loop runs
# without the GIL.

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, sqrt
from scipy.linalg.cython_lapack cimport dsyev, dsyevd

cnp.import_array()

BACKEND_NAME = "compiled"

cdef enum:
    DIM = 16

cdef double GROUND_TOL = 1e-9
cdef double SQRT2 = sqrt(2.0)

# hop[p*16+q] = matrix element of the ring hopping term; the field and
# Ising terms are diagonal. Site s occupies bit (4 - s); bonds are the four
# two-bit ring masks.
cdef int _BOND_MASKS[4]
_BOND_MASKS[0] = 0b1100
_BOND_MASKS[1] = 0b0110
_BOND_MASKS[2] = 0b0011
_BOND_MASKS[3] = 0b1001

cdef double _HOP[256]
cdef double _FIELD_DIAG[16]
cdef double _ISING_DIAG[16]


cdef int _popcount4(int x) noexcept nogil:
    return (x & 1) + ((x >> 1) & 1) + ((x >> 2) & 1) + ((x >> 3) & 1)


cdef double _bit_sign(int x, int position) noexcept nogil:
    return 2.0 * ((x >> position) & 1) - 1.0


cdef void _init_templates() noexcept nogil:
    cdef int p, q, k, mask
    for p in range(256):
        _HOP[p] = 0.0
    for q in range(DIM):
        for k in range(4):
            mask = _BOND_MASKS[k]
            if _popcount4(q & mask) == 1:
                _HOP[(q ^ mask) * DIM + q] = 1.0
        _FIELD_DIAG[q] = 2.0 * _popcount4(q) - 4.0
        _ISING_DIAG[q] = (
            _bit_sign(q, 3) * _bit_sign(q, 2)
            + _bit_sign(q, 2) * _bit_sign(q, 1)
            + _bit_sign(q, 1) * _bit_sign(q, 0)
            + _bit_sign(q, 0) * _bit_sign(q, 3)
        )

_init_templates()


def _reduction_table(pair):
    """p_idx[r, tr]: full basis index holding reduced row r and traced bits tr."""
    s1, s2 = pair
    kept = (4 - s1, 4 - s2)
    traced = tuple(sorted({0, 1, 2, 3} - {kept[0], kept[1]}, reverse=True))
    table = np.zeros((4, 4), dtype=np.int32)
    for r in range(4):
        for tr in range(4):
            p = ((r >> 1) & 1) << kept[0]
            p |= (r & 1) << kept[1]
            p |= ((tr >> 1) & 1) << traced[0]
            p |= (tr & 1) << traced[1]
            table[r, tr] = p
    return table


cdef inline double _cosh_shifted(double x, double shift, double beta) noexcept nogil:
    return 0.5 * (exp((x - shift) * beta) + exp((-x - shift) * beta))


cdef double _point_concurrence(double j, double b, double g, double t,
                               const int* p_idx,
                               double* a, double* evals, double* work,
                               int* iwork) noexcept nogil:
    """Concurrence at one parameter point; g is the Ising prefactor J*delta/2."""
    cdef char jobz_v = b'V', jobz_n = b'N', uplo = b'L'
    cdef int n = DIM, lda = DIM, lwork = 1024, liwork = 128, info = 0
    cdef int four = 4, lw4 = 64
    cdef int p, q, k, r, c, tr, count
    cdef double norm, wk, acc, lam_max, lam_sum
    cdef double weights[16]
    cdef double rho2[16]
    cdef double ev4[4]
    cdef double root[16]
    cdef double flipped[16]
    cdef double crossed[16]
    cdef double sgn[4]

    for q in range(DIM):
        for p in range(DIM):
            a[p + DIM * q] = j * _HOP[p * DIM + q]
        a[q + DIM * q] += b * _FIELD_DIAG[q] + g * _ISING_DIAG[q]

    dsyevd(&jobz_v, &uplo, &n, a, &lda, evals, work, &lwork, iwork, &liwork, &info)
    if info != 0:
        return -1.0

    if t > 0.0:
        norm = 0.0
        for k in range(DIM):
            wk = exp(-(evals[k] - evals[0]) / t)
            weights[k] = wk
            norm += wk
        for k in range(DIM):
            weights[k] /= norm
    else:
        count = 0
        for k in range(DIM):
            if evals[k] - evals[0] <= GROUND_TOL:
                weights[k] = 1.0
                count += 1
            else:
                weights[k] = 0.0
        for k in range(DIM):
            weights[k] /= count

    # reduced state: rho2[r,c] = sum_tr sum_k w_k U[p(r,tr),k] U[p(c,tr),k]
    for r in range(4):
        for c in range(4):
            acc = 0.0
            for tr in range(4):
                p = p_idx[4 * r + tr]
                q = p_idx[4 * c + tr]
                for k in range(DIM):
                    acc += weights[k] * a[p + DIM * k] * a[q + DIM * k]
            rho2[r + 4 * c] = acc

    dsyev(&jobz_v, &uplo, &four, rho2, &four, ev4, work, &lw4, &info)
    if info != 0:
        return -1.0
    for k in range(4):
        ev4[k] = sqrt(ev4[k]) if ev4[k] > 0.0 else 0.0
    for r in range(4):
        for c in range(4):
            acc = 0.0
            for k in range(4):
                acc += ev4[k] * rho2[r + 4 * k] * rho2[c + 4 * k]
            root[r + 4 * c] = acc

    # G = root . F . root with the doubled spin flip F (antidiagonal -1,1,1,-1);
    # the eigenvalue magnitudes of G are the Wootters lambdas
    sgn[0] = -1.0
    sgn[1] = 1.0
    sgn[2] = 1.0
    sgn[3] = -1.0
    for r in range(4):
        for c in range(4):
            flipped[r + 4 * c] = sgn[c] * root[r + 4 * (3 - c)]
    for r in range(4):
        for c in range(4):
            acc = 0.0
            for k in range(4):
                acc += flipped[r + 4 * k] * root[k + 4 * c]
            crossed[r + 4 * c] = acc

    dsyev(&jobz_n, &uplo, &four, crossed, &four, ev4, work, &lw4, &info)
    if info != 0:
        return -1.0
    lam_max = 0.0
    lam_sum = 0.0
    for k in range(4):
        wk = fabs(ev4[k])
        lam_sum += wk
        if wk > lam_max:
            lam_max = wk
    acc = 2.0 * lam_max - lam_sum
    return acc if acc > 0.0 else 0.0


def thermal_pair_concurrence(double[::1] j, double[::1] b, double[::1] delta,
                             double[::1] t, pair):
    """Concurrence of the given site pair for each (j, b, delta, t) row."""
    cdef Py_ssize_t n = j.shape[0], i
    cdef cnp.ndarray[cnp.int32_t, ndim=2] table = _reduction_table(tuple(pair))
    cdef const int* p_idx = <const int*> table.data
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double a[256]
    cdef double evals[16]
    cdef double work[1024]
    cdef int iwork[128]
    cdef int failed = 0

    with nogil:
        for i in range(n):
            out[i] = _point_concurrence(j[i], b[i], 0.5 * j[i] * delta[i], t[i],
                                        p_idx, a, evals, work, iwork)
            if out[i] < 0.0:
                failed = 1
                break
    if failed:
        raise ArithmeticError("eigensolver failed to converge in the compiled kernel")
    return out_arr


def alternate_concurrence_closed(double[::1] j, double[::1] b, double[::1] t):
    """Closed-form alternate-pair concurrence, elementwise over the batch."""
    cdef Py_ssize_t n = j.shape[0], i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double hp, hm, band, shift, beta, one, p00, p11, coh, part, gap

    with nogil:
        for i in range(n):
            hp = 2.0 * j[i] + 2.0 * b[i]
            hm = 2.0 * j[i] - 2.0 * b[i]
            band = 2.0 * SQRT2 * j[i]
            shift = fabs(hp)
            if fabs(hm) > shift:
                shift = fabs(hm)
            if fabs(band) > shift:
                shift = fabs(band)
            if fabs(4.0 * b[i]) > shift:
                shift = fabs(4.0 * b[i])
            beta = 1.0 / t[i]
            one = exp(-shift * beta)
            p00 = (0.5 * (one + exp((hp - shift) * beta) + exp((-hm - shift) * beta)
                          + _cosh_shifted(band, shift, beta))
                   + exp((2.0 * b[i] - shift) * beta) + exp((4.0 * b[i] - shift) * beta))
            p11 = (0.5 * (one + exp((-hp - shift) * beta) + exp((hm - shift) * beta)
                          + _cosh_shifted(band, shift, beta))
                   + exp((-2.0 * b[i] - shift) * beta) + exp((-4.0 * b[i] - shift) * beta))
            coh = (0.5 * (-one + _cosh_shifted(hp, shift, beta)
                          + _cosh_shifted(hm, shift, beta)
                          + _cosh_shifted(band, shift, beta))
                   - _cosh_shifted(2.0 * b[i], shift, beta))
            part = (4.0 * one + 4.0 * _cosh_shifted(2.0 * b[i], shift, beta)
                    + 2.0 * (_cosh_shifted(4.0 * b[i], shift, beta)
                             + _cosh_shifted(hp, shift, beta)
                             + _cosh_shifted(hm, shift, beta)
                             + _cosh_shifted(band, shift, beta)))
            gap = fabs(coh) - sqrt(p00 * p11)
            out[i] = 2.0 * gap / part if gap > 0.0 else 0.0
    return out_arr
