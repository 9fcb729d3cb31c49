"""Compiled trial kernel: one tight C loop per Monte Carlo trial.

Mirrors the contract of the pure-Python kernel module; the harness treats
the two interchangeably.
"""

import numpy as np

cimport cython
from libc.math cimport M_PI, atan2, cos, sin

NAME = "native"

ctypedef double complex dcplx


cdef inline dcplx _cexp_j(double ang) noexcept nogil:
    return cos(ang) + 1j * sin(ang)


cdef inline double _cabs2(dcplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double _principal(dcplx z) noexcept nogil:
    cdef double ang = atan2(z.imag, z.real)
    if ang == -M_PI:
        ang = M_PI
    return ang


def trial_error_block(noise, v_clean, psi, phi_bar, pinv_omega,
                      double subblock_duration, double f_d1, double f_d2,
                      double complex beta1, double complex beta2,
                      double phi_y, double phi_z):
    """Squared pipeline errors for a chunk of pre-drawn noise realizations.

    Same signature and column layout as the fallback kernel: returns a
    ``(chunk, 12)`` float array of squared errors plus a boolean abort mask.
    """
    cdef dcplx[:, :, :, ::1] w = np.ascontiguousarray(noise, dtype=np.complex128)
    cdef dcplx[:, :, ::1] vc = np.ascontiguousarray(v_clean, dtype=np.complex128)
    cdef dcplx[::1] psi_c = np.ascontiguousarray(np.conj(psi), dtype=np.complex128)
    cdef dcplx[:, ::1] phib = np.ascontiguousarray(phi_bar, dtype=np.complex128)
    cdef double[:, ::1] pinv = np.ascontiguousarray(pinv_omega, dtype=np.float64)

    cdef Py_ssize_t chunk = w.shape[0]
    cdef Py_ssize_t n_sub = w.shape[2]
    cdef Py_ssize_t n_pil = w.shape[3]
    cdef Py_ssize_t m_total = phib.shape[1]

    errors_arr = np.zeros((chunk, 12), dtype=np.float64)
    aborted_arr = np.zeros(chunk, dtype=np.uint8)
    cdef double[:, ::1] errors = errors_arr
    cdef unsigned char[::1] aborted = aborted_arr

    # per-trial scratch: g0, g1, h0, h1, de-rotated sums (estimated, ideal)
    scratch = np.empty((6, n_sub), dtype=np.complex128)
    cdef dcplx[:, ::1] s = scratch
    gains = np.empty((2, m_total), dtype=np.complex128)
    cdef dcplx[:, ::1] cb = gains

    cdef double span = 2.0 * M_PI * n_sub * subblock_duration
    cdef double tpi = 2.0 * M_PI
    cdef double npd = <double> n_pil
    cdef double nsd = <double> n_sub
    cdef dcplx xi1_true = _cexp_j(span * f_d1)
    cdef dcplx xi2_true = _cexp_j(span * f_d2)

    cdef Py_ssize_t c, i, n, m
    cdef dcplx acc0, acc1, wv, num1, num2, xi1, xi1_nn, xi2, xi2_nn
    cdef dcplx b1, b1i, b2, b2i
    cdef double den1, den2, m1, m2, fd1_hat, fd2_hat, t_i, ang
    cdef double magsum_e, magsum_i, z0, z1, z2, z0i

    with nogil:
        for c in range(chunk):
            # stage 1: per-subblock LS projections
            for i in range(n_sub):
                acc0 = 0
                acc1 = 0
                for n in range(n_pil):
                    wv = w[c, 0, i, n]
                    acc0 = acc0 + wv
                    acc1 = acc1 + psi_c[n] * wv
                s[0, i] = vc[0, 0, i] + acc0 / npd
                s[2, i] = vc[1, 0, i] + acc1 / npd
                acc0 = 0
                acc1 = 0
                for n in range(n_pil):
                    wv = w[c, 1, i, n]
                    acc0 = acc0 + wv
                    acc1 = acc1 + psi_c[n] * wv
                s[1, i] = vc[0, 1, i] + acc0 / npd
                s[3, i] = vc[1, 1, i] + acc1 / npd

            # stage 2: inter-block ratios
            num1 = 0
            num2 = 0
            den1 = 0.0
            den2 = 0.0
            for i in range(n_sub):
                num1 = num1 + s[0, i].conjugate() * s[1, i]
                num2 = num2 + s[2, i].conjugate() * s[3, i]
                den1 = den1 + _cabs2(s[0, i])
                den2 = den2 + _cabs2(s[2, i])
            m1 = abs(num1)
            m2 = abs(num2)
            if m1 == 0.0 or den1 == 0.0 or m2 == 0.0 or den2 == 0.0:
                aborted[c] = 1
                continue
            xi1 = num1 / m1
            xi1_nn = num1 / den1
            xi2 = num2 / m2
            xi2_nn = num2 / den2
            fd1_hat = _principal(num1) / span
            fd2_hat = _principal(num2) / span

            # stage 3: direct gain, with estimated and with true rotation
            b1 = 0
            b1i = 0
            for i in range(n_sub):
                t_i = subblock_duration * i
                b1 = b1 + _cexp_j(-tpi * fd1_hat * t_i) * s[0, i]
                b1i = b1i + _cexp_j(-tpi * f_d1 * t_i) * s[0, i]
            b1 = b1 / nsd
            b1i = b1i / nsd

            # stage 4: de-rotate and combine the cascaded blocks
            for i in range(n_sub):
                t_i = subblock_duration * i
                s[4, i] = _cexp_j(-tpi * fd2_hat * t_i) * (
                    s[2, i] + xi2.conjugate() * s[3, i]
                )
                s[5, i] = _cexp_j(-tpi * f_d2 * t_i) * (
                    s[2, i] + xi2_true.conjugate() * s[3, i]
                )
            for m in range(m_total):
                acc0 = 0
                acc1 = 0
                for i in range(n_sub):
                    acc0 = acc0 + phib[i, m].conjugate() * s[4, i]
                    acc1 = acc1 + phib[i, m].conjugate() * s[5, i]
                cb[0, m] = acc0 / (2.0 * nsd)
                cb[1, m] = acc1 / (2.0 * nsd)

            # stage 5: magnitude average and linear phase fit
            magsum_e = 0.0
            magsum_i = 0.0
            z0 = 0.0
            z1 = 0.0
            z2 = 0.0
            z0i = 0.0
            for m in range(m_total):
                magsum_e = magsum_e + abs(cb[0, m])
                magsum_i = magsum_i + abs(cb[1, m])
                ang = _principal(cb[0, m])
                z0 = z0 + pinv[0, m] * ang
                z1 = z1 + pinv[1, m] * ang
                z2 = z2 + pinv[2, m] * ang
                z0i = z0i + pinv[0, m] * _principal(cb[1, m])
            b2 = (magsum_e / m_total) * _cexp_j(z0)
            b2i = (magsum_i / m_total) * _cexp_j(z0i)

            errors[c, 0] = _cabs2(xi1 - xi1_true)
            errors[c, 1] = _cabs2(xi1_nn - xi1_true)
            errors[c, 2] = _cabs2(xi2 - xi2_true)
            errors[c, 3] = _cabs2(xi2_nn - xi2_true)
            errors[c, 4] = (fd1_hat - f_d1) * (fd1_hat - f_d1)
            errors[c, 5] = (fd2_hat - f_d2) * (fd2_hat - f_d2)
            errors[c, 6] = _cabs2(b1 - beta1)
            errors[c, 7] = _cabs2(b1i - beta1)
            errors[c, 8] = _cabs2(b2 - beta2)
            errors[c, 9] = _cabs2(b2i - beta2)
            errors[c, 10] = (z1 - phi_y) * (z1 - phi_y)
            errors[c, 11] = (z2 - phi_z) * (z2 - phi_z)

    return errors_arr, aborted_arr.view(np.bool_)
