"""Hot per-state kernels, compiled with numba when available.

The pure-numpy lane lives in batch.py; these functions are the numba lane.
Everything here works on raw complex128 arrays and never allocates more than
a few 4x4 scratch matrices per state.
"""

from __future__ import annotations

import numpy as np

from ._accel import maybe_njit

# s_i s_j signs of the antiunitary flip (sigma_y tensor sigma_y is the
# antidiagonal (-1, 1, 1, -1) read from the top-right corner)
_FLIP_SIGN = np.array([-1.0, 1.0, 1.0, -1.0])


@maybe_njit(cache=True, nogil=True)
def jacobi_eigh(a):
    """Cyclic Jacobi diagonalization of a Hermitian matrix, n <= 4.

    Returns (w, v): eigenvalues descending, matching eigenvectors in the
    columns of v.  ``a`` is destroyed.  Converges when the off-diagonal
    Frobenius mass drops below 1e-14 * max(1, ||a||_F).
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    frob2 = 0.0
    for i in range(n):
        for j in range(n):
            x = a[i, j]
            frob2 += x.real * x.real + x.imag * x.imag
    stop2 = 1e-28 * max(1.0, frob2)
    for _sweep in range(60):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                x = a[i, j]
                off2 += 2.0 * (x.real * x.real + x.imag * x.imag)
        if off2 <= stop2:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag2 = apq.real * apq.real + apq.imag * apq.imag
                if mag2 == 0.0:
                    continue
                mag = np.sqrt(mag2)
                # conj of the unit phase of a[p, q]
                eb = complex(apq.real / mag, -apq.imag / mag)
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = a[i, p]
                    aiq = a[i, q] * eb
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                    a[p, i] = np.conj(a[i, p])
                    a[q, i] = np.conj(a[i, q])
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q] * eb
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
    w = np.empty(n, np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    # descending selection sort, eigenvector columns follow
    for i in range(n - 1):
        m = i
        for j in range(i + 1, n):
            if w[j] > w[m]:
                m = j
        if m != i:
            tmp = w[i]
            w[i] = w[m]
            w[m] = tmp
            for r in range(n):
                tv = v[r, i]
                v[r, i] = v[r, m]
                v[r, m] = tv
    return w, v


@maybe_njit(cache=True, nogil=True)
def _matmul4(a, b, out):
    for i in range(4):
        for j in range(4):
            acc = complex(0.0, 0.0)
            for k in range(4):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc


@maybe_njit(cache=True, nogil=True)
def jacobi_svdvals(a):
    """Descending singular values by one-sided (Hestenes) Jacobi, n <= 4.

    Column pairs are rotated until mutually orthogonal; the singular values
    are then the column norms.  This keeps absolute errors near machine
    epsilon even for singular values at zero, which the sqrt-of-eigenvalue
    route cannot do.  ``a`` is destroyed.
    """
    n = a.shape[0]
    for _sweep in range(60):
        converged = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = 0.0
                aqq = 0.0
                re = 0.0
                im = 0.0
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    app += xp.real * xp.real + xp.imag * xp.imag
                    aqq += xq.real * xq.real + xq.imag * xq.imag
                    # conj(xp) * xq
                    re += xp.real * xq.real + xp.imag * xq.imag
                    im += xp.real * xq.imag - xp.imag * xq.real
                mag2 = re * re + im * im
                if mag2 <= 1e-30 * app * aqq or mag2 == 0.0:
                    continue
                converged = False
                mag = np.sqrt(mag2)
                eb = complex(re / mag, -im / mag)
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q] * eb
                    a[i, p] = c * xp - s * xq
                    a[i, q] = s * xp + c * xq
        if converged:
            break
    sig = np.empty(n, np.float64)
    for j in range(n):
        acc = 0.0
        for i in range(n):
            x = a[i, j]
            acc += x.real * x.real + x.imag * x.imag
        sig[j] = np.sqrt(acc)
    for i in range(n - 1):
        m = i
        for j in range(i + 1, n):
            if sig[j] > sig[m]:
                m = j
        if m != i:
            tmp = sig[i]
            sig[i] = sig[m]
            sig[m] = tmp
    return sig


@maybe_njit(cache=True, nogil=True)
def measure_rows_numba(rhos, pauli, out):
    """Fill ``out`` (n, 16) with the per-state measure table.

    Column layout must match batch.py: purity, C, F, S, Q, D_A, D_B,
    lower, upper, t1..t3, lam1..lam4.
    """
    n = rhos.shape[0]
    root = np.empty((4, 4), np.complex128)
    yc = np.empty((4, 4), np.complex128)
    wmat = np.empty((4, 4), np.complex128)
    tmat = np.empty((3, 3), np.float64)
    g = np.empty((3, 3), np.complex128)
    for k in range(n):
        rho = rhos[k]
        pur = 0.0
        for i in range(4):
            for j in range(4):
                x = rho[i, j]
                pur += x.real * x.real + x.imag * x.imag
        # principal square root of rho
        acopy = rho.copy()
        w, v = jacobi_eigh(acopy)
        for i in range(4):
            for j in range(4):
                acc = complex(0.0, 0.0)
                for m in range(4):
                    wm = w[m]
                    if wm < 0.0:
                        wm = 0.0
                    acc += np.sqrt(wm) * v[i, m] * np.conj(v[j, m])
                root[i, j] = acc
        # sqrt(rho) flip(rho) sqrt(rho) = W W^dag for
        # W = sqrt(rho) (sigma_y x sigma_y) conj(sqrt(rho)), so the needed
        # sqrt-eigenvalues are the singular values of W (accurate at zero)
        for i in range(4):
            si = -1.0 if (i == 0 or i == 3) else 1.0
            for j in range(4):
                z = root[3 - i, j]
                yc[i, j] = complex(si * z.real, -si * z.imag)
        _matmul4(root, yc, wmat)
        sig = jacobi_svdvals(wmat)
        conc = 2.0 * sig[0] - (sig[0] + sig[1] + sig[2] + sig[3])
        if conc < 0.0:
            conc = 0.0
        # correlation matrix T[m][l] = Re tr(rho (sigma_m x sigma_l))
        f2 = 0.0
        for m in range(3):
            for l in range(3):
                op = pauli[3 * m + l]
                acc = 0.0
                for i in range(4):
                    for j in range(4):
                        acc += rho[i, j].real * op[j, i].real - rho[i, j].imag * op[j, i].imag
                tmat[m, l] = acc
                f2 += acc * acc
        fval = np.sqrt(f2)
        for i in range(3):
            for j in range(3):
                acc = 0.0
                for m in range(3):
                    acc += tmat[m, i] * tmat[m, j]
                g[i, j] = complex(acc, 0.0)
        tw, _ = jacobi_eigh(g)
        # reduced single-qubit purities (left factor then right factor)
        a00 = rho[0, 0] + rho[1, 1]
        a01 = rho[0, 2] + rho[1, 3]
        a11 = rho[2, 2] + rho[3, 3]
        pa = a00.real * a00.real + a11.real * a11.real + 2.0 * (a01.real * a01.real + a01.imag * a01.imag)
        b00 = rho[0, 0] + rho[2, 2]
        b01 = rho[0, 1] + rho[2, 3]
        b11 = rho[1, 1] + rho[3, 3]
        pb = b00.real * b00.real + b11.real * b11.real + 2.0 * (b01.real * b01.real + b01.imag * b01.imag)
        da2 = 2.0 * pa - 1.0
        if da2 < 0.0:
            da2 = 0.0
        db2 = 2.0 * pb - 1.0
        if db2 < 0.0:
            db2 = 0.0
        s2 = f2 - 1.0
        if s2 < 0.0:
            s2 = 0.0
        low2 = conc * conc + pur - 1.0
        if low2 < 0.0:
            low2 = 0.0
        up2 = 2.0 * pur - 1.0
        if up2 < 0.0:
            up2 = 0.0
        upper = np.sqrt(up2)
        if conc < upper:
            upper = conc
        out[k, 0] = pur
        out[k, 1] = conc
        out[k, 2] = fval
        out[k, 3] = np.sqrt(0.5 * s2)
        out[k, 4] = np.sqrt(conc * conc + pur)
        out[k, 5] = np.sqrt(da2)
        out[k, 6] = np.sqrt(db2)
        out[k, 7] = np.sqrt(low2)
        out[k, 8] = upper
        for i in range(3):
            ti = tw[i]
            if ti < 0.0:
                ti = 0.0
            out[k, 9 + i] = np.sqrt(ti)
        for i in range(4):
            out[k, 12 + i] = sig[i] * sig[i]
