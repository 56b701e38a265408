"""Compiled inner loops over small finite fields.

Every kernel receives a field as ``(p, E, lg, ex)``: the characteristic, the
degree over the prime field, and discrete log / exponential tables (dummy
length-1 arrays when ``E == 1``). Elements are their canonical integer
encodings, so addition is digit-wise modulo ``p`` and multiplication goes
through the tables.
"""

import numpy as np
from numba import njit, prange

_ACC_LIMIT = 1 << 20  # primes below this may accumulate products before reducing


@njit(cache=True)
def f_add(a, b, p, E):
    if E == 1:
        s = a + b
        if s >= p:
            s -= p
        return s
    if p == 2:
        return a ^ b
    r = 0
    m = 1
    while a > 0 or b > 0:
        d = a % p + b % p
        if d >= p:
            d -= p
        r += d * m
        a //= p
        b //= p
        m *= p
    return r


@njit(cache=True)
def f_neg(a, p, E):
    if E == 1:
        return 0 if a == 0 else p - a
    if p == 2:
        return a
    r = 0
    m = 1
    while a > 0:
        d = a % p
        if d:
            r += (p - d) * m
        a //= p
        m *= p
    return r


@njit(cache=True)
def f_sub(a, b, p, E):
    return f_add(a, f_neg(b, p, E), p, E)


@njit(cache=True)
def f_mul(a, b, p, E, lg, ex):
    if a == 0 or b == 0:
        return 0
    if E == 1:
        return (a * b) % p
    return ex[lg[a] + lg[b]]


@njit(cache=True)
def f_pow(a, e, p, E, lg, ex):
    r = 1
    base = a
    while e > 0:
        if e & 1:
            r = f_mul(r, base, p, E, lg, ex)
        base = f_mul(base, base, p, E, lg, ex)
        e >>= 1
    return r


@njit(cache=True)
def f_inv(a, p, E, lg, ex):
    if E == 1:
        return f_pow(a, p - 2, p, E, lg, ex)
    q1 = ex.shape[0] // 2
    return ex[(q1 - lg[a]) % q1]


# ---------------------------------------------------------------- tables


@njit(cache=True)
def build_tables(mulg, p, E, Q):
    """Walk the powers of a primitive element given by its F_p-matrix ``mulg``.

    Returns ``(lg, ex, ok)``; ``ok`` is False when the element is not primitive.
    """
    lg = np.zeros(Q, dtype=np.int64)
    ex = np.zeros(2 * (Q - 1), dtype=np.int64)
    v = np.zeros(E, dtype=np.int64)
    w = np.zeros(E, dtype=np.int64)
    v[0] = 1
    for k in range(Q - 1):
        enc = 0
        m = 1
        for i in range(E):
            enc += v[i] * m
            m *= p
        if k > 0 and enc == 1:
            return lg, ex, False
        ex[k] = enc
        ex[k + Q - 1] = enc
        lg[enc] = k
        for i in range(E):
            s = 0
            for j in range(E):
                s += mulg[i, j] * v[j]
            w[i] = s % p
        for i in range(E):
            v[i] = w[i]
    return lg, ex, True


# ------------------------------------------------------------ polynomials


@njit(cache=True)
def trim_len(a):
    n = a.shape[0]
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


@njit(cache=True)
def poly_mul(a, b, p, E, lg, ex):
    la = a.shape[0]
    lb = b.shape[0]
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(la + lb - 1, dtype=np.int64)
    if E == 1 and p < _ACC_LIMIT and min(la, lb) < _ACC_LIMIT:
        for i in range(la):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(lb):
                out[i + j] += ai * b[j]
            if (i & 1023) == 1023:
                for t in range(out.shape[0]):
                    out[t] %= p
        for t in range(out.shape[0]):
            out[t] %= p
        return out
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(lb):
            if b[j]:
                out[i + j] = f_add(out[i + j], f_mul(ai, b[j], p, E, lg, ex), p, E)
    return out


@njit(cache=True)
def poly_divmod(a, b, p, E, lg, ex):
    """Quotient and remainder; ``b`` must have a nonzero last entry."""
    la = a.shape[0]
    lb = b.shape[0]
    r = a.copy()
    if la < lb:
        return np.zeros(0, dtype=np.int64), r
    q = np.zeros(la - lb + 1, dtype=np.int64)
    inv = f_inv(b[lb - 1], p, E, lg, ex)
    for i in range(la - 1, lb - 2, -1):
        c = r[i]
        if c == 0:
            continue
        c = f_mul(c, inv, p, E, lg, ex)
        q[i - lb + 1] = c
        off = i - lb + 1
        for j in range(lb):
            if b[j]:
                r[off + j] = f_sub(r[off + j], f_mul(c, b[j], p, E, lg, ex), p, E)
    return q, r[: lb - 1]


@njit(cache=True)
def poly_rem_monic(a, f, p, E, lg, ex):
    """Remainder of ``a`` modulo the monic ``f``, returned with length deg f."""
    n = f.shape[0] - 1
    r = np.zeros(max(a.shape[0], n), dtype=np.int64)
    r[: a.shape[0]] = a
    for i in range(r.shape[0] - 1, n - 1, -1):
        c = r[i]
        if c == 0:
            continue
        off = i - n
        for j in range(n):
            if f[j]:
                r[off + j] = f_sub(r[off + j], f_mul(c, f[j], p, E, lg, ex), p, E)
        r[i] = 0
    return r[:n].copy()


@njit(cache=True)
def poly_mulmod(a, b, f, p, E, lg, ex):
    return poly_rem_monic(poly_mul(a, b, p, E, lg, ex), f, p, E, lg, ex)


@njit(cache=True)
def poly_powmod(a, e, f, p, E, lg, ex):
    n = f.shape[0] - 1
    r = np.zeros(n, dtype=np.int64)
    r[0] = 1
    base = poly_rem_monic(a, f, p, E, lg, ex)
    while e > 0:
        if e & 1:
            r = poly_mulmod(r, base, f, p, E, lg, ex)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, f, p, E, lg, ex)
    return r


@njit(cache=True)
def poly_gcd(a, b, p, E, lg, ex):
    """Monic gcd (empty array when both inputs are zero)."""
    x = a[: trim_len(a)].copy()
    y = b[: trim_len(b)].copy()
    while y.shape[0] > 0:
        _, r = poly_divmod(x, y, p, E, lg, ex)
        x = y
        y = r[: trim_len(r)].copy()
    if x.shape[0] == 0:
        return x
    inv = f_inv(x[x.shape[0] - 1], p, E, lg, ex)
    for i in range(x.shape[0]):
        x[i] = f_mul(x[i], inv, p, E, lg, ex)
    return x


@njit(cache=True)
def poly_eval(c, x, p, E, lg, ex):
    r = 0
    for i in range(c.shape[0] - 1, -1, -1):
        r = f_add(f_mul(r, x, p, E, lg, ex), c[i], p, E)
    return r


# --------------------------------------------------------------- matrices


@njit(cache=True)
def mat_mul(A, B, p, E, lg, ex):
    n, k = A.shape
    m = B.shape[1]
    C = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for t in range(k):
            a = A[i, t]
            if a == 0:
                continue
            for j in range(m):
                b = B[t, j]
                if b:
                    C[i, j] = f_add(C[i, j], f_mul(a, b, p, E, lg, ex), p, E)
    return C


@njit(cache=True)
def mat_scale(A, s, p, E, lg, ex):
    n, m = A.shape
    C = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            C[i, j] = f_mul(A[i, j], s, p, E, lg, ex)
    return C


@njit(cache=True)
def mat_add(A, B, p, E):
    n, m = A.shape
    C = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            C[i, j] = f_add(A[i, j], B[i, j], p, E)
    return C


@njit(cache=True)
def hessenberg_charpoly(A, p, E, lg, ex):
    """det(T*I - A) by reduction to upper Hessenberg form, O(n^3)."""
    H = A.copy()
    n = H.shape[0]
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if H[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != j + 1:
            for c in range(n):
                t = H[piv, c]
                H[piv, c] = H[j + 1, c]
                H[j + 1, c] = t
            for r in range(n):
                t = H[r, piv]
                H[r, piv] = H[r, j + 1]
                H[r, j + 1] = t
        inv = f_inv(H[j + 1, j], p, E, lg, ex)
        for r in range(j + 2, n):
            if H[r, j] == 0:
                continue
            u = f_mul(H[r, j], inv, p, E, lg, ex)
            for c in range(j, n):
                if H[j + 1, c]:
                    H[r, c] = f_sub(H[r, c], f_mul(u, H[j + 1, c], p, E, lg, ex), p, E)
            for rr in range(n):
                if H[rr, r]:
                    H[rr, j + 1] = f_add(H[rr, j + 1], f_mul(u, H[rr, r], p, E, lg, ex), p, E)
    # leading principal minors of T*I - H
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for k in range(1, n + 1):
        h = f_neg(H[k - 1, k - 1], p, E)
        for t in range(k):
            c = P[k - 1, t]
            if c:
                P[k, t + 1] = f_add(P[k, t + 1], c, p, E)
                P[k, t] = f_add(P[k, t], f_mul(h, c, p, E, lg, ex), p, E)
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = f_mul(prod, H[i, i - 1], p, E, lg, ex)
            if prod == 0:
                break
            w = f_mul(H[i - 1, k - 1], prod, p, E, lg, ex)
            if w == 0:
                continue
            for t in range(i):
                c = P[i - 1, t]
                if c:
                    P[k, t] = f_sub(P[k, t], f_mul(w, c, p, E, lg, ex), p, E)
    return P[n].copy()


@njit(cache=True)
def nullspace(A, p, E, lg, ex):
    """Basis (as rows) of the right kernel of A."""
    M = A.copy()
    n, m = M.shape
    pivcols = np.full(n, -1, dtype=np.int64)
    row = 0
    for col in range(m):
        if row >= n:
            break
        piv = -1
        for i in range(row, n):
            if M[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        for c in range(m):
            t = M[piv, c]
            M[piv, c] = M[row, c]
            M[row, c] = t
        inv = f_inv(M[row, col], p, E, lg, ex)
        for c in range(m):
            M[row, c] = f_mul(M[row, c], inv, p, E, lg, ex)
        for i in range(n):
            if i != row and M[i, col] != 0:
                u = M[i, col]
                for c in range(m):
                    if M[row, c]:
                        M[i, c] = f_sub(M[i, c], f_mul(u, M[row, c], p, E, lg, ex), p, E)
        pivcols[row] = col
        row += 1
    rank = row
    is_piv = np.zeros(m, dtype=np.bool_)
    for i in range(rank):
        is_piv[pivcols[i]] = True
    basis = np.zeros((m - rank, m), dtype=np.int64)
    k = 0
    for free in range(m):
        if is_piv[free]:
            continue
        basis[k, free] = 1
        for i in range(rank):
            basis[k, pivcols[i]] = f_neg(M[i, free], p, E)
        k += 1
    return basis


@njit(cache=True)
def _mulx_inplace(v, f, p, E, lg, ex):
    n = v.shape[0]
    lead = v[n - 1]
    for i in range(n - 1, 0, -1):
        v[i] = v[i - 1]
    v[0] = 0
    if lead:
        for i in range(n):
            if f[i]:
                v[i] = f_sub(v[i], f_mul(lead, f[i], p, E, lg, ex), p, E)


@njit(cache=True)
def frobenius_matrix(f, q, p, E, lg, ex):
    """Columns are the coordinates of X^(q*j) mod f, j = 0..deg f - 1."""
    n = f.shape[0] - 1
    M = np.zeros((n, n), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1
    M[0, 0] = 1
    if q <= n:
        for j in range(1, n):
            for _ in range(q):
                _mulx_inplace(v, f, p, E, lg, ex)
            for i in range(n):
                M[i, j] = v[i]
    else:
        x = np.zeros(2, dtype=np.int64)
        x[1] = 1
        h = poly_powmod(x, q, f, p, E, lg, ex)
        for j in range(1, n):
            v = poly_mulmod(v, h, f, p, E, lg, ex)
            for i in range(n):
                M[i, j] = v[i]
    return M


@njit(cache=True)
def multiplication_matrix(t, f, p, E, lg, ex):
    """Matrix of y -> t*y on F[X]/(f) in the power basis."""
    n = f.shape[0] - 1
    M = np.zeros((n, n), dtype=np.int64)
    v = t.copy()
    for j in range(n):
        if j:
            _mulx_inplace(v, f, p, E, lg, ex)
        for i in range(n):
            M[i, j] = v[i]
    return M


# ------------------------------------------------------ recurrence at points


@njit(cache=True)
def _term_one(x, cmat, clen, smat, slen, d, ell, p, E, lg, ex):
    cx = np.zeros(d, dtype=np.int64)
    u = np.zeros(d, dtype=np.int64)
    for i in range(d):
        cx[i] = poly_eval(cmat[i, : clen[i]], x, p, E, lg, ex)
    # state [a_d, ..., a_1] evaluated at x
    for i in range(d):
        u[d - 1 - i] = poly_eval(smat[i, : slen[i]], x, p, E, lg, ex)
    if ell <= d:
        return u[d - ell]
    B = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        B[0, j] = cx[d - 1 - j]
    for i in range(1, d):
        B[i, i - 1] = 1
    tmp = np.zeros((d, d), dtype=np.int64)
    w = np.zeros(d, dtype=np.int64)
    k = ell - d
    while k > 0:
        if k & 1:
            for i in range(d):
                s = 0
                for j in range(d):
                    s = f_add(s, f_mul(B[i, j], u[j], p, E, lg, ex), p, E)
                w[i] = s
            for i in range(d):
                u[i] = w[i]
        k >>= 1
        if k:
            for i in range(d):
                for j in range(d):
                    s = 0
                    for t in range(d):
                        s = f_add(s, f_mul(B[i, t], B[t, j], p, E, lg, ex), p, E)
                    tmp[i, j] = s
            for i in range(d):
                for j in range(d):
                    B[i, j] = tmp[i, j]
    return u[0]


@njit(cache=True)
def terms_at_points(points, cmat, clen, smat, slen, d, ell, p, E, lg, ex):
    out = np.zeros(points.shape[0], dtype=np.int64)
    for i in range(points.shape[0]):
        out[i] = _term_one(points[i], cmat, clen, smat, slen, d, ell, p, E, lg, ex)
    return out


@njit(cache=True, parallel=True)
def terms_at_points_parallel(points, cmat, clen, smat, slen, d, ell, p, E, lg, ex):
    out = np.zeros(points.shape[0], dtype=np.int64)
    for i in prange(points.shape[0]):
        out[i] = _term_one(points[i], cmat, clen, smat, slen, d, ell, p, E, lg, ex)
    return out


# ------------------------------------------------- subspace interpolation


@njit(cache=True)
def _eval_linearized(sig, k, x, p, E, lg, ex):
    acc = 0
    xp = x
    for i in range(k + 1):
        if sig[i]:
            acc = f_add(acc, f_mul(sig[i], xp, p, E, lg, ex), p, E)
        xp = f_pow(xp, p, p, E, lg, ex)
    return acc


@njit(cache=True)
def subspace_interpolate(y, J, c, p, E, lg, ex):
    """Interpolate through the points with encodings 0..N-1, N = c*p^J.

    Those points form c cosets of the F_p-span W_J of the first J basis
    vectors. Vanishing polynomials of cosets of W_k are sparse (terms at
    degrees p^i only), so the Lagrange sum is assembled bottom-up with
    O(N p J^2) field operations.
    """
    N = y.shape[0]
    pw = np.ones(J + 2, dtype=np.int64)
    for i in range(1, J + 2):
        pw[i] = pw[i - 1] * p
    sig = np.zeros((J + 1, J + 1), dtype=np.int64)
    beta = np.zeros(J + 1, dtype=np.int64)
    sig[0, 0] = 1
    for k in range(J + 1):
        beta[k] = _eval_linearized(sig[k], k, pw[k], p, E, lg, ex)
        if k < J:
            bp = f_pow(beta[k], p - 1, p, E, lg, ex)
            sig[k + 1, 0] = f_neg(f_mul(bp, sig[k, 0], p, E, lg, ex), p, E)
            for i in range(1, k + 2):
                t = f_pow(sig[k, i - 1], p, p, E, lg, ex)
                u = f_mul(bp, sig[k, i], p, E, lg, ex) if i <= k else 0
                sig[k + 1, i] = f_sub(t, u, p, E)

    # derivative of the full vanishing polynomial at each coset
    pj = pw[J]
    dinv = np.zeros(c, dtype=np.int64)
    for a0 in range(c):
        dn = sig[J, 0]
        for b in range(c):
            if b != a0:
                dn = f_mul(dn, f_mul((a0 - b) % p, beta[J], p, E, lg, ex), p, E, lg, ex)
        dinv[a0] = f_inv(dn, p, E, lg, ex)
    cur = np.zeros(N, dtype=np.int64)
    for i in range(N):
        cur[i] = f_mul(y[i], dinv[i // pj], p, E, lg, ex)

    nb = N
    for k in range(J + 1):
        C = p if k < J else c
        if C == 1:
            continue
        bs = pw[k]
        nbp = nb // C
        # ecoef[a, j]: coefficient of Y^j in prod_{b != a} (Y - b*beta_k)
        ecoef = np.zeros((C, C), dtype=np.int64)
        for a in range(C):
            ecoef[a, 0] = 1
            deg = 0
            for b in range(C):
                if b == a:
                    continue
                root = f_mul(b % p, beta[k], p, E, lg, ex)
                nr = f_neg(root, p, E)
                for j in range(deg + 1, 0, -1):
                    ecoef[a, j] = f_add(ecoef[a, j - 1], f_mul(nr, ecoef[a, j], p, E, lg, ex), p, E)
                ecoef[a, 0] = f_mul(nr, ecoef[a, 0], p, E, lg, ex)
                deg += 1
        new = np.zeros(N, dtype=np.int64)
        G = np.zeros((C, bs), dtype=np.int64)
        R = np.zeros(C * bs, dtype=np.int64)
        tmp = np.zeros(C * bs, dtype=np.int64)
        for P in range(nbp):
            base = P * C * bs
            sv = _eval_linearized(sig[k], k, base, p, E, lg, ex)
            nsv = f_neg(sv, p, E)
            for j in range(C):
                for t in range(bs):
                    G[j, t] = 0
            for a in range(C):
                off = base + a * bs
                for j in range(C):
                    e = ecoef[a, j]
                    if e == 0:
                        continue
                    for t in range(bs):
                        if cur[off + t]:
                            G[j, t] = f_add(G[j, t], f_mul(e, cur[off + t], p, E, lg, ex), p, E)
            for t in range(C * bs):
                R[t] = 0
            for t in range(bs):
                R[t] = G[C - 1, t]
            rlen = bs
            for j in range(C - 2, -1, -1):
                for t in range(rlen + bs):
                    tmp[t] = 0
                for t in range(rlen):
                    r = R[t]
                    if r == 0:
                        continue
                    tmp[t] = f_add(tmp[t], f_mul(nsv, r, p, E, lg, ex), p, E)
                    for i in range(k + 1):
                        s = sig[k, i]
                        if s:
                            tmp[t + pw[i]] = f_add(tmp[t + pw[i]], f_mul(s, r, p, E, lg, ex), p, E)
                for t in range(bs):
                    tmp[t] = f_add(tmp[t], G[j, t], p, E)
                rlen += bs
                for t in range(rlen):
                    R[t] = tmp[t]
            for t in range(C * bs):
                new[base + t] = R[t]
        cur = new
        nb = nbp
    return cur
