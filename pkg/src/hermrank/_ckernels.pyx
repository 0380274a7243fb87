# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same contracts as ``hermrank._kernels_py``.

Coefficients stay arbitrary-precision Python integers (exactness forbids
fixed-width arithmetic); the speedup comes from typed indexing and loop
control.
"""

cdef Py_ssize_t MASK = 0xFFFF


def conv2(dict a, dict b, trunc=None):
    cdef dict out_re = {}
    cdef dict out_im = {}
    cdef list bl
    cdef Py_ssize_t nb, j, sh, sa, mh, ma, ha, aa
    cdef object ka, kb, k, ar, ai, br, bi
    cdef tuple item
    if trunc is None:
        bl = [(kb, v[0], v[1]) for kb, v in b.items()]
        nb = len(bl)
        for ka, v in a.items():
            ar = v[0]
            ai = v[1]
            for j in range(nb):
                item = <tuple>bl[j]
                kb = item[0]
                br = item[1]
                bi = item[2]
                k = ka + kb
                out_re[k] = out_re.get(k, 0) + ar * br - ai * bi
                out_im[k] = out_im.get(k, 0) + ar * bi + ai * br
    else:
        sh, sa, mh, ma = trunc
        bl = [(kb, v[0], v[1], (kb >> sh) & MASK, (kb >> sa) & MASK) for kb, v in b.items()]
        nb = len(bl)
        for ka, v in a.items():
            ha = mh - ((ka >> sh) & MASK)
            aa = ma - ((ka >> sa) & MASK)
            if ha < 0 or aa < 0:
                continue
            ar = v[0]
            ai = v[1]
            for j in range(nb):
                item = <tuple>bl[j]
                if <Py_ssize_t>item[3] > ha or <Py_ssize_t>item[4] > aa:
                    continue
                kb = item[0]
                br = item[1]
                bi = item[2]
                k = ka + kb
                out_re[k] = out_re.get(k, 0) + ar * br - ai * bi
                out_im[k] = out_im.get(k, 0) + ar * bi + ai * br
    return {k: (r, out_im[k]) for k, r in out_re.items() if r or out_im[k]}


cdef inline tuple _mul4(tuple x, tuple y, object s):
    cdef object a = x[0], b = x[1], c = x[2], d = x[3]
    cdef object e = y[0], f = y[1], g = y[2], h = y[3]
    return (a * e - b * f + s * (c * g - d * h),
            a * f + b * e + s * (c * h + d * g),
            a * g - b * h + c * e - d * f,
            a * h + b * g + c * f + d * e)


def mul4(x, y, s):
    return _mul4(tuple(x), tuple(y), s)


def conv4(dict a, dict b, s, trunc=None):
    cdef dict out = {}
    cdef list bl = list(b.items())
    cdef Py_ssize_t nb = len(bl), j, sh = 0, sa = 0, mh = 0, ma = 0, ha = 0, aa = 0
    cdef bint use_trunc = trunc is not None
    cdef object ka, kb, k, cur
    cdef tuple x, y, p, item
    if use_trunc:
        sh, sa, mh, ma = trunc
    for ka, x in a.items():
        if use_trunc:
            ha = mh - ((ka >> sh) & MASK)
            aa = ma - ((ka >> sa) & MASK)
            if ha < 0 or aa < 0:
                continue
        for j in range(nb):
            item = <tuple>bl[j]
            kb = item[0]
            if use_trunc and (((kb >> sh) & MASK) > ha or ((kb >> sa) & MASK) > aa):
                continue
            y = <tuple>item[1]
            k = ka + kb
            p = _mul4(x, y, s)
            cur = out.get(k)
            if cur is None:
                out[k] = p
            else:
                out[k] = (cur[0] + p[0], cur[1] + p[1], cur[2] + p[2], cur[3] + p[3])
    return {k: v for k, v in out.items() if v[0] or v[1] or v[2] or v[3]}


def bareiss_rank2(list re, list im):
    cdef Py_ssize_t m = len(re), ncols, row = 0, col, r, j, piv
    cdef list Kr, Ki, Rr, Ri
    cdef object pr = 1, pi = 0, ar, ai, br, bi, norm, xr, xi, yr, yi, tr, ti
    cdef bint trivial
    if m == 0:
        return 0
    ncols = len(<list>re[0])
    for col in range(ncols):
        piv = -1
        for r in range(row, m):
            if (<list>re[r])[col] or (<list>im[r])[col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            re[piv], re[row] = re[row], re[piv]
            im[piv], im[row] = im[row], im[piv]
        Kr = <list>re[row]
        Ki = <list>im[row]
        ar = Kr[col]
        ai = Ki[col]
        norm = pr * pr + pi * pi
        trivial = pi == 0 and pr == 1
        for r in range(row + 1, m):
            Rr = <list>re[r]
            Ri = <list>im[r]
            br = Rr[col]
            bi = Ri[col]
            if trivial:
                for j in range(col + 1, ncols):
                    xr = Rr[j]; xi = Ri[j]; yr = Kr[j]; yi = Ki[j]
                    Rr[j] = ar * xr - ai * xi - br * yr + bi * yi
                    Ri[j] = ar * xi + ai * xr - br * yi - bi * yr
            else:
                for j in range(col + 1, ncols):
                    xr = Rr[j]; xi = Ri[j]; yr = Kr[j]; yi = Ki[j]
                    tr = ar * xr - ai * xi - br * yr + bi * yi
                    ti = ar * xi + ai * xr - br * yi - bi * yr
                    Rr[j] = (tr * pr + ti * pi) // norm
                    Ri[j] = (ti * pr - tr * pi) // norm
            Rr[col] = 0
            Ri[col] = 0
        pr = ar
        pi = ai
        row += 1
        if row == m:
            break
    return row


def bareiss_rank4(list rows, s):
    cdef Py_ssize_t m = len(rows), ncols, row = 0, col, r, j, piv
    cdef list K, R
    cdef tuple a, b, nb, t, t1, t2, v, tilde, n1
    cdef tuple q = (1, 0, 0, 0)
    cdef object norm = 1
    if m == 0:
        return 0
    ncols = len(<list>rows[0])
    for col in range(ncols):
        piv = -1
        for r in range(row, m):
            v = <tuple>(<list>rows[r])[col]
            if v[0] or v[1] or v[2] or v[3]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            rows[piv], rows[row] = rows[row], rows[piv]
        K = <list>rows[row]
        a = <tuple>K[col]
        for r in range(row + 1, m):
            R = <list>rows[r]
            b = <tuple>R[col]
            nb = (-b[0], -b[1], -b[2], -b[3])
            for j in range(col + 1, ncols):
                t1 = _mul4(a, <tuple>R[j], s)
                t2 = _mul4(nb, <tuple>K[j], s)
                t = (t1[0] + t2[0], t1[1] + t2[1], t1[2] + t2[2], t1[3] + t2[3])
                if norm != 1:
                    t = _mul4(t, q, s)
                    t = (t[0] // norm, t[1] // norm, t[2] // norm, t[3] // norm)
                R[j] = t
            R[col] = (0, 0, 0, 0)
        tilde = (a[0], a[1], -a[2], -a[3])
        n1 = _mul4(a, tilde, s)
        q = _mul4(tilde, (n1[0], -n1[1], 0, 0), s)
        norm = n1[0] * n1[0] + n1[1] * n1[1]
        row += 1
        if row == m:
            break
    return row
