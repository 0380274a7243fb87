"""Pure-Python hot kernels.

Two coefficient rings are supported, both with integer components:

* ``2``: Gaussian integers ``(re, im)``;
* ``4``: ``Z[i][sqrt(s)]`` elements ``(a, b, c, d)`` meaning
  ``a + b*i + (c + d*i)*sqrt(s)``.

Polynomial terms are keyed by packed monomial integers (see
``hermrank.poly``), so a product of monomials is a sum of keys.  The compiled
twin in ``_ckernels.pyx`` exposes the same functions with the same contracts.
"""

from __future__ import annotations

MASK = 0xFFFF


def conv2(a: dict, b: dict, trunc=None) -> dict:
    """Product of two Gaussian-integer polynomials given as ``{key: (re, im)}``.

    ``trunc`` is ``None`` or ``(shift_hol, shift_anti, max_hol, max_anti)``:
    products whose holomorphic / antiholomorphic degree fields exceed the
    bounds are dropped.
    """
    out_re: dict = {}
    out_im: dict = {}
    gr = out_re.get
    gi = out_im.get
    if trunc is None:
        bl = [(kb, br, bi) for kb, (br, bi) in b.items()]
        for ka, (ar, ai) in a.items():
            for kb, br, bi in bl:
                k = ka + kb
                out_re[k] = gr(k, 0) + ar * br - ai * bi
                out_im[k] = gi(k, 0) + ar * bi + ai * br
    else:
        sh, sa, mh, ma = trunc
        bl = [(kb, br, bi, (kb >> sh) & MASK, (kb >> sa) & MASK)
              for kb, (br, bi) in b.items()]
        for ka, (ar, ai) in a.items():
            ha = mh - ((ka >> sh) & MASK)
            aa = ma - ((ka >> sa) & MASK)
            if ha < 0 or aa < 0:
                continue
            for kb, br, bi, hb, ab in bl:
                if hb > ha or ab > aa:
                    continue
                k = ka + kb
                out_re[k] = gr(k, 0) + ar * br - ai * bi
                out_im[k] = gi(k, 0) + ar * bi + ai * br
    return {k: (r, out_im[k]) for k, r in out_re.items() if r or out_im[k]}


def mul4(x, y, s):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e - b * f + s * (c * g - d * h),
            a * f + b * e + s * (c * h + d * g),
            a * g - b * h + c * e - d * f,
            a * h + b * g + c * f + d * e)


def conv4(a: dict, b: dict, s: int, trunc=None) -> dict:
    """As :func:`conv2` over ``Z[i][sqrt(s)]``."""
    out: dict = {}
    get = out.get
    if trunc is None:
        sh = sa = 0
        mh = ma = None
    else:
        sh, sa, mh, ma = trunc
    bl = list(b.items())
    for ka, x in a.items():
        if mh is not None:
            ha = mh - ((ka >> sh) & MASK)
            aa = ma - ((ka >> sa) & MASK)
            if ha < 0 or aa < 0:
                continue
        for kb, y in bl:
            if mh is not None and (((kb >> sh) & MASK) > ha or ((kb >> sa) & MASK) > aa):
                continue
            k = ka + kb
            p = mul4(x, y, s)
            cur = get(k)
            if cur is None:
                out[k] = p
            else:
                out[k] = (cur[0] + p[0], cur[1] + p[1], cur[2] + p[2], cur[3] + p[3])
    return {k: v for k, v in out.items() if v[0] or v[1] or v[2] or v[3]}


def bareiss_rank2(re: list, im: list) -> int:
    """Rank of a Gaussian-integer matrix by fraction-free elimination.

    ``re`` and ``im`` are row-major lists of lists and are overwritten.
    Every division by the previous pivot is exact in ``Z[i]``.
    """
    m = len(re)
    if m == 0:
        return 0
    ncols = len(re[0])
    pr, pi = 1, 0
    row = 0
    for col in range(ncols):
        piv = -1
        for r in range(row, m):
            if re[r][col] or im[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            re[piv], re[row] = re[row], re[piv]
            im[piv], im[row] = im[row], im[piv]
        Kr = re[row]
        Ki = im[row]
        ar, ai = Kr[col], Ki[col]
        norm = pr * pr + pi * pi
        trivial = pi == 0 and pr == 1
        for r in range(row + 1, m):
            Rr = re[r]
            Ri = im[r]
            br, bi = Rr[col], Ri[col]
            if trivial:
                for j in range(col + 1, ncols):
                    xr, xi, yr, yi = Rr[j], Ri[j], Kr[j], Ki[j]
                    Rr[j] = ar * xr - ai * xi - br * yr + bi * yi
                    Ri[j] = ar * xi + ai * xr - br * yi - bi * yr
            else:
                for j in range(col + 1, ncols):
                    xr, xi, yr, yi = Rr[j], Ri[j], Kr[j], Ki[j]
                    tr = ar * xr - ai * xi - br * yr + bi * yi
                    ti = ar * xi + ai * xr - br * yi - bi * yr
                    Rr[j] = (tr * pr + ti * pi) // norm
                    Ri[j] = (ti * pr - tr * pi) // norm
            Rr[col] = 0
            Ri[col] = 0
        pr, pi = ar, ai
        row += 1
        if row == m:
            break
    return row


def bareiss_rank4(rows: list, s: int) -> int:
    """Rank over ``Z[i][sqrt(s)]``; ``rows`` holds 4-tuples and is overwritten."""
    m = len(rows)
    if m == 0:
        return 0
    ncols = len(rows[0])
    # dividing by the previous pivot p means multiplying by q = p~ * conj(p p~)
    # and dividing componentwise by the integer N = |p p~|^2
    q = (1, 0, 0, 0)
    norm = 1
    row = 0
    for col in range(ncols):
        piv = -1
        for r in range(row, m):
            v = rows[r][col]
            if v[0] or v[1] or v[2] or v[3]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            rows[piv], rows[row] = rows[row], rows[piv]
        K = rows[row]
        a = K[col]
        for r in range(row + 1, m):
            R = rows[r]
            b = R[col]
            nb = (-b[0], -b[1], -b[2], -b[3])
            for j in range(col + 1, ncols):
                t1 = mul4(a, R[j], s)
                t2 = mul4(nb, K[j], s)
                t = (t1[0] + t2[0], t1[1] + t2[1], t1[2] + t2[2], t1[3] + t2[3])
                if norm != 1:
                    t = mul4(t, q, s)
                    t = (t[0] // norm, t[1] // norm, t[2] // norm, t[3] // norm)
                R[j] = t
            R[col] = (0, 0, 0, 0)
        tilde = (a[0], a[1], -a[2], -a[3])
        n1 = mul4(a, tilde, s)  # radical part vanishes
        q = mul4(tilde, (n1[0], -n1[1], 0, 0), s)
        norm = n1[0] * n1[0] + n1[1] * n1[1]
        row += 1
        if row == m:
            break
    return row
