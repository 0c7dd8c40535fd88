# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels.

Same contracts as ``powerposet._kernels_py``.  The plain variants
require masks that fit one machine word; the ``_wide`` variants pack
masks into word arrays and handle any width, which matters for
hyperspace towers whose bases outgrow 64 elements.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64


cdef int _load_words(object masks, Py_ssize_t m, Py_ssize_t nw, u64 *buf) except -1:
    cdef Py_ssize_t i
    cdef const unsigned char[::1] view
    for i in range(m):
        data = masks[i].to_bytes(nw * 8, "little")
        view = data
        memcpy(&buf[i * nw], &view[0], nw * 8)
    return 0


def transitive_closure(rows):
    cdef int n = len(rows)
    cdef u64 *r = <u64 *> malloc(n * sizeof(u64))
    if r == NULL:
        raise MemoryError()
    cdef int i, k
    cdef u64 rk, bit
    try:
        for i in range(n):
            r[i] = <u64> rows[i]
        for k in range(n):
            rk = r[k]
            bit = (<u64> 1) << k
            for i in range(n):
                if r[i] & bit:
                    r[i] |= rk
        return [r[i] for i in range(n)]
    finally:
        free(r)


def downset_masks(pred_rows, cap):
    cdef int n = len(pred_rows)
    cdef long long limit = cap
    cdef u64 *pred = <u64 *> malloc(n * sizeof(u64)) if n else NULL
    cdef int i, t
    if n and pred == NULL:
        raise MemoryError()
    order = sorted(range(n), key=lambda j: (bin(pred_rows[j]).count("1"), j))
    cdef long long size = 1, used = 1, j, grown
    cdef u64 *buf = <u64 *> malloc(size_hint(limit) * sizeof(u64))
    if buf == NULL:
        if pred != NULL:
            free(pred)
        raise MemoryError()
    cdef u64 req, bit, d
    try:
        for i in range(n):
            pred[i] = <u64> pred_rows[i]
        buf[0] = 0
        for t in range(n):
            i = order[t]
            req = pred[i] & ~((<u64> 1) << i)
            bit = (<u64> 1) << i
            grown = 0
            for j in range(used):
                d = buf[j]
                if req & ~d == 0:
                    if used + grown >= size_hint(limit):
                        return None
                    buf[used + grown] = d | bit
                    grown += 1
            used += grown
            if used > limit:
                return None
        out = [buf[j] for j in range(used)]
        out.sort()
        return out
    finally:
        free(buf)
        if pred != NULL:
            free(pred)


cdef inline long long size_hint(long long cap):
    # one slot of headroom so overshoot is detectable before writing
    return cap + 2


def transpose_rows(rows):
    # byte-packed transpose; handles matrices wider than one machine word
    cdef Py_ssize_t n = len(rows), i, j
    cdef Py_ssize_t nb = (n + 7) >> 3
    if n == 0:
        return []
    out_buf = bytearray(n * nb)
    cdef unsigned char[::1] ob = out_buf
    cdef const unsigned char[::1] rb
    for i in range(n):
        data = rows[i].to_bytes(nb, "little")
        rb = data
        for j in range(n):
            if (rb[j >> 3] >> (j & 7)) & 1:
                ob[j * nb + (i >> 3)] |= <unsigned char> (1 << (i & 7))
    return [
        int.from_bytes(bytes(out_buf[j * nb:(j + 1) * nb]), "little")
        for j in range(n)
    ]


def containment_rows(elements):
    cdef int m = len(elements)
    cdef u64 *e = <u64 *> malloc(m * sizeof(u64)) if m else NULL
    cdef int i, j, lo, hi, w, nwords
    cdef u64 a, word
    if m and e == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            e[i] = <u64> elements[i]
        nwords = (m + 63) >> 6
        rows = []
        for i in range(m):
            a = e[i]
            row = 0
            for w in range(nwords - 1, -1, -1):
                lo = w << 6
                hi = min(lo + 64, m)
                word = 0
                for j in range(hi - 1, lo - 1, -1):
                    word <<= 1
                    if a & ~e[j] == 0:
                        word |= 1
                row = (row << 64) | word
            rows.append(row)
        return rows
    finally:
        if e != NULL:
            free(e)


def image_rows(rows, image, width):
    """Push row masks of any width through an index map, bytes-packed."""
    cdef Py_ssize_t n = len(rows), i, j
    cdef Py_ssize_t nb = ((width if width > 0 else 1) + 7) >> 3
    cdef Py_ssize_t m = len(image)
    cdef Py_ssize_t ob_size
    cdef long long *img = <long long *> malloc(m * sizeof(long long)) if m else NULL
    cdef long long target_max = 0, v
    if m and img == NULL:
        raise MemoryError()
    try:
        for j in range(m):
            v = image[j]
            img[j] = v
            if v > target_max:
                target_max = v
        ob_size = ((target_max + 1) + 7) >> 3
        out = []
        acc_buf = bytearray(ob_size)
        cdef_view = acc_buf  # keep a reference; memoryview below
        for i in range(n):
            data = rows[i].to_bytes(nb, "little")
            _accumulate(data, img, acc_buf, nb, ob_size)
            out.append(int.from_bytes(bytes(acc_buf), "little"))
        return out
    finally:
        if img != NULL:
            free(img)


cdef void _accumulate(bytes data, long long *img, object acc_buf,
                      Py_ssize_t nb, Py_ssize_t ob_size):
    cdef const unsigned char[::1] rb = data
    cdef unsigned char[::1] ob = acc_buf
    cdef Py_ssize_t j, k
    cdef long long v
    memset(&ob[0], 0, ob_size)
    for j in range(nb):
        if rb[j]:
            for k in range(8):
                if rb[j] >> k & 1:
                    v = img[(j << 3) + k]
                    ob[v >> 3] |= <unsigned char> (1 << (v & 7))


def containment_rows_wide(elements, width):
    """Subset rows for masks of any width, packed into word arrays."""
    cdef Py_ssize_t m = len(elements), i, j, w
    cdef Py_ssize_t nw = ((width if width > 0 else 1) + 63) >> 6
    cdef Py_ssize_t mb = (m + 7) >> 3
    if m == 0:
        return []
    cdef u64 *e = <u64 *> malloc(m * nw * sizeof(u64))
    if e == NULL:
        raise MemoryError()
    row_buf = bytearray(mb)
    cdef unsigned char[::1] rb = row_buf
    cdef u64 *a
    cdef u64 *b
    cdef bint ok
    try:
        _load_words(elements, m, nw, e)
        rows = []
        for i in range(m):
            memset(&rb[0], 0, mb)
            a = &e[i * nw]
            for j in range(m):
                b = &e[j * nw]
                ok = True
                for w in range(nw):
                    if a[w] & ~b[w]:
                        ok = False
                        break
                if ok:
                    rb[j >> 3] |= <unsigned char> (1 << (j & 7))
            rows.append(int.from_bytes(bytes(row_buf), "little"))
        return rows
    finally:
        free(e)


def downset_masks_wide(pred_rows, width, cap):
    """Down-set enumeration for posets wider than one machine word."""
    cdef Py_ssize_t n = len(pred_rows), i, t, w
    cdef Py_ssize_t nw = ((width if width > 0 else 1) + 63) >> 6
    cdef long long limit = cap
    cdef long long room = limit + 2
    if n == 0:
        return [0]
    order = sorted(range(n), key=lambda j: (pred_rows[j].bit_count(), j))
    cdef u64 *pred = <u64 *> malloc(n * nw * sizeof(u64))
    cdef u64 *buf = <u64 *> malloc(room * nw * sizeof(u64))
    cdef u64 *req = <u64 *> malloc(nw * sizeof(u64))
    if pred == NULL or buf == NULL or req == NULL:
        if pred != NULL:
            free(pred)
        if buf != NULL:
            free(buf)
        if req != NULL:
            free(req)
        raise MemoryError()
    cdef long long used = 1, grown, j
    cdef Py_ssize_t elem, wi
    cdef u64 bit
    cdef u64 *d
    cdef bint ok
    try:
        _load_words(pred_rows, n, nw, pred)
        memset(buf, 0, nw * sizeof(u64))
        for t in range(n):
            elem = order[t]
            wi = elem >> 6
            bit = (<u64> 1) << (elem & 63)
            for w in range(nw):
                req[w] = pred[elem * nw + w]
            req[wi] &= ~bit
            grown = 0
            for j in range(used):
                d = &buf[j * nw]
                ok = True
                for w in range(nw):
                    if req[w] & ~d[w]:
                        ok = False
                        break
                if ok:
                    if used + grown >= room:
                        return None
                    memcpy(&buf[(used + grown) * nw], d, nw * sizeof(u64))
                    buf[(used + grown) * nw + wi] |= bit
                    grown += 1
            used += grown
            if used > limit:
                return None
        out = [
            int.from_bytes((<unsigned char *> &buf[j * nw])[:nw * 8], "little")
            for j in range(used)
        ]
        out.sort()
        return out
    finally:
        free(req)
        free(buf)
        free(pred)
