"""Pure-Python bitmask kernels.

Reference implementation of the hot inner loops; ``powerposet.kernels``
swaps in the compiled twin (same signatures) when it is importable and
the carrier fits in 64 bits.  Masks are plain ints, so this version
works for carriers of any size.
"""


def transitive_closure(rows):
    """Warshall closure of a relation given as per-row bitmasks."""
    out = list(rows)
    n = len(out)
    for k in range(n):
        rk = out[k]
        bit = 1 << k
        for i in range(n):
            if out[i] & bit:
                out[i] |= rk
    return out


def downset_masks(pred_rows, cap):
    """All down-sets of a finite poset, ascending by mask value.

    ``pred_rows[i]`` holds everything <= i, including i itself.  Returns
    None as soon as more than ``cap`` down-sets exist.
    """
    n = len(pred_rows)
    # linear extension: predecessors first
    order = sorted(range(n), key=lambda i: (bin(pred_rows[i]).count("1"), i))
    out = [0]
    for i in order:
        req = pred_rows[i] & ~(1 << i)
        bit = 1 << i
        # a down-set of the prefix extends with i iff it already holds
        # every strict predecessor of i
        grown = [d | bit for d in out if req & ~d == 0]
        out.extend(grown)
        if len(out) > cap:
            return None
    out.sort()
    return out


def containment_rows(elements):
    """Subset relation among masks: bit j of row i is set iff e_i <= e_j."""
    m = len(elements)
    rows = []
    for a in elements:
        r = 0
        for j in range(m):
            if a & ~elements[j] == 0:
                r |= 1 << j
        rows.append(r)
    return rows


def transpose_rows(rows):
    """Transpose a square bit matrix given as per-row masks."""
    cols = [0] * len(rows)
    for i, row in enumerate(rows):
        bit = 1 << i
        m = row
        while m:
            low = m & -m
            cols[low.bit_length() - 1] |= bit
            m ^= low
    return cols


def image_rows(rows, image):
    """Push each row mask through an index map: bit j becomes bit image[j]."""
    out = []
    for row in rows:
        acc = 0
        m = row
        while m:
            low = m & -m
            acc |= 1 << image[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return out
