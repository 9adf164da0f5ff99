"""Pure-Python implementations of the hot kernels.

Mirrors ``_kernels.pyx`` exactly; used when the extension is not built or
when ``RELFORGE_PURE_PYTHON=1``.
"""


def subset_profile(n, edges_a, edges_b, u=-1, v=-1):
    """Tally edge subsets by size.

    Returns ``(connected, split)`` where ``connected[k]`` counts k-edge subsets
    whose spanning subgraph is connected, and ``split[k]`` counts those with
    exactly two components separating ``u`` from ``v`` (all zero if ``u < 0``).
    """
    m = len(edges_a)
    connected = [0] * (m + 1)
    split = [0] * (m + 1)
    want_split = u >= 0
    parent = list(range(n))
    for mask in range(1 << m):
        for i in range(n):
            parent[i] = i
        comps = n
        size = 0
        bits = mask
        while bits:
            low = bits & -bits
            e = low.bit_length() - 1
            bits ^= low
            size += 1
            x = edges_a[e]
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            y = edges_b[e]
            while parent[y] != y:
                parent[y] = parent[parent[y]]
                y = parent[y]
            if x != y:
                parent[x] = y
                comps -= 1
        if comps == 1:
            connected[size] += 1
        elif comps == 2 and want_split:
            x = u
            while parent[x] != x:
                x = parent[x]
            y = v
            while parent[y] != y:
                y = parent[y]
            if x != y:
                split[size] += 1
    return connected, split


def taylor_shift(coeffs, a):
    """In place: replace ``p(x)`` by ``p(x + a)`` (coefficients low first)."""
    d = len(coeffs) - 1
    if a == 0 or d < 1:
        return coeffs
    if a == 1:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                coeffs[j] += coeffs[j + 1]
    else:
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                coeffs[j] += a * coeffs[j + 1]
    return coeffs


def sign_variations(coeffs):
    """Number of sign changes in a coefficient sequence, zeros skipped."""
    count = 0
    last = 0
    for c in coeffs:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                count += 1
            last = s
    return count
