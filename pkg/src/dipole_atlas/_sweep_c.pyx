# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep over rooted dipoles; same contract as ``_sweep_py.sweep``."""
from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memset


cdef bint _next_permutation(int *a, int lo, int hi):
    # lexicographic successor of a[lo:hi]; False after the last one
    cdef int i = hi - 2, j, t
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = hi - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = hi - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


def sweep(int n):
    cdef int *seq = <int *> malloc((n + 2) * sizeof(int))
    cdef int *succ = <int *> malloc((n + 2) * sizeof(int))
    cdef int *pos = <int *> malloc((n + 2) * sizeof(int))
    cdef char *seen = <char *> malloc((n + 2) * sizeof(char))
    cdef int *lengths = <int *> malloc((n + 2) * sizeof(int))
    cdef int d = n + 1
    cdef int gd = n // 2 + 1
    cdef long total = <long> gd * d * d * d * d
    cdef long *hist = <long *> calloc(total, sizeof(long))
    cdef int i, j, c, e, s, ps, length, m, g, t
    cdef int n11, n12, n21, n22
    cdef long idx
    if not (seq and succ and pos and seen and lengths and hist):
        raise MemoryError()
    faces = {}
    try:
        for i in range(n):
            seq[i] = i + 1
        while True:
            for i in range(n):
                succ[seq[i]] = seq[(i + 1) % n]
                pos[seq[i]] = i
            memset(seen, 0, (n + 2) * sizeof(char))
            m = 0
            for j in range(1, n + 1):
                if not seen[j]:
                    length = 0
                    c = j
                    while not seen[c]:
                        seen[c] = 1
                        length += 1
                        c = succ[c % n + 1]
                    lengths[m] = length
                    m += 1
            # insertion sort, decreasing
            for i in range(1, m):
                t = lengths[i]
                j = i - 1
                while j >= 0 and lengths[j] < t:
                    lengths[j + 1] = lengths[j]
                    j -= 1
                lengths[j + 1] = t
            lam = tuple([lengths[i] for i in range(m)])
            faces[lam] = faces.get(lam, 0) + 1
            g = (n - m) // 2
            for s in range(2, n + 1):
                ps = pos[s]
                n11 = 0; n12 = 0; n21 = 0; n22 = 0
                for e in range(2, n + 1):
                    if e == s:
                        continue
                    if e < s:
                        if pos[e] < ps:
                            n11 += 1
                        else:
                            n12 += 1
                    elif pos[e] < ps:
                        n21 += 1
                    else:
                        n22 += 1
                idx = (((<long> g * d + n11) * d + n12) * d + n21) * d + n22
                hist[idx] += 1
            if n < 3 or not _next_permutation(seq, 1, n):
                break
        jumps = {}
        for idx in range(total):
            if hist[idx]:
                n22 = idx % d
                n21 = (idx // d) % d
                n12 = (idx // (d * d)) % d
                n11 = (idx // (d * d * d)) % d
                g = idx // (d * d * d * d)
                jumps[(g, n11, n12, n21, n22)] = hist[idx]
        return jumps, faces
    finally:
        free(seq); free(succ); free(pos); free(seen); free(lengths); free(hist)
