"""Pure-Python sweep over rooted dipoles; reference twin of ``_sweep_c``."""
from itertools import permutations


def sweep(int_n):
    """
    Enumerate every rooted dipole with ``n`` edges.

    Returns ``(jumps, faces)`` where ``jumps`` maps
    ``(genus, n11, n12, n21, n22)`` to the number of (dipole, secondary edge)
    pairs with that sector contingency table, and ``faces`` maps the
    (decreasing) cycle type of the face permutation to a count.
    """
    n = int(int_n)
    jumps = {}
    faces = {}
    succ = [0] * (n + 2)
    pos = [0] * (n + 2)
    for tail in permutations(range(2, n + 1)):
        seq = (1,) + tail
        for i, e in enumerate(seq):
            succ[e] = seq[(i + 1) % n]
            pos[e] = i
        seen = [False] * (n + 1)
        lengths = []
        for j in range(1, n + 1):
            if not seen[j]:
                length = 0
                c = j
                while not seen[c]:
                    seen[c] = True
                    length += 1
                    c = succ[c % n + 1]
                lengths.append(length)
        lam = tuple(sorted(lengths, reverse=True))
        faces[lam] = faces.get(lam, 0) + 1
        g = (n - len(lengths)) // 2
        for s in range(2, n + 1):
            ps = pos[s]
            n11 = n12 = n21 = n22 = 0
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
            key = (g, n11, n12, n21, n22)
            jumps[key] = jumps.get(key, 0) + 1
    return jumps, faces
