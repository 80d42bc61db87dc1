"""Pure-Python canonical form kernel (fallback for the compiled extension).

A pattern is given by its rows as ``n``-bit masks (column ``j`` is bit
``n - 1 - j``).  The canonical form is the lexicographically greatest
row-major bit string over all row and column permutations, returned as an
``m * n``-bit integer with row 0 in the most significant bits.  For a fixed
row order the best column order puts, inside every cell of columns that agree
on the rows chosen so far, the ones first; rows are chosen by backtracking
with pruning against the best prefix found so far.
"""


def _popcount(x):
    return bin(x).count("1")


def canon_rows(rows, m, n):
    rows = list(rows)
    full = (1 << n) - 1
    best = [None]

    def rec(remaining, cells, prefix):
        if not remaining:
            if best[0] is None or prefix > best[0]:
                best[0] = list(prefix)
            return
        k = len(prefix)
        scored = {}
        for r in remaining:
            row = rows[r]
            if row in scored:
                continue
            val = 0
            for cell in cells:
                size = _popcount(cell)
                ones = _popcount(row & cell)
                val = (val << size) | (((1 << ones) - 1) << (size - ones))
            scored[row] = (val, r)
        mx = max(v for v, _ in scored.values())
        b = best[0]
        if b is not None:
            head = b[:k + 1]
            cur = prefix + [mx]
            if cur < head:
                return
        for row, (val, r) in sorted(scored.items(), key=lambda t: t[1][1]):
            if val != mx:
                continue
            new = []
            for cell in cells:
                a = cell & row
                z = cell & ~row & full
                if a:
                    new.append(a)
                if z:
                    new.append(z)
            rest = list(remaining)
            rest.remove(r)
            prefix.append(mx)
            rec(rest, new, prefix)
            prefix.pop()

    rec(list(range(m)), [full] if n else [], [])
    out = 0
    for v in best[0]:
        out = (out << n) | v
    return out
