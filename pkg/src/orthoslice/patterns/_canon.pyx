# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonical form kernel; same contract as ``_canon_py.canon_rows``."""

cdef enum:
    MAXN = 8

cdef struct State:
    int m
    int n
    unsigned int rows[MAXN]
    unsigned int best[MAXN]
    int have_best


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


cdef inline int _pc(unsigned int x) nogil:
    return __builtin_popcount(x)


cdef void _rec(State* st, int* remaining, int nrem, unsigned int* cells, int ncells,
               unsigned int* prefix, int k) noexcept nogil:
    cdef int i, j, c, r, size, ones, seen, nnew, cmp
    cdef unsigned int val, mx, row, a, z
    cdef unsigned int vals[MAXN]
    cdef int uniq[MAXN]
    cdef int nuniq = 0
    cdef unsigned int newcells[MAXN * 2]
    cdef int rest[MAXN]
    if nrem == 0:
        if not st.have_best:
            cmp = 1
        else:
            cmp = 0
            for i in range(st.m):
                if prefix[i] != st.best[i]:
                    cmp = 1 if prefix[i] > st.best[i] else -1
                    break
        if cmp > 0:
            for i in range(st.m):
                st.best[i] = prefix[i]
            st.have_best = 1
        return
    mx = 0
    for i in range(nrem):
        r = remaining[i]
        row = st.rows[r]
        seen = 0
        for j in range(nuniq):
            if st.rows[uniq[j]] == row:
                seen = 1
                break
        if seen:
            continue
        val = 0
        for c in range(ncells):
            size = _pc(cells[c])
            ones = _pc(row & cells[c])
            val = (val << size) | ((((<unsigned int>1) << ones) - 1) << (size - ones))
        vals[nuniq] = val
        uniq[nuniq] = r
        nuniq += 1
        if val > mx:
            mx = val
    if st.have_best:
        cmp = 0
        for i in range(k):
            if prefix[i] != st.best[i]:
                cmp = 1 if prefix[i] > st.best[i] else -1
                break
        if cmp == 0 and mx != st.best[k]:
            cmp = 1 if mx > st.best[k] else -1
        if cmp < 0:
            return
    for j in range(nuniq):
        if vals[j] != mx:
            continue
        r = uniq[j]
        row = st.rows[r]
        nnew = 0
        for c in range(ncells):
            a = cells[c] & row
            z = cells[c] & ~row
            if a:
                newcells[nnew] = a
                nnew += 1
            if z:
                newcells[nnew] = z
                nnew += 1
        i = 0
        for c in range(nrem):
            if remaining[c] != r:
                rest[i] = remaining[c]
                i += 1
        prefix[k] = mx
        _rec(st, rest, nrem - 1, newcells, nnew, prefix, k + 1)


def canon_rows(rows, int m, int n):
    cdef State st
    cdef int remaining[MAXN]
    cdef unsigned int cells[1]
    cdef unsigned int prefix[MAXN]
    cdef int i
    cdef unsigned long long out = 0
    if m > MAXN or n > MAXN:
        raise ValueError("compiled kernel supports at most 8 rows and 8 columns")
    st.m = m
    st.n = n
    st.have_best = 0
    for i in range(m):
        st.rows[i] = rows[i]
        remaining[i] = i
    cells[0] = ((<unsigned int>1) << n) - 1
    with nogil:
        _rec(&st, remaining, m, cells, 1 if n else 0, prefix, 0)
    for i in range(m):
        out = (out << n) | st.best[i]
    return out
