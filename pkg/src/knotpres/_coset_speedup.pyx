# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coset enumeration kernel.

Same algorithm as the pure-Python module: HLT scanning with row fill, FIFO
coincidence merging into the smaller index, budget counted in live cosets,
lookahead passes when the budget is hit.  The flat table additionally
compacts dead rows away between cosets of the main loop; renumbering
preserves relative order, so both kernels return identical tables.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memmove


cdef struct State:
    int *table
    int *parent
    long cap
    long n
    long live
    long total
    long max_live
    long max_total
    int width
    long *queue
    long qcap
    long qhead
    long qtail


cdef inline long _find(State *st, long x):
    while st.parent[x] != x:
        st.parent[x] = st.parent[st.parent[x]]
        x = st.parent[x]
    return x


cdef int _qpush(State *st, long a, long b):
    cdef long *nq
    cdef long used
    if st.qtail + 2 > st.qcap:
        used = st.qtail - st.qhead
        if st.qhead >= st.qcap // 2:
            memmove(st.queue, st.queue + st.qhead, used * sizeof(long))
            st.qhead = 0
            st.qtail = used
        else:
            nq = <long *> realloc(st.queue, st.qcap * 2 * sizeof(long))
            if nq == NULL:
                return -3
            st.queue = nq
            st.qcap = st.qcap * 2
    st.queue[st.qtail] = a
    st.queue[st.qtail + 1] = b
    st.qtail += 2
    return 0


cdef int _coincide(State *st, long a, long b):
    cdef long x, y, t, tmp
    cdef int d
    cdef int *rx
    cdef int *ry
    st.qhead = 0
    st.qtail = 0
    if _qpush(st, a, b) < 0:
        return -3
    while st.qhead < st.qtail:
        x = st.queue[st.qhead]
        y = st.queue[st.qhead + 1]
        st.qhead += 2
        x = _find(st, x)
        y = _find(st, y)
        if x == y:
            continue
        if x > y:
            tmp = x
            x = y
            y = tmp
        st.parent[y] = <int> x
        st.live -= 1
        rx = st.table + x * st.width
        ry = st.table + y * st.width
        for d in range(st.width):
            t = ry[d]
            if t != -1:
                if rx[d] == -1:
                    rx[d] = <int> t
                else:
                    if _qpush(st, rx[d], t) < 0:
                        return -3
    return 0


cdef int _grow(State *st):
    cdef long newcap
    cdef int *nt
    cdef int *np
    if st.n < st.cap:
        return 0
    newcap = st.cap * 2
    nt = <int *> realloc(st.table, newcap * st.width * sizeof(int) + 1)
    if nt == NULL:
        return -3
    st.table = nt
    np = <int *> realloc(st.parent, newcap * sizeof(int))
    if np == NULL:
        return -3
    st.parent = np
    st.cap = newcap
    return 0


cdef long _define(State *st, long at, int d):
    cdef long new
    cdef int i
    cdef int *row
    if st.live >= st.max_live or st.total >= st.max_total:
        return -2
    if _grow(st) < 0:
        return -3
    new = st.n
    st.n += 1
    row = st.table + new * st.width
    for i in range(st.width):
        row[i] = -1
    st.parent[new] = <int> new
    st.live += 1
    st.total += 1
    st.table[at * st.width + d] = <int> new
    row[d ^ 1] = <int> at
    return new


cdef int _scan(State *st, long c, int *word, long n, int fill):
    cdef long f, b, i, j, t, new
    cdef int d
    if n == 0:
        return 0
    f = c
    i = 0
    b = c
    j = n - 1
    while True:
        while i <= j:
            t = st.table[f * st.width + word[i]]
            if t == -1:
                break
            f = _find(st, t)
            i += 1
        if i > j:
            if f != b:
                return _coincide(st, f, b)
            return 0
        while j >= i:
            t = st.table[b * st.width + (word[j] ^ 1)]
            if t == -1:
                break
            b = _find(st, t)
            j -= 1
        if j < i:
            return _coincide(st, f, b)
        if i == j:
            d = word[i]
            st.table[f * st.width + d] = <int> b
            st.table[b * st.width + (d ^ 1)] = <int> f
            return 0
        if not fill:
            return 0
        new = _define(st, f, word[i])
        if new < 0:
            return <int> new
        f = new
        i += 1


cdef int _lookahead(State *st, int *rel_data, long *rel_off, long nrel):
    cdef long x, j
    cdef int status
    x = 0
    while x < st.n:
        if st.parent[x] == x:
            for j in range(nrel):
                status = _scan(
                    st, x, rel_data + rel_off[j], rel_off[j + 1] - rel_off[j], 0
                )
                if status < 0:
                    return status
                if st.parent[x] != x:
                    break
        x += 1
    return 0


cdef int _process_coset(State *st, long c, int *rel_data, long *rel_off, long nrel):
    cdef long j, res
    cdef int status, d
    if st.parent[c] != c:
        return 0
    for j in range(nrel):
        status = _scan(st, c, rel_data + rel_off[j], rel_off[j + 1] - rel_off[j], 1)
        if status < 0:
            return status
        if st.parent[c] != c:
            return 0
    for d in range(st.width):
        if st.table[c * st.width + d] == -1:
            res = _define(st, c, d)
            if res < 0:
                return <int> res
    return 0


cdef int _retry_slack(State *st):
    cdef long slack = st.max_live // 20
    if slack < 1:
        slack = 1
    return st.max_live - st.live >= slack


cdef long _compact(State *st, long pos):
    """Drop dead rows, renumbering live cosets in order.  Returns the new
    index of the main-loop position (the count of live cosets below it)."""
    cdef long c, k, newpos, w
    cdef int d
    cdef int *src
    cdef int *dst
    cdef int *remap
    w = st.width
    for c in range(st.n):
        st.parent[c] = <int> _find(st, c)
    remap = <int *> malloc(st.n * sizeof(int) + 1)
    if remap == NULL:
        return -3
    k = 0
    newpos = 0
    for c in range(st.n):
        if c == pos:
            newpos = k
        if st.parent[c] == c:
            remap[c] = <int> k
            k += 1
    if pos >= st.n:
        newpos = k
    for c in range(st.n):
        if st.parent[c] == c:
            src = st.table + c * w
            dst = st.table + (<long> remap[c]) * w
            for d in range(st.width):
                if src[d] == -1:
                    dst[d] = -1
                else:
                    dst[d] = remap[st.parent[src[d]]]
    st.n = k
    for c in range(k):
        st.parent[c] = <int> c
    free(remap)
    return newpos


def run(num_gens, relators, subgroup, max_live):
    """Returns (closed, count, rows): count is the index if closed, else the
    live-coset budget in force when enumeration gave up."""
    cdef State st
    cdef int width = 2 * <int> num_gens
    cdef long nrel = len(relators)
    cdef int *rel_data = NULL
    cdef long *rel_off = NULL
    cdef int *wbuf = NULL
    cdef long wbuf_cap = 0
    cdef long total, i, j, c, res, pos
    cdef int status, d
    cdef object rows, row

    st.width = width
    st.cap = 256
    st.n = 1
    st.live = 1
    st.total = 1
    st.max_live = <long> max_live
    st.max_total = 1000 * st.max_live
    st.table = <int *> malloc(st.cap * width * sizeof(int) + 1)
    st.parent = <int *> malloc(st.cap * sizeof(int))
    st.queue = <long *> malloc(64 * sizeof(long))
    st.qcap = 64
    st.qhead = 0
    st.qtail = 0
    if st.table == NULL or st.parent == NULL or st.queue == NULL:
        free(st.table)
        free(st.parent)
        free(st.queue)
        raise MemoryError
    for d in range(width):
        st.table[d] = -1
    st.parent[0] = 0

    status = 0
    try:
        total = 0
        for r in relators:
            total += len(r)
        rel_data = <int *> malloc(total * sizeof(int) + 1)
        rel_off = <long *> malloc((nrel + 1) * sizeof(long))
        if rel_data == NULL or rel_off == NULL:
            raise MemoryError
        i = 0
        j = 0
        for r in relators:
            rel_off[j] = i
            for d in r:
                rel_data[i] = d
                i += 1
            j += 1
        rel_off[nrel] = i

        for w in subgroup:
            total = len(w)
            if total > wbuf_cap:
                free(wbuf)
                wbuf = <int *> malloc(total * sizeof(int))
                if wbuf == NULL:
                    wbuf_cap = 0
                    raise MemoryError
                wbuf_cap = total
            i = 0
            for d in w:
                wbuf[i] = d
                i += 1
            while True:
                status = _scan(&st, _find(&st, 0), wbuf, total, 1)
                if status != -2 or st.total >= st.max_total:
                    break
                status = _lookahead(&st, rel_data, rel_off, nrel)
                if status < 0:
                    break
                if not _retry_slack(&st):
                    status = -2
                    break
            if status < 0:
                break

        c = 0
        while status == 0 and c < st.n:
            if st.n >= 4096 and st.n - st.live > st.n // 2:
                c = _compact(&st, c)
                if c < 0:
                    status = -3
                    break
            while True:
                status = _process_coset(&st, c, rel_data, rel_off, nrel)
                if status != -2 or st.total >= st.max_total:
                    break
                status = _lookahead(&st, rel_data, rel_off, nrel)
                if status < 0:
                    break
                if not _retry_slack(&st):
                    status = -2
                    break
            if status < 0:
                break
            c += 1

        if status == -3:
            raise MemoryError
        if status == -2:
            return False, st.live, None

        pos = _compact(&st, st.n)
        if pos < 0:
            raise MemoryError
        rows = []
        for c in range(st.n):
            row = []
            for d in range(width):
                row.append(st.table[c * st.width + d])
            rows.append(row)
        return True, st.n, rows
    finally:
        free(st.table)
        free(st.parent)
        free(st.queue)
        free(rel_data)
        free(rel_off)
        free(wbuf)
