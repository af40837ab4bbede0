# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word-tally kernel: same contract as _kernel_py.tally_words.

Iterative DFS over C arrays: edges are applied on descent and undone on
backtrack, with the free-reduction stack and the balance counters kept
incrementally.  Per-vertex counts live in 64-bit integers; the
enumeration budget keeps them far from overflow.
"""

from libc.stdlib cimport calloc, free, malloc

BACKEND = "compiled"


def tally_words(kg, int n, mode, pattern=None, budget=None):
    if n < 1:
        raise ValueError("word length must be >= 1")
    if pattern is not None and len(pattern) != n:
        raise ValueError("pattern length must equal n")
    if mode not in ("reduction", "balance"):
        raise ValueError(f"unknown tally mode {mode!r}")

    cdef int balance_mode = 1 if mode == "balance" else 0
    cdef int nv = kg.n_vertices
    cdef int m = kg.n_signed
    cdef int nl = kg.n_labels
    cdef long long cap = -1
    if budget is not None:
        cap = budget

    cdef int *src = <int *> malloc(m * sizeof(int))
    cdef int *dst = <int *> malloc(m * sizeof(int))
    cdef int *inv = <int *> malloc(m * sizeof(int))
    cdef int *lab = <int *> malloc(m * sizeof(int))
    cdef int *out_start = <int *> malloc((nv + 1) * sizeof(int))
    cdef int *out_list = <int *> malloc(m * sizeof(int))
    cdef int *pat = NULL
    cdef long long *counts = <long long *> calloc(nv, sizeof(long long))
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef int *chosen = <int *> malloc(n * sizeof(int))
    cdef int *cancelled = <int *> malloc(n * sizeof(int))
    cdef int *choice = <int *> malloc(n * sizeof(int))
    cdef int *prev_cur = <int *> malloc(n * sizeof(int))
    cdef int *bal = <int *> calloc(nl + 1, sizeof(int))

    cdef bint alloc_failed = (
        src == NULL or dst == NULL or inv == NULL or lab == NULL or
        out_start == NULL or out_list == NULL or counts == NULL or
        stack == NULL or chosen == NULL or cancelled == NULL or
        choice == NULL or prev_cur == NULL or bal == NULL
    )

    cdef int i, e, k, a, lo, hi, advanced
    cdef long long enumerated = 0
    cdef int truncated = 0
    cdef int pos = 0
    cdef int top = 0
    cdef int nonzero = 0
    cdef int start = -1
    cdef int cur = -1
    result_counts = None
    try:
        if alloc_failed:
            raise MemoryError()
        for i in range(m):
            src[i] = kg.src[i]
            dst[i] = kg.dst[i]
            inv[i] = kg.inv[i]
            lab[i] = kg.labels[i]
            out_list[i] = kg.out_list[i]
        for i in range(nv + 1):
            out_start[i] = kg.out_start[i]
        if pattern is not None:
            pat = <int *> malloc(n * sizeof(int))
            if pat == NULL:
                raise MemoryError()
            for i in range(n):
                pat[i] = pattern[i]

        choice[0] = 0
        while pos >= 0:
            if pos == n:
                if cap >= 0 and enumerated >= cap:
                    truncated = 1
                    break
                enumerated += 1
                if balance_mode:
                    if cur == start and nonzero == 0:
                        counts[start] += 1
                else:
                    if top == 0:
                        counts[start] += 1
                pos -= 1
                _undo(pos, stack, &top, chosen, cancelled, prev_cur, inv,
                      lab, bal, &nonzero, balance_mode, &cur, &start)
                continue
            if pos == 0:
                lo = 0
                hi = m
            else:
                lo = out_start[cur]
                hi = out_start[cur + 1]
            advanced = 0
            while choice[pos] < hi - lo:
                if pos == 0:
                    e = lo + choice[pos]
                else:
                    e = out_list[lo + choice[pos]]
                choice[pos] += 1
                if pat != NULL and lab[e] != pat[pos]:
                    continue
                chosen[pos] = e
                prev_cur[pos] = cur
                if top > 0 and stack[top - 1] == inv[e]:
                    top -= 1
                    cancelled[pos] = 1
                else:
                    stack[top] = e
                    top += 1
                    cancelled[pos] = 0
                if balance_mode:
                    k = lab[e]
                    a = k if k > 0 else -k
                    if bal[a] == 0:
                        nonzero += 1
                    bal[a] += 1 if k > 0 else -1
                    if bal[a] == 0:
                        nonzero -= 1
                if pos == 0:
                    start = src[e]
                cur = dst[e]
                pos += 1
                if pos < n:
                    choice[pos] = 0
                advanced = 1
                break
            if advanced:
                continue
            pos -= 1
            if pos < 0:
                break
            _undo(pos, stack, &top, chosen, cancelled, prev_cur, inv,
                  lab, bal, &nonzero, balance_mode, &cur, &start)

        result_counts = [counts[i] for i in range(nv)]
    finally:
        if src != NULL: free(src)
        if dst != NULL: free(dst)
        if inv != NULL: free(inv)
        if lab != NULL: free(lab)
        if out_start != NULL: free(out_start)
        if out_list != NULL: free(out_list)
        if counts != NULL: free(counts)
        if stack != NULL: free(stack)
        if chosen != NULL: free(chosen)
        if cancelled != NULL: free(cancelled)
        if choice != NULL: free(choice)
        if prev_cur != NULL: free(prev_cur)
        if bal != NULL: free(bal)
        if pat != NULL: free(pat)
    return result_counts, enumerated, bool(truncated)


cdef inline void _undo(int pos, int *stack, int *top, int *chosen,
                       int *cancelled, int *prev_cur, int *inv, int *lab,
                       int *bal, int *nonzero, int balance_mode,
                       int *cur, int *start) noexcept:
    cdef int e = chosen[pos]
    cdef int k, a
    if cancelled[pos]:
        stack[top[0]] = inv[e]
        top[0] += 1
    else:
        top[0] -= 1
    if balance_mode:
        k = lab[e]
        a = k if k > 0 else -k
        if bal[a] == 0:
            nonzero[0] += 1
        bal[a] -= 1 if k > 0 else -1
        if bal[a] == 0:
            nonzero[0] -= 1
    cur[0] = prev_cur[pos]
    if pos == 0:
        start[0] = -1
