"""Pure-Python word-tally kernel.

Reference implementation of the hot loop: stream every admissible
length-n word of the shadowed graph, free-reduce on the fly, and tally
per start vertex.  The compiled twin in _kernel_c.pyx implements the
same contract; tests hold the two to exact agreement.
"""

from __future__ import annotations

BACKEND = "pure"


def tally_words(kg, n, mode, pattern=None, budget=None):
    """Tally qualifying admissible length-n words by vertex.

    kg: flat kernel graph (see groupoidlab._kernel.KernelGraph).
    mode: "reduction" counts words whose free reduction is a vertex;
          "balance" counts loop words with an all-zero balance vector.
    pattern: optional per-position signed label filter (length n).
    budget: cap on enumerated words; the flag reports whether the
            enumeration was cut short.

    Returns (counts per vertex index, enumerated word count, truncated).
    """
    if n < 1:
        raise ValueError("word length must be >= 1")
    if pattern is not None and len(pattern) != n:
        raise ValueError("pattern length must equal n")
    counts = [0] * kg.n_vertices
    src = kg.src
    dst = kg.dst
    inv = kg.inv
    labels = kg.labels
    out_start = kg.out_start
    out_list = kg.out_list
    balance_mode = mode == "balance"
    if mode not in ("reduction", "balance"):
        raise ValueError(f"unknown tally mode {mode!r}")

    enumerated = 0
    truncated = False
    stack: list[int] = []
    bal = [0] * (kg.n_labels + 1)
    nonzero = 0

    def rec(pos, cur, start):
        nonlocal enumerated, truncated, nonzero
        if truncated:
            return
        if pos == n:
            if budget is not None and enumerated >= budget:
                truncated = True
                return
            enumerated += 1
            if balance_mode:
                if cur == start and nonzero == 0:
                    counts[start] += 1
            elif not stack:
                counts[start] += 1
            return
        if pos == 0:
            candidates = range(kg.n_signed)
        else:
            candidates = out_list[out_start[cur] : out_start[cur + 1]]
        want = pattern[pos] if pattern is not None else None
        for e in candidates:
            if want is not None and labels[e] != want:
                continue
            if pos > 0 and src[e] != cur:
                continue
            cancelled = bool(stack) and stack[-1] == inv[e]
            if cancelled:
                stack.pop()
            else:
                stack.append(e)
            if balance_mode:
                k = labels[e]
                a = abs(k)
                if bal[a] == 0:
                    nonzero += 1
                bal[a] += 1 if k > 0 else -1
                if bal[a] == 0:
                    nonzero -= 1
            rec(pos + 1, dst[e], src[e] if pos == 0 else start)
            if balance_mode:
                k = labels[e]
                a = abs(k)
                if bal[a] == 0:
                    nonzero += 1
                bal[a] -= 1 if k > 0 else -1
                if bal[a] == 0:
                    nonzero -= 1
            if cancelled:
                stack.append(inv[e])
            else:
                stack.pop()
            if truncated:
                return

    rec(0, -1, -1)
    return counts, enumerated, truncated
