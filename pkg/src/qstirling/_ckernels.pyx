# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled descent-distribution kernel; same contract as ``_pykernels``."""

cdef enum:
    MAXK = 64

ALL = 0
QUASI_STIRLING = 1
STIRLING = 2


cdef bint _noncrossing(int* word, int K, int* mult, int* seen, int* stack):
    cdef int top = 0, i, v, c
    for i in range(K):
        v = word[i]
        if mult[v] == 1:
            continue
        c = seen[v]
        if c and stack[top - 1] != v:
            return False
        if c == 0:
            stack[top] = v
            top += 1
        c += 1
        seen[v] = c
        if c == mult[v]:
            top -= 1
    return True


cdef bint _stirling(int* word, int K, int* mult, int* seen, int* stack):
    cdef int top = 0, i, v, c
    for i in range(K):
        v = word[i]
        c = seen[v]
        if top and stack[top - 1] != v and (c or stack[top - 1] > v):
            return False
        if mult[v] == 1:
            continue
        if c == 0:
            stack[top] = v
            top += 1
        c += 1
        seen[v] = c
        if c == mult[v]:
            top -= 1
    return True


def descent_distribution(mult, int mode=QUASI_STIRLING):
    """Tally ``des`` ("+1" convention) over the permutations of a multiset."""
    cdef int word[MAXK]
    cdef int cmult[MAXK + 1]
    cdef int seen[MAXK + 1]
    cdef int stack[MAXK]
    cdef unsigned long long counts[MAXK + 1]
    cdef int n = len(mult), K = 0, i, j, v, d, tmp
    cdef bint ok

    if mode < 0 or mode > 2:
        raise ValueError(f"unknown mode {mode}")
    for i in range(n):
        K += int(mult[i])
    if K > 20:
        # 21! overflows the 64-bit tallies
        raise ValueError(f"K={K} too large for the compiled kernel")
    for i in range(K + 1):
        counts[i] = 0
    if K == 0:
        return [0]
    cmult[0] = 0
    j = 0
    for i in range(n):
        cmult[i + 1] = int(mult[i])
        for v in range(cmult[i + 1]):
            word[j] = i + 1
            j += 1

    while True:
        if mode == ALL:
            ok = True
        else:
            for i in range(n + 1):
                seen[i] = 0
            if mode == QUASI_STIRLING:
                ok = _noncrossing(word, K, cmult, seen, stack)
            else:
                ok = _stirling(word, K, cmult, seen, stack)
        if ok:
            d = 1
            for i in range(K - 1):
                if word[i] > word[i + 1]:
                    d += 1
            counts[d] += 1

        i = K - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            break
        j = K - 1
        while word[j] <= word[i]:
            j -= 1
        tmp = word[i]; word[i] = word[j]; word[j] = tmp
        i += 1
        j = K - 1
        while i < j:
            tmp = word[i]; word[i] = word[j]; word[j] = tmp
            i += 1
            j -= 1

    return [int(counts[i]) for i in range(K + 1)]
