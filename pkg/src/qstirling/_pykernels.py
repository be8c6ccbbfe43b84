"""Pure-Python descent-distribution kernel (fallback for ``_ckernels``)."""

ALL = 0
QUASI_STIRLING = 1
STIRLING = 2


def _noncrossing(word, mult, seen):
    # open values must close in stack order, otherwise some abab occurs
    stack = []
    for v in word:
        k = mult[v - 1]
        if k == 1:
            continue
        c = seen[v]
        if c and stack[-1] != v:
            return False
        if c == 0:
            stack.append(v)
        c += 1
        seen[v] = c
        if c == k:
            stack.pop()
    return True


def _stirling(word, mult, seen):
    # open values form an increasing stack; a new letter must exceed the top
    stack = []
    for v in word:
        c = seen[v]
        if stack and stack[-1] != v and (c or stack[-1] > v):
            return False
        k = mult[v - 1]
        if k == 1:
            continue
        if c == 0:
            stack.append(v)
        c += 1
        seen[v] = c
        if c == k:
            stack.pop()
    return True


def descent_distribution(mult, mode=QUASI_STIRLING):
    """Tally ``des`` over the permutations of a multiset.

    Returns a list ``counts`` of length ``K + 1`` where ``counts[d]`` is the
    number of admissible words with ``des == d`` ("+1" convention).  ``mode``
    selects all words, quasi-Stirling words or Stirling words.
    """
    mult = [int(k) for k in mult]
    if mode not in (ALL, QUASI_STIRLING, STIRLING):
        raise ValueError(f"unknown mode {mode}")
    word = [v for v, k in enumerate(mult, 1) for _ in range(k)]
    K = len(word)
    counts = [0] * (K + 1)
    if K == 0:
        return counts
    n = len(mult)
    check = {ALL: None, QUASI_STIRLING: _noncrossing, STIRLING: _stirling}[mode]
    last = K - 1
    while True:
        if check is None or check(word, mult, [0] * (n + 1)):
            d = 1
            for i in range(last):
                if word[i] > word[i + 1]:
                    d += 1
            counts[d] += 1
        # lexicographic successor
        i = K - 2
        while i >= 0 and word[i] >= word[i + 1]:
            i -= 1
        if i < 0:
            return counts
        j = last
        while word[j] <= word[i]:
            j -= 1
        word[i], word[j] = word[j], word[i]
        word[i + 1:] = word[:i:-1]
