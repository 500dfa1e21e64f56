"""Pure-Python versions of the sliding-window kernels."""

from array import array


def step(table, k, span, src, n_out):
    """One application of a tabulated local rule.

    ``out[t] = table[code(src[t : t + span])]`` where words are read as
    base-``k`` numbers, most significant symbol first.
    """
    top = k ** (span - 1)
    out = array("l", bytes(8 * n_out)) if n_out else array("l")
    idx = 0
    for j in range(span - 1):
        idx = idx * k + src[j]
    for t in range(n_out):
        idx = idx * k + src[t + span - 1]
        out[t] = table[idx]
        idx -= src[t] * top
    return out


def evolve(table, k, span, cells, steps):
    """Apply the rule ``steps`` times; the valid range shrinks by
    ``span - 1`` per step."""
    cur = array("l", cells)
    for _ in range(steps):
        cur = step(table, k, span, cur, len(cur) - span + 1)
    return cur


def trajectory(table, k, span, mem, cells, lo, q, p, n_steps, win_lo, win_len):
    """Windows ``[win_lo, win_lo + win_len)`` of ``s^(p n) F^(q n) x`` for
    ``n = 1..n_steps``, flattened row by row.

    ``cells`` holds ``x[lo], x[lo + 1], ...`` and ``F`` has memory ``mem``.
    """
    out = array("l")
    cur = array("l", cells)
    for n in range(1, n_steps + 1):
        for _ in range(q):
            cur = step(table, k, span, cur, len(cur) - span + 1)
            lo -= mem
        start = win_lo + p * n - lo
        if start < 0 or start + win_len > len(cur):
            raise IndexError("window left the simulated range")
        out.extend(cur[start:start + win_len])
    return out
