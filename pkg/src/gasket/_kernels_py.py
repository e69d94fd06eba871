"""Pure-Python cell sweep: refine integer corner triples and sum edge products.

Corner values are integers at a common denominator; each refinement step
multiplies the scale by 5 so every value stays an integer.
"""


def refine_flat(values, depth):
    """Refine a flat list of corner triples ``depth`` times (values scaled by 5**depth)."""
    cur = list(values)
    for _ in range(depth):
        nxt = []
        push = nxt.extend
        for t in range(0, len(cur), 3):
            x0, x1, x2 = cur[t], cur[t + 1], cur[t + 2]
            m01 = 2 * x0 + 2 * x1 + x2
            m02 = 2 * x0 + x1 + 2 * x2
            m12 = x0 + 2 * x1 + 2 * x2
            push((5 * x0, m01, m02, m01, 5 * x1, m12, m02, m12, 5 * x2))
        cur = nxt
    return cur


def edge_pair_sum(a, b, depth):
    """Sum over refined cells of (a_p - a_q)(b_p - b_q) over the three edges."""
    ra = refine_flat(a, depth)
    rb = ra if b is a else refine_flat(b, depth)
    total = 0
    for t in range(0, len(ra), 3):
        a0, a1, a2 = ra[t], ra[t + 1], ra[t + 2]
        b0, b1, b2 = rb[t], rb[t + 1], rb[t + 2]
        total += (a0 - a1) * (b0 - b1) + (a1 - a2) * (b1 - b2) + (a0 - a2) * (b0 - b2)
    return total
