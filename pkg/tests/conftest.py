"""Shared brute-force references, written straight from the definitions.

Nothing here calls into the package, so tests comparing against these helpers
compare two independent implementations.
"""

import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ACCEPTANCE_RESULTS = {}


def brute_box(tops, bottoms):
    return set(itertools.product(*(range(b, t + 1, 2) for t, b in zip(tops, bottoms))))


def brute_shell(tops, bottoms):
    """Shell by its original definition: p in box and p + (2,...,2) not in box."""
    box = brute_box(tops, bottoms)
    return {p for p in box if tuple(x + 2 for x in p) not in box}


def brute_lambda(n):
    return brute_shell(n, [x % 2 for x in n])


def brute_little_lambda_box(m):
    r = len(m)
    return [m[i - 1] + m[i] for i in range(r)], [abs(m[i - 1] - m[i]) for i in range(r)]


def brute_combinatorial(s, n):
    """#{m in Shell(Lambda_n) : s in Shell(lambda_m)} by set membership."""
    return sum(1 for m in brute_lambda(n) if tuple(s) in brute_shell(*brute_little_lambda_box(m)))


def brute_on_surface(s, x):
    r = len(s)
    vals = []
    for i in range(r):
        a, b = x[i - 1], x[i]
        vals.append((a + b - s[i], a - b + s[i], -a + b + s[i]))
    inside = all(v >= 0 for trio in vals for v in trio)
    return inside and any(trio[0] == 0 for trio in vals)


def brute_ray_base(z, r):
    """Search a window of integer points b with b_r = 0 for central parameter z."""
    k = 2 * sum(abs(x) for x in z) + 2
    hits = [
        tuple(b) + (0,)
        for b in itertools.product(range(-k, k + 1), repeat=r - 1)
        if brute_central(tuple(b) + (0,)) == tuple(z)
    ]
    assert len(hits) <= 1
    return hits[0] if hits else None


def brute_central(n):
    r = len(n)
    return tuple(n[i] - n[i - 1] - n[r - 1] + n[r - 2] for i in range(r - 1))


@pytest.fixture
def report_acceptance():
    def record(number, passed, detail=""):
        ACCEPTANCE_RESULTS[number] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
