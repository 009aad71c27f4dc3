"""Small numeric kernels shared by the model packs."""

from __future__ import annotations

from typing import Callable, Sequence

SIMPSON_INTERVALS = 200


def simpson(f: Callable[[float], float], a: float, b: float, n: int = SIMPSON_INTERVALS) -> float:
    """Composite Simpson rule on [a, b] with ``n`` (even) subintervals."""
    if n < 2 or n % 2:
        raise ValueError("Simpson needs an even number of subintervals >= 2")
    if a == b:
        return 0.0
    h = (b - a) / n
    acc = f(a) + f(b)
    for i in range(1, n):
        acc += (4 if i % 2 else 2) * f(a + i * h)
    return acc * h / 3


def simpson_vec(
    f: Callable[[float], Sequence[float]], a: float, b: float, n: int = SIMPSON_INTERVALS
) -> tuple[float, ...]:
    """Component-wise composite Simpson for vector-valued ``f``; one call of ``f`` per node."""
    if n < 2 or n % 2:
        raise ValueError("Simpson needs an even number of subintervals >= 2")
    fa = tuple(f(a))
    if a == b:
        return tuple(0.0 for _ in fa)
    h = (b - a) / n
    acc = [p + q for p, q in zip(fa, f(b))]
    for i in range(1, n):
        w = 4 if i % 2 else 2
        for j, c in enumerate(f(a + i * h)):
            acc[j] += w * c
    return tuple(c * h / 3 for c in acc)


def central_difference(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    if h is None:
        h = 1e-5 * max(1.0, abs(x))
    return (f(x + h) - f(x - h)) / (2 * h)
