"""Named example states used for figure reproduction."""

from __future__ import annotations

from fractions import Fraction

from .xcore import XState, ensure_valid, ghz_state


def fig1() -> XState:
    """Two GHZ-type blocks; N_3 dies under dephasing near p = 0.366."""
    return ensure_valid(XState.from_blocks([5 / 12, 3 / 12, 0, 0], [1 / 4, 1 / 12, 0, 0], [2 / 7, 1 / 8, 0, 0]))


def fig2() -> XState:
    """Four-block state whose tri-partite negativity appears briefly under depolarizing noise."""
    return ensure_valid(
        XState.from_blocks(
            [1 / 8, 1 / 8, 1 / 8, 1 / 16],
            [1 / 8, 1 / 8, 3 / 16, 1 / 8],
            [1 / 12, 1 / 9, 1 / 10, 2 / 25],
        )
    )


def fig3(eps: float = 0.0) -> XState:
    return ensure_valid(
        XState.from_blocks(
            [3 / 8 - eps, 1 / 4, eps, 1 / 16],
            [1 / 16, 1 / 16, 1 / 16, 1 / 8],
            [3 / 25, 1 / 9, eps / 2, 1 / 12],
        )
    )


FIG3_EPSILONS = (0.0, 1 / 128, 1 / 32, 1 / 16)


def builtin(name: str) -> XState:
    """Resolve ``fig1``, ``fig2``, ``fig3[:EPS]`` or ``ghz[:N]``."""
    base, _, arg = name.partition(":")
    if base == "fig1" and not arg:
        return fig1()
    if base == "fig2" and not arg:
        return fig2()
    if base == "fig3":
        return fig3(float(Fraction(arg)) if arg else 0.0)
    if base == "ghz":
        return ghz_state(int(arg) if arg else 3)
    raise KeyError(f"unknown built-in state {name!r}")
