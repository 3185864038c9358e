"""Figure family definitions.

Each family names its input CSV files (as produced by the greedysphere
CLI), the series column to draw, and the reference lines to overlay.
Reference-line values are never hard-coded here: each one is a key into
the output of ``greedysphere constants`` and is resolved at render time.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PanelSpec:
    """One subplot: a lambda value and the reference lines drawn on it."""

    lam: float
    # constants-output keys resolved via `greedysphere constants --lambda lam`
    reference_keys: tuple[str, ...] = ()
    # fixed structural guide lines (axis levels, not limit constants)
    guide_levels: tuple[float, ...] = ()


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    title: str
    column: str              # series column of the second-order CSV
    n_max: int
    ylabel: str
    panels: tuple[PanelSpec, ...]
    data_kind: str = "second-order"   # or "g-curve"

    def csv_names(self) -> list[str]:
        if self.data_kind == "g-curve":
            return ["g_curve.csv"]
        return [f"second_order_lam{panel.lam:g}.csv" for panel in self.panels]


FIGURES: dict[str, FigureSpec] = {}


def _register(spec: FigureSpec) -> None:
    FIGURES[spec.figure_id] = spec


_register(
    FigureSpec(
        figure_id="potential-gap-subcritical",
        title="Extremal potential minus N times the continuum energy, lambda < 1",
        column="U_minus",
        n_max=2000,
        ylabel="U_N(a_N) - N I",
        panels=tuple(
            PanelSpec(lam, reference_keys=("continuous_energy",), guide_levels=(0.0,))
            for lam in (0.01, 0.1, 0.3, 0.7)
        ),
    )
)

_register(
    FigureSpec(
        figure_id="potential-gap-supercritical",
        title="Extremal potential minus N times the continuum energy, lambda >= 1",
        column="U_minus",
        n_max=2000,
        ylabel="U_N(a_N) - N I",
        panels=tuple(
            PanelSpec(lam, reference_keys=("continuous_energy",), guide_levels=(0.0,))
            for lam in (1.0, 1.3, 1.5, 1.9)
        ),
    )
)

_register(
    FigureSpec(
        figure_id="energy-second-order-subcritical",
        title="Normalized second-order energy, lambda < 1",
        column="H_normalized",
        n_max=8000,
        ylabel="(H - N^2 I) / N^(1-lambda)",
        panels=tuple(
            PanelSpec(
                lam,
                reference_keys=("second_order_constant", "liminf_constant"),
            )
            for lam in (0.1, 0.5, 0.7, 0.9)
        ),
    )
)

_register(
    FigureSpec(
        figure_id="energy-deficit-supercritical",
        title="Second-order energy deficit, 1 < lambda < 2",
        column="H_minus",
        n_max=4000,
        ylabel="H - N^2 I",
        panels=tuple(
            PanelSpec(lam, reference_keys=("s_lambda",), guide_levels=(0.0,))
            for lam in (1.1, 1.3, 1.5, 1.7)
        ),
    )
)

_register(
    FigureSpec(
        figure_id="energy-second-order-critical",
        title="Normalized second-order energy at lambda = 1",
        column="H_normalized",
        n_max=4000,
        ylabel="(H - N^2 I) / log N",
        panels=(
            PanelSpec(1.0, reference_keys=("lambda1_liminf_bound",), guide_levels=(0.0,)),
        ),
    )
)

_register(
    FigureSpec(
        figure_id="limit-factor-curves",
        title="Subsequence-limit factor G for three generators",
        column="",
        n_max=0,
        ylabel="G",
        panels=(PanelSpec(0.0),),
        data_kind="g-curve",
    )
)
