# spinparity/sweeps/presets.py
"""
Figure Presets
==============
Named sweep groups, one per figure panel.

    fig1        free-particle helicity mixture vs m/E_p
    fig2a-c     A rho_00 + (1-A) rho_01 vs m/p, A = 0.1, 0.3, 0.5
    fig2d-f     A rho_00 + (1-A) rho_11 vs m/p, A = 0.1, 0.3, 0.5
    fig3a-c     thermal state vs beta p, m/p = 0, 1, 10
    fig4        CP discord difference of both mixture families vs m/p
    fig5        CP discord difference of the thermal state vs beta p

Coupled presets use B/p = kappa = chi = 1 and theta = pi/4.
"""

from typing import Dict, List, Optional

from spinparity.exceptions import ConfigError
from spinparity.schemas import MixtureFamily, Preset, Scenario, SweepConfig, SweepVariable

DEFAULT_POINTS = 101

M_OVER_P_RANGE = (0.0, 10.0)
BETA_P_RANGE = (0.0, 10.0)

_FAMILY_PANELS = {
    MixtureFamily.POSITIVE: ("a", "b", "c"),
    MixtureFamily.POSITIVE_NEGATIVE: ("d", "e", "f"),
}
_FAMILY_TEXT = {
    MixtureFamily.POSITIVE: "A rho_00 + (1-A) rho_01",
    MixtureFamily.POSITIVE_NEGATIVE: "A rho_00 + (1-A) rho_11",
}
_MIXTURE_AS = (0.1, 0.3, 0.5)


def _fig1(points: int) -> Preset:
    return Preset(
        name="fig1",
        caption="Discord and Bell function of the free-particle maximal helicity mixture vs m/E_p",
        configs=[SweepConfig(
            scenario=Scenario.FREE,
            sweep_variable=SweepVariable.M_OVER_E,
            start=0.0,
            stop=1.0,
            points=points,
            fixed={"A": 0.5},
            label="A=0.5"
        )]
    )


def _fig2(family: MixtureFamily, panel: str, A: float, points: int) -> Preset:
    return Preset(
        name=f"fig2{panel}",
        caption=f"N, D and B vs m/p for {_FAMILY_TEXT[family]}, A = {A}",
        configs=[SweepConfig(
            scenario=Scenario.MIXTURE,
            sweep_variable=SweepVariable.M_OVER_P,
            start=M_OVER_P_RANGE[0],
            stop=M_OVER_P_RANGE[1],
            points=points,
            fixed={"A": A},
            family=family,
            label=f"A={A}"
        )]
    )


def _fig3(panel: str, m_over_p: float, points: int) -> Preset:
    return Preset(
        name=f"fig3{panel}",
        caption=f"N, D and B of the thermal state vs beta p, m/p = {m_over_p:g}",
        configs=[SweepConfig(
            scenario=Scenario.THERMAL,
            sweep_variable=SweepVariable.BETA_P,
            start=BETA_P_RANGE[0],
            stop=BETA_P_RANGE[1],
            points=points,
            fixed={"m_over_p": m_over_p},
            label=f"m/p={m_over_p:g}"
        )]
    )


def _fig4(points: int) -> Preset:
    configs = [
        SweepConfig(
            scenario=Scenario.CP_DIFF,
            sweep_variable=SweepVariable.M_OVER_P,
            start=M_OVER_P_RANGE[0],
            stop=M_OVER_P_RANGE[1],
            points=points,
            fixed={"A": A},
            family=family,
            label=f"{family.value} A={A}"
        )
        for family in (MixtureFamily.POSITIVE, MixtureFamily.POSITIVE_NEGATIVE)
        for A in _MIXTURE_AS
    ]
    return Preset(
        name="fig4",
        caption="|D[rho^CP] - D[rho]| vs m/p for both mixture families, A = 0.1, 0.3, 0.5",
        configs=configs
    )


def _fig5(points: int) -> Preset:
    configs = [
        SweepConfig(
            scenario=Scenario.CP_DIFF_THERMAL,
            sweep_variable=SweepVariable.BETA_P,
            start=BETA_P_RANGE[0],
            stop=BETA_P_RANGE[1],
            points=points,
            fixed={"m_over_p": m_over_p},
            label=f"m/p={m_over_p:g}"
        )
        for m_over_p in (1.0, 5.0, 10.0)
    ]
    return Preset(
        name="fig5",
        caption="|D[rho_thermal^CP] - D[rho_thermal]| vs beta p, m/p = 1, 5, 10",
        configs=configs
    )


def build_presets(points: int = DEFAULT_POINTS) -> Dict[str, Preset]:
    """
    Every preset, in figure order.

    Args:
        points: Grid points per series
    """
    presets: List[Preset] = [_fig1(points)]
    for family, panels in _FAMILY_PANELS.items():
        for panel, A in zip(panels, _MIXTURE_AS):
            presets.append(_fig2(family, panel, A, points))
    for panel, m_over_p in zip(("a", "b", "c"), (0.0, 1.0, 10.0)):
        presets.append(_fig3(panel, m_over_p, points))
    presets.append(_fig4(points))
    presets.append(_fig5(points))
    return {preset.name: preset for preset in presets}


PRESETS: Dict[str, Preset] = build_presets()


def get_preset(name: str, points: Optional[int] = None) -> Preset:
    """
    Look up a preset by name.

    Raises:
        ConfigError: unknown name
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}'", field="preset")
    if points is None:
        return PRESETS[name]
    return build_presets(points)[name]
