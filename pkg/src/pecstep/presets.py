"""Figure presets: the parameter sets behind every bundled experiment.

All presets share omega=1, dt=0.5, 20 steps, rho(0) = |1><1|.  Sampled
presets default to 10^6 trajectories, a 20x reduction of the original
ensemble sizes (2e7 / 5e6) to keep desk-scale runtimes; pass --samples to
restore the full counts.
"""

import math
from dataclasses import dataclass, replace

from .channels import PauliChannelParams
from .generators import PauliRates
from .scenarios import ScenarioConfig

DEFAULT_SAMPLES = 10**6

_BETAS = (("beta0", 0.0), ("betapi4", math.pi / 4), ("betapi2", math.pi / 2))

_DEP05 = PauliChannelParams(0.05, 0.05, 0.05)
_LAM_OPEN = PauliChannelParams(0.16, 0.12, 0.2)
_GAMMA_X = PauliRates(0.3, 0.0, 0.0)


@dataclass(frozen=True)
class Preset:
    id: str
    description: str
    series: tuple[tuple[str, ScenarioConfig], ...]
    full_samples: int  # original ensemble size; 0 = analytic-only preset


def _digital_closed(mitigation: str, samples: int, bias: float | None = None) -> ScenarioConfig:
    return ScenarioConfig(
        hardware="digital",
        device=_DEP05,
        mitigation=mitigation,
        samples=samples,
        bias=bias,
    )


def _beta_family(make) -> tuple[tuple[str, ScenarioConfig], ...]:
    return tuple((name, make(beta)) for name, beta in _BETAS)


def _build_presets() -> dict[str, Preset]:
    n = DEFAULT_SAMPLES
    presets = [
        Preset(
            "fig1a",
            "digital, closed target, exact inversion of a 0.05 depolarizing channel",
            (("", _digital_closed("exact", n)),),
            20_000_000,
        ),
        Preset(
            "fig1b",
            "digital, closed target, first-order mitigation of the same channel",
            (("", _digital_closed("first-order", n)),),
            20_000_000,
        ),
        Preset(
            "fig2a",
            "analog, closed target, exact mitigation of depolarizing noise kappa=0.1",
            (
                (
                    "",
                    ScenarioConfig(
                        hardware="analog",
                        device=PauliRates(0.1, 0.1, 0.1),
                        mitigation="exact",
                        samples=n,
                    ),
                ),
            ),
            5_000_000,
        ),
        Preset(
            "fig2b",
            "analog, closed target, linear-inverse mitigation of depolarizing noise",
            (
                (
                    "",
                    ScenarioConfig(
                        hardware="analog",
                        device=PauliRates(0.1, 0.1, 0.1),
                        mitigation="linear-inverse",
                        samples=n,
                    ),
                ),
            ),
            5_000_000,
        ),
        Preset(
            "fig3",
            "analog, closed target, exact mitigation of X-only noise kappa=0.3",
            _beta_family(
                lambda beta: ScenarioConfig(
                    hardware="analog",
                    device=PauliRates(0.3, 0.0, 0.0),
                    mitigation="exact",
                    beta=beta,
                    samples=n,
                )
            ),
            5_000_000,
        ),
        Preset(
            "fig4",
            "analog, closed target, linear-inverse mitigation of X-only noise",
            _beta_family(
                lambda beta: ScenarioConfig(
                    hardware="analog",
                    device=PauliRates(0.3, 0.0, 0.0),
                    mitigation="linear-inverse",
                    beta=beta,
                    samples=n,
                )
            ),
            5_000_000,
        ),
        Preset(
            "fig5",
            "digital, open X-damped target, exact mitigation; fidelity vs beta",
            _beta_family(
                lambda beta: ScenarioConfig(
                    hardware="digital",
                    device=_LAM_OPEN,
                    mitigation="exact",
                    target=_GAMMA_X,
                    beta=beta,
                )
            ),
            0,
        ),
    ]
    for suffix, (name, beta) in zip("abc", _BETAS):
        presets.append(
            Preset(
                f"fig6{suffix}",
                f"digital, open X-damped target, first-order mitigation, {name}",
                (("", ScenarioConfig(
                    hardware="digital",
                    device=_LAM_OPEN,
                    mitigation="first-order",
                    target=_GAMMA_X,
                    beta=beta,
                )),),
                0,
            )
        )
    presets += [
        Preset(
            "fig7",
            "analog, open X-damped target, first-order mitigation of depolarizing noise",
            _beta_family(
                lambda beta: ScenarioConfig(
                    hardware="analog",
                    device=PauliRates(0.1, 0.1, 0.1),
                    mitigation="first-order",
                    target=_GAMMA_X,
                    beta=beta,
                )
            ),
            0,
        ),
        Preset(
            "fig8",
            "analog, open X-damped target, exact mitigation of X-biased noise",
            _beta_family(
                lambda beta: ScenarioConfig(
                    hardware="analog",
                    device=PauliRates(0.4, 0.1, 0.1),
                    mitigation="exact",
                    target=_GAMMA_X,
                    beta=beta,
                    samples=n,
                )
            ),
            5_000_000,
        ),
        Preset(
            "fig9",
            "analog, open X-damped target, first-order mitigation of X-biased noise",
            _beta_family(
                lambda beta: ScenarioConfig(
                    hardware="analog",
                    device=PauliRates(0.4, 0.1, 0.1),
                    mitigation="first-order",
                    target=_GAMMA_X,
                    beta=beta,
                )
            ),
            0,
        ),
        Preset(
            "figA1",
            "digital, unmitigated step-proportional depolarizing noise vs the"
            " depolarizing master equation",
            (
                (
                    "",
                    ScenarioConfig(
                        hardware="digital",
                        device=_DEP05,
                        mitigation="none",
                        target=PauliRates(0.1, 0.1, 0.1),
                    ),
                ),
            ),
            0,
        ),
        Preset(
            "figB1a",
            "digital, closed target, exact mitigation sampled with mu' = 0.97 mu",
            (("", _digital_closed("exact", n, bias=0.97)),),
            20_000_000,
        ),
        Preset(
            "figB1b",
            "digital, closed target, exact mitigation sampled with mu' = 1.03 mu",
            (("", _digital_closed("exact", n, bias=1.03)),),
            20_000_000,
        ),
    ]
    return {p.id: p for p in presets}


PRESETS = _build_presets()


def preset(preset_id: str) -> Preset:
    try:
        return PRESETS[preset_id]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {preset_id!r}; known presets: {known}") from None


def with_overrides(
    cfg: ScenarioConfig, samples: int | None = None, seed: int | None = None
) -> ScenarioConfig:
    if samples is not None:
        cfg = replace(cfg, samples=samples)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return cfg
