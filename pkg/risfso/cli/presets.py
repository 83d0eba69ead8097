"""Named sweep configurations reproducing the published figure set.

Each preset is a config mapping in the same shape as a TOML sweep file;
its ``curve`` entries become one ``SweepSpec`` each.
"""

import toml

from risfso.cli.config import parse_config
from risfso.errors import ConfigError

MU_DB = [float(v) for v in range(0, 65, 5)]
SECRECY_MU_DB = [float(v) for v in range(0, 55, 5)]
REGIMES = ("strong", "moderate", "weak")


# Continued second moments keep their sign only when both hops of a link
# share the regime, so strong curves always set both hops.
def _hop(preset, zeta=1.0):
    return {"preset": preset, "zeta": zeta}


def _turbulence_curves():
    """d-link turbulence strong/moderate/weak crossed with zeta_{s,d}."""
    curves = []
    for regime in REGIMES:
        for zeta in (1.0, 2.0):
            curves.append(
                {
                    "sweep": {"label": f"{regime} zeta_sd={zeta:g}"},
                    "link_d": {
                        "allow_analytic_continuation": regime == "strong",
                        "hop_s": _hop(regime, zeta),
                        "hop_r": _hop(regime),
                    },
                }
            )
    return curves


PRESETS = {
    "fig2": {
        "sweep": {"metric": "op", "axis": "mu_d_db", "values": MU_DB},
        "curve": [
            {
                "sweep": {"label": f"N_d={n}"},
                "link_d": {"n_elements": n},
            }
            for n in (1, 2, 3)
        ],
    },
    "fig3": {
        "sweep": {"metric": "aber", "axis": "mu_d_db", "values": MU_DB},
        "curve": _turbulence_curves(),
    },
    "fig4": {
        "sweep": {
            "metric": "asc",
            "axis": "mu_d_db",
            "values": SECRECY_MU_DB,
        },
        "curve": _turbulence_curves(),
    },
    "fig5": {
        "sweep": {"metric": "acc", "axis": "mu_d_db", "values": MU_DB},
        "curve": [
            {
                "sweep": {
                    "label": f"{'HD' if r == 1 else 'IM/DD'} zeta_rd={z:g}"
                },
                "link_d": {"detection": r, "hop_r": {"zeta": z}},
                "link_e": {"detection": r},
            }
            for r in (1, 2)
            for z in (1.0, 2.0)
        ],
    },
    "fig6": {
        "sweep": {
            "metric": "sop",
            "axis": "mu_d_db",
            "values": SECRECY_MU_DB,
        },
        "curve": [
            {
                "sweep": {"label": f"e-link {regime} zeta_re={z:g}"},
                "link_e": {
                    "hop_s": _hop(regime),
                    "hop_r": _hop(regime, z),
                },
            }
            for regime in ("strong", "moderate")
            for z in (1.0, 2.0)
        ],
    },
    "fig7": {
        "sweep": {
            "metric": "sop",
            "axis": "mu_d_db",
            "values": SECRECY_MU_DB,
        },
        "curve": [
            {
                "sweep": {"label": f"zeta_rd={z:g} mu_e={mu_e:g}dB"},
                "link_d": {"hop_r": {"zeta": z}},
                "link_e": {"mu_r_db": mu_e},
            }
            for z in (1.0, 2.0)
            for mu_e in (20.0, 30.0)
        ],
    },
    "fig8": {
        "sweep": {
            "metric": "sop",
            "axis": "mu_d_db",
            "values": SECRECY_MU_DB,
        },
        "curve": _turbulence_curves(),
    },
}


def preset_names():
    return sorted(PRESETS)


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            [("", f"unknown preset {name!r}; expected one of {preset_names()}")]
        )


def load_preset(name):
    """Sweep curves of the preset ``name``."""
    return parse_config(get_preset(name))


def show_preset(name):
    return toml.dumps(get_preset(name))


__all__ = [
    "PRESETS",
    "preset_names",
    "get_preset",
    "load_preset",
    "show_preset",
]
