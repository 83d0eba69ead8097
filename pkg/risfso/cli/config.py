"""TOML sweep configuration: parsing, validation with field paths, echo.

A file holds base sections and an optional ``[[curve]]`` array whose
entries are partial overrides of the base, one sweep curve each.
"""

import copy
import logging
import math
from dataclasses import dataclass, replace

import toml

from risfso.channel import TURBULENCE_PRESETS, HopParams, LinkParams
from risfso.errors import ConfigError, RisFsoError
from risfso.metrics import METRICS, ModulationParams, SecrecyScenario
from risfso.montecarlo import MODES, SimConfig

logger = logging.getLogger(__name__)

AXES = ("mu_d_db", "n_elements", "zeta", "alpha_beta_preset")
TARGETS = (
    "link_d",
    "link_d.hop_s",
    "link_d.hop_r",
    "link_e",
    "link_e.hop_s",
    "link_e.hop_r",
)
FORMATS = ("csv", "json")
PRESET_NAMES = tuple(sorted(TURBULENCE_PRESETS))

MODERATE_HOP = {
    "alpha": 5.52,
    "beta": 2.34,
    "zeta": 1.0,
    "pointing_loss_A": 1.0,
}
STRONG_HOP = {
    "alpha": 3.43,
    "beta": 1.43,
    "zeta": 1.0,
    "pointing_loss_A": 1.0,
}

DEFAULTS = {
    "sweep": {
        "metric": "op",
        "axis": "mu_d_db",
        "values": [],
        "target": "link_d",
        "label": "",
        "gamma_star": 1.0,
        "asymptotic": True,
        "reference": False,
        "asc_closed_form": False,
    },
    "link_d": {
        "n_elements": 2,
        "detection": 1,
        "mu_r_db": 20.0,
        "allow_analytic_continuation": False,
        "hop_s": dict(MODERATE_HOP),
        "hop_r": dict(MODERATE_HOP),
    },
    "link_e": {
        "n_elements": 2,
        "detection": 1,
        "mu_r_db": 30.0,
        "allow_analytic_continuation": True,
        "hop_s": dict(STRONG_HOP),
        "hop_r": dict(STRONG_HOP),
    },
    "modulation": {"p": 1.0, "q": 1.0},
    "secrecy": {"tau_s": 0.1},
    "sim": {
        "enabled": False,
        "n_samples": 10**6,
        "seed": 0,
        "mode": "matched",
    },
    "output": {"path": "", "format": "csv"},
}

OPTIONAL_KEYS = {
    "sim": {"batch_size"},
    "hop": {"preset"},
}


@dataclass(frozen=True)
class SweepSpec:
    """One curve: a metric evaluated along one axis of a fixed scenario."""

    metric: str
    axis: str
    values: tuple
    link_d: LinkParams
    link_e: LinkParams
    tau_s: float = 0.1
    modulation: ModulationParams = ModulationParams()
    gamma_star: float = 1.0
    target: str = "link_d"
    label: str = ""
    with_asymptotic: bool = True
    with_reference: bool = False
    asc_closed_form: bool = False
    sim: SimConfig = None
    output_path: str = ""
    output_format: str = "csv"

    def scenario(self):
        return SecrecyScenario(self.link_d, self.link_e, self.tau_s)

    def point(self, value):
        """Scenario with the axis set to ``value``."""
        links = {"link_d": self.link_d, "link_e": self.link_e}
        if self.axis == "mu_d_db":
            links["link_d"] = self.link_d.with_mu_db(value)
        elif self.axis == "n_elements":
            links["link_d"] = self.link_d.replace(n_elements=int(value))
        else:
            if self.axis == "zeta":
                change = {"zeta": float(value)}
            else:
                alpha, beta = TURBULENCE_PRESETS[value]
                change = {"alpha": alpha, "beta": beta}
            name, _, hop = self.target.partition(".")
            hops = [hop] if hop else ["hop_s", "hop_r"]
            link = links[name]
            for hop_name in hops:
                link = link.replace(
                    **{hop_name: replace(getattr(link, hop_name), **change)}
                )
            links[name] = link
        return SecrecyScenario(links["link_d"], links["link_e"], self.tau_s)

    def to_dict(self):
        """Full configuration echo; parsing it yields an equal spec."""
        sim = self.sim or SimConfig()
        sim_section = {
            "enabled": self.sim is not None,
            "n_samples": sim.n_samples,
            "seed": sim.seed,
            "mode": sim.mode,
        }
        if sim.batch_size is not None:
            sim_section["batch_size"] = sim.batch_size
        return {
            "sweep": {
                "metric": self.metric,
                "axis": self.axis,
                "values": list(self.values),
                "target": self.target,
                "label": self.label,
                "gamma_star": self.gamma_star,
                "asymptotic": self.with_asymptotic,
                "reference": self.with_reference,
                "asc_closed_form": self.asc_closed_form,
            },
            "link_d": _link_dict(self.link_d),
            "link_e": _link_dict(self.link_e),
            "modulation": {"p": self.modulation.p, "q": self.modulation.q},
            "secrecy": {"tau_s": self.tau_s},
            "sim": sim_section,
            "output": {"path": self.output_path, "format": self.output_format},
        }

    def to_toml(self):
        return toml.dumps(self.to_dict())


def _link_dict(link):
    data = link.as_dict()
    return {
        "n_elements": data["n_elements"],
        "detection": data["detection"],
        "mu_r_db": data["mu_r_db"],
        "allow_analytic_continuation": data["allow_analytic_continuation"],
        "hop_s": data["hop_s"],
        "hop_r": data["hop_r"],
    }


def merge(base, override):
    """Recursive dict merge; ``override`` wins on leaves."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class _Diagnostics(list):
    def add(self, path, message):
        self.append((path, message))


def _check_keys(data, allowed, path, diagnostics):
    if not isinstance(data, dict):
        diagnostics.add(path, "expected a table")
        return False
    for key in data:
        if key not in allowed:
            diagnostics.add(f"{path}.{key}", "unknown key")
    return True


def _number(value, path, diagnostics, integer=False, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        kind = "an integer" if integer else "a number"
        diagnostics.add(path, f"expected {kind}, got {value!r}")
        return None
    if integer and int(value) != value:
        diagnostics.add(path, f"expected an integer, got {value!r}")
        return None
    if not math.isfinite(value):
        diagnostics.add(path, f"must be finite, got {value!r}")
        return None
    if positive and not value > 0:
        diagnostics.add(path, f"must be positive, got {value!r}")
        return None
    return int(value) if integer else float(value)


def _flag(value, path, diagnostics):
    if not isinstance(value, bool):
        diagnostics.add(path, f"expected true or false, got {value!r}")
        return False
    return value


def _choice(value, choices, path, diagnostics, what):
    if not isinstance(value, str) or value not in choices:
        diagnostics.add(
            path,
            f"unknown {what} {value!r}; expected one of {list(choices)}",
        )
        return None
    return value


def _build_hop(data, path, diagnostics):
    allowed = set(MODERATE_HOP) | OPTIONAL_KEYS["hop"]
    if not _check_keys(data, allowed, path, diagnostics):
        return None
    data = dict(data)
    preset = data.pop("preset", None)
    if preset is not None:
        if not _choice(
            preset, PRESET_NAMES, f"{path}.preset", diagnostics, "preset"
        ):
            return None
        data["alpha"], data["beta"] = TURBULENCE_PRESETS[preset]
    fields = {
        key: _number(data[key], f"{path}.{key}", diagnostics)
        for key in MODERATE_HOP
    }
    if any(value is None for value in fields.values()):
        return None
    try:
        return HopParams(**fields)
    except RisFsoError as exc:
        diagnostics.add(path, str(exc))
        return None


def _build_link(data, path, diagnostics):
    allowed = set(DEFAULTS["link_d"])
    if not _check_keys(data, allowed, path, diagnostics):
        return None
    hop_s = _build_hop(data["hop_s"], f"{path}.hop_s", diagnostics)
    hop_r = _build_hop(data["hop_r"], f"{path}.hop_r", diagnostics)
    n_elements = _number(
        data["n_elements"], f"{path}.n_elements", diagnostics, integer=True
    )
    detection = _number(
        data["detection"], f"{path}.detection", diagnostics, integer=True
    )
    mu_r_db = _number(data["mu_r_db"], f"{path}.mu_r_db", diagnostics)
    allow = _flag(
        data["allow_analytic_continuation"],
        f"{path}.allow_analytic_continuation",
        diagnostics,
    )
    if None in (hop_s, hop_r, n_elements, detection, mu_r_db):
        return None
    try:
        return LinkParams(hop_s, hop_r, n_elements, detection, mu_r_db, allow)
    except RisFsoError as exc:
        diagnostics.add(path, str(exc))
        return None


def _axis_values(sweep, diagnostics):
    axis, values = sweep["axis"], sweep["values"]
    if not _choice(axis, AXES, "sweep.axis", diagnostics, "axis"):
        return None
    if not isinstance(values, list) or not values:
        diagnostics.add("sweep.values", "must be a non-empty list")
        return None
    if axis == "alpha_beta_preset":
        parsed = [
            _choice(
                value, PRESET_NAMES, f"sweep.values[{i}]", diagnostics, "preset"
            )
            for i, value in enumerate(values)
        ]
        return None if None in parsed else tuple(parsed)
    integer = axis == "n_elements"
    parsed = [
        _number(
            value,
            f"sweep.values[{i}]",
            diagnostics,
            integer=integer,
            positive=axis != "mu_d_db",
        )
        for i, value in enumerate(values)
    ]
    if None in parsed:
        return None
    if any(b <= a for a, b in zip(parsed, parsed[1:])):
        diagnostics.add("sweep.values", "must be strictly increasing")
        return None
    return tuple(parsed)


def _build_sim(data, diagnostics):
    allowed = set(DEFAULTS["sim"]) | OPTIONAL_KEYS["sim"]
    if not _check_keys(data, allowed, "sim", diagnostics):
        return None
    if not _flag(data["enabled"], "sim.enabled", diagnostics):
        return None
    if not _choice(data["mode"], MODES, "sim.mode", diagnostics, "mode"):
        return None
    n_samples = _number(
        data["n_samples"], "sim.n_samples", diagnostics, integer=True
    )
    seed = _number(data["seed"], "sim.seed", diagnostics, integer=True)
    batch_size = data.get("batch_size")
    if batch_size is not None:
        batch_size = _number(
            batch_size, "sim.batch_size", diagnostics, integer=True
        )
    if n_samples is None or seed is None:
        return None
    try:
        return SimConfig(n_samples, seed, data["mode"], batch_size)
    except RisFsoError as exc:
        diagnostics.add("sim", str(exc))
        return None


def _build_spec(config, diagnostics):
    tables = True
    for section, content in config.items():
        if section not in DEFAULTS:
            diagnostics.add(section, "unknown section")
        elif not isinstance(content, dict):
            diagnostics.add(section, "expected a table")
            tables = False
    if not tables:
        return None
    sweep = config["sweep"]
    _check_keys(sweep, set(DEFAULTS["sweep"]), "sweep", diagnostics)
    _choice(sweep["metric"], METRICS, "sweep.metric", diagnostics, "metric")
    _choice(sweep["target"], TARGETS, "sweep.target", diagnostics, "target")
    values = _axis_values(sweep, diagnostics)
    gamma_star = _number(
        sweep["gamma_star"], "sweep.gamma_star", diagnostics, positive=True
    )
    flags = {
        key: _flag(sweep[key], f"sweep.{key}", diagnostics)
        for key in ("asymptotic", "reference", "asc_closed_form")
    }
    link_d = _build_link(config["link_d"], "link_d", diagnostics)
    link_e = _build_link(config["link_e"], "link_e", diagnostics)

    modulation = None
    if _check_keys(
        config["modulation"], {"p", "q"}, "modulation", diagnostics
    ):
        p = _number(config["modulation"]["p"], "modulation.p", diagnostics)
        q = _number(config["modulation"]["q"], "modulation.q", diagnostics)
        if p is not None and q is not None:
            try:
                modulation = ModulationParams(p, q)
            except RisFsoError as exc:
                diagnostics.add("modulation", str(exc))

    tau_s = None
    if _check_keys(config["secrecy"], {"tau_s"}, "secrecy", diagnostics):
        tau_s = _number(
            config["secrecy"]["tau_s"], "secrecy.tau_s", diagnostics
        )
        if tau_s is not None and tau_s < 0:
            diagnostics.add("secrecy.tau_s", "must be non-negative")
            tau_s = None

    sim = _build_sim(config["sim"], diagnostics)

    output = config["output"]
    _check_keys(output, set(DEFAULTS["output"]), "output", diagnostics)
    _choice(output["format"], FORMATS, "output.format", diagnostics, "format")
    if not isinstance(output["path"], str):
        diagnostics.add("output.path", "expected a string")

    if link_d is not None and link_e is not None:
        if link_d.detection != link_e.detection:
            diagnostics.add(
                "link_e.detection", "must equal link_d.detection"
            )
    if diagnostics:
        return None
    return SweepSpec(
        metric=sweep["metric"],
        axis=sweep["axis"],
        values=values,
        link_d=link_d,
        link_e=link_e,
        tau_s=tau_s,
        modulation=modulation,
        gamma_star=gamma_star,
        target=sweep["target"],
        label=str(sweep["label"]),
        with_asymptotic=flags["asymptotic"],
        with_reference=flags["reference"],
        asc_closed_form=flags["asc_closed_form"],
        sim=sim,
        output_path=output["path"],
        output_format=output["format"],
    )


def parse_config(source):
    """Sweep curves from TOML text or an already-loaded mapping.

    Raises ``ConfigError`` listing every invalid field by dotted path.
    """

    if isinstance(source, str):
        try:
            source = toml.loads(source)
        except toml.TomlDecodeError as exc:
            raise ConfigError([("", f"invalid TOML: {exc}")])
    source = dict(source)
    curves = source.pop("curve", None)
    base = merge(DEFAULTS, source)
    if curves is None:
        overrides = [{}]
    elif isinstance(curves, list) and curves:
        overrides = curves
    else:
        raise ConfigError([("curve", "must be a non-empty array of tables")])

    specs, diagnostics = [], _Diagnostics()
    for index, override in enumerate(overrides):
        local = _Diagnostics()
        if not isinstance(override, dict):
            local.add(f"curve[{index}]", "expected a table")
        else:
            spec = _build_spec(merge(base, override), local)
            if spec is not None:
                specs.append(spec)
        prefix = f"curve[{index}]." if curves is not None else ""
        diagnostics.extend(
            (prefix + path if path else prefix.rstrip("."), message)
            for path, message in local
        )
    if diagnostics:
        raise ConfigError(diagnostics)
    logger.debug("parsed %d sweep curve(s)", len(specs))
    return specs


def load_config(path):
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError([("", f"cannot read {path}: {exc.strerror}")])
    return parse_config(text)


def apply_overrides(
    specs, seed=None, samples=None, mode=None, out=None, fmt=None
):
    """Command-line overrides; any simulation flag enables the MC columns."""

    updated = []
    for spec in specs:
        changes = {}
        if seed is not None or samples is not None or mode is not None:
            sim = spec.sim or SimConfig()
            try:
                sim = sim.replace(
                    **{
                        key: value
                        for key, value in (
                            ("seed", seed),
                            ("n_samples", samples),
                            ("mode", mode),
                        )
                        if value is not None
                    }
                )
            except RisFsoError as exc:
                raise ConfigError([("sim", str(exc))])
            changes["sim"] = sim
        if out is not None:
            changes["output_path"] = out
        if fmt is not None:
            if fmt not in FORMATS:
                raise ConfigError(
                    [("output.format", f"expected one of {list(FORMATS)}")]
                )
            changes["output_format"] = fmt
        updated.append(replace(spec, **changes))
    return updated


__all__ = [
    "AXES",
    "TARGETS",
    "FORMATS",
    "DEFAULTS",
    "SweepSpec",
    "merge",
    "parse_config",
    "load_config",
    "apply_overrides",
]
