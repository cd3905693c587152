"""Experiment configuration: a small sectioned key-value format.

The format is deliberately strict: unknown sections or keys are errors,
values are validated eagerly, and every violation is reported with its
line number. A config that parses is a config that runs; silent typos in
experiment parameters would otherwise destroy reproducibility.

Example::

    [experiment]
    kind = clt
    sizes = 8 16 32
    replicas = 10000
    seed = 1
    method = eigen
    truncation = auto
    format = csv

    [function]
    family = trig
    coeff = 1 1.0 0.0
    coeff = 2 0.5 0.0
    smoothness = 2

Families: ``trig`` (repeatable ``coeff = index re im`` lines, optional
``smoothness``), ``power`` (``kappa``, optional ``terms``), ``geometric``
(``rho``). Omitting the [function] section selects the documented default
2cos(x) + cos(2x).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .functions import TestFunction, geometric, power_decay, trig_polynomial

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "FunctionSpec",
    "parse_config",
    "serialize_config",
]

EXPERIMENTS = ("clt", "rate", "ortho", "coeffs", "truncation", "sampler-check")
_METHODS = ("eigen", "trace")
_FORMATS = ("csv", "json")
_FAMILIES = ("trig", "power", "geometric")

_U64_MAX = 2**64 - 1

DEFAULT_SIZES = (8, 16, 32)
#: Experiments with a more natural size sweep than the generic default.
DEFAULT_SIZES_BY_KIND = {
    "rate": (8, 16, 32, 64),
    "ortho": (3, 8),
    "truncation": (16, 32, 64, 128, 256, 512),
    "sampler-check": (2, 8, 32),
}
DEFAULT_REPLICAS = 10_000
DEFAULT_SEED = 1

#: Default test function: 2cos(x) + cos(2x), the two-term example whose
#: limiting variance is 3.
DEFAULT_COEFFS = ((1, 1.0, 0.0), (2, 0.5, 0.0))


class ConfigError(ValueError):
    """One or more configuration problems, each tagged with a location."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("\n".join(self.problems))


@dataclass(frozen=True)
class FunctionSpec:
    """Declarative description of a test function, buildable on demand."""

    family: str = "trig"
    coefficients: tuple[tuple[int, float, float], ...] = DEFAULT_COEFFS
    smoothness: int = 2
    kappa: float | None = None
    terms: int | None = None
    rho: float | None = None

    def validate(self) -> list[str]:
        problems = []
        if self.family not in _FAMILIES:
            problems.append(f"function.family must be one of {_FAMILIES}, got {self.family!r}")
            return problems
        if self.family == "trig":
            if not self.coefficients:
                problems.append("function.coeff: at least one coefficient is required")
            for j, re, im in self.coefficients:
                if j < 0:
                    problems.append(f"function.coeff: index must be >= 0, got {j}")
                if j == 0 and im != 0.0:
                    problems.append("function.coeff: the index-0 coefficient must be real")
            indices = [j for j, _, _ in self.coefficients]
            if len(set(indices)) != len(indices):
                problems.append("function.coeff: duplicate coefficient index")
            if self.smoothness < 1:
                problems.append(f"function.smoothness must be >= 1, got {self.smoothness}")
        elif self.family == "power":
            if self.kappa is None:
                problems.append("function.kappa is required for the power family")
            elif not self.kappa > 1.0:
                problems.append(f"function.kappa must exceed 1, got {self.kappa}")
            if self.terms is not None and self.terms < 1:
                problems.append(f"function.terms must be >= 1, got {self.terms}")
        elif self.family == "geometric":
            if self.rho is None:
                problems.append("function.rho is required for the geometric family")
            elif not 0.0 < self.rho <= 0.999:
                problems.append(f"function.rho must lie in (0, 0.999], got {self.rho}")
        return problems

    def build(self) -> TestFunction:
        problems = self.validate()
        if problems:
            raise ConfigError(problems)
        if self.family == "trig":
            coeffs = {j: complex(re, im) for j, re, im in self.coefficients}
            return trig_polynomial(coeffs, identifier="trig-poly", smoothness_k=self.smoothness)
        if self.family == "power":
            kwargs = {} if self.terms is None else {"max_index": self.terms}
            return power_decay(self.kappa, **kwargs)
        return geometric(self.rho)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment run needs, validated as a whole."""

    experiment: str
    function: FunctionSpec = field(default_factory=FunctionSpec)
    sizes: tuple[int, ...] = DEFAULT_SIZES
    replicas: int = DEFAULT_REPLICAS
    seed: int = DEFAULT_SEED
    method: str = "eigen"
    truncation: int | None = None  # None means auto
    output_path: str = ""
    format: str = "csv"

    def validate(self) -> list[str]:
        problems = []
        if self.experiment not in EXPERIMENTS:
            problems.append(
                f"experiment.kind must be one of {EXPERIMENTS}, got {self.experiment!r}"
            )
        if not self.sizes:
            problems.append("experiment.sizes must be nonempty")
        else:
            if any(n < 1 for n in self.sizes):
                problems.append("experiment.sizes must all be >= 1")
            if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
                problems.append("experiment.sizes must be strictly ascending")
        if self.replicas < 1:
            problems.append(f"experiment.replicas must be >= 1, got {self.replicas}")
        if not 0 <= self.seed <= _U64_MAX:
            problems.append(f"experiment.seed must fit in 64 unsigned bits, got {self.seed}")
        if self.method not in _METHODS:
            problems.append(f"experiment.method must be one of {_METHODS}, got {self.method!r}")
        if self.truncation is not None and self.truncation < 1:
            problems.append(
                f"experiment.truncation must be 'auto' or >= 1, got {self.truncation}"
            )
        if (
            self.method == "trace"
            and self.truncation is not None
            and self.sizes
            and 2 * self.truncation > min(self.sizes)
        ):
            problems.append(
                f"experiment.truncation d={self.truncation} violates n >= 2d at "
                f"n={min(self.sizes)}: the trace path needs d <= n/2"
            )
        if self.format not in _FORMATS:
            problems.append(f"experiment.format must be one of {_FORMATS}, got {self.format!r}")
        problems.extend(self.function.validate())
        return problems

    def with_overrides(
        self,
        seed: int | None = None,
        replicas: int | None = None,
        output_path: str | None = None,
        format: str | None = None,
    ) -> "ExperimentConfig":
        cfg = self
        if seed is not None:
            cfg = replace(cfg, seed=seed)
        if replicas is not None:
            cfg = replace(cfg, replicas=replicas)
        if output_path is not None:
            cfg = replace(cfg, output_path=output_path)
        if format is not None:
            cfg = replace(cfg, format=format)
        return cfg


_EXPERIMENT_KEYS = {
    "kind",
    "sizes",
    "replicas",
    "seed",
    "method",
    "truncation",
    "output",
    "format",
}
_FUNCTION_KEYS = {"family", "coeff", "smoothness", "kappa", "terms", "rho"}


def _parse_lines(text: str):
    """Yield (line_number, section, key, value) with syntax errors collected."""
    section = None
    problems = []
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("experiment", "function"):
                problems.append(f"line {lineno}: unknown section [{section}]")
                section = None
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected 'key = value', got {line!r}")
            continue
        if section is None:
            problems.append(f"line {lineno}: key outside of a [section]")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        known = _EXPERIMENT_KEYS if section == "experiment" else _FUNCTION_KEYS
        if key not in known:
            problems.append(f"line {lineno}: unknown key {key!r} in [{section}]")
            continue
        entries.append((lineno, section, key, value))
    return entries, problems


def _convert(problems, lineno, key, value, kind, constraint=""):
    try:
        return kind(value)
    except ValueError:
        wanted = constraint or kind.__name__
        problems.append(f"line {lineno}: {key} must be {wanted}, got {value!r}")
        return None


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config; raises ConfigError listing every problem."""
    entries, problems = _parse_lines(text)

    exp_values = {}
    fn_values = {}
    coeffs = []
    seen = set()
    for lineno, section, key, value in entries:
        if key != "coeff":
            if (section, key) in seen:
                problems.append(f"line {lineno}: duplicate key {key!r} in [{section}]")
                continue
            seen.add((section, key))
        if section == "experiment":
            if key == "sizes":
                sizes = []
                for token in value.split():
                    n = _convert(problems, lineno, "sizes", token, int, "a list of integers")
                    if n is not None:
                        sizes.append(n)
                exp_values["sizes"] = tuple(sizes)
            elif key in ("replicas", "seed"):
                parsed = _convert(problems, lineno, key, value, int, "an integer")
                if parsed is not None:
                    exp_values[key] = parsed
            elif key == "truncation":
                if value == "auto":
                    exp_values["truncation"] = None
                else:
                    parsed = _convert(
                        problems, lineno, key, value, int, "'auto' or an integer"
                    )
                    if parsed is not None:
                        exp_values["truncation"] = parsed
            elif key == "output":
                exp_values["output_path"] = value
            elif key == "kind":
                exp_values["experiment"] = value
            else:
                exp_values[key] = value
        else:
            if key == "coeff":
                tokens = value.split()
                if len(tokens) != 3:
                    problems.append(
                        f"line {lineno}: coeff expects 'index re im', got {value!r}"
                    )
                    continue
                j = _convert(problems, lineno, "coeff index", tokens[0], int, "an integer")
                re = _convert(problems, lineno, "coeff re", tokens[1], float, "a number")
                im = _convert(problems, lineno, "coeff im", tokens[2], float, "a number")
                if None not in (j, re, im):
                    coeffs.append((j, re, im))
            elif key in ("smoothness", "terms"):
                parsed = _convert(problems, lineno, key, value, int, "an integer")
                if parsed is not None:
                    fn_values[key] = parsed
            elif key in ("kappa", "rho"):
                parsed = _convert(problems, lineno, key, value, float, "a number")
                if parsed is not None:
                    fn_values[key] = parsed
            else:
                fn_values[key] = value

    if coeffs:
        fn_values["coefficients"] = tuple(coeffs)
    if "experiment" not in exp_values:
        problems.append("missing required key 'kind' in [experiment]")
    elif "sizes" not in exp_values:
        kind = exp_values["experiment"]
        if kind in DEFAULT_SIZES_BY_KIND:
            exp_values["sizes"] = DEFAULT_SIZES_BY_KIND[kind]

    if problems:
        raise ConfigError(problems)

    config = ExperimentConfig(function=FunctionSpec(**fn_values), **exp_values)
    validation = config.validate()
    if validation:
        raise ConfigError(validation)
    return config


def serialize_config(config: ExperimentConfig) -> str:
    """Canonical text whose parse equals `config` exactly."""
    lines = [
        "[experiment]",
        f"kind = {config.experiment}",
        "sizes = " + " ".join(str(n) for n in config.sizes),
        f"replicas = {config.replicas}",
        f"seed = {config.seed}",
        f"method = {config.method}",
        "truncation = " + ("auto" if config.truncation is None else str(config.truncation)),
        f"format = {config.format}",
    ]
    if config.output_path:
        lines.append(f"output = {config.output_path}")
    lines.append("")
    lines.append("[function]")
    fn = config.function
    lines.append(f"family = {fn.family}")
    if fn.family == "trig":
        for j, re, im in fn.coefficients:
            lines.append(f"coeff = {j} {re!r} {im!r}")
        lines.append(f"smoothness = {fn.smoothness}")
    elif fn.family == "power":
        lines.append(f"kappa = {fn.kappa!r}")
        if fn.terms is not None:
            lines.append(f"terms = {fn.terms}")
    else:
        lines.append(f"rho = {fn.rho!r}")
    return "\n".join(lines) + "\n"
