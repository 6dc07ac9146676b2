"""
Run configuration for the command line: a flat key = value file whose
entries are overridden by flags.
"""
import io

from pextragrad.errors import UsageError
from pextragrad.extragradient import METHODS, SCHEDULES, EInexPMConfig, LSConfig
from pextragrad.fw_projection import FWConfig


def _flag(value):
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise UsageError("not a boolean: %r" % (value,))


def _count(value):
    number = float(value)
    if not number.is_integer():
        raise UsageError("not an integer: %r" % (value,))
    return int(number)


# key -> converter; keys match the long flags with dashes turned into underscores
KEYS = {
    "problem": str,
    "method": str,
    "alpha": float,
    "gamma_bar": float,
    "beta": float,
    "sigma": float,
    "rho": float,
    "backtrack": float,
    "tol": float,
    "max_outer": _count,
    "fw_max_iter": _count,
    "fw_floor": float,
    "b_bar": float,
    "schedule": str,
    "ref_tol": float,
    "out": str,
    "seed": _count,
    "log_file": str,
    "verbose": _flag,
}


def normalize_key(key):
    return key.strip().lstrip("-").replace("-", "_")


def load_config_file(path):
    with io.open(path, encoding="utf-8") as handle:
        return parse_config(handle.read(), path)


def parse_config(text, source="<config>"):
    values = {}
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("%s:%d: expected key = value, got %r" % (source, number, raw))
        key, value = line.split("=", 1)
        key = normalize_key(key)
        if key not in KEYS:
            raise UsageError("%s:%d: unknown key %r" % (source, number, key))
        values[key] = value.strip()
    return values


class RunConfig:
    PROBLEM = "linear-saddle"
    SEED = 0

    def __init__(self, **values):
        unknown = sorted(set(values) - set(KEYS))
        if unknown:
            raise UsageError("unknown configuration keys: %s" % ", ".join(unknown))
        for key, convert in KEYS.items():
            value = values.get(key)
            if value is not None:
                try:
                    value = convert(value)
                except (TypeError, ValueError) as exc:
                    raise UsageError("bad value for %s: %r" % (key, value)) from exc
            setattr(self, key, value)
        if self.seed is None:
            self.seed = RunConfig.SEED
        self.verbose = bool(self.verbose)
        self.validate()

    def validate(self):
        if self.method is not None and self.method not in METHODS:
            raise UsageError("unknown method %r (known: %s)" % (self.method, ", ".join(sorted(METHODS))))
        if self.schedule is not None and self.schedule not in SCHEDULES[:2]:
            raise UsageError("schedule must be one of %s, got %r" % (", ".join(SCHEDULES[:2]), self.schedule))

    @classmethod
    def merged(cls, file_values, flag_values):
        """Flags win over the file; flags left at None do not override."""
        values = dict(file_values)
        values.update((key, value) for key, value in flag_values.items() if value is not None)
        return cls(**values)

    def problem_name(self, default=PROBLEM):
        return self.problem or default

    def method_for(self, problem):
        return self.method or problem.defaults.get("method", "einexpm")

    def fw_config(self):
        changes = {}
        if self.fw_max_iter is not None:
            changes["max_iter"] = self.fw_max_iter
        if self.fw_floor is not None:
            changes["abs_gap_floor"] = self.fw_floor
        return FWConfig(**changes)

    def _common(self, defaults):
        values = dict(fw=self.fw_config())
        if self.max_outer is not None:
            values["max_outer"] = self.max_outer
        for key, flag in (("outer_tol", self.tol), ("ref_tol", self.ref_tol)):
            value = defaults.get(key) if flag is None else flag
            if value is not None:
                values[key] = value
        return values

    def solver_config(self, problem):
        """EInexPMConfig or LSConfig; unset values come from the problem defaults."""
        defaults = problem.defaults
        values = self._common(defaults)
        if self.method_for(problem) == "einexpm":
            for key in ("alpha", "gamma_bar", "b_bar"):
                value = getattr(self, key)
                if value is None:
                    value = defaults.get(key)
                if value is not None:
                    values[key] = value
            if self.schedule is not None:
                values["a_schedule"] = self.schedule
            return EInexPMConfig(**values)
        # the einexpm gamma_bar defaults exceed the line-search bound, so only flags count here
        for key in ("sigma", "rho", "backtrack", "gamma_bar"):
            if getattr(self, key) is not None:
                values[key] = getattr(self, key)
        if self.beta is not None:
            values["beta_lo"] = values["beta_hi"] = self.beta
        return LSConfig(**values)

    def __repr__(self):
        return "<RunConfig problem=%s method=%s>" % (self.problem, self.method)
