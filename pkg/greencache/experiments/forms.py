import math

from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from greencache.base.exceptions import InvalidParameters
from greencache.caching.power import CachePowerParams
from greencache.coverage.choices import CorrectionConvention
from greencache.experiments.choices import ExperimentKind, Objective
from greencache.experiments.config import ExperimentConfig, format_value
from greencache.metrics.choices import DensityRule
from greencache.network.params import NetworkParams, NoiseModel
from greencache.network.validators import validate


class FloatListField(forms.Field):
    """Comma-separated finite floats, cleaned to a tuple."""

    def to_python(self, value):
        if value in self.empty_values:
            return ()
        if isinstance(value, tuple | list):
            items = value
        else:
            items = [item.strip() for item in str(value).split(",") if item.strip()]
        try:
            numbers = tuple(float(item) for item in items)
        except ValueError:
            raise ValidationError("Enter comma-separated numbers.", code="invalid")
        if not all(math.isfinite(number) for number in numbers):
            raise ValidationError("Enter finite numbers.", code="invalid")
        return numbers


# Applied to any key the preset, config file and flags leave unset.
DEFAULTS = {
    "b": "1",
    "beta": "0",
    "f0_values": "10",
    "density_rule": DensityRule.QOS_BOUNDARY,
    "seed": "0",
    "objective": Objective.BOTH,
    "transmit_power": "50",
    "trials": "20000",
    "requests": "1000000",
    "mc_gamma_scale": "1",
    "bits": "false",
}

NETWORK_KEYS = ("lambda_b", "lambda_u", "alpha", "gamma", "b", "beta")
POWER_KEYS = ("p_o", "p_hd", "p_bh")


class ExperimentConfigForm(forms.Form):
    kind = forms.ChoiceField(choices=ExperimentKind.choices)

    lambda_b = forms.FloatField()
    lambda_u = forms.FloatField()
    # Defaults to the first of `alphas` when only the fan-out is given.
    alpha = forms.FloatField(required=False)
    gamma = forms.FloatField()
    b = forms.FloatField()
    beta = forms.FloatField()
    # Thermal noise constituents; when bandwidth is given they replace beta.
    bandwidth = forms.FloatField(required=False)
    noise_figure = forms.FloatField(required=False)
    temperature = forms.FloatField(required=False)

    p_o = forms.FloatField()
    p_hd = forms.FloatField()
    p_bh = forms.FloatField()
    f0_values = FloatListField()
    alphas = FloatListField(required=False)

    density_rule = forms.ChoiceField(choices=DensityRule.choices)
    density_constant = forms.FloatField(required=False)
    pcov_nn = forms.FloatField(required=False)
    convention = forms.ChoiceField(choices=CorrectionConvention.choices)
    objective = forms.ChoiceField(choices=Objective.choices)

    p_start = forms.FloatField()
    p_stop = forms.FloatField()
    p_step = forms.FloatField()

    seed = forms.IntegerField(min_value=0)
    transmit_power = forms.FloatField()
    trials = forms.IntegerField(min_value=1)
    requests = forms.IntegerField(min_value=1)
    window_radius = forms.FloatField(required=False)
    mc_gamma_scale = forms.FloatField()
    bits = forms.BooleanField(required=False)

    def __init__(self, data, **kwargs):
        data = dict(data)
        defaults = dict(DEFAULTS, convention=settings.EE_CORRECTION_CONVENTION)
        grid = settings.EXPERIMENT_DEFAULT_GRIDS.get(data.get("kind"))
        if grid:
            defaults.update(zip(("p_start", "p_stop", "p_step"), map(repr, grid)))
        for key, value in defaults.items():
            data.setdefault(key, value)
        super().__init__(data, **kwargs)

    def _noise(self, cleaned_data):
        if cleaned_data.get("bandwidth") is None:
            return NoiseModel.direct(cleaned_data["beta"])
        kwargs = {
            "bandwidth": cleaned_data["bandwidth"],
            "noise_figure": cleaned_data.get("noise_figure"),
        }
        if cleaned_data.get("temperature") is not None:
            kwargs["temperature"] = cleaned_data["temperature"]
        return NoiseModel.thermal(**kwargs)

    def clean(self):
        cleaned_data = super().clean()

        if cleaned_data.get("alpha") is None and "alpha" not in self.errors:
            if cleaned_data.get("alphas"):
                cleaned_data["alpha"] = cleaned_data["alphas"][0]
            else:
                message = self.fields["alpha"].error_messages["required"]
                self.add_error("alpha", ValidationError(message, code="required"))

        unknown = sorted(set(self.data) - set(self.fields))
        if unknown:
            raise ValidationError(
                "Unknown key(s): %(keys)s", code="unknown", params={"keys": ", ".join(unknown)}
            )

        if all(key in cleaned_data for key in NETWORK_KEYS):
            noise = self._noise(cleaned_data)
            alphas = cleaned_data.get("alphas") or (cleaned_data["alpha"],)
            for alpha in alphas:
                network = NetworkParams(
                    lambda_b=cleaned_data["lambda_b"],
                    lambda_u=cleaned_data["lambda_u"],
                    alpha=alpha,
                    gamma=cleaned_data["gamma"],
                    b=cleaned_data["b"],
                    noise=noise,
                )
                for violation in validate(network).violations:
                    self.add_error(None, violation)

        if all(key in cleaned_data for key in POWER_KEYS):
            try:
                CachePowerParams(
                    p_tx=0.0,
                    p_o=cleaned_data["p_o"],
                    p_hd=cleaned_data["p_hd"],
                    p_bh=cleaned_data["p_bh"],
                )
            except InvalidParameters as e:
                for violation in e.violations:
                    self.add_error(None, violation)

        if any(f0 < 1 for f0 in cleaned_data.get("f0_values", ())):
            self.add_error("f0_values", "f0 >= 1")
        if len(cleaned_data.get("alphas", ())) > 1 and (
            cleaned_data.get("kind") != ExperimentKind.APC_SWEEP
        ):
            self.add_error("alphas", "only apc_sweep fans out over alpha")

        start = cleaned_data.get("p_start")
        stop = cleaned_data.get("p_stop")
        step = cleaned_data.get("p_step")
        if start is not None and not start > 0:
            self.add_error("p_start", "p_start > 0")
        if step is not None and not step > 0:
            self.add_error("p_step", "p_step > 0")
        if start is not None and stop is not None and stop < start:
            self.add_error("p_stop", "p_stop >= p_start")

        positive = ("transmit_power", "mc_gamma_scale", "window_radius", "density_constant")
        for key in positive:
            value = cleaned_data.get(key)
            if value is not None and not value > 0:
                self.add_error(key, "{} > 0".format(key))
        pcov_nn = cleaned_data.get("pcov_nn")
        if pcov_nn is not None and not 0 < pcov_nn <= 1:
            self.add_error("pcov_nn", "0 < pcov_nn <= 1")

        return cleaned_data

    def error_report(self):
        """Form errors as {key: [messages]}, ready for a JSON error line."""
        return {
            key: [error["message"] for error in errors]
            for key, errors in self.errors.get_json_data().items()
        }

    def to_config(self):
        data = self.cleaned_data
        network = NetworkParams(
            lambda_b=data["lambda_b"],
            lambda_u=data["lambda_u"],
            alpha=data["alpha"],
            gamma=data["gamma"],
            b=data["b"],
            noise=self._noise(data),
        )
        power = CachePowerParams(
            p_tx=0.0, p_o=data["p_o"], p_hd=data["p_hd"], p_bh=data["p_bh"]
        )
        echo = tuple(
            (key, format_value(value))
            for key, value in sorted(data.items())
            if value is not None and value != ()
        )
        return ExperimentConfig(
            kind=data["kind"],
            network=network,
            power=power,
            f0_values=data["f0_values"],
            alphas=data["alphas"],
            density_rule=data["density_rule"],
            density_constant=data["density_constant"],
            pcov_nn=data["pcov_nn"],
            grid=(data["p_start"], data["p_stop"], data["p_step"]),
            seed=data["seed"],
            convention=data["convention"],
            objective=data["objective"],
            transmit_power=data["transmit_power"],
            trials=data["trials"],
            requests=data["requests"],
            window_radius=data["window_radius"],
            mc_gamma_scale=data["mc_gamma_scale"],
            bits=data["bits"],
            echo=echo,
        )
