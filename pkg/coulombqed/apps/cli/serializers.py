"""
Validation of run configurations read from JSON files and command-line flags.
"""
import math

from rest_framework import serializers
from rest_framework.serializers import ValidationError

from coulombqed.apps.api import AUTO, RunConfigData
from coulombqed.apps.core.constants import Sector
from coulombqed.apps.trotter.suite import FAULTS


class DimsField(serializers.Field):
    """Lattice extents as ``"X,Y,Z"`` or a list of three positive integers."""

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [part.strip() for part in data.split(',')]
        try:
            dims = tuple(int(part) for part in data)
        except (TypeError, ValueError) as err:
            raise ValidationError(f"dims must be three integers, got {data!r}") from err
        if len(dims) != 3 or any(extent < 1 for extent in dims):
            raise ValidationError(f"dims must be three positive integers, got {data!r}")
        return dims

    def to_representation(self, value):
        return list(value)


class AutoIntegerField(serializers.Field):
    """A positive integer or the string ``"auto"``."""

    def to_internal_value(self, data):
        if data == AUTO:
            return AUTO
        if isinstance(data, bool):
            raise ValidationError(f"expected a positive integer or {AUTO!r}, got {data!r}")
        try:
            value = int(data)
        except (TypeError, ValueError) as err:
            raise ValidationError(f"expected a positive integer or {AUTO!r}, got {data!r}") from err
        if value != float(data) or value < 1:
            raise ValidationError(f"expected a positive integer or {AUTO!r}, got {data!r}")
        return value

    def to_representation(self, value):
        return value


class RunConfigSerializer(serializers.Serializer):
    """
    Validate a RunConfig. Missing keys take the RunConfigData defaults.
    """
    # pylint: disable=abstract-method
    PHYSICAL_FIELDS = ('g', 'mass', 'wilson', 'energy', 'epsilon', 'time', 'a_max', 'kappa')

    dims = DimsField(required=False)
    g = serializers.FloatField(required=False)
    mass = serializers.FloatField(required=False, min_value=0.0)
    wilson = serializers.FloatField(required=False)
    energy = serializers.FloatField(required=False, min_value=0.0)
    epsilon = serializers.FloatField(required=False)
    time = serializers.FloatField(required=False, min_value=0.0)
    steps = AutoIntegerField(required=False)
    n_a = AutoIntegerField(required=False)
    a_max = serializers.FloatField(required=False)
    sector = serializers.ChoiceField(choices=Sector.CHOICES, required=False)
    numeric_norms = serializers.BooleanField(required=False)
    transverse_hi = serializers.BooleanField(required=False)
    seed = serializers.IntegerField(required=False, allow_null=True, min_value=0)
    kappa = serializers.FloatField(required=False, allow_null=True)
    inject_fault = serializers.ChoiceField(choices=FAULTS, required=False, allow_null=True)

    def validate_epsilon(self, value):
        if not 0 < value < 1:
            raise ValidationError(f"epsilon must lie in (0, 1), got {value}")
        return value

    def validate_wilson(self, value):
        if not value > 0:
            raise ValidationError(f"wilson must be positive, got {value}")
        return value

    def validate_a_max(self, value):
        if not value > 0:
            raise ValidationError(f"a_max must be positive, got {value}")
        return value

    def validate_kappa(self, value):
        if value is not None and not value > 0:
            raise ValidationError(f"kappa must be positive, got {value}")
        return value

    def validate(self, attrs):
        for name in self.PHYSICAL_FIELDS:
            value = attrs.get(name)
            if value is not None and not math.isfinite(value):
                raise ValidationError({name: f"must be finite, got {value}"})
        return attrs

    def to_config(self):
        """The validated data as a RunConfigData."""
        return RunConfigData(**self.validated_data)
