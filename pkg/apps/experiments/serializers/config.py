from pathlib import Path

from rest_framework import serializers

from apps.counts.types import CountModel
from apps.experiments.types import SCHEMA_VERSION, ExperimentConfig, HomScan
from apps.mode_core.exceptions import DomainError as ModeDomainError
from apps.mode_core.types import NUM_MODES, NoiseModel


class StrictSerializerMixin:
    """Reject keys that are not declared fields, at every nesting level."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ["Unknown field."] for key in unknown})
        return super().to_internal_value(data)


class NoiseModelSerializer(StrictSerializerMixin, serializers.Serializer):
    """Device and source imperfections; shots are set at the top level of the manifest."""

    x = serializers.FloatField(min_value=0.0, max_value=1.0, default=1.0)
    transmissions = serializers.ListField(
        child=serializers.FloatField(min_value=0.0, max_value=1.0),
        min_length=NUM_MODES,
        max_length=NUM_MODES,
        default=[1.0] * NUM_MODES,
    )
    background = serializers.FloatField(min_value=0.0, default=0.0)
    sigma = serializers.FloatField(default=1.0)
    cross_ratio = serializers.FloatField(min_value=0.0, max_value=1.0, default=2 / 3)
    te0_cross_ratio = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.0)
    mma_te0_transmission = serializers.FloatField(min_value=0.0, max_value=1.0, default=1 / 3)
    mma_te1_transmission = serializers.FloatField(min_value=0.0, max_value=1.0, default=1.0)

    def validate_sigma(self, value):
        if value <= 0:
            raise serializers.ValidationError("Coherence width must be positive.")
        return value

    def validate(self, attrs):
        try:
            NoiseModel(**attrs)
        except ModeDomainError as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs


class HomScanSerializer(StrictSerializerMixin, serializers.Serializer):
    start = serializers.FloatField(default=-4.0)
    stop = serializers.FloatField(default=4.0)
    points = serializers.IntegerField(min_value=5, default=41)

    def validate(self, attrs):
        if attrs["stop"] <= attrs["start"]:
            raise serializers.ValidationError("The delay scan must stop after it starts.")
        return attrs


class ExperimentConfigSerializer(StrictSerializerMixin, serializers.Serializer):
    """
    Experiment manifest.

    Reading a manifest goes through ``is_valid()`` / ``save()``; serializing an
    :class:`ExperimentConfig` gives the resolved document embedded in every output.
    """

    schema_version = serializers.IntegerField()
    name = serializers.CharField(required=False, allow_blank=True, default="")
    description = serializers.CharField(required=False, allow_blank=True, default="")
    noise = NoiseModelSerializer(required=False)
    shots = serializers.IntegerField(min_value=1, default=10_000)
    seed = serializers.IntegerField(min_value=0, default=0)
    trials = serializers.IntegerField(min_value=2, default=100)
    exact = serializers.BooleanField(default=False)
    count_model = serializers.ChoiceField(choices=CountModel.choices, default=CountModel.POISSON)
    hom = HomScanSerializer(required=False)
    output = serializers.CharField(source="output_dir", required=False, allow_null=True, default=None)

    def validate_schema_version(self, value):
        if value != SCHEMA_VERSION:
            raise serializers.ValidationError(f"Unsupported schema version {value}; expected {SCHEMA_VERSION}.")
        return value

    def create(self, validated_data):
        noise = dict(validated_data.get("noise") or NoiseModelSerializer().run_validation({}))
        noise["transmissions"] = tuple(noise["transmissions"])
        hom = dict(validated_data.get("hom") or HomScanSerializer().run_validation({}))
        output_dir = validated_data.get("output_dir")
        return ExperimentConfig(
            noise=NoiseModel(shots=validated_data["shots"], **noise),
            seed=validated_data["seed"],
            trials=validated_data["trials"],
            exact=validated_data["exact"],
            count_model=CountModel(validated_data["count_model"]),
            hom=HomScan(**hom),
            output_dir=Path(output_dir) if output_dir else None,
            name=validated_data["name"],
            description=validated_data["description"],
        )
