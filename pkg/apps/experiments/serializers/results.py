"""
Output documents of the experiment commands.

Every document carries ``schema_version``, the experiment name, the seed and the fully resolved
manifest. Complex matrices are row-major nested ``[re, im]`` pairs.
"""

from rest_framework import serializers

from apps.experiments.types import SCHEMA_VERSION, ExperimentKind
from apps.tomo.services import CANONICAL_SETTINGS, chsh_settings
from apps.tomo.services.process import PAULI_BASIS_LABELS
from apps.utils.serialization import complex_matrix

from .config import ExperimentConfigSerializer


class ComplexMatrixField(serializers.Field):
    def __init__(self, **kwargs):
        kwargs["read_only"] = True
        super().__init__(**kwargs)

    def to_representation(self, value):
        return complex_matrix(value)


class SpreadSerializer(serializers.Serializer):
    value = serializers.FloatField()
    std = serializers.FloatField()


class ExperimentResultSerializer(serializers.Serializer):
    """Fields shared by every output document."""

    experiment: ExperimentKind

    schema_version = serializers.SerializerMethodField()
    experiment_name = serializers.SerializerMethodField()
    seed = serializers.IntegerField(source="config.seed")
    exact = serializers.BooleanField(source="config.exact")
    config = ExperimentConfigSerializer()

    def get_schema_version(self, obj):
        return SCHEMA_VERSION

    def get_experiment_name(self, obj):
        return self.experiment.value


class HomFitErrorsSerializer(serializers.Serializer):
    amplitude = serializers.FloatField()
    visibility = serializers.FloatField()
    center = serializers.FloatField()
    width = serializers.FloatField()


class HomFitSerializer(serializers.Serializer):
    c_max = serializers.FloatField()
    c_min = serializers.FloatField()
    visibility = serializers.FloatField()
    center = serializers.FloatField()
    width = serializers.FloatField()
    residual = serializers.FloatField()
    stderr = HomFitErrorsSerializer()
    evaluations = serializers.IntegerField()


class HomResultSerializer(ExperimentResultSerializer):
    experiment = ExperimentKind.HOM

    fit = HomFitSerializer()
    visibility = SpreadSerializer()


class BellResultSerializer(ExperimentResultSerializer):
    experiment = ExperimentKind.BELL

    input = serializers.CharField(source="bell_input")
    bell_state = serializers.CharField()
    rho = ComplexMatrixField()
    success_probability = serializers.FloatField()
    fidelity = SpreadSerializer()
    purity = SpreadSerializer()
    linear_entropy = SpreadSerializer()
    concurrence = SpreadSerializer()
    tangle = SpreadSerializer()
    reconstruction = serializers.CharField()
    settings = serializers.SerializerMethodField()
    counts = serializers.ListField(child=serializers.FloatField())

    def get_settings(self, obj):
        return [setting.label for setting in CANONICAL_SETTINGS]


class ChshResultSerializer(ExperimentResultSerializer):
    experiment = ExperimentKind.CHSH

    input = serializers.CharField(source="bell_input")
    bell_state = serializers.CharField()
    S = SpreadSerializer()
    correlations = SpreadSerializer(many=True)
    signs = serializers.ListField(child=serializers.IntegerField())
    angles = serializers.ListField(child=serializers.FloatField())
    settings = serializers.SerializerMethodField()
    counts = serializers.ListField(child=serializers.FloatField())

    def get_settings(self, obj):
        return [setting.label for setting in chsh_settings(obj.angles)]


class QptResultSerializer(ExperimentResultSerializer):
    experiment = ExperimentKind.QPT

    chi = ComplexMatrixField()
    basis = serializers.SerializerMethodField()
    process_fidelity = SpreadSerializer()
    average_gate_fidelity = serializers.FloatField()
    trace_preservation_residual = serializers.FloatField()
    success_probabilities = serializers.ListField(child=serializers.FloatField())
    reconstruction = serializers.CharField()

    def get_basis(self, obj):
        return list(PAULI_BASIS_LABELS)
