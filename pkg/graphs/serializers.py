from rest_framework import serializers

from graphs.services.verify import VIOLATION_CHOICES


class ViolationSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=VIOLATION_CHOICES)
    detail = serializers.CharField()


class VerifyReportSerializer(serializers.Serializer):
    feasible = serializers.BooleanField()
    size = serializers.IntegerField()
    total_arcs = serializers.IntegerField()
    violations = ViolationSerializer(many=True)


class InstanceSummarySerializer(serializers.Serializer):
    """Header facts of an instance, printed by `mvdsp generate` and `compose`."""

    n = serializers.IntegerField()
    arcs = serializers.IntegerField(source="graph.edge_count")
    k = serializers.IntegerField()
    p = serializers.IntegerField()
    directed = serializers.BooleanField(source="graph.directed")
    layers = serializers.SerializerMethodField()

    def get_layers(self, obj):
        return None if obj.layering is None else len(obj.layering)
