from rest_framework import serializers

from solvers.services.reports import ANSWER_CHOICES, MODE_CHOICES


class SolutionEntrySerializer(serializers.Serializer):
    pair_index = serializers.IntegerField()
    path = serializers.ListField(child=serializers.IntegerField())
    arcs = serializers.IntegerField()

    def to_representation(self, instance):
        pair_index, path = instance
        return super().to_representation({"pair_index": pair_index, "path": list(path.vertices), "arcs": path.arcs})


class SolveReportSerializer(serializers.Serializer):
    mode = serializers.ChoiceField(choices=MODE_CHOICES)
    answer = serializers.ChoiceField(choices=ANSWER_CHOICES)
    p = serializers.IntegerField(allow_null=True)
    size = serializers.IntegerField()
    total_arcs = serializers.IntegerField(source="solution.total_arcs")
    optimal = serializers.BooleanField()
    ell_used = serializers.IntegerField(allow_null=True)
    iterations = serializers.IntegerField()
    budget_exhausted = serializers.BooleanField()
    entries = SolutionEntrySerializer(source="solution.entries", many=True)
