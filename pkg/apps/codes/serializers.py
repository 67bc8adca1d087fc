from rest_framework import serializers

from apps.fields.polynomials import coefficient_list
from apps.utils.serializers import OutputConfigSerializer, RangeField, RunConfigSerializer
from .gabidulin import DualConvention, MdsStatus
from .hulls import Classification, HullReport
from .models import SweepRun
from .sweeps import FieldResult, Violation

HULL_CSV_COLUMNS = ['p', 'h', 'm', 'k', 'e', 'dim_formula', 'dim_oracle', 'agree', 'classification']
DISPATCH_MODES = ['local', 'celery']


class HullReportSerializer(serializers.Serializer):
    """Schema of a HullReport in JSON and CSV output"""
    p = serializers.IntegerField(min_value=2)
    h = serializers.IntegerField(min_value=1)
    m = serializers.IntegerField(min_value=1)
    k = serializers.IntegerField(min_value=1)
    e = serializers.IntegerField(min_value=0)
    dim_formula = serializers.IntegerField(min_value=0, allow_null=True, required=False)
    dim_oracle = serializers.IntegerField(min_value=0)
    agree = serializers.BooleanField(allow_null=True, read_only=True)
    classification = serializers.ChoiceField(choices=[c.value for c in Classification])
    convention = serializers.ChoiceField(
        choices=[c.value for c in DualConvention], default=DualConvention.THEOREM.value
    )
    formula_applicable = serializers.BooleanField(required=False)
    hull_basis = serializers.SerializerMethodField()

    def get_hull_basis(self, obj):
        if obj.hull_basis is None:
            return None
        return obj.hull_basis.tolist()

    def validate(self, attrs):
        if attrs.get('dim_formula') is not None and 'formula_applicable' in attrs \
                and not attrs['formula_applicable']:
            raise serializers.ValidationError('dim_formula given for a report without an applicable formula.')
        return attrs


def report_from_data(data):
    """HullReport from validated HullReportSerializer data"""
    dim_formula = data.get('dim_formula')
    return HullReport(
        p=data['p'],
        h=data['h'],
        m=data['m'],
        k=data['k'],
        e=data['e'],
        dim_formula=dim_formula,
        dim_oracle=data['dim_oracle'],
        classification=Classification(data['classification']),
        convention=DualConvention(data.get('convention', DualConvention.THEOREM.value)),
        formula_applicable=data.get('formula_applicable', dim_formula is not None),
    )


def parse_reports(records):
    """Reports from emitted JSON records or CSV rows"""
    serializer = HullReportSerializer(data=list(records), many=True)
    serializer.is_valid(raise_exception=True)
    return [report_from_data(item) for item in serializer.validated_data]


class ViolationSerializer(serializers.Serializer):
    check = serializers.CharField()
    p = serializers.IntegerField()
    h = serializers.IntegerField()
    m = serializers.IntegerField()
    k = serializers.IntegerField(allow_null=True, required=False)
    e = serializers.IntegerField(allow_null=True, required=False)
    detail = serializers.CharField(allow_blank=True, required=False, default='')


class FieldResultSerializer(serializers.Serializer):
    """Task payload for one evaluated field"""
    p = serializers.IntegerField()
    h = serializers.IntegerField()
    m = serializers.IntegerField()
    reports = HullReportSerializer(many=True)
    mds = serializers.DictField(child=serializers.ChoiceField(choices=[s.value for s in MdsStatus]))
    violations = ViolationSerializer(many=True)
    spot_checks = serializers.IntegerField(min_value=0)


def field_result_from_data(data):
    serializer = FieldResultSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    values = serializer.validated_data
    return FieldResult(
        p=values['p'],
        h=values['h'],
        m=values['m'],
        reports=[report_from_data(item) for item in values['reports']],
        mds={int(k): MdsStatus(status) for k, status in values['mds'].items()},
        violations=[Violation(**dict(item)) for item in values['violations']],
        spot_checks=values['spot_checks'],
    )


def field_payload(ctx):
    return {
        'p': ctx.p,
        'h': ctx.h,
        'm': ctx.m,
        'modulus': list(ctx.modulus),
    }


def matrix_payload(matrix):
    """Nested coefficient arrays, one list per entry"""
    return coefficient_list(matrix.data)


class SweepConfigSerializer(OutputConfigSerializer):
    """Budgets and filters of verify_sweep"""
    max_field_size = serializers.IntegerField(min_value=4, required=False, allow_null=True)
    max_minors = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    q = RangeField(required=False, allow_null=True)
    m = RangeField(required=False, allow_null=True)
    spot_checks = serializers.IntegerField(min_value=0, default=0)
    seed = serializers.IntegerField(min_value=0, default=0)
    dispatch = serializers.ChoiceField(choices=DISPATCH_MODES, default='local')
    record = serializers.BooleanField(default=False)
    no_mds = serializers.BooleanField(default=False)

    def validate(self, attrs):
        if attrs.get('seedless') and attrs.get('spot_checks'):
            raise serializers.ValidationError({'spot_checks': 'Random spot checks are refused with --seedless.'})
        return attrs


class SweepRunSerializer(serializers.ModelSerializer):
    records_count = serializers.IntegerField(source='records.count', read_only=True)

    class Meta:
        model = SweepRun
        fields = [
            'run_id', 'status', 'dispatch', 'max_field_size', 'max_minors', 'check_mds',
            'spot_checks', 'seed', 'fields_count', 'instances', 'disagreements',
            'violations', 'duration', 'summary', 'records_count', 'created_at'
        ]
        read_only_fields = fields


class HullConfigSerializer(RunConfigSerializer):
    with_basis = serializers.BooleanField(default=False)
