from rest_framework import serializers

from apps.utils.serializers import OutputConfigSerializer, RangeField
from .eaqecc import EaqeccParams

EAQECC_CSV_COLUMNS = [
    'p', 'm', 'e', 'k', 'hull_dim', 'n', 'k_q', 'd', 'c',
    'singleton_equality', 'regime_validated', 'exceeds_grs_threshold',
]


class EaqeccParamsSerializer(serializers.Serializer):
    """Schema of one EAQECC row in JSON and CSV output"""
    p = serializers.IntegerField(min_value=2, allow_null=True, required=False)
    h = serializers.IntegerField(min_value=1, default=1)
    m = serializers.IntegerField(min_value=2)
    e = serializers.IntegerField(min_value=0, allow_null=True, required=False)
    k = serializers.IntegerField(min_value=1)
    hull_dim = serializers.IntegerField(min_value=0)
    n = serializers.IntegerField(min_value=2)
    k_q = serializers.IntegerField(min_value=0)
    d = serializers.IntegerField(min_value=1)
    c = serializers.IntegerField(min_value=0)
    singleton_equality = serializers.BooleanField()
    regime_validated = serializers.BooleanField()
    grs_threshold = serializers.IntegerField(min_value=1, allow_null=True, required=False)
    exceeds_grs_threshold = serializers.BooleanField(allow_null=True, required=False)
    notation = serializers.CharField(read_only=True)

    def validate(self, attrs):
        if attrs['n'] != attrs['m']:
            raise serializers.ValidationError('Length n must equal m.')
        if 2 * attrs['d'] > attrs['n'] - attrs['k_q'] + 2 + attrs['c']:
            raise serializers.ValidationError('Parameters exceed the Singleton bound 2d <= n - k + 2 + c.')
        return attrs


def params_from_data(records):
    """EaqeccParams from emitted JSON records or CSV rows"""
    serializer = EaqeccParamsSerializer(data=list(records), many=True)
    serializer.is_valid(raise_exception=True)
    return [EaqeccParams(**dict(item)) for item in serializer.validated_data]


class EaqeccConfigSerializer(OutputConfigSerializer):
    """Either the published preset or one (q = p^h, m, e) with a k range"""
    paper_table1 = serializers.BooleanField(default=False)
    p = serializers.IntegerField(min_value=2, required=False, allow_null=True)
    h = serializers.IntegerField(min_value=1, default=1)
    m = serializers.IntegerField(min_value=2, required=False, allow_null=True)
    e = RangeField(required=False, allow_null=True)
    k = RangeField(required=False, allow_null=True)
    hull_dim = serializers.IntegerField(min_value=0, required=False, allow_null=True)

    def validate(self, attrs):
        if attrs['paper_table1']:
            return attrs
        missing = [name for name in ('p', 'm') if attrs.get(name) is None]
        if missing:
            raise serializers.ValidationError(
                {name: 'Required unless --paper-table1 is given.' for name in missing}
            )
        m = attrs['m']
        if attrs.get('k') is not None and any(not 1 <= k <= m - 1 for k in attrs['k']):
            raise serializers.ValidationError({'k': f'Every k must lie in [1, {m - 1}].'})
        if attrs.get('e') is not None and any(not 0 <= e <= m - 1 for e in attrs['e']):
            raise serializers.ValidationError({'e': f'Every e must lie in [0, {m - 1}].'})
        if attrs.get('hull_dim') is None and attrs.get('e') is None:
            raise serializers.ValidationError({'e': 'Give --e, or --hull-dim to derive parameters directly.'})
        return attrs
