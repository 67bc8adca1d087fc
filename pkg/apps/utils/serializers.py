from rest_framework import serializers

OUTPUT_FORMATS = ['text', 'json', 'csv']
DUAL_CONVENTIONS = ['theorem', 'preliminaries']


class RangeField(serializers.Field):
    """Integer list from ``3``, ``0..3``, ``1,2,5`` or a list"""
    default_error_messages = {
        'invalid': 'Expected an integer, a range "a..b" or a comma-separated list.',
        'empty': 'Range is empty.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        if isinstance(data, int):
            values = [data]
        elif isinstance(data, (list, tuple)):
            values = [self._integer(v) for v in data]
        else:
            text = str(data).replace(' ', '')
            if '..' in text:
                low, _, high = text.partition('..')
                values = list(range(self._integer(low), self._integer(high) + 1))
            else:
                values = [self._integer(v) for v in text.split(',') if v]
        if not values:
            self.fail('empty')
        return values

    def _integer(self, value):
        try:
            return int(value)
        except (TypeError, ValueError):
            self.fail('invalid')

    def to_representation(self, value):
        return list(value)


class OutputConfigSerializer(serializers.Serializer):
    """Flags shared by every command"""
    command = serializers.CharField()
    format = serializers.ChoiceField(choices=OUTPUT_FORMATS, default='text')
    out = serializers.CharField(required=False, allow_null=True, allow_blank=True)
    seedless = serializers.BooleanField(default=False)


class RunConfigSerializer(OutputConfigSerializer):
    """A field GF((p^h)^m), optional modulus of degree h*m, and (k, e) ranges"""
    p = serializers.IntegerField(min_value=2)
    h = serializers.IntegerField(min_value=1, default=1)
    m = serializers.IntegerField(min_value=1)
    modulus = serializers.CharField(required=False, allow_null=True, allow_blank=True)

    k = RangeField(required=False, allow_null=True)
    e = RangeField(required=False, allow_null=True)
    basis = serializers.ListField(child=serializers.CharField(), required=False, allow_null=True)
    dual_convention = serializers.ChoiceField(choices=DUAL_CONVENTIONS, default='theorem')

    def validate(self, attrs):
        m = attrs['m']
        k_values = attrs.get('k')
        e_values = attrs.get('e')
        if k_values is not None and any(not 1 <= k <= m - 1 for k in k_values):
            raise serializers.ValidationError({'k': f'Every k must lie in [1, {m - 1}].'})
        if e_values is not None and any(not 0 <= e <= m - 1 for e in e_values):
            raise serializers.ValidationError({'e': f'Every e must lie in [0, {m - 1}].'})
        basis = attrs.get('basis')
        if basis is not None and len(basis) != m:
            raise serializers.ValidationError({'basis': f'Expected {m} elements, got {len(basis)}.'})
        return attrs
