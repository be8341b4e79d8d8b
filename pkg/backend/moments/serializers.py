from rest_framework import serializers

from characters.cubic_characters import primitivity_and_conductor
from characters.field_tower import EXT
from characters.validators import validate_genus, validate_poly, validate_q
from cubicl_project.settings import CUTOFFS, DDS_LADDER, THREADS

from .dds_explorer import DDSConfig
from .euler_constants import ROOTS, REAL
from .family_moments import FamilySpec
from .verification import SUITES

BAD_PAIR = 'Ожидалась пара вида a:b, получено {}'
BAD_LADDER = 'Ожидалась тройка m_F,m_N,m_D, получено {}'
NO_VALUE = 'Для режима value нужен параметр --v'

HALF = 'half'
VALUE = 'value'
DDS_ACTIONS = ('compare', 'scan', 'chid', 'residue', 'perron')


def split_pair(text, separator=':', size=2, message=BAD_PAIR):
    parts = text.split(separator)
    if len(parts) != size:
        raise serializers.ValidationError(message.format(text))
    return parts


class TowerSerializer(serializers.Serializer):
    q = serializers.IntegerField()

    def validate(self, attrs):
        attrs['tower'] = validate_q(attrs['q'])
        for name in ('h1', 'h2'):
            if name in attrs:
                attrs[name] = validate_poly(attrs['tower'], attrs[name])
        return attrs


class TwistSerializer(TowerSerializer):
    h1 = serializers.CharField(default='1')
    h2 = serializers.CharField(default='1')


class FamilySerializer(TwistSerializer):
    g = serializers.IntegerField()

    def validate_g(self, g):
        return validate_genus(g)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        attrs['spec'] = FamilySpec(
            attrs['tower'], attrs['g'], attrs['h1'], attrs['h2'])
        return attrs


class MomentSerializer(FamilySerializer):
    threads = serializers.IntegerField(min_value=1, default=THREADS)
    shards = serializers.IntegerField(min_value=1, allow_null=True,
                                      default=None)
    cutoff_p = serializers.IntegerField(min_value=1, default=CUTOFFS['P'])
    cutoff_s = serializers.IntegerField(min_value=1, default=CUTOFFS['S'])
    cutoff_c = serializers.IntegerField(min_value=1, default=CUTOFFS['C'])
    genera = serializers.ListField(
        child=serializers.IntegerField(), default=list)
    pairs = serializers.ListField(
        child=serializers.CharField(), default=list)

    def validate_genera(self, genera):
        return [validate_genus(g) for g in genera]

    def validate_pairs(self, pairs):
        return [split_pair(pair) for pair in pairs]

    def validate(self, attrs):
        attrs = super().validate(attrs)
        t = attrs['tower']
        attrs['cutoffs'] = {
            'P': attrs['cutoff_p'],
            'S': attrs['cutoff_s'],
            'C': attrs['cutoff_c'],
        }
        attrs['pairs'] = [
            (validate_poly(t, h1), validate_poly(t, h2))
            for h1, h2 in attrs['pairs']]
        return attrs


class LPolySerializer(TowerSerializer):
    F = serializers.CharField()

    def validate(self, attrs):
        attrs = super().validate(attrs)
        t = attrs['tower']
        attrs['character'] = primitivity_and_conductor(
            t, validate_poly(t, attrs['F'], EXT))
        return attrs


class ConstantsSerializer(TwistSerializer):
    g = serializers.IntegerField(default=2)
    v_mode = serializers.ChoiceField(choices=(HALF, VALUE), default=HALF)
    v = serializers.FloatField(allow_null=True, default=None)
    form = serializers.ChoiceField(choices=(ROOTS, REAL), default=ROOTS)
    cutoff = serializers.IntegerField(min_value=1, default=CUTOFFS['S'])
    p_cutoff = serializers.IntegerField(min_value=1, default=CUTOFFS['P'])

    def validate_g(self, g):
        return validate_genus(g)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['v_mode'] == HALF:
            attrs['v'] = attrs['q'] ** -0.5
        elif attrs['v'] is None:
            raise serializers.ValidationError({'v': NO_VALUE})
        return attrs


class VerifySerializer(TowerSerializer):
    suite = serializers.ChoiceField(choices=('all',) + SUITES)
    g = serializers.IntegerField(default=2)
    max_deg = serializers.IntegerField(min_value=1, default=2)

    def validate_g(self, g):
        return validate_genus(g)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        attrs['spec'] = FamilySpec(attrs['tower'], attrs['g'])
        attrs['suites'] = (
            SUITES if attrs['suite'] == 'all' else (attrs['suite'],))
        return attrs


class DDSSerializer(TwistSerializer):
    action = serializers.ChoiceField(choices=DDS_ACTIONS)
    s = serializers.FloatField(default=2.0)
    w = serializers.FloatField(default=1.0)
    ladder = serializers.ListField(
        child=serializers.CharField(), default=list)
    grid = serializers.ListField(child=serializers.CharField(), default=list)
    m_f = serializers.IntegerField(min_value=1, default=2)
    max_deg = serializers.IntegerField(min_value=1, default=2)
    max_m = serializers.IntegerField(min_value=1, default=2)
    radius = serializers.FloatField(min_value=0, allow_null=True,
                                    default=None)

    def validate_ladder(self, ladder):
        steps = []
        for text in ladder:
            try:
                steps.append(tuple(int(m) for m in split_pair(
                    text, ',', 3, BAD_LADDER)))
            except ValueError:
                raise serializers.ValidationError(BAD_LADDER.format(text))
        return steps or list(DDS_LADDER)

    def validate_grid(self, grid):
        points = []
        for text in grid:
            try:
                points.append(tuple(float(x) for x in split_pair(text)))
            except ValueError:
                raise serializers.ValidationError(BAD_PAIR.format(text))
        return points

    def validate(self, attrs):
        attrs = super().validate(attrs)
        attrs['config'] = DDSConfig.from_sw(
            attrs['tower'], attrs['h1'], attrs['h2'], attrs['s'], attrs['w'],
            m_F=attrs['m_f'])
        return attrs


class MomentReportSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    g = serializers.IntegerField()
    h1 = serializers.CharField()
    h2 = serializers.CharField()
    family_size = serializers.IntegerField()
    zero_twist_count = serializers.IntegerField()
    moment_re = serializers.FloatField()
    moment_im = serializers.FloatField()
    q_pow_g_ratio = serializers.FloatField()
    untwisted_ratio = serializers.FloatField(allow_null=True)
    main_term = serializers.FloatField(allow_null=True)
    main_term_ratio = serializers.FloatField(allow_null=True)
    abs_main_term_ratio = serializers.FloatField(allow_null=True)
    flags = serializers.ListField(child=serializers.CharField())
    coefficients = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField()))
    runtime_ms = serializers.IntegerField()
    tool_version = serializers.CharField()
    tower_moduli = serializers.DictField()


class ConstantsReportSerializer(serializers.Serializer):
    P_val = serializers.FloatField()
    P_tail = serializers.FloatField()
    P_increments = serializers.ListField(child=serializers.FloatField())
    S_val = serializers.FloatField()
    S_flag = serializers.CharField()
    S_increments = serializers.ListField(child=serializers.FloatField())
    S_fit = serializers.FloatField(allow_null=True)
    C_val = serializers.FloatField()
    C_im = serializers.FloatField()
    C_factors = serializers.ListField(child=serializers.DictField())
    C_omitted = serializers.ListField(child=serializers.CharField())
    even_denominator = serializers.CharField()
    main_term = serializers.FloatField()
    residue_form = serializers.FloatField()
    identity_residual = serializers.FloatField()
    flags = serializers.ListField(child=serializers.CharField())
