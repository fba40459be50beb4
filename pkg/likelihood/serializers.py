"""Module for serializing the library's values so that they can be exposed.

The same serializers back the API responses and the JSON written by the
management commands. Exact fractions always travel as {"num": ..., "den": ...}
in lowest terms with a positive denominator.
"""

from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from django.core.management import load_command_class
from rest_framework import serializers

from .exceptions import DomainError
from .partitions import CycleType, OrderKind, Parity, Partition
from .utils import fraction_to_dict, parse_fraction
from .walks import custom_walk

COMMANDS = ("chars", "dist", "order", "tv", "split", "detector")

FORMATS = ("json", "csv")

COMMAND_OPTIONS = {
    "chars": {"n", "format", "output"},
    "dist": {"n", "walk", "t", "format", "output", "approx"},
    "order": {"n", "walk", "t", "kind", "stabilize", "parity", "format", "output"},
    "tv": {"n", "walk", "tmax", "format", "output", "approx"},
    "split": {"n", "walk", "t", "format", "output"},
    "detector": {"n", "i", "format", "output"},
}


class FractionField(serializers.Field):
    """An exact rational, written as {"num": ..., "den": ...}.

    Reads the same mapping, an integer or a "num/den" string.
    """

    default_error_messages = {"invalid": "Not a rational number: {value!r}."}

    def to_representation(self, value):
        return fraction_to_dict(value)

    def to_internal_value(self, data):
        try:
            if isinstance(data, dict):
                num, den = data["num"], data["den"]
                if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
                    raise DomainError(f"Bad fraction {data!r}")
                return Fraction(num, den)
            if isinstance(data, bool):
                raise DomainError(f"Bad fraction {data!r}")
            if isinstance(data, int):
                return Fraction(data)
            return parse_fraction(data)
        except (KeyError, DomainError):
            self.fail("invalid", value=data)


class PartitionField(serializers.Field):
    """A partition as its list of parts; reads a list or the text "4,2"."""

    def to_representation(self, value):
        return list(value.parts)

    def to_internal_value(self, data):
        try:
            if isinstance(data, (list, tuple)):
                return Partition(tuple(data))
            return Partition.parse(data)
        except (DomainError, TypeError, ValueError) as exc:
            raise serializers.ValidationError(str(exc)) from exc


class CycleTypeField(serializers.Field):
    """A cycle type in its text form "1^2 4"; reads the text or a list of parts."""

    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        try:
            if isinstance(data, (list, tuple)):
                return CycleType.from_parts(data)
            return CycleType.parse(data)
        except (DomainError, TypeError, ValueError) as exc:
            raise serializers.ValidationError(str(exc)) from exc


class CharacterTableSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Serializer for a full character table."""

    n = serializers.IntegerField()
    partitions = serializers.ListField(child=PartitionField())
    classes = serializers.ListField(child=CycleTypeField())
    class_sizes = serializers.SerializerMethodField()
    dims = serializers.ListField(child=serializers.IntegerField())
    chi = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField())
    )

    class SwaggerExamples:  # pylint: disable=too-few-public-methods
        """Swagger examples for the CharacterTableSerializer."""

        example = {
            "n": 3,
            "partitions": [[3], [2, 1], [1, 1, 1]],
            "classes": ["1^3", "1 2", "3"],
            "class_sizes": [1, 3, 2],
            "dims": [1, 2, 1],
            "chi": [[1, 1, 1], [2, 0, -1], [1, -1, 1]],
        }

    def get_class_sizes(self, obj):
        return [alpha.class_size for alpha in obj.classes]


class WalkStepSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """One class of a walk step with its per-element probability."""

    prob = FractionField()

    def get_fields(self):
        # "class" is a keyword, so the field cannot be declared as an attribute
        return {"class": CycleTypeField(source="cycle_type"), **super().get_fields()}


class WalkSpecSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for walk specifications.

    Reading validates the probabilities exactly and builds the WalkSpec;
    writing renders the merged, sorted step. The holding probability is "p";
    "hold" is read as an alias.
    """

    n = serializers.IntegerField(min_value=1)
    name = serializers.CharField(required=False, default="custom")
    p = FractionField(source="hold", required=False, default=Fraction(0))
    step = WalkStepSerializer(many=True)

    class SwaggerExamples:  # pylint: disable=too-few-public-methods
        """Swagger examples for the WalkSpecSerializer."""

        example = {
            "n": 3,
            "name": "custom",
            "p": {"num": 1, "den": 2},
            "step": [
                {"class": "1 2", "prob": {"num": 1, "den": 6}},
            ],
        }

    def to_internal_value(self, data):
        if isinstance(data, dict) and "hold" in data:
            hold = data["hold"]
            if "p" in data:
                raise serializers.ValidationError(
                    {"hold": "Give the holding probability as p or hold, not both."}
                )
            data = {key: value for key, value in data.items() if key != "hold"}
            data["p"] = hold
        return super().to_internal_value(data)

    def validate(self, attrs):
        try:
            attrs["walk"] = custom_walk(
                attrs["n"],
                [(item["cycle_type"], item["prob"]) for item in attrs["step"]],
                hold=attrs["hold"],
                name=attrs["name"],
            )
        except DomainError as exc:
            raise serializers.ValidationError(str(exc)) from exc
        return attrs

    def create(self, validated_data):
        return validated_data["walk"]


def walk_from_data(data):
    """
    Build a WalkSpec from decoded JSON.

    Raises:
        DomainError: With the serializer errors, if the data is not a valid walk.
    """
    serializer = WalkSpecSerializer(data=data)
    if not serializer.is_valid():
        raise DomainError(f"Invalid walk specification: {serializer.errors}")
    return serializer.save()


class ClassDistributionSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for the law of a walk at one time.

    Pass {"approx": True} in the context to add a decimal column.
    """

    walk = serializers.CharField()
    n = serializers.IntegerField()
    t = serializers.IntegerField()
    coset_sign = serializers.IntegerField(allow_null=True)
    rows = serializers.SerializerMethodField()

    class SwaggerExamples:  # pylint: disable=too-few-public-methods
        """Swagger examples for the ClassDistributionSerializer."""

        example = {
            "walk": "transposition",
            "n": 3,
            "t": 2,
            "coset_sign": 1,
            "rows": [
                {
                    "class": "3",
                    "per_element_num": 1,
                    "per_element_den": 3,
                    "class_size": 2,
                },
            ],
        }

    def get_rows(self, obj):
        approx = self.context.get("approx", False)
        rows = []
        for alpha, prob in obj.probs:
            row = {
                "class": str(alpha),
                "per_element_num": prob.numerator,
                "per_element_den": prob.denominator,
                "class_size": alpha.class_size,
            }
            if approx:
                row["approx"] = float(prob)
            rows.append(row)
        return rows


class RankReportSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Serializer for a ranking of classes by probability."""

    t = serializers.IntegerField()
    restricted_parity = serializers.CharField()
    groups = serializers.SerializerMethodField()

    def get_groups(self, obj):
        return [
            {"classes": [str(alpha) for alpha in group], "prob": fraction_to_dict(prob)}
            for group, prob in zip(obj.groups, obj.probabilities)
        ]


class InversionSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """A pair the order ranks one way and the probabilities the other."""

    greater = CycleTypeField()
    lesser = CycleTypeField()
    greater_prob = FractionField()
    lesser_prob = FractionField()


class CertificateSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Serializer for one pairwise stabilization certificate."""

    alpha = CycleTypeField()
    beta = CycleTypeField()
    i = serializers.IntegerField()
    t_star = serializers.IntegerField(allow_null=True)
    sign = serializers.IntegerField(source="eventual_sign", allow_null=True)
    lead = serializers.ListField(child=PartitionField())
    reason = serializers.CharField()


class StabilizationReportSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Serializer for the aggregated stabilization report of a walk."""

    walk = serializers.CharField()
    n = serializers.IntegerField()
    parity = serializers.CharField()
    t_max = serializers.IntegerField()
    order = serializers.ListField(child=CycleTypeField())
    pairs = CertificateSerializer(source="certificates", many=True)
    uncertified = serializers.SerializerMethodField()
    warning = serializers.SerializerMethodField()

    class SwaggerExamples:  # pylint: disable=too-few-public-methods
        """Swagger examples for the StabilizationReportSerializer."""

        example = {
            "walk": "three-cycle",
            "n": 5,
            "parity": "any",
            "t_max": 12,
            "order": ["1^5", "1^2 3", "1 2^2", "5"],
            "pairs": [
                {
                    "alpha": "1^5",
                    "beta": "5",
                    "i": 1,
                    "t_star": 2,
                    "sign": 1,
                    "lead": [[4, 1]],
                    "reason": "certified",
                },
            ],
            "uncertified": [],
            "warning": False,
        }

    def get_uncertified(self, obj):
        return [[str(alpha), str(beta)] for alpha, beta in obj.uncertified]

    def get_warning(self, obj):
        return bool(obj.uncertified)


class DistanceRowSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Distances to stationarity at one time."""

    t = serializers.IntegerField()
    tv = FractionField()
    sep = FractionField()
    linf = FractionField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if self.context.get("approx", False):
            for name in ("tv", "sep", "linf"):
                data[f"{name}_approx"] = float(getattr(instance, name))
        return data


class StationarySplitSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for the classes above, at and below uniform.

    Pass {"predicted": rule} in the context to add the predicted side of every
    listed class.
    """

    t = serializers.IntegerField()
    above = serializers.ListField(child=CycleTypeField())
    equal = serializers.ListField(child=CycleTypeField())
    below = serializers.ListField(child=CycleTypeField())
    predicted = serializers.SerializerMethodField()

    def get_predicted(self, obj):
        rule = self.context.get("predicted")
        if rule is None:
            return None
        classes = obj.above + obj.equal + obj.below
        return {
            "above": [str(alpha) for alpha in classes if rule.above(alpha)],
            "below": [str(alpha) for alpha in classes if rule.below(alpha)],
        }


class DetectorSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """An i-cycle detector with its two subhook lengths."""

    partition = serializers.SerializerMethodField()
    h21 = serializers.SerializerMethodField()
    h12 = serializers.SerializerMethodField()

    def get_partition(self, obj):
        return list(obj.parts)

    def get_h21(self, obj):
        return obj.subhook_lengths()[0]

    def get_h12(self, obj):
        return obj.subhook_lengths()[1]


class CharPolynomialSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Serializer for a character polynomial in the falling-factorial basis."""

    mu = PartitionField()
    terms = serializers.SerializerMethodField()
    display = serializers.SerializerMethodField()

    class SwaggerExamples:  # pylint: disable=too-few-public-methods
        """Swagger examples for the CharPolynomialSerializer."""

        example = {
            "mu": [2],
            "terms": [
                {"exps": [0, 1], "num": 1, "den": 1},
                {"exps": [2], "num": 1, "den": 2},
                {"exps": [1], "num": -1, "den": 1},
            ],
            "display": "x2 + C(x1,2) - x1",
        }

    def get_terms(self, obj):
        return [
            {"exps": list(exponents), **fraction_to_dict(coefficient)}
            for exponents, coefficient in obj.terms
        ]

    def get_display(self, obj):
        return str(obj)


@dataclass(frozen=True)
class RunConfig:
    """
    One reproducible run of a management command.

    Attributes:
        command (str): One of COMMANDS.
        n (int): The degree.
        walk (str): Walk text, e.g. "lazy:1/2" or "custom:walk.json".
        t (int | None): Time, for dist, order and split.
        tmax (int | None): Last time of a distance curve.
        kind (str): Order kind for the order command.
        stabilize (bool): Certify the eventual order instead of checking one t.
        parity (str): Time parity of a stabilization report.
        i (int | None): Cycle length for the detector command.
        format (str): "json" or "csv".
        output (str | None): Output path; None writes to standard output.
        approx (bool): Add decimal columns next to exact fractions.
    """

    command: str
    n: int
    walk: str = "transposition"
    t: int = None
    tmax: int = None
    kind: str = OrderKind.CL.value
    stabilize: bool = False
    parity: str = Parity.ANY.value
    i: int = None
    format: str = "json"
    output: str = None
    approx: bool = False

    def to_argv(self):
        """
        The command line that reproduces this run, command name first.

        Only options that differ from their defaults are written.
        """
        argv = [self.command]
        defaults = RunConfig(command=self.command, n=self.n)
        for item in fields(self):
            if item.name == "command":
                continue
            value = getattr(self, item.name)
            if item.name != "n" and value == getattr(defaults, item.name):
                continue
            if isinstance(value, bool):
                argv.append(f"--{item.name}")
            else:
                argv.extend([f"--{item.name}", str(value)])
        return argv

    @classmethod
    def from_argv(cls, argv):
        """
        Parse a command line written by `to_argv` with the command's own parser.

        Raises:
            DomainError: If the options do not make a valid run.
        """
        if not argv or argv[0] not in COMMANDS:
            raise DomainError(f"Unknown command line: {argv!r}")
        command = load_command_class("likelihood", argv[0])
        options = vars(command.create_parser("manage.py", argv[0]).parse_args(argv[1:]))
        return run_config_from_options(argv[0], options)

    def as_dict(self):
        return asdict(self)


class RunConfigSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """Validates the options of one run, from the command line or a query string."""

    command = serializers.ChoiceField(choices=COMMANDS)
    n = serializers.IntegerField(min_value=1)
    walk = serializers.CharField(required=False, default="transposition")
    t = serializers.IntegerField(
        required=False, allow_null=True, default=None, min_value=0
    )
    tmax = serializers.IntegerField(
        required=False, allow_null=True, default=None, min_value=0
    )
    kind = serializers.ChoiceField(
        choices=OrderKind.choices, required=False, default=OrderKind.CL.value
    )
    stabilize = serializers.BooleanField(required=False, default=False)
    parity = serializers.ChoiceField(
        choices=Parity.choices, required=False, default=Parity.ANY.value
    )
    i = serializers.IntegerField(required=False, allow_null=True, default=None)
    format = serializers.ChoiceField(choices=FORMATS, required=False, default="json")
    output = serializers.CharField(required=False, allow_null=True, default=None)
    approx = serializers.BooleanField(required=False, default=False)

    def validate(self, attrs):
        command = attrs["command"]
        defaults = RunConfig(command=command, n=attrs["n"])
        for name, value in attrs.items():
            if name == "command" or name in COMMAND_OPTIONS[command]:
                continue
            if value != getattr(defaults, name):
                raise serializers.ValidationError(
                    {name: f"--{name} does not apply to the {command} command."}
                )
        if command in ("dist", "split") and attrs["t"] is None:
            raise serializers.ValidationError({"t": f"{command} needs --t."})
        if command == "order" and attrs["t"] is None and not attrs["stabilize"]:
            raise serializers.ValidationError({"t": "order needs --t or --stabilize."})
        if command == "order" and attrs["t"] is not None and attrs["stabilize"]:
            raise serializers.ValidationError(
                {"stabilize": "--t and --stabilize exclude each other."}
            )
        if command == "tv" and attrs["tmax"] is None:
            raise serializers.ValidationError({"tmax": "tv needs --tmax."})
        if command == "detector" and attrs["i"] is None:
            raise serializers.ValidationError({"i": "detector needs --i."})
        return attrs

    def create(self, validated_data):
        return RunConfig(**validated_data)


def run_config_from_options(command, options):
    """
    Validate command options (or query parameters) into a RunConfig.

    Raises:
        DomainError: Carrying the serializer errors.
    """
    names = {item.name for item in fields(RunConfig)}
    data = {
        name: value
        for name, value in options.items()
        if name in names and value is not None
    }
    data["command"] = command
    serializer = RunConfigSerializer(data=data)
    if not serializer.is_valid():
        raise DomainError(f"Invalid options for {command}: {serializer.errors}")
    return serializer.save()
