"""Module for building the artifacts printed by the commands and served by the API.

A RunConfig goes in, an Artifact comes out: the JSON payload (the serializer
output) and the CSV table of the same run. Rendering is deterministic, so the
same configuration always produces byte-identical text.
"""

import csv
import io
import json
import logging
from typing import NamedTuple

from rest_framework.renderers import JSONRenderer

from .analysis import (
    check_order,
    distance_curve,
    predicted_side,
    predicted_split,
    rank,
    settled_ranking,
    sort_by_order,
    stabilization_report,
    stationary_split,
    verify_report,
)
from .characters import build_table
from .exceptions import DomainError
from .partitions import Comparison, compare, i_cycle_detectors
from .serializers import (
    CharacterTableSerializer,
    ClassDistributionSerializer,
    DetectorSerializer,
    DistanceRowSerializer,
    InversionSerializer,
    RankReportSerializer,
    StabilizationReportSerializer,
    StationarySplitSerializer,
    walk_from_data,
)
from .walks import distribution, parse_walk

logger = logging.getLogger(__name__)

CUSTOM_PREFIX = "custom:"


class Artifact(NamedTuple):
    """The JSON payload and the CSV table of one run."""

    data: dict
    header: list
    rows: list


def resolve_walk(text, n, allow_files=True):
    """
    Turn walk text into a WalkSpec, loading `custom:<path>` from a JSON file.

    Raises:
        DomainError: If the text, the file or its contents are invalid, or the
            file describes a walk on another S_n.
    """
    if not text.startswith(CUSTOM_PREFIX):
        return parse_walk(text, n)
    if not allow_files:
        raise DomainError("Custom walk files are only read from the command line")
    path = text[len(CUSTOM_PREFIX) :]
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise DomainError(f"Cannot read walk file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"Walk file {path} is not valid JSON: {exc}") from exc
    walk = walk_from_data(data)
    if walk.n != n:
        raise DomainError(f"Walk file {path} describes S_{walk.n}, not S_{n}")
    logger.info("Loaded custom walk %s on S_%s from %s", walk.name, n, path)
    return walk


def _fraction_cells(value):
    return [value.numerator, value.denominator]


def _approx(value):
    return f"{float(value):.12g}"


def chars_artifact(config, allow_files=True):
    table = build_table(config.n)
    return Artifact(
        data=CharacterTableSerializer(table).data,
        header=["partition"] + [str(alpha) for alpha in table.classes],
        rows=[
            [str(partition), *values]
            for partition, values in zip(table.partitions, table.chi)
        ],
    )


def dist_artifact(config, allow_files=True):
    walk = resolve_walk(config.walk, config.n, allow_files)
    dist = distribution(walk, config.t)
    header = ["class", "per_element_num", "per_element_den", "class_size"]
    if config.approx:
        header.append("approx")
    rows = []
    for alpha, prob in dist.probs:
        row = [str(alpha), *_fraction_cells(prob), alpha.class_size]
        if config.approx:
            row.append(_approx(prob))
        rows.append(row)
    data = dict(
        ClassDistributionSerializer(dist, context={"approx": config.approx}).data
    )
    data["ranking"] = RankReportSerializer(rank(dist)).data
    return Artifact(data=data, header=header, rows=rows)


def _contradicts(kind, certificate):
    greater = compare(kind, certificate.alpha, certificate.beta) == Comparison.GREATER
    return greater != (certificate.eventual_sign > 0)


def order_artifact(config, allow_files=True):
    """Inversions at one time, or the certified eventual order with --stabilize."""
    walk = resolve_walk(config.walk, config.n, allow_files)
    if config.stabilize:
        report = stabilization_report(walk, config.parity)
        verify_report(walk, report)
        expected = sort_by_order(report.order, config.kind)
        mismatches = [
            [str(certificate.alpha), str(certificate.beta)]
            for certificate in report.certificates
            if certificate.certified and _contradicts(config.kind, certificate)
        ]
        data = dict(StabilizationReportSerializer(report).data)
        data["kind"] = config.kind
        data["expected_order"] = [str(alpha) for alpha in expected]
        data["mismatches"] = mismatches
        data["matches_kind"] = not mismatches
        data["ranking"] = RankReportSerializer(settled_ranking(walk, report)).data
        rows = [
            [
                str(certificate.alpha),
                str(certificate.beta),
                certificate.i,
                "" if certificate.t_star is None else certificate.t_star,
                "" if certificate.eventual_sign is None else certificate.eventual_sign,
                certificate.reason,
            ]
            for certificate in report.certificates
        ]
        header = ["alpha", "beta", "i", "t_star", "sign", "reason"]
        return Artifact(data=data, header=header, rows=rows)

    dist = distribution(walk, config.t)
    inversions = check_order(dist, config.kind)
    data = {
        "walk": walk.name,
        "n": walk.n,
        "t": config.t,
        "kind": config.kind,
        "holds": not inversions,
        "inversions": InversionSerializer(inversions, many=True).data,
    }
    header = [
        "greater",
        "lesser",
        "greater_prob_num",
        "greater_prob_den",
        "lesser_prob_num",
        "lesser_prob_den",
    ]
    rows = [
        [
            str(item.greater),
            str(item.lesser),
            *_fraction_cells(item.greater_prob),
            *_fraction_cells(item.lesser_prob),
        ]
        for item in inversions
    ]
    return Artifact(data=data, header=header, rows=rows)


def tv_artifact(config, allow_files=True):
    walk = resolve_walk(config.walk, config.n, allow_files)
    curve = distance_curve(walk, config.tmax)
    header = ["t", "tv_num", "tv_den", "sep_num", "sep_den", "linf_num", "linf_den"]
    if config.approx:
        header += ["tv_approx", "sep_approx", "linf_approx"]
    rows = []
    for row in curve:
        cells = [
            row.t,
            *_fraction_cells(row.tv),
            *_fraction_cells(row.sep),
            *_fraction_cells(row.linf),
        ]
        if config.approx:
            cells += [_approx(row.tv), _approx(row.sep), _approx(row.linf)]
        rows.append(cells)
    data = {
        "walk": walk.name,
        "n": walk.n,
        "rows": DistanceRowSerializer(
            curve, many=True, context={"approx": config.approx}
        ).data,
    }
    return Artifact(data=data, header=header, rows=rows)


def split_artifact(config, allow_files=True):
    walk = resolve_walk(config.walk, config.n, allow_files)
    split = stationary_split(walk, config.t)
    rule = predicted_split(walk.n, walk) if walk.is_transposition_family() else None
    data = {"walk": walk.name, "n": walk.n}
    data.update(StationarySplitSerializer(split, context={"predicted": rule}).data)
    rows = []
    for side, classes in (
        ("above", split.above),
        ("equal", split.equal),
        ("below", split.below),
    ):
        for alpha in classes:
            rows.append([str(alpha), side, predicted_side(alpha) if rule else ""])
    return Artifact(data=data, header=["class", "side", "predicted"], rows=rows)


def detector_artifact(config, allow_files=True):
    detectors = i_cycle_detectors(config.n, config.i)
    data = {
        "n": config.n,
        "i": config.i,
        "detectors": DetectorSerializer(detectors, many=True).data,
    }
    rows = [[str(partition), *partition.subhook_lengths()] for partition in detectors]
    return Artifact(data=data, header=["partition", "h21", "h12"], rows=rows)


BUILDERS = {
    "chars": chars_artifact,
    "dist": dist_artifact,
    "order": order_artifact,
    "tv": tv_artifact,
    "split": split_artifact,
    "detector": detector_artifact,
}


def build_artifact(config, allow_files=True):
    """
    Run the computation a RunConfig describes.

    Raises:
        DomainError: On invalid parameters (ResourceLimitError on caps).
        InvariantViolation: If an exact consistency check fails.
    """
    logger.info("Running %s", " ".join(config.to_argv()))
    return BUILDERS[config.command](config, allow_files)


def render(artifact, fmt):
    """The artifact as JSON or CSV text, newline-terminated."""
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(artifact.header)
        writer.writerows(artifact.rows)
        return buffer.getvalue()
    rendered = JSONRenderer().render(artifact.data, renderer_context={"indent": 2})
    return rendered.decode("utf-8") + "\n"
