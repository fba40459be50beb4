"""Module for creating the views for the API endpoints.

Every endpoint validates its query string into the same RunConfig the
management commands use and returns the JSON artifact of that run.
"""

import logging

from drf_yasg.utils import swagger_auto_schema
from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import APIView

from .charpoly import character_polynomial
from .exceptions import DomainError, InvariantViolation
from .partitions import Partition
from .reports import build_artifact
from .serializers import CharPolynomialSerializer, run_config_from_options
from .swagger_config import SWAGGER_PARAMETERS, SWAGGER_RESPONSES

logger = logging.getLogger(__name__)

RESPONSES = {
    200: SWAGGER_RESPONSES["success"],
    400: SWAGGER_RESPONSES["validation_error"],
    500: SWAGGER_RESPONSES["invariant_violation"],
}


def _error_response(exc):
    """Map a library error onto an HTTP response."""
    if isinstance(exc, InvariantViolation):
        logger.error("Invariant violation: %s", exc)
        return Response(
            {"error": str(exc)}, status=status.HTTP_500_INTERNAL_SERVER_ERROR
        )
    logger.warning("Rejected request: %s", exc)
    return Response({"error": str(exc)}, status=status.HTTP_400_BAD_REQUEST)


class ArtifactView(APIView):
    """Base view: run the command named by `command` on the query parameters."""

    command = None

    def get(self, request):
        """Handles GET requests for the artifact of one run."""
        options = request.query_params.dict()
        # files are never read or written on behalf of a request
        options.pop("format", None)
        options.pop("output", None)
        try:
            config = run_config_from_options(self.command, options)
            artifact = build_artifact(config, allow_files=False)
        except (DomainError, InvariantViolation) as e:
            return _error_response(e)
        return Response(artifact.data, status=status.HTTP_200_OK)


class CharacterTableView(ArtifactView):
    """Full character table of S_n."""

    command = "chars"

    @swagger_auto_schema(
        operation_description="Character table of S_n, rows by partition.",
        manual_parameters=[SWAGGER_PARAMETERS["n"]],
        responses=RESPONSES,
        tags=["characters"],
    )
    def get(self, request):
        return super().get(request)


class DistributionView(ArtifactView):
    """Exact law of a walk at time t."""

    command = "dist"

    @swagger_auto_schema(
        operation_description="Per-element probability of every class at time t.",
        manual_parameters=[
            SWAGGER_PARAMETERS["n"],
            SWAGGER_PARAMETERS["walk"],
            SWAGGER_PARAMETERS["t"],
            SWAGGER_PARAMETERS["approx"],
        ],
        responses=RESPONSES,
        tags=["walks"],
    )
    def get(self, request):
        return super().get(request)


class OrderView(ArtifactView):
    """Inversions of an order at time t, or the certified eventual order."""

    command = "order"

    @swagger_auto_schema(
        operation_description="Check an order at time t, or certify the eventual "
        "order with stabilize=true.",
        manual_parameters=[
            SWAGGER_PARAMETERS["n"],
            SWAGGER_PARAMETERS["walk"],
            SWAGGER_PARAMETERS["kind"],
            SWAGGER_PARAMETERS["t"],
            SWAGGER_PARAMETERS["stabilize"],
            SWAGGER_PARAMETERS["parity"],
        ],
        responses=RESPONSES,
        tags=["orders"],
    )
    def get(self, request):
        return super().get(request)


class DistanceView(ArtifactView):
    """Total variation, separation and l-infinity distance curve."""

    command = "tv"

    @swagger_auto_schema(
        operation_description="Distances to stationarity for t = 0..tmax.",
        manual_parameters=[
            SWAGGER_PARAMETERS["n"],
            SWAGGER_PARAMETERS["walk"],
            SWAGGER_PARAMETERS["tmax"],
            SWAGGER_PARAMETERS["approx"],
        ],
        responses=RESPONSES,
        tags=["walks"],
    )
    def get(self, request):
        return super().get(request)


class SplitView(ArtifactView):
    """Classes above and below uniform at time t."""

    command = "split"

    @swagger_auto_schema(
        operation_description="Classes above, at and below their stationary "
        "probability at time t.",
        manual_parameters=[
            SWAGGER_PARAMETERS["n"],
            SWAGGER_PARAMETERS["walk"],
            SWAGGER_PARAMETERS["t"],
        ],
        responses=RESPONSES,
        tags=["walks"],
    )
    def get(self, request):
        return super().get(request)


class DetectorView(ArtifactView):
    """Partitions able to detect i-cycles."""

    command = "detector"

    @swagger_auto_schema(
        operation_description="Every i-cycle detector of n with its subhooks.",
        manual_parameters=[SWAGGER_PARAMETERS["n"], SWAGGER_PARAMETERS["i"]],
        responses=RESPONSES,
        tags=["characters"],
    )
    def get(self, request):
        return super().get(request)


class CharPolynomialView(APIView):
    """Character polynomial q_mu."""

    @swagger_auto_schema(
        operation_description="Character polynomial of mu in the falling-factorial "
        "basis, with its binomial display form.",
        manual_parameters=[SWAGGER_PARAMETERS["mu"]],
        responses=RESPONSES,
        tags=["characters"],
    )
    def get(self, request):
        """Handles GET requests for one character polynomial."""
        if "mu" not in request.query_params:
            return Response(
                {"error": "The mu parameter is required."},
                status=status.HTTP_400_BAD_REQUEST,
            )
        try:
            mu = Partition.parse(request.query_params["mu"])
            polynomial = character_polynomial(mu)
        except (DomainError, InvariantViolation) as e:
            return _error_response(e)
        return Response(
            CharPolynomialSerializer(polynomial).data, status=status.HTTP_200_OK
        )
