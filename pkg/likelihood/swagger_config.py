"""Module for swagger configs
"""

from drf_yasg import openapi

# Reusable query parameters
SWAGGER_PARAMETERS = {
    "n": openapi.Parameter(
        "n",
        openapi.IN_QUERY,
        description="Degree of the symmetric group.",
        type=openapi.TYPE_INTEGER,
        required=True,
    ),
    "walk": openapi.Parameter(
        "walk",
        openapi.IN_QUERY,
        description="transposition, lazy:<p>, three-cycle, n-cycle or cycle:<k>.",
        type=openapi.TYPE_STRING,
        default="transposition",
    ),
    "t": openapi.Parameter(
        "t",
        openapi.IN_QUERY,
        description="Number of steps.",
        type=openapi.TYPE_INTEGER,
    ),
    "tmax": openapi.Parameter(
        "tmax",
        openapi.IN_QUERY,
        description="Last time of the distance curve.",
        type=openapi.TYPE_INTEGER,
        required=True,
    ),
    "kind": openapi.Parameter(
        "kind",
        openapi.IN_QUERY,
        description="Order to check: cl, neg-cl, alt-cl, reverse-lex or lulov-lex.",
        type=openapi.TYPE_STRING,
        default="cl",
    ),
    "stabilize": openapi.Parameter(
        "stabilize",
        openapi.IN_QUERY,
        description="Certify the eventual order instead of checking time t.",
        type=openapi.TYPE_BOOLEAN,
        default=False,
    ),
    "parity": openapi.Parameter(
        "parity",
        openapi.IN_QUERY,
        description="Time parity of a stabilization report: any, even or odd.",
        type=openapi.TYPE_STRING,
        default="any",
    ),
    "approx": openapi.Parameter(
        "approx",
        openapi.IN_QUERY,
        description="Add decimal approximations next to the exact fractions.",
        type=openapi.TYPE_BOOLEAN,
        default=False,
    ),
    "i": openapi.Parameter(
        "i",
        openapi.IN_QUERY,
        description="Cycle length to detect.",
        type=openapi.TYPE_INTEGER,
        required=True,
    ),
    "mu": openapi.Parameter(
        "mu",
        openapi.IN_QUERY,
        description='Partition mu as "2,1" (empty for the constant polynomial).',
        type=openapi.TYPE_STRING,
        required=True,
    ),
}

# Reusable Responses
SWAGGER_RESPONSES = {
    "success": openapi.Response("Operation completed successfully."),
    "validation_error": openapi.Response("Validation errors."),
    "invariant_violation": openapi.Response("An exact consistency check failed."),
}
