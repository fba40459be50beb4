"""Module for the behaviour shared by every symwalk management command.

A command parses its options into a RunConfig, builds the artifact of the run
and writes it to stdout or, atomically, to --output. Library errors become exit
code 2 (bad input) or 3 (failed exact invariant).
"""

import logging

from django.core.management.base import BaseCommand, CommandError

from ...exceptions import DomainError, InvariantViolation
from ...reports import build_artifact, render
from ...serializers import FORMATS, run_config_from_options
from ...utils import write_atomically

logger = logging.getLogger(__name__)


class SymwalkCommand(BaseCommand):
    """Base class; subclasses set `name` and add their own options."""

    name = None

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Degree of S_n.")
        parser.add_argument(
            "--format", choices=FORMATS, default="json", help="Output format."
        )
        parser.add_argument(
            "--output", default=None, help="Write here instead of standard output."
        )
        self.add_run_arguments(parser)

    def add_run_arguments(self, parser):
        """Hook for the options specific to one command."""

    @staticmethod
    def add_walk_argument(parser):
        parser.add_argument(
            "--walk",
            default="transposition",
            help="transposition, lazy:<p>, three-cycle, n-cycle, cycle:<k> "
            "or custom:<path to a JSON walk>.",
        )

    @staticmethod
    def add_approx_argument(parser):
        parser.add_argument(
            "--approx",
            action="store_true",
            help="Add decimal columns next to the exact fractions.",
        )

    def handle(self, *args, **options):
        try:
            config = run_config_from_options(self.name, options)
            artifact = build_artifact(config)
            text = render(artifact, config.format)
        except InvariantViolation as exc:
            logger.error("%s failed an exact check: %s", self.name, exc)
            raise CommandError(str(exc), returncode=3) from exc
        except DomainError as exc:
            logger.warning("%s rejected its input: %s", self.name, exc)
            raise CommandError(str(exc), returncode=2) from exc

        if config.output:
            write_atomically(config.output, text)
        else:
            self.stdout.write(text, ending="")
        self.report(artifact)

    def report(self, artifact):
        """Hook for messages on stderr once the artifact has been written."""
