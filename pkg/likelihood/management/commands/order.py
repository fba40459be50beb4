"""Check an order at one time, or certify the order a walk settles into."""

from ...partitions import OrderKind, Parity
from ._base import SymwalkCommand


class Command(SymwalkCommand):
    help = (
        "List the pairs on which --kind disagrees with the law at time --t, or "
        "with --stabilize certify the eventual order of every pair of classes."
    )
    name = "order"

    def add_run_arguments(self, parser):
        self.add_walk_argument(parser)
        parser.add_argument("--t", type=int, default=None, help="Number of steps.")
        parser.add_argument(
            "--kind", default=OrderKind.CL.value, help="Order to compare against."
        )
        parser.add_argument(
            "--stabilize",
            action="store_true",
            help="Certify the eventual order instead of checking one time.",
        )
        parser.add_argument(
            "--parity",
            default=Parity.ANY.value,
            help="Times a stabilization report speaks about: any, even or odd.",
        )

    def report(self, artifact):
        uncertified = artifact.data.get("uncertified") or []
        if uncertified:
            self.stderr.write(
                self.style.WARNING(
                    f"{len(uncertified)} pairs could not be certified; "
                    "see the uncertified list."
                )
            )
        mismatches = artifact.data.get("mismatches") or []
        if mismatches:
            self.stderr.write(
                self.style.WARNING(
                    f"{len(mismatches)} certified pairs contradict "
                    f"{artifact.data['kind']}; see the mismatches list."
                )
            )
