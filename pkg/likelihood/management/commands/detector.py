from ._base import SymwalkCommand


class Command(SymwalkCommand):
    help = "List the partitions of n whose two subhooks are both at least i."
    name = "detector"

    def add_run_arguments(self, parser):
        parser.add_argument(
            "--i", type=int, required=True, help="Cycle length to detect."
        )
