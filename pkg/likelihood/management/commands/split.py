from ._base import SymwalkCommand


class Command(SymwalkCommand):
    help = "Sort the classes into above, at and below their stationary probability."
    name = "split"

    def add_run_arguments(self, parser):
        self.add_walk_argument(parser)
        parser.add_argument("--t", type=int, required=True, help="Number of steps.")
