from ._base import SymwalkCommand


class Command(SymwalkCommand):
    help = "Print the exact law of a walk at time t, one row per conjugacy class."
    name = "dist"

    def add_run_arguments(self, parser):
        self.add_walk_argument(parser)
        parser.add_argument("--t", type=int, required=True, help="Number of steps.")
        self.add_approx_argument(parser)
