from ._base import SymwalkCommand


class Command(SymwalkCommand):
    help = "Print total variation, separation and l-infinity distance for t = 0..tmax."
    name = "tv"

    def add_run_arguments(self, parser):
        self.add_walk_argument(parser)
        parser.add_argument(
            "--tmax", type=int, required=True, help="Last time of the curve."
        )
        self.add_approx_argument(parser)
