from ._base import SymwalkCommand


class Command(SymwalkCommand):
    help = "Print the character table of S_n (n at most SYMWALK_TABLE_CAP)."
    name = "chars"
