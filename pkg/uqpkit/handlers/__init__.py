from .common import Command
from . import bench, bounds, check, gen, oracle, solve, transform


def get_commands() -> list[Command]:
    return [
        gen.command,
        solve.command,
        bench.command,
        oracle.command,
        check.command,
        transform.command,
        bounds.command,
    ]
