from . import expressions, optimize, table, verify


def register_commands(cli, config):
    for module in (expressions, verify, table, optimize):
        module.register(cli, config)
