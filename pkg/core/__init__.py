import click


def create_cli() -> click.Group:
    from cli.commands import cli

    return cli
