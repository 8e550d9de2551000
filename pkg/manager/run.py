import sys

from .core import run_from_cli


def main() -> None:
    sys.exit(run_from_cli())


if __name__ == "__main__":
    main()
