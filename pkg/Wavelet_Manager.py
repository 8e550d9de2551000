"""
Central entrypoint for the p-adic wavelet toolkit.

Usage
-----
python Wavelet_Manager.py analyze omega.json
python Wavelet_Manager.py --prime 3 --window 1,1 dalpha psi.json --mode direct
python Wavelet_Manager.py --prime 2 bridge step.json
python Wavelet_Manager.py verify
python Wavelet_Manager.py --prime 5 --alpha 0.5 verify

CLI flags mirror :func:`manager.core.build_arg_parser`.
"""

import sys

from manager.core import run_from_cli


def main() -> None:
    sys.exit(run_from_cli())


if __name__ == "__main__":
    main()
