"""Entry point for python -m someany."""

from .cli import main

main()
