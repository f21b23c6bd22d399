"""Entry point for the lattice-floquet CLI."""

from lattice_floquet.cli import main

if __name__ == "__main__":
    main()
