"""Core plumbing for lattice-floquet: configuration, errors, logging, execution."""
