"""JSON persistence for potentials."""

import json
from pathlib import Path
from typing import Any, Union

from lattice_floquet.core.errors import LatticeFloquetError, PotentialError
from lattice_floquet.lattice import Periods, lattice_kind
from lattice_floquet.potentials.library import PeriodicPotential


def to_dict(potential: PeriodicPotential) -> dict:
    """Serialisable form of a potential."""
    return {
        "lattice": potential.kind.value,
        "periods": [potential.periods.p1, potential.periods.p2],
        "values": list(potential.values),
    }


def from_dict(data: Any) -> PeriodicPotential:
    """
    Validate and build a potential from parsed JSON.

    Raises:
        PotentialError: Naming the field that is missing or inconsistent
    """
    if not isinstance(data, dict):
        raise PotentialError("potential file must hold a JSON object", field="file")
    for key in ("lattice", "periods", "values"):
        if key not in data:
            raise PotentialError(f"missing '{key}'", field=key)

    try:
        kind = lattice_kind(str(data["lattice"]))
    except LatticeFloquetError as e:
        raise PotentialError(str(e), field="lattice") from None

    periods = data["periods"]
    if (
        not isinstance(periods, list)
        or len(periods) != 2
        or not all(isinstance(p, int) and not isinstance(p, bool) for p in periods)
    ):
        raise PotentialError("periods must be a list of two integers", field="periods")
    try:
        periods = Periods(*periods)
    except LatticeFloquetError as e:
        raise PotentialError(str(e), field="periods") from None

    values = data["values"]
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
    ):
        raise PotentialError("values must be a list of numbers", field="values")

    return PeriodicPotential(kind, periods, tuple(values))


def save(potential: PeriodicPotential, path: Union[str, Path]) -> None:
    """
    Write a potential as UTF-8 JSON.

    Args:
        potential: Potential to save
        path: Destination file
    """
    with open(path, "w", encoding="utf-8") as f:
        json.dump(to_dict(potential), f, indent=2)
        f.write("\n")


def load(path: Union[str, Path]) -> PeriodicPotential:
    """
    Read a potential written by save (or by hand).

    Args:
        path: Source file

    Returns:
        The potential

    Raises:
        PotentialError: If the file is missing, malformed or inconsistent
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise PotentialError(f"potential file not found: {path}", field="file") from None
    except json.JSONDecodeError as e:
        raise PotentialError(f"malformed potential file {path}: {e}", field="file") from None
    return from_dict(data)
