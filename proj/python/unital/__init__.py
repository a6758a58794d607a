"""Unital qubit channels: canonical forms, mixed-unitary decompositions and Bloch geometry."""

from ._core import (
    DEFAULT_TOL,
    Channel,
    NotMajorizedError,
    UnitalError,
    average_of_four,
    canonicalize,
    decompose,
    depolarizing_channel,
    identity_channel,
    is_channel_scaling,
    majorizes,
    ordered_cone_test,
    random_unital_channel,
    random_unitary,
    scaling_equivalent,
    spectrum_from_scaling,
    tetra_coordinates,
    unitarily_equivalent,
    verify,
)

__all__ = [
    "DEFAULT_TOL",
    "Channel",
    "NotMajorizedError",
    "UnitalError",
    "average_of_four",
    "canonicalize",
    "decompose",
    "depolarizing_channel",
    "identity_channel",
    "is_channel_scaling",
    "majorizes",
    "ordered_cone_test",
    "random_unital_channel",
    "random_unitary",
    "scaling_equivalent",
    "spectrum_from_scaling",
    "tetra_coordinates",
    "unitarily_equivalent",
    "verify",
]
