"""Fuzzy evaluation: qubit fuzzification, Born-rule membership, decisions.

A scalar in [0,1] becomes a qubit whose excited-state weight equals that
scalar; the mean value of a projective connective on (products of) such
states is its fuzzy membership degree.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Mapping, Sequence, Union

from .connectives import LogicalObservable
from .linop import State, expectation

TWO_PI = 2.0 * math.pi

# Fixed tie-break order for motion decisions.
DECISION_PRIORITY = ("forwards", "left", "right", "backwards")


class GradedValueError(ValueError):
    """The observable is not projective; its mean is a graded value, not a membership."""


def qubit_from_angles(theta: float, phi: float = 0.0) -> State:
    """Qubit (sin(theta/2), e^{i phi/2} cos(theta/2)).

    The phase exponent is phi/2, half the full sphere azimuth, and the
    sine amplitude sits on |0>; both conventions are kept as given since
    no diagonal observable is sensitive to either.
    """
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if not 0.0 <= phi < TWO_PI:
        raise ValueError(f"phi must lie in [0, 2*pi), got {phi}")
    alpha = theta / 2.0
    beta = phi / 2.0
    return State([math.sin(alpha), complex(math.cos(alpha)) * complex(math.cos(beta), math.sin(beta))])


def fuzzify(mu: float) -> State:
    """Qubit (sqrt(1-mu), sqrt(mu)) whose |1>-projector mean equals mu."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"membership must lie in [0, 1], got {mu}")
    return State([math.sqrt(1.0 - mu), math.sqrt(mu)])


def membership(
    states: Union[State, Sequence[State]], f: LogicalObservable
) -> float:
    """Born membership of a projective connective on a (product) state.

    Accepts a single joint state or per-argument states, which are
    combined into their tensor product, leftmost argument most
    significant.
    """
    if not f.is_projective():
        raise GradedValueError(
            "observable is not projective; use a plain expectation for graded values"
        )
    if isinstance(states, State):
        joint = states
    else:
        joint = reduce(State.kron, states)
    return expectation(joint, f.op)


def implication_membership(mu_a: float, mu_b: float) -> float:
    """Membership of a -> b on independent inputs: 1 - a + a*b."""
    for v in (mu_a, mu_b):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"membership must lie in [0, 1], got {v}")
    return 1.0 - mu_a + mu_a * mu_b


def decide(memberships: Mapping[str, float]) -> str:
    """Name with the maximal membership.

    Exact ties go to the earlier entry in DECISION_PRIORITY; names
    outside the priority list rank after it, in input order.
    """
    if not memberships:
        raise ValueError("no decisions to choose from")
    priority = {name: i for i, name in enumerate(DECISION_PRIORITY)}
    best_key = None
    best_name = None
    for position, (name, value) in enumerate(memberships.items()):
        key = (-float(value), priority.get(name, len(priority)), position)
        if best_key is None or key < best_key:
            best_key = key
            best_name = name
    return best_name
