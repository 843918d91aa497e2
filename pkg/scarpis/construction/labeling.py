"""
Labelings of core rows by field elements.

A labeling is a bijection alpha: {1, ..., q} -> GF(q); alpha_i names the
element attached to row i of the core. Indices in this module are 1-based
to match that convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Sequence

import numpy as np

from scarpis.errors import ConstructionError
from scarpis.field.gf import FieldElement, FieldSpec, enumerate_field


@dataclass(frozen=True)
class Labeling:
    """A bijection from {1, ..., q} onto the elements of a field.

    Attributes:
        field: The field GF(q).
        elements: elements[i - 1] is alpha_i.
    """

    field: FieldSpec
    elements: tuple[FieldElement, ...]
    _positions: tuple[int, ...] = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        q = self.field.q
        if len(self.elements) != q:
            raise ConstructionError(
                f"Labeling of {self.field} needs {q} elements, got {len(self.elements)}"
            )
        if any(e.spec != self.field for e in self.elements):
            raise ConstructionError(f"Labeling elements must belong to {self.field}")
        positions = [0] * q
        seen = set()
        for label, element in enumerate(self.elements, start=1):
            if element.index in seen:
                raise ConstructionError(f"Labeling repeats element {element}")
            seen.add(element.index)
            positions[element.index] = label
        object.__setattr__(self, "_positions", tuple(positions))

    @classmethod
    def from_indices(cls, spec: FieldSpec, indices: Sequence[int]) -> Labeling:
        """Build a labeling from element indices (positions in the enumeration)."""
        return cls(spec, tuple(spec.element(int(t)) for t in indices))

    @property
    def q(self) -> int:
        return self.field.q

    def alpha(self, i: int) -> FieldElement:
        """Return alpha_i for 1 <= i <= q."""
        if not 1 <= i <= self.q:
            raise ConstructionError(f"Label {i} out of range [1, {self.q}]")
        return self.elements[i - 1]

    def index_of(self, element: FieldElement) -> int:
        """Return the label t with alpha_t == element."""
        if element.spec != self.field:
            raise ConstructionError(f"{element} does not belong to {self.field}")
        return self._positions[element.index]

    def element_indices(self) -> tuple[int, ...]:
        """Enumeration index of alpha_1, ..., alpha_q."""
        return tuple(e.index for e in self.elements)


@dataclass(frozen=True)
class RowPermutation:
    """perm[k - 1] is the core row placed at row k of a block (1-based)."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ConstructionError(f"Not a permutation of 1..{len(self.perm)}: {self.perm}")

    def as_array(self) -> np.ndarray:
        """Zero-based row indices, ready for fancy indexing."""
        return np.asarray(self.perm, dtype=np.intp) - 1


def default_labeling(spec: FieldSpec) -> Labeling:
    """Canonical labeling: alpha_i is element i - 1 of the enumeration."""
    return Labeling(spec, tuple(enumerate_field(spec)))


def shuffled_labeling(spec: FieldSpec, seed: int) -> Labeling:
    """Seeded pseudorandom permutation of the canonical enumeration."""
    rng = np.random.default_rng(seed)
    return Labeling.from_indices(spec, rng.permutation(spec.q).tolist())
