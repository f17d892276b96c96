"""One-dimensional finite-volume grids on [0, x_max].

Cells are the intervals between consecutive faces; unknowns live at cell
centers.  Two spacings cover the package's needs: uniform (radial runs,
whose fronts advance like log t) and logarithmic (the weighted model, whose
fronts advance like a power of t and need decades of range).  Both know how
to extend themselves when a front approaches the boundary, preserving their
spacing rule so a continued run behaves as if the grid had been larger from
the start.
"""

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Faces (strictly increasing, faces[0] = 0), plus the spacing rule used
    to build and extend the grid ("uniform" or "log")."""

    faces: np.ndarray
    spacing: str

    def __post_init__(self):
        faces = np.asarray(self.faces, dtype=float)
        if faces.ndim != 1 or faces.size < 3:
            raise ValueError("need at least two cells")
        if faces[0] != 0.0:
            raise ValueError("the first face must sit at 0")
        if np.any(np.diff(faces) <= 0):
            raise ValueError("faces must be strictly increasing")
        if self.spacing not in ("uniform", "log"):
            raise ValueError(f"unknown spacing rule {self.spacing!r}")
        object.__setattr__(self, "faces", faces)

    @classmethod
    def uniform(cls, x_max: float, num_cells: int) -> "Grid1D":
        if x_max <= 0:
            raise ValueError("x_max must be positive")
        if num_cells < 2:
            raise ValueError("need at least two cells")
        return cls(faces=np.linspace(0.0, x_max, num_cells + 1), spacing="uniform")

    @classmethod
    def logarithmic(cls, first_face: float, x_max: float, num_cells: int) -> "Grid1D":
        """Cell 0 spans (0, first_face); the remaining faces are log-spaced
        up to x_max.  Suits problems whose solution spreads over decades."""
        if not 0 < first_face < x_max:
            raise ValueError("need 0 < first_face < x_max")
        if num_cells < 2:
            raise ValueError("need at least two cells")
        faces = np.empty(num_cells + 1)
        faces[0] = 0.0
        faces[1:] = np.geomspace(first_face, x_max, num_cells)
        return cls(faces=faces, spacing="log")

    @property
    def num_cells(self) -> int:
        return self.faces.size - 1

    @property
    def x_max(self) -> float:
        return float(self.faces[-1])

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.faces[1:] + self.faces[:-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.faces)

    def extended(self, factor: float = 1.25) -> "Grid1D":
        """A new grid reaching at least factor * x_max with the same rule."""
        if factor <= 1.0:
            raise ValueError("extension factor must exceed 1")
        faces = self.faces
        if self.spacing == "uniform":
            h = faces[-1] - faces[-2]
            extra = int(np.ceil((factor - 1.0) * self.x_max / h))
            new = faces[-1] + h * np.arange(1, max(extra, 2) + 1)
        else:
            q = faces[-1] / faces[-2]
            extra = int(np.ceil(np.log(factor) / np.log(q)))
            new = faces[-1] * q ** np.arange(1, max(extra, 2) + 1)
        return replace(self, faces=np.concatenate([faces, new]))
