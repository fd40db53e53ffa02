"""The Heisenberg group H^n as R^{2n+1} with interleaved coordinates.

Points are stored as ``z = (x_1, y_1, ..., x_n, y_n)`` plus the vertical
coordinate ``t``.  Tangent vectors are stored on the left-invariant frame
``X_i = d/dx_i + y_i d/dt``, ``Y_i = d/dy_i - x_i d/dt``, ``T = d/dt``,
which is orthonormal for the metric used throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi

import numpy as np

from .errors import DimensionError, DomainError


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dimension:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension n must be a positive integer, got {self.n!r}")

    @property
    def Q(self) -> int:
        """Homogeneous dimension 2n + 2."""
        return 2 * self.n + 2


@dataclass(frozen=True, eq=False)
class Point:
    z: np.ndarray
    t: float

    def __post_init__(self):
        z = _frozen(self.z)
        if z.size == 0 or z.size % 2:
            raise DimensionError(f"horizontal part must have length 2n >= 2, got {z.size}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def origin(cls, n: int) -> Point:
        return cls(np.zeros(2 * n), 0.0)

    @classmethod
    def from_array(cls, coords) -> Point:
        coords = np.asarray(coords, dtype=np.float64)
        return cls(coords[:-1], coords[-1])

    @property
    def n(self) -> int:
        return self.z.size // 2

    @property
    def x(self) -> np.ndarray:
        return self.z[0::2]

    @property
    def y(self) -> np.ndarray:
        return self.z[1::2]

    @property
    def radius(self) -> float:
        """Euclidean norm |z| of the horizontal part."""
        return float(np.sqrt(np.dot(self.z, self.z)))

    def as_array(self) -> np.ndarray:
        return np.append(self.z, self.t)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.t == other.t and np.array_equal(self.z, other.z)

    def __repr__(self):
        return f"Point(z={self.z.tolist()}, t={self.t!r})"


@dataclass(frozen=True, eq=False)
class FrameVector:
    """Tangent vector ``sum a_{x,i} X_i + a_{y,i} Y_i + c T``."""

    a: np.ndarray
    c: float = 0.0

    def __post_init__(self):
        a = _frozen(self.a)
        if a.size == 0 or a.size % 2:
            raise DimensionError(f"horizontal coefficients must have length 2n >= 2, got {a.size}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", float(self.c))

    @classmethod
    def X(cls, i: int, n: int) -> FrameVector:
        a = np.zeros(2 * n)
        a[2 * (i - 1)] = 1.0
        return cls(a)

    @classmethod
    def Y(cls, i: int, n: int) -> FrameVector:
        a = np.zeros(2 * n)
        a[2 * (i - 1) + 1] = 1.0
        return cls(a)

    @classmethod
    def T(cls, n: int) -> FrameVector:
        return cls(np.zeros(2 * n), 1.0)

    @property
    def n(self) -> int:
        return self.a.size // 2

    @property
    def is_horizontal(self) -> bool:
        return self.c == 0.0

    def dot(self, other: FrameVector) -> float:
        _check_same(self.n, other.n)
        return float(np.dot(self.a, other.a) + self.c * other.c)

    def norm(self) -> float:
        return float(np.sqrt(self.dot(self)))

    def as_array(self) -> np.ndarray:
        return np.append(self.a, self.c)

    def __add__(self, other: FrameVector) -> FrameVector:
        _check_same(self.n, other.n)
        return FrameVector(self.a + other.a, self.c + other.c)

    def __sub__(self, other: FrameVector) -> FrameVector:
        _check_same(self.n, other.n)
        return FrameVector(self.a - other.a, self.c - other.c)

    def __neg__(self) -> FrameVector:
        return FrameVector(-self.a, -self.c)

    def __mul__(self, scalar: float) -> FrameVector:
        return FrameVector(self.a * scalar, self.c * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FrameVector):
            return NotImplemented
        return self.c == other.c and np.array_equal(self.a, other.a)

    def __repr__(self):
        return f"FrameVector(a={self.a.tolist()}, c={self.c!r})"


def _check_same(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DimensionError(f"dimension mismatch: H^{n1} vs H^{n2}")


def symplectic_term(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """``sum_i Im(z_i conj(w_i)) = sum_i y_i u_i - x_i v_i`` along the last axis."""
    return np.sum(z[..., 1::2] * w[..., 0::2] - z[..., 0::2] * w[..., 1::2], axis=-1)


def group_mul(p: Point, q: Point) -> Point:
    _check_same(p.n, q.n)
    return Point(p.z + q.z, p.t + q.t + float(symplectic_term(p.z, q.z)))


def group_inv(p: Point) -> Point:
    return Point(-p.z, -p.t)


def left_translate(p: Point, q: Point) -> Point:
    """Left translation L_p(q) = p * q."""
    return group_mul(p, q)


def dilate(s: float, p: Point) -> Point:
    """Anisotropic dilation (z, t) -> (s z, s^2 t)."""
    if not s > 0:
        raise DomainError(f"dilation factor must be positive, got {s!r}")
    return Point(s * p.z, s * s * p.t)


def j_rotate(v: FrameVector) -> FrameVector:
    """J(X_i) = Y_i, J(Y_i) = -X_i, J(T) = 0."""
    out = np.empty_like(v.a)
    out[0::2] = -v.a[1::2]
    out[1::2] = v.a[0::2]
    return FrameVector(out, 0.0)


def coord_to_frame(p: Point, w) -> FrameVector:
    """Express the coordinate vector ``w = (w_z, w_t)`` at ``p`` on the frame."""
    w = np.asarray(w, dtype=np.float64)
    if w.size != 2 * p.n + 1:
        raise DimensionError(f"coordinate vector must have length {2 * p.n + 1}, got {w.size}")
    wz = w[:-1]
    return FrameVector(wz, w[-1] - float(symplectic_term(p.z, wz)))


def frame_to_coord(p: Point, v: FrameVector) -> np.ndarray:
    _check_same(p.n, v.n)
    return np.append(v.a, v.c + float(symplectic_term(p.z, v.a)))


def unit_sphere_area(n: int) -> float:
    """Area of the unit (2n-1)-sphere in R^{2n}: 2 pi^n / (n-1)!."""
    return 2.0 * pi**n / factorial(n - 1)
