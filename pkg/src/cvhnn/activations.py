"""Quantizing activation functions for complex-valued Hopfield networks.

Four activation families map a complex net contribution onto a finite image
set:

* ``csign``      -- phase quantization onto the k-th roots of unity.
* ``split_sign`` -- independent signs of the real and imaginary parts.
* ``coceil``     -- independent staircase ceilings of the real and imaginary
                    parts, giving a point on the {0..q} x {0..q} lattice.
* ``cosign``     -- staircase ceiling of the magnitude times the quantized
                    phase, giving a point on one of q rings of k sectors.

``split_sign`` and ``coceil`` are total.  ``csign`` and ``cosign`` are
undefined at the origin (no phase) and on sector-boundary rays; both cases
are reported by returning ``None``, which network dynamics interpret as
"leave the neuron unchanged".  ``boundary_epsilon`` widens the boundary rays
from exact float hits (the default) to a small angular band.

All outputs are drawn from canonical value tables, so two equal quantizer
outputs are always the same float pair and state comparison needs no
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

TWO_PI = 2.0 * math.pi

KINDS = ("csign", "split_sign", "coceil", "cosign")

# Lattice values used for roots whose angle is a multiple of pi/2, so that
# e.g. the k=4 sector representatives are exactly 1, i, -1, -i rather than
# cos/sin approximations.
_AXIS_ROOTS = (complex(1, 0), complex(0, 1), complex(-1, 0), complex(0, -1))


def sign_real(x: float) -> int:
    """Real sign with the zero tie resolved upward: sign_real(0) = +1."""
    return 1 if x >= 0.0 else -1


def step(x: float) -> int:
    """Unit step; step(0) = 1.  Identical to (sign_real(x) + 1) / 2."""
    return 1 if x >= 0.0 else 0


def ceil_qr(x: float, q: int, r: float) -> int:
    """Staircase ceiling onto {0, ..., q} with q levels of width r.

    Negative inputs give 0; [0, r) gives 1; each further step of width r
    raises the level by one, saturating at q for x >= (q - 1) * r.  Interval
    membership is decided by direct comparison against the rounded products
    (level * r), which keeps this function exactly equal to the sum of q
    shifted unit steps (see ceil_qr_superposed).
    """
    if x < 0.0:
        return 0
    ratio = x / r
    if ratio >= q:
        level = q
    else:
        level = int(ratio) + 1
    # The division can land one level off when x sits within an ulp of a
    # step edge; settle membership against the edges themselves.
    while level > 1 and x < (level - 1) * r:
        level -= 1
    while level < q and x >= level * r:
        level += 1
    return level


def ceil_qr_superposed(x: float, q: int, r: float) -> int:
    """The same staircase expressed as a superposition of q unit steps."""
    return sum(step(x - (level - 1) * r) for level in range(1, q + 1))


def phase(z: complex) -> float:
    """Phase angle normalized to [0, 2*pi).

    Raises ValueError at z = 0, where the angle carries no information;
    callers that can absorb an undefined phase check for zero first.
    """
    if z == 0:
        raise ValueError("phase of 0 is undefined")
    theta = math.atan2(z.imag, z.real)
    if theta < 0.0:
        theta += TWO_PI
        if theta >= TWO_PI:  # rounding pushes tiny negative angles onto 2*pi
            theta = 0.0
    return theta


@lru_cache(maxsize=None)
def roots_of_unity(k: int) -> tuple[complex, ...]:
    """The k-th roots of unity e^{2*pi*i*l/k}, l = 0..k-1.

    These are the canonical sector representatives for the phase quantizers.
    Axis-aligned roots are exact lattice points; the rest are cos/sin pairs.
    """
    out = []
    for sector in range(k):
        if (4 * sector) % k == 0:
            out.append(_AXIS_ROOTS[(4 * sector) // k % 4])
        else:
            angle = TWO_PI * sector / k
            out.append(complex(math.cos(angle), math.sin(angle)))
    return tuple(out)


def csign(z: complex, k: int, boundary_epsilon: float = 0.0) -> complex | None:
    """Quantize the phase of z onto the k-th roots of unity.

    The plane is split into k sectors of width 2*pi/k centred on the roots:
    angles within pi/k of the angle of root l map to root l, with the first
    sector wrapping around zero.  On the boundary rays between sectors (odd
    multiples of pi/k) and at the origin the quantizer is undefined and
    returns None.  With boundary_epsilon > 0, any angle within that distance
    (radians) of a boundary ray counts as on it.
    """
    if z == 0:
        return None
    theta = phase(complex(z))
    half = math.pi / k
    # Distance from theta to the nearest odd multiple of half.  The division
    # below can be an ulp off when theta sits exactly on a ray, so measure
    # against both enclosing odd multiples; multiples beyond 2*k-1 alias the
    # wrap-around ray at angle half.
    nearest_odd = 2.0 * math.floor((theta / half - 1.0) / 2.0) + 1.0
    distance = min(
        abs(theta - nearest_odd * half),
        abs(theta - (nearest_odd + 2.0) * half),
    )
    if distance <= boundary_epsilon:
        return None
    sector = int(math.floor((theta + half) / (2.0 * half))) % k
    return roots_of_unity(k)[sector]


def split_sign(z: complex) -> complex:
    """Apply sign_real to the real and imaginary parts independently."""
    return complex(sign_real(z.real), sign_real(z.imag))


def coceil(z: complex, q: int, r: float) -> complex:
    """Apply the staircase ceiling to the real and imaginary parts."""
    return complex(ceil_qr(z.real, q, r), ceil_qr(z.imag, q, r))


def cosign(z: complex, q: int, r: float, k: int,
           boundary_epsilon: float = 0.0) -> complex | None:
    """Quantize magnitude and phase together: ceil_qr(|z|) * csign(z).

    Undefined exactly where csign is (origin and sector boundaries).  The
    magnitude factor is at least 1 because |z| >= 0, so the image is the set
    of q rings of k sector representatives.
    """
    direction = csign(z, k, boundary_epsilon)
    if direction is None:
        return None
    return ceil_qr(abs(z), q, r) * direction


@dataclass(frozen=True)
class ActivationSpec:
    """Which quantizer a network uses, plus its parameters.

    k: number of phase sectors (csign, cosign)
    q: number of magnitude levels (coceil, cosign)
    r: width of one magnitude step (coceil, cosign)
    boundary_epsilon: angular distance (radians) within which csign/cosign
        treat the input as sitting on a sector boundary and stay undefined.

    Parameters not used by the chosen kind are carried along unchanged so a
    spec can be serialized and swapped between kinds without loss.
    """

    kind: str
    k: int = 1
    q: int = 1
    r: float = 1.0
    boundary_epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown activation kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError("k must be an integer >= 1")
        if not isinstance(self.q, int) or self.q < 1:
            raise ValueError("q must be an integer >= 1")
        object.__setattr__(self, "r", float(self.r))
        if not self.r > 0.0:
            raise ValueError("r must be > 0")
        object.__setattr__(self, "boundary_epsilon", float(self.boundary_epsilon))
        if not self.boundary_epsilon >= 0.0:
            raise ValueError("boundary_epsilon must be >= 0")

    def apply(self, z: complex) -> complex | None:
        """Quantize one value; None means undefined (keep the old state)."""
        if self.kind == "csign":
            return csign(z, self.k, self.boundary_epsilon)
        if self.kind == "split_sign":
            return split_sign(z)
        if self.kind == "coceil":
            return coceil(z, self.q, self.r)
        return cosign(z, self.q, self.r, self.k, self.boundary_epsilon)

    def image_set(self) -> tuple[complex, ...]:
        """Every value this activation can output, in canonical order.

        csign: the k roots by sector; split_sign: the four unit corners;
        coceil: the (q+1)^2 lattice points, real part varying slowest;
        cosign: ring value 1..q times root, ring varying slowest.
        """
        if self.kind == "csign":
            return roots_of_unity(self.k)
        if self.kind == "split_sign":
            return (complex(1, 1), complex(1, -1), complex(-1, 1), complex(-1, -1))
        if self.kind == "coceil":
            return tuple(complex(a, b)
                         for a in range(self.q + 1) for b in range(self.q + 1))
        roots = roots_of_unity(self.k)
        return tuple(ring * root
                     for ring in range(1, self.q + 1) for root in roots)
