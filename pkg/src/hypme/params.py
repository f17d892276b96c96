"""Model parameters and the constants derived from them.

A parameter set fixes the dimension n, the mass M, and exactly one of

    m > 1   slow-diffusion exponent for the porous-medium flux grad(u^m),
    p > 2   gradient exponent for the degenerate p-flux |grad u|^{p-2} grad u.

Derived constants used throughout:

    a      amplitude of the conical pressure profile, a = 1/(m(n-1));
           for the p-flux, a^{p-2} = (p-2)^{p-2} / ((n-1)(p-1)^{p-1}).
    gamma  logarithmic front speed, gamma = 1/((m-1)(n-1)) resp.
           1/((p-2)(n-1)); the free boundary grows like gamma*log(t).
    beta_euclid    Euclidean self-similar exponent 1/(n(m-1)+2).
    beta_weighted  weighted-model exponent 1/((n-2)(m-1)), n >= 3.
    profile_k      Euclidean profile curvature (m-1)*beta_euclid/(2m).
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ModelParams:
    n: int
    m: float | None = None
    p: float | None = None
    M: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"dimension n must be an integer >= 2, got {self.n!r}")
        if (self.m is None) == (self.p is None):
            raise ValueError("exactly one of m (porous-medium) or p (p-flux) is required")
        if self.m is not None and not self.m > 1:
            raise ValueError("m must exceed 1")
        if self.p is not None and not self.p > 2:
            raise ValueError("p must exceed 2")
        if not self.M > 0:
            raise ValueError("mass M must be positive")

    # -- flavour ---------------------------------------------------------

    @property
    def is_plap(self) -> bool:
        return self.p is not None

    def with_mass(self, M: float) -> "ModelParams":
        return replace(self, M=M)

    # -- log-cone constants ----------------------------------------------

    @property
    def alpha(self) -> float:
        """Decay exponent 1/(m-1) (resp. 1/(p-2)): sup u ~ t^(-alpha) * log-factor."""
        if self.is_plap:
            return 1.0 / (self.p - 2.0)
        return 1.0 / (self.m - 1.0)

    @property
    def slope_a(self) -> float:
        if self.is_plap:
            p, n = self.p, self.n
            return ((p - 2) ** (p - 2) / ((n - 1) * (p - 1) ** (p - 1))) ** (1.0 / (p - 2))
        return 1.0 / (self.m * (self.n - 1))

    @property
    def gamma(self) -> float:
        if self.is_plap:
            return 1.0 / ((self.p - 2.0) * (self.n - 1))
        return 1.0 / ((self.m - 1.0) * (self.n - 1))

    @property
    def front_exponent(self) -> float:
        """Power q with u^q linear at the free boundary: m-1, resp. (p-2)/(p-1)."""
        if self.is_plap:
            return (self.p - 2.0) / (self.p - 1.0)
        return self.m - 1.0

    # -- Euclidean self-similar constants (porous-medium only) ------------

    def _require_pme(self, what: str):
        if self.is_plap:
            raise ValueError(f"{what} is defined for the porous-medium flux only")

    @property
    def beta_euclid(self) -> float:
        self._require_pme("beta_euclid")
        return 1.0 / (self.n * (self.m - 1.0) + 2.0)

    @property
    def profile_k(self) -> float:
        self._require_pme("profile_k")
        return (self.m - 1.0) * self.beta_euclid / (2.0 * self.m)

    @property
    def beta_weighted(self) -> float:
        self._require_pme("beta_weighted")
        if self.n < 3:
            raise ValueError("beta_weighted needs n >= 3")
        return 1.0 / ((self.n - 2) * (self.m - 1.0))
