"""Similarity-graph parameters and the derived row-sum constants."""

from dataclasses import dataclass


class ValidationError(ValueError):
    """Raised when graph parameters violate the model's assumptions."""


@dataclass(frozen=True)
class GraphParams:
    """Parameters of a structured similarity graph.

    n: augmented samples per class
    r: number of classes minus one (r + 1 classes in total)
    n_d: difficult samples per class (the last n_d samples of each class block)
    alpha: same-class similarity
    beta: easy different-class similarity
    gamma: difficult different-class similarity
    """

    n: int
    r: int
    n_d: int
    alpha: float
    beta: float
    gamma: float

    @property
    def num_classes(self) -> int:
        return self.r + 1

    @property
    def total(self) -> int:
        return self.n * (self.r + 1)

    @property
    def kappa(self) -> int:
        """n / n_d; only meaningful when n_d divides n."""
        if self.n_d == 0:
            raise ValidationError("kappa undefined for n_d = 0")
        return self.n // self.n_d

    def validate(self):
        """Check the strict parameter ordering and the count constraints."""
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if self.r < 1:
            raise ValidationError(f"r must be >= 1, got {self.r}")
        if not 0 <= self.n_d <= self.n:
            raise ValidationError(f"n_d must lie in [0, n], got {self.n_d}")
        if not 0 <= self.beta:
            raise ValidationError(f"violated 0 <= beta: beta={self.beta}")
        if not self.beta < self.gamma:
            raise ValidationError(
                f"violated beta < gamma: beta={self.beta}, gamma={self.gamma}")
        if not self.gamma < self.alpha:
            raise ValidationError(
                f"violated gamma < alpha: gamma={self.gamma}, alpha={self.alpha}")
        if not self.alpha < 1:
            raise ValidationError(f"violated alpha < 1: alpha={self.alpha}")

    def validate_kappa(self):
        """Difficult-block constructions need n to be a multiple of n_d."""
        if self.n_d > 0 and self.n % self.n_d != 0:
            raise ValidationError(
                f"n must be an integral multiple of n_d, got n={self.n}, n_d={self.n_d}")


@dataclass(frozen=True)
class DegreeConstants:
    """Row-sum constants of the structured graphs.

    c2 is the degree of an easy sample (and of every sample when no difficult
    samples are present), c1 the degree of a difficult sample, and c0 the
    common degree after removing the difficult samples' beta contribution.
    """

    c0: float
    c1: float
    c2: float


def degree_constants(params: GraphParams) -> DegreeConstants:
    n, r, n_d = params.n, params.r, params.n_d
    a, b, g = params.alpha, params.beta, params.gamma
    c2 = (1 - a) + n * a + n * r * b
    c1 = c2 + n_d * r * (g - b)
    c0 = (1 - a) + n * a + (n - n_d) * r * b
    return DegreeConstants(c0=c0, c1=c1, c2=c2)


def removed_degree(params: GraphParams) -> float:
    """Row sum of every sample after the difficult ones are removed."""
    a, b = params.alpha, params.beta
    ne = params.n - params.n_d
    return (1 - a) + ne * (a + params.r * b)
