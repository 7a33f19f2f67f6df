"""Double-coset operators on unramified principal series, computed two ways.

theta_closed evaluates the scalar q^{r(1-r)/2} * e_r(psi) directly, while
theta_enumerated rebuilds it from the coset decomposition: one class per
r-subset S of {1..n}, each contributing |Lambda_S| copies of the spherical
value f(beta_S). The half-powers of q inside f are carried exactly in
QExtScalar and must cancel in the total. Keeping both routes alive is the
point, so neither is defined in terms of the other.
"""

from dataclasses import dataclass
from itertools import combinations, product

from .errors import InputError
from .linalg import Matrix
from .scalars import (
    ONE,
    QExtScalar,
    Rational,
    TwistedScalar,
    ZERO,
    is_prime,
    rational_power,
)
from .weil_deligne import UnramifiedCharacter

__all__ = [
    "HeckeParams",
    "CosetClass",
    "coset_classes",
    "spherical_value",
    "elementary_symmetric",
    "theta_closed",
    "theta_enumerated",
    "theta_tilde",
    "materialize_representatives",
]


@dataclass(frozen=True)
class HeckeParams:
    n: int
    q: int
    r: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.q, int) and self.q >= 2):
            raise InputError(f"q must be an integer >= 2, got {self.q!r}")
        if not (isinstance(self.r, int) and 1 <= self.r <= self.n):
            raise InputError(f"r must satisfy 1 <= r <= n={self.n}, got {self.r!r}")


@dataclass(frozen=True)
class CosetClass:
    """An r-subset S with the size of its block Lambda_S.

    foval is the common spherical value on the block; it needs a character
    to evaluate, so it is None when the classes are listed without one.
    """

    S: tuple
    count: int
    foval: object = None


def _as_character(psi, n):
    if not isinstance(psi, UnramifiedCharacter):
        psi = UnramifiedCharacter(tuple(psi))
    if len(psi) != n:
        raise InputError(f"character needs {n} values, got {len(psi)}")
    return psi


def coset_classes(h, psi=None):
    """One class per r-subset of {1..n}, in lexicographic order.

    count = q^{r(n-r) + r(r+1)/2 - sum(S)}; the exponent is never negative
    (it hits 0 exactly at the top subset {n-r+1..n}).
    """
    if psi is not None:
        psi = _as_character(psi, h.n)
    out = []
    for S in combinations(range(1, h.n + 1), h.r):
        exp = h.r * (h.n - h.r) + h.r * (h.r + 1) // 2 - sum(S)
        foval = None if psi is None else spherical_value(S, psi, h)
        out.append(CosetClass(S, h.q**exp, foval))
    return out


def spherical_value(S, psi, h):
    """Product of the half-density and twisted-character factors at beta_S.

    Each factor is a genuine half-power of q, kept exact in QExtScalar:
    delta^{1/2} contributes q^{(2*sum(S) - r(n+1))/2} and the character
    side contributes q^{-r(n-1)/2} times the product of the S-entries.
    """
    psi = _as_character(psi, h.n)
    S = tuple(S)
    assert len(S) == h.r and all(1 <= i <= h.n for i in S)
    delta_half = QExtScalar.q_half_power(h.q, 2 * sum(S) - h.r * (h.n + 1))
    prod = ONE
    for i in S:
        prod = prod * psi[i - 1]
    psi_prime = QExtScalar.q_half_power(h.q, -h.r * (h.n - 1)) * prod
    return delta_half * psi_prime


def elementary_symmetric(values, r):
    """e_r(values) via the running expansion of prod(1 + v*x)."""
    if r == 0:
        return ONE
    dp = [ONE] + [ZERO] * r
    for v in values:
        for k in range(r, 0, -1):
            dp[k] = dp[k] + v * dp[k - 1]
    return dp[r]


def theta_closed(psi, h):
    """q^{r(1-r)/2} * e_r(psi); r(r-1) is even so this is always rational."""
    psi = _as_character(psi, h.n)
    pref = rational_power(Rational(h.q), h.r * (1 - h.r) // 2)
    return pref * elementary_symmetric(list(psi), h.r)


def theta_enumerated(psi, h):
    """Sum count * f(beta_S) over all classes; the sqrt(q) parts must cancel."""
    psi = _as_character(psi, h.n)
    total = QExtScalar.from_rational(0, h.q)
    for c in coset_classes(h, psi):
        total = total + c.count * c.foval
    assert total.is_rational, "sqrt(q) failed to cancel in the coset sum"
    return total.rational()


def theta_tilde(psi, h, xi, field):
    """Rescaled eigenvalue: q^{r(r-1)/2} * pi^{-t} * theta_closed.

    xi maps each embedding label to n integer weights; t sums the weights
    at positions j >= r (1-indexed) across all labels. The uniformizer
    power folds into the coefficient exactly when field.e == 1.
    """
    if h.q != field.p**field.f0:
        raise InputError(
            f"params have q={h.q} but the field's residue cardinality is {field.p**field.f0}"
        )
    if set(xi) != set(field.embeddings):
        raise InputError(
            f"weight labels {sorted(xi)} do not match embeddings {sorted(field.embeddings)}"
        )
    twist = 0
    for label in field.embeddings:
        weights = tuple(xi[label])
        if len(weights) != h.n:
            raise InputError(f"xi[{label}] needs {h.n} entries, got {len(weights)}")
        twist += sum(weights[j - 1] for j in range(h.r, h.n + 1))
    coeff = rational_power(Rational(h.q), h.r * (h.r - 1) // 2) * theta_closed(psi, h)
    return TwistedScalar(coeff, -twist, field.p, field.e)


def materialize_representatives(S, h):
    """Explicit integer matrices for Lambda_S; prime q only.

    Upper triangular with diagonal q at the S positions and 1 elsewhere,
    and a free residue in {0..q-1} at each (i, j) with i in S, j not in S,
    i < j. Composite q has no integer residue system, so it is rejected;
    counts for those come from the formula alone.
    """
    if not is_prime(h.q):
        raise InputError(f"explicit representatives need a prime q, got {h.q}")
    S = tuple(S)
    free = [(i, j) for i in S for j in range(1, h.n + 1) if j not in S and j > i]
    out = []
    for combo in product(range(h.q), repeat=len(free)):
        rows = [
            [ONE if a == b else ZERO for b in range(h.n)] for a in range(h.n)
        ]
        for i in S:
            rows[i - 1][i - 1] = Rational(h.q)
        for (i, j), t in zip(free, combo):
            rows[i - 1][j - 1] = Rational(t)
        out.append(Matrix(rows))
    return out
