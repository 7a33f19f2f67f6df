"""Filtered modules with Frobenius and monodromy, and weak admissibility.

A module here is a free space Q^n carrying an invertible Frobenius matrix
phi, a nilpotent monodromy N obeying N*phi = p^f*phi*N, and one descending
flag filtration per embedding label, encoded by a flag basis matrix whose
j-th column enters the filtration at the integer jump attached to it.

Weak admissibility compares two slopes: the Hodge number t_H (filtration
jumps met by a subspace) and the Newton number t_N (valuation of the
Frobenius determinant), equality on the whole space and t_H <= t_N on
every phi- and N-stable subspace.
"""

from dataclasses import dataclass
from typing import NamedTuple

from .config import check_enumeration_size
from .errors import (
    BadFlag,
    InputError,
    NonNilpotentMonodromy,
    NotFullyRational,
    RelationViolation,
    RepeatedEigenvalues,
    SingularFrobenius,
)
from .linalg import (
    Matrix,
    Subspace,
    det,
    kernel_basis,
    matrix_power,
    rational_eigenvalues,
    solve_columns,
)
from .scalars import Rational, is_prime, padic_val, rational_power

__all__ = [
    "FieldDescriptor",
    "Flag",
    "FilteredPhiNModule",
    "AdmissibilityReport",
    "Witness",
    "build_module",
    "newton_number",
    "hodge_number",
    "enumerate_stable_subspaces",
    "is_weakly_admissible",
    "weil_trace",
]


@dataclass(frozen=True)
class FieldDescriptor:
    """Arithmetic of the base field: residue size p^f0, ramification e.

    f is the Frobenius power the stored phi represents (the scale in the
    commutation rule is p^f); degree_factor is an extra denominator in the
    Newton normalization, 1 in the split case this package targets.
    """

    p: int
    f0: int = 1
    e: int = 1
    f: int = 1
    embeddings: tuple = ("k0",)
    degree_factor: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        for name in ("f0", "e", "f", "degree_factor"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        emb = tuple(str(x) for x in self.embeddings)
        if not emb or len(set(emb)) != len(emb):
            raise ValueError("embeddings must be a nonempty tuple of distinct labels")
        object.__setattr__(self, "embeddings", emb)

    @property
    def q(self):
        return self.p ** self.f0

    def val_f(self, x):
        """Valuation normalized so a uniformizer has valuation 1."""
        return padic_val(x, self.p).scaled(self.e)


@dataclass(frozen=True)
class Flag:
    """A full flag basis with one integer jump per column, jumps ascending."""

    basis: Matrix
    jumps: tuple


class FilteredPhiNModule:
    """Validated bundle of field data, phi, monodromy, and filtrations."""

    __slots__ = ("field", "n", "phi", "monodromy", "filtration")

    def __init__(self, field, n, phi, monodromy, filtration):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "monodromy", monodromy)
        object.__setattr__(self, "filtration", filtration)

    def __setattr__(self, name, value):
        raise AttributeError("FilteredPhiNModule is immutable")

    def flag(self, label):
        return self.filtration[label].basis

    def jumps(self, label):
        return self.filtration[label].jumps

    def fil_subspace(self, label, i):
        """Span of flag columns whose jump is at least i."""
        entry = self.filtration[label]
        cols = [entry.basis.column(j) for j, jump in enumerate(entry.jumps) if jump >= i]
        return Subspace.span(self.n, cols)

    def __repr__(self):
        return f"FilteredPhiNModule(n={self.n}, p={self.field.p})"


def _as_matrix(value, n, what):
    m = value if isinstance(value, Matrix) else Matrix(value)
    if (m.nrows, m.ncols) != (n, n):
        raise InputError(f"{what} must be {n}x{n}, got {m.nrows}x{m.ncols}")
    return m


def build_module(field, n, phi, monodromy, filtration):
    """Validate and assemble a filtered module.

    ``filtration`` maps each embedding label to (flag_matrix, jumps). Flag
    columns are stably sorted by ascending jump, keeping each generator
    attached to its jump.
    """
    n = int(n)
    if n < 1:
        raise InputError("rank must be at least 1")
    phi = _as_matrix(phi, n, "phi")
    monodromy = _as_matrix(monodromy, n, "monodromy")
    if det(phi) == 0:
        raise SingularFrobenius("phi is singular")
    if not matrix_power(monodromy, n).is_zero:
        raise NonNilpotentMonodromy(n)
    scale = Rational(field.p) ** field.f
    lhs = monodromy @ phi
    rhs = scale * (phi @ monodromy)
    if lhs != rhs:
        i, j = next(
            (i, j)
            for i in range(n)
            for j in range(n)
            if lhs.rows[i][j] != rhs.rows[i][j]
        )
        raise RelationViolation((i, j), lhs.rows[i][j], rhs.rows[i][j], scale)
    if set(filtration) != set(field.embeddings):
        raise BadFlag(
            f"filtration labels {sorted(filtration)} do not match embeddings {sorted(field.embeddings)}"
        )
    flags = {}
    for label in field.embeddings:
        basis, jumps = filtration[label]
        basis = _as_matrix(basis, n, f"flag[{label}]")
        jumps = list(jumps)
        if len(jumps) != n or not all(isinstance(j, int) for j in jumps):
            raise BadFlag(f"flag[{label}] needs {n} integer jumps, got {jumps}")
        if det(basis) == 0:
            raise BadFlag(f"flag[{label}] basis is singular")
        order = sorted(range(n), key=lambda j: (jumps[j], j))
        basis = Matrix.from_columns([basis.column(j) for j in order], n)
        flags[label] = Flag(basis, tuple(jumps[j] for j in order))
    return FilteredPhiNModule(field, n, phi, monodromy, flags)


def _restrict_or_reject(d, sub, check_monodromy=True):
    if sub.dim == 0:
        return None
    try:
        restricted = sub.restrict(d.phi)
    except ValueError:
        raise ValueError("subspace is not phi-stable") from None
    if check_monodromy and not sub.is_stable_under(d.monodromy):
        raise ValueError("subspace is not monodromy-stable")
    return restricted


def newton_number(d, sub=None):
    """t_N: scaled valuation of det(phi) on the module or a stable subspace."""
    if sub is None:
        value = det(d.phi)
    else:
        restricted = _restrict_or_reject(d, sub)
        if restricted is None:
            return Rational(0)
        value = det(restricted)
    val = padic_val(value, d.field.p).value
    return Rational(d.field.e * val) / (d.field.degree_factor * d.field.f)


def hodge_number(d, sub=None):
    """t_H: jump-weighted dimension drops of the filtration on a subspace.

    With no subspace, the sum of all jumps over all embeddings. A supplied
    subspace must be stable under phi and the monodromy.
    """
    if sub is None:
        return sum(j for label in d.field.embeddings for j in d.jumps(label))
    if sub.ambient != d.n:
        raise ValueError("ambient dimension mismatch")
    _restrict_or_reject(d, sub)
    total = 0
    for label in d.field.embeddings:
        levels = sorted(set(d.jumps(label)))
        dims = [sub.intersect(d.fil_subspace(label, i)).dim for i in levels]
        dims.append(0)
        for k, i in enumerate(levels):
            total += i * (dims[k] - dims[k + 1])
    return total


def enumerate_stable_subspaces(d):
    """All phi- and N-stable subspaces, for a split multiplicity-free spectrum.

    These are exactly the spans of Frobenius eigenvector subsets closed
    under the monodromy; the zero space and the full space are included.
    Raises RepeatedEigenvalues or NotFullyRational when the spectrum is not
    split multiplicity-free; use certificate mode in that situation.
    """
    check_enumeration_size(d.n, "stable-subspace enumeration")
    split = rational_eigenvalues(d.phi)
    if not split.is_split:
        raise NotFullyRational(f"phi spectrum has irrational factor {split.residual}")
    if any(mult > 1 for _, mult in split.roots):
        raise RepeatedEigenvalues(f"phi spectrum has repeated roots: {split.roots}")
    eigvecs = []
    for value, _ in split.roots:
        shifted = d.phi - value * Matrix.identity(d.n)
        eigvecs.append(kernel_basis(shifted)[0])
    basis = Matrix.from_columns(eigvecs, d.n)
    n_in_eigenbasis = solve_columns(basis, d.monodromy @ basis)
    out = []
    for mask in range(1 << d.n):
        chosen = [i for i in range(d.n) if mask >> i & 1]
        members = set(chosen)
        stable = all(
            n_in_eigenbasis.rows[j][i] == 0
            for i in chosen
            for j in range(d.n)
            if j not in members
        )
        if stable:
            out.append(Subspace.span(d.n, [eigvecs[i] for i in chosen]))
    out.sort(key=Subspace.sort_key)
    return out


class Witness(NamedTuple):
    subspace: Subspace
    t_h: object
    t_n: object


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    t_h: object
    t_n: object
    witness: object
    subspaces_checked: int
    mode: str


def is_weakly_admissible(d, candidates=None):
    """Weak admissibility verdict with the first violating subspace, if any.

    With ``candidates`` the check runs in certificate mode: the verdict is
    relative to the supplied stable subspaces (each is validated for
    stability), plus the always-checked equality on the full space.
    """
    t_h = hodge_number(d)
    t_n = newton_number(d)
    mode = "enumerated" if candidates is None else "certificate"
    if candidates is None:
        subs = enumerate_stable_subspaces(d)
    else:
        subs = list(candidates)
        for sub in subs:
            try:
                _restrict_or_reject(d, sub)
            except ValueError as exc:
                raise InputError(f"candidate subspace rejected: {exc}") from None
    if t_h != t_n:
        witness = Witness(Subspace.full(d.n), t_h, t_n)
        return AdmissibilityReport(False, t_h, t_n, witness, len(subs), mode)
    for sub in subs:
        if sub.dim in (0, d.n):
            continue
        sub_h = hodge_number(d, sub)
        sub_n = newton_number(d, sub)
        if not sub_h <= sub_n:
            witness = Witness(sub, sub_h, sub_n)
            return AdmissibilityReport(False, t_h, t_n, witness, len(subs), mode)
    return AdmissibilityReport(True, t_h, t_n, None, len(subs), mode)


def weil_trace(d, a):
    """Trace of the inverse Frobenius power: Tr(phi^(-a))."""
    return matrix_power(d.phi, -int(a)).trace()
