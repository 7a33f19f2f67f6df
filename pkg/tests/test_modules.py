import random
from fractions import Fraction

import pytest

from phinlab.errors import (
    BadFlag,
    InputError,
    NonNilpotentMonodromy,
    NotFullyRational,
    RelationViolation,
    RepeatedEigenvalues,
    SingularFrobenius,
)
from phinlab.linalg import Matrix, Subspace
from phinlab.modules import (
    FieldDescriptor,
    build_module,
    enumerate_stable_subspaces,
    hodge_number,
    is_weakly_admissible,
    newton_number,
    weil_trace,
)

F2 = FieldDescriptor(p=2)


def steinberg(p=2, flag=None, jumps=(0, 1)):
    field = FieldDescriptor(p=p)
    flag = flag if flag is not None else [[1, 1], [0, 1]]
    return build_module(
        field,
        2,
        [[1, 0], [0, p]],
        [[0, 1], [0, 0]],
        {"k0": (flag, list(jumps))},
    )


def crystalline(field, diag, flag, jumps):
    n = len(diag)
    return build_module(field, n, Matrix.diagonal(diag), Matrix.zeros(n, n),
                        {"k0": (flag, list(jumps))})


def test_field_descriptor_defaults_and_validation():
    f = FieldDescriptor(p=3)
    assert (f.f0, f.e, f.f, f.embeddings, f.degree_factor) == (1, 1, 1, ("k0",), 1)
    assert f.q == 3
    assert FieldDescriptor(p=2, f0=2).q == 4
    with pytest.raises(ValueError):
        FieldDescriptor(p=6)
    with pytest.raises(ValueError):
        FieldDescriptor(p=2, embeddings=())
    with pytest.raises(ValueError):
        FieldDescriptor(p=2, embeddings=("a", "a"))
    with pytest.raises(ValueError):
        FieldDescriptor(p=2, e=0)


def test_build_module_accepts_steinberg():
    d = steinberg()
    assert d.n == 2
    assert d.jumps("k0") == (0, 1)
    assert d.fil_subspace("k0", 1) == Subspace.span(2, [(1, 1)])
    assert d.fil_subspace("k0", 0) == Subspace.full(2)
    assert d.fil_subspace("k0", 2) == Subspace.zero(2)


def test_build_module_sorts_flag_columns_by_jump():
    field = FieldDescriptor(p=2)
    d = build_module(field, 2, [[1, 0], [0, 2]], [[0, 1], [0, 0]],
                     {"k0": ([[1, 1], [1, -1]], [1, 0])})
    assert d.jumps("k0") == (0, 1)
    # the jump-1 generator must still be e1 + e2
    assert d.fil_subspace("k0", 1) == Subspace.span(2, [(1, 1)])


def test_build_module_rejects_singular_frobenius():
    with pytest.raises(SingularFrobenius):
        build_module(F2, 2, [[1, 1], [1, 1]], Matrix.zeros(2, 2),
                     {"k0": (Matrix.identity(2), [0, 0])})


def test_build_module_rejects_non_nilpotent_monodromy():
    with pytest.raises(NonNilpotentMonodromy):
        build_module(F2, 2, Matrix.identity(2), Matrix.identity(2),
                     {"k0": (Matrix.identity(2), [0, 0])})


def test_build_module_rejects_relation_violation():
    with pytest.raises(RelationViolation) as exc:
        build_module(F2, 2, Matrix.identity(2), [[0, 1], [0, 0]],
                     {"k0": (Matrix.identity(2), [0, 0])})
    assert exc.value.entry == (0, 1)


def test_build_module_rejects_bad_flags():
    with pytest.raises(BadFlag):
        steinberg(flag=[[1, 1], [1, 1]])
    with pytest.raises(BadFlag):
        build_module(F2, 2, [[1, 0], [0, 2]], [[0, 1], [0, 0]],
                     {"k0": (Matrix.identity(2), [0])})
    with pytest.raises(BadFlag):
        build_module(F2, 2, [[1, 0], [0, 2]], [[0, 1], [0, 0]],
                     {"oops": (Matrix.identity(2), [0, 1])})


def test_build_module_shape_mismatch():
    with pytest.raises(InputError):
        build_module(F2, 3, [[1, 0], [0, 2]], Matrix.zeros(2, 2),
                     {"k0": (Matrix.identity(2), [0, 1])})


def test_newton_number_pinned():
    assert newton_number(steinberg()) == 1
    d = crystalline(F2, [4, 8], Matrix.identity(2), [0, 0])
    assert newton_number(d) == 5
    line = Subspace.span(2, [(1, 0)])
    assert newton_number(steinberg(), line) == 0


def test_newton_number_scaling():
    # e = 2 doubles the valuation; degree_factor and f divide it
    field = FieldDescriptor(p=2, e=2)
    d = build_module(field, 1, [[2]], [[0]], {"k0": (Matrix.identity(1), [0])})
    assert newton_number(d) == 2
    field = FieldDescriptor(p=2, f=2, degree_factor=2)
    d = build_module(field, 1, [[4]], [[0]], {"k0": (Matrix.identity(1), [0])})
    assert newton_number(d) == Fraction(1, 2)


def test_hodge_number_pinned():
    st = steinberg()
    assert hodge_number(st) == 1
    assert hodge_number(st, Subspace.span(2, [(1, 0)])) == 0
    assert hodge_number(st, Subspace.full(2)) == 1
    assert hodge_number(st, Subspace.zero(2)) == 0
    d = crystalline(F2, [1, 8], Matrix.identity(2), [0, 3])
    assert hodge_number(d) == 3


def test_hodge_number_counts_flag_intersections():
    # filtration line equal to an eigenline: the subspace picks up the jump
    d = crystalline(F2, [1, 2], [[0, 1], [1, 0]], [0, 1])
    # flag columns sorted by jump: jump-1 generator is e2... build: columns
    # (0,1) jump 0 and (1,0) jump 1, so Fil^1 = span(e1)
    assert hodge_number(d, Subspace.span(2, [(1, 0)])) == 1


def test_hodge_number_rejects_unstable_subspace():
    st = steinberg()
    with pytest.raises(ValueError):
        hodge_number(st, Subspace.span(2, [(0, 1)]))  # not N-stable
    d = crystalline(F2, [1, 2], Matrix.identity(2), [0, 1])
    with pytest.raises(ValueError):
        hodge_number(d, Subspace.span(2, [(1, 1)]))  # not phi-stable


def test_hodge_number_sums_over_embeddings():
    field = FieldDescriptor(p=2, embeddings=("k0", "k1"))
    d = build_module(field, 1, [[2]], [[0]],
                     {"k0": (Matrix.identity(1), [3]), "k1": (Matrix.identity(1), [-1])})
    assert hodge_number(d) == 2


def test_enumerate_stable_subspaces_steinberg():
    subs = enumerate_stable_subspaces(steinberg())
    assert len(subs) == 3
    assert subs[0] == Subspace.zero(2)
    assert subs[1] == Subspace.span(2, [(1, 0)])
    assert subs[2] == Subspace.full(2)


def test_enumerate_stable_subspaces_crystalline_is_full_boolean_lattice():
    d = crystalline(F2, [1, 2, 3], Matrix.identity(3), [0, 0, 0])
    subs = enumerate_stable_subspaces(d)
    assert len(subs) == 8
    dims = sorted(s.dim for s in subs)
    assert dims == [0, 1, 1, 1, 2, 2, 2, 3]


def test_enumerate_verified_stable():
    rng = random.Random(41)
    for _ in range(10):
        p = rng.choice([2, 3, 5])
        vals = rng.sample(sorted({1, p, p**2, 2 * p, 3}), 3)
        d = crystalline(FieldDescriptor(p=p), vals, Matrix.identity(3), [0, 1, 2])
        for sub in enumerate_stable_subspaces(d):
            if sub.dim:
                assert sub.is_stable_under(d.phi)
                assert sub.is_stable_under(d.monodromy)


def test_enumerate_rejects_repeated_or_irrational():
    with pytest.raises(RepeatedEigenvalues):
        enumerate_stable_subspaces(crystalline(F2, [3, 3], Matrix.identity(2), [0, 0]))
    with pytest.raises(NotFullyRational):
        d = build_module(F2, 2, [[0, 2], [1, 0]], Matrix.zeros(2, 2),
                         {"k0": (Matrix.identity(2), [0, 0])})
        enumerate_stable_subspaces(d)


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("PHINLAB_MAX_N", "1")
    with pytest.raises(InputError):
        enumerate_stable_subspaces(steinberg())


def test_steinberg_is_weakly_admissible():
    report = is_weakly_admissible(steinberg())
    assert report.admissible
    assert report.witness is None
    assert report.t_h == 1 and report.t_n == 1
    assert report.subspaces_checked == 3
    assert report.mode == "enumerated"


def test_bad_flag_position_breaks_admissibility():
    # moving the filtration line onto the phi-stable line e1 overweights it
    report = is_weakly_admissible(steinberg(flag=[[1, 0], [0, 1]], jumps=(1, 0)))
    assert not report.admissible
    sub, t_h, t_n = report.witness
    assert sub == Subspace.span(2, [(1, 0)])
    assert t_h == 1 and t_n == 0


def test_totals_mismatch_reported_on_full_space():
    d = crystalline(F2, [1, 2], Matrix.identity(2), [0, 0])  # t_H = 0, t_N = 1
    report = is_weakly_admissible(d)
    assert not report.admissible
    sub, t_h, t_n = report.witness
    assert sub == Subspace.full(2)
    assert (t_h, t_n) == (0, 1)


def test_negative_jump_rank_one_admissible():
    field = FieldDescriptor(p=2)
    d = build_module(field, 1, [[Fraction(1, 2)]], [[0]],
                     {"k0": (Matrix.identity(1), [-1])})
    assert is_weakly_admissible(d).admissible
    d0 = build_module(field, 1, [[Fraction(1, 2)]], [[0]],
                      {"k0": (Matrix.identity(1), [0])})
    assert not is_weakly_admissible(d0).admissible


def test_certificate_mode():
    d = steinberg(flag=[[1, 0], [0, 1]], jumps=(1, 0))
    line = Subspace.span(2, [(1, 0)])
    report = is_weakly_admissible(d, candidates=[line])
    assert report.mode == "certificate"
    assert not report.admissible
    assert report.subspaces_checked == 1
    good = is_weakly_admissible(steinberg(), candidates=[line])
    assert good.admissible and good.mode == "certificate"


def test_certificate_mode_rejects_unstable_candidates():
    with pytest.raises(InputError):
        is_weakly_admissible(steinberg(), candidates=[Subspace.span(2, [(0, 1)])])


def test_admissibility_invariant_under_base_change():
    from tests_helpers import random_unimodular

    rng = random.Random(43)
    base_cases = [
        steinberg(),
        steinberg(flag=[[1, 0], [0, 1]], jumps=(1, 0)),
        crystalline(F2, [1, 2], [[1, 1], [0, 1]], [0, 1]),
        crystalline(F2, [1, 4], [[1, 1], [0, 1]], [0, 1]),
    ]
    for d in base_cases:
        base = is_weakly_admissible(d).admissible
        for _ in range(5):
            s = random_unimodular(rng, d.n)
            si = s.inverse()
            moved = build_module(
                d.field, d.n, s @ d.phi @ si, s @ d.monodromy @ si,
                {label: (s @ d.flag(label), list(d.jumps(label))) for label in d.field.embeddings},
            )
            assert is_weakly_admissible(moved).admissible == base


def test_newton_number_additive_on_direct_sums():
    rng = random.Random(47)
    for _ in range(10):
        p = rng.choice([2, 3])
        a = [rng.choice([1, 2, p, p**2]) for _ in range(2)]
        b = [rng.choice([1, 3, p]) for _ in range(2)]
        if len(set(a)) < 2 or len(set(b)) < 2:
            continue
        da = crystalline(FieldDescriptor(p=p), a, Matrix.identity(2), [0, 0])
        db = crystalline(FieldDescriptor(p=p), b, Matrix.identity(2), [0, 0])
        dsum = crystalline(FieldDescriptor(p=p), a + b, Matrix.identity(4), [0, 0, 0, 0])
        assert newton_number(dsum) == newton_number(da) + newton_number(db)


def test_weil_trace_pinned():
    st = steinberg()
    assert weil_trace(st, 0) == 2
    assert weil_trace(st, 1) == Fraction(3, 2)
    assert weil_trace(st, -1) == 3
    assert weil_trace(st, 2) == Fraction(5, 4)
