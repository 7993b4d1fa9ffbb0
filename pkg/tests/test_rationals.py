"""End-to-end checks over the rational field (exactness with Fractions)."""

from fractions import Fraction

import pytest

from nangulate.algebras import Module, ModuleMap, hom_basis
from nangulate.bimodules import Enveloping, bimodule_syzygy, detect_twist
from nangulate.builders import dual_numbers, product_of_fields, simple_over_dual_numbers
from nangulate.complexes import is_exact, rotate_left, z1
from nangulate.engine import RefusedContext, build_context, r_u_complex
from nangulate.linalg import Mat, QQ
from nangulate.structure import (
    algebra_radical,
    injective_envelope,
    is_selfinjective,
    is_semisimple,
    primitive_idempotents,
)


def test_rational_dual_numbers_structure():
    A = dual_numbers(QQ)
    assert algebra_radical(A).nrows == 1
    assert is_selfinjective(A)
    assert not is_semisimple(A)
    assert primitive_idempotents(A) == [A.unit]
    k = simple_over_dual_numbers(A)
    I, mono = injective_envelope(k)
    assert I.dim == 2 and mono.rank() == 1


def test_rational_first_syzygy_twist():
    A = dual_numbers(QQ)
    env = Enveloping(A)
    omega = bimodule_syzygy(A, 1).top
    res = detect_twist(env, omega)
    assert res is not None
    # x |-> -x over the rationals
    assert res.sigma.apply(A.basis_vector(1)) == (Fraction(0), Fraction(-1))
    omega2 = bimodule_syzygy(A, 2).top
    res2 = detect_twist(env, omega2)
    assert res2 is not None and res2.sigma.is_identity()


def test_rational_local_ring_context():
    A = dual_numbers(QQ)
    with pytest.raises(RefusedContext):
        build_context(A, 3, "local-ring", unit=A.unit)  # odd n, 2x != 0 over Q
    ctx = build_context(A, 4, "local-ring", unit=A.unit)
    R1 = r_u_complex(A, A.unit, 4)
    two = tuple(QQ.mul(QQ.of_int(2), c) for c in A.unit)
    R2 = r_u_complex(A, two, 4)
    assert ctx.check_membership(R1).verdict
    assert not ctx.check_membership(R2).verdict
    # half is a unit too: R(1/2) is its own class
    half = tuple(QQ.mul(Fraction(1, 2), c) for c in A.unit)
    Rhalf = r_u_complex(A, half, 4)
    assert is_exact(Rhalf)
    assert not ctx.check_membership(Rhalf).verdict
    ctx_half = build_context(A, 4, "local-ring", unit=half)
    assert ctx_half.check_membership(Rhalf).verdict


def test_rational_semisimple_context():
    A = product_of_fields(QQ, 2)
    ctx = build_context(A, 4, "semisimple")
    from nangulate.complexes import trivial_complex

    T = trivial_complex(ctx.susp, A.regular_module(), 4)
    assert ctx.check_membership(T).verdict


def test_rational_quasi_periodic_membership():
    A = dual_numbers(QQ)
    ctx = build_context(A, 4, "quasi-periodic")
    assert ctx.susp.is_identity()  # sigma^2 = id at even periods
    k = simple_over_dual_numbers(A)
    T, rho = ctx.resolve(k)
    assert is_exact(T) and rho.is_iso()
    assert ctx.check_membership(T).verdict
    assert ctx.check_membership(rotate_left(T)).verdict
