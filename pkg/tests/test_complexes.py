import random

import pytest

from nangulate.algebras import Module, ModuleMap, hom_basis
from nangulate.builders import dual_numbers, simple_over_dual_numbers
from nangulate.complexes import (
    ChainMap,
    ComplexError,
    Homotopy,
    PeriodicComplex,
    Suspension,
    chain_map_solve,
    coboundary_chain_map,
    conjugate_complex,
    direct_sum_complexes,
    disk_complex,
    find_complex_isomorphism,
    homotopy_between,
    homotopy_slot_types,
    is_contractible,
    is_exact,
    is_homotopy_equivalence,
    mapping_cone,
    reduce_stably_zero,
    rotate_left,
    rotate_right,
    trivial_complex,
    z1,
    z1_of_chain,
)
from nangulate.linalg import Mat, field_by_name

F2 = field_by_name("F2")
F3 = field_by_name("F3")
F5 = field_by_name("F5")


def r_u_complex(A, u, n):
    """R(u) = (R --u*x--> R --x--> ... --x--> Sigma R) over a local square-zero ring."""
    susp = Suspension(A)
    reg = A.regular_module()
    x = A.basis_vector(1)
    ux = A.multiply(u, x)
    maps = [ModuleMap(reg, reg, reg.act(ux), check=False)]
    for _ in range(n - 1):
        maps.append(ModuleMap(reg, reg, reg.act(x), check=False))
    return PeriodicComplex(susp, [reg] * n, maps)


def scalar_unit(A, c):
    F = A.field
    return tuple(F.mul(c, a) for a in A.unit)


def test_trivial_complex_exact_and_contractible():
    A = dual_numbers(F2)
    susp = Suspension(A)
    T = trivial_complex(susp, A.regular_module(), 3)
    assert is_exact(T)
    assert is_contractible(T)
    M, _ = z1(T)
    assert M.dim == 0


def test_disk_positions_all_valid():
    A = dual_numbers(F3)
    susp = Suspension(A)
    reg = A.regular_module()
    for slot in range(4):
        D = disk_complex(susp, reg, 4, slot)
        assert is_exact(D)
        assert is_contractible(D)


def test_r_u_exact_not_contractible():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    assert is_exact(R)
    assert not is_contractible(R)
    M, _ = z1(R)
    assert M.dim == 1


def test_zero_map_complex_not_exact():
    A = dual_numbers(F2)
    susp = Suspension(A)
    reg = A.regular_module()
    zero = Module.zero(A)
    maps = [
        ModuleMap.zero(reg, reg),
        ModuleMap.zero(reg, zero),
        ModuleMap.zero(zero, reg),
    ]
    X = PeriodicComplex(susp, [reg, reg, zero], maps)
    assert not is_exact(X)


def test_nonprojective_slot_rejected():
    A = dual_numbers(F2)
    susp = Suspension(A)
    k = simple_over_dual_numbers(A)
    with pytest.raises(ComplexError):
        disk_complex(susp, k, 3, 0)


def test_rotate_inverse():
    A = dual_numbers(F3)
    R = r_u_complex(A, scalar_unit(A, F3.of_int(2)), 3)
    assert rotate_right(rotate_left(R)) == R
    assert rotate_left(rotate_right(R)) == R


def test_rotate_left_sign_and_iso_to_negated_unit():
    # n = 3 over F3: rotating R(u) gives final map -u*x and the result is
    # isomorphic to R(-u) via the frozen witness (1, -u, -u)
    A = dual_numbers(F3)
    u = scalar_unit(A, F3.of_int(2))
    R = r_u_complex(A, u, 3)
    L = rotate_left(R)
    x = A.basis_vector(1)
    reg = A.regular_module()
    minus_ux = reg.act(A.multiply(scalar_unit(A, F3.of_int(-2 % 3)), x))
    assert L.maps[2].mat == minus_ux
    minus_u = scalar_unit(A, F3.of_int(-2 % 3))
    Rneg = r_u_complex(A, minus_u, 3)
    w = [
        ModuleMap(L.objects[0], Rneg.objects[0], reg.act(A.unit), check=False),
        ModuleMap(L.objects[1], Rneg.objects[1], reg.act(minus_u), check=False),
        ModuleMap(L.objects[2], Rneg.objects[2], reg.act(minus_u), check=False),
    ]
    iso = ChainMap(L, Rneg, w)  # validates the squares
    assert iso.is_degreewise_iso()


def test_rotation_preserves_exactness_random():
    A = dual_numbers(F2)
    susp = Suspension(A)
    reg = A.regular_module()
    rng = random.Random(5)
    checked = 0
    for _ in range(100):
        n = rng.choice([3, 4])
        objects = [reg] * n
        maps = []
        for i in range(n):
            basis = hom_basis(reg, reg)
            m = ModuleMap.zero(reg, reg)
            for b in basis:
                if rng.random() < 0.5:
                    m = m + b
            tgt = objects[i + 1] if i < n - 1 else susp.apply_module(objects[0])
            maps.append(ModuleMap(reg, tgt, m.mat, check=False))
        X = PeriodicComplex(susp, objects, maps)
        assert is_exact(X) == is_exact(rotate_left(X))
        checked += 1
    assert checked == 100


def test_direct_sum_and_z1_additivity():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    T = trivial_complex(Suspension(A), A.regular_module(), 3)
    S = direct_sum_complexes(R, T)
    assert is_exact(S)
    M, _ = z1(S)
    MR, _ = z1(R)
    MT, _ = z1(T)
    assert M.dim == MR.dim + MT.dim


def test_cone_of_identity_contractible():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    C = mapping_cone(ChainMap.identity(R))
    assert is_exact(C)
    assert is_contractible(C)


def test_cone_of_zero_blockwise():
    # cone(0: X -> Y) equals (sign-conjugated rotate_left X) (+) Y literally
    A = dual_numbers(F3)
    X = r_u_complex(A, A.unit, 3)
    Y = trivial_complex(Suspension(A), A.regular_module(), 3)
    C = mapping_cone(ChainMap.zero(X, Y))
    L = rotate_left(X)
    F = A.field
    reg = A.regular_module()
    minus_one = reg.act(scalar_unit(A, F.of_int(-1 % 3)))
    one = reg.act(A.unit)
    isos = []
    for i in range(3):
        m = minus_one if i % 2 == 1 else one
        isos.append(ModuleMap(L.objects[i], L.objects[i], m, check=False))
    Lc = conjugate_complex(L, isos)
    S = direct_sum_complexes(Lc, Y)
    assert S == C


def test_homotopy_reflexive_and_symmetric():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    idm = ChainMap.identity(R)
    h, cert = homotopy_between(idm, idm)
    assert h is not None
    assert h.verifies(idm, idm)


def test_contraction_found_on_trivial():
    A = dual_numbers(F5)
    T = trivial_complex(Suspension(A), A.regular_module(), 4)
    idm = ChainMap.identity(T)
    zero = ChainMap.zero(T, T)
    h, cert = homotopy_between(idm, zero)
    assert h is not None
    assert h.verifies(idm, zero)


def test_r1_r2_not_equivalent_f3():
    # 1*x != 2*x, so no chain map R(1) -> R(2) is a homotopy equivalence
    A = dual_numbers(F3)
    R1 = r_u_complex(A, A.unit, 3)
    R2 = r_u_complex(A, scalar_unit(A, F3.of_int(2)), 3)
    # enumerate the full chain-map space via the homogeneous system and
    # check every candidate fails
    import itertools

    basis_maps = []
    n = 3
    reg = A.regular_module()
    hb = hom_basis(reg, reg)
    found_equiv = False
    count_chain_maps = 0
    for coeffs in itertools.product(range(3), repeat=len(hb) * n):
        parts = []
        ok = True
        for i in range(n):
            m = Mat.zeros(F3, 2, 2)
            for j, b in enumerate(hb):
                c = coeffs[i * len(hb) + j]
                if c:
                    m = m + b.mat.scale(F3.of_int(c))
            parts.append(ModuleMap(reg, reg, m, check=False))
        cand = ChainMap(R1, R2, parts, check=False)
        try:
            cand._validate()
        except ComplexError:
            continue
        count_chain_maps += 1
        if is_homotopy_equivalence(cand) is not None:
            found_equiv = True
            break
    assert count_chain_maps > 0
    assert not found_equiv


def test_r1_r1_equivalent():
    A = dual_numbers(F3)
    R1 = r_u_complex(A, A.unit, 3)
    res = is_homotopy_equivalence(ChainMap.identity(R1))
    assert res is not None
    psi, hX, hY = res
    assert hX.verifies(ChainMap.identity(R1).then(psi), ChainMap.identity(R1))


def test_z1_of_chain_functorial():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    idc = ChainMap.identity(R)
    h = z1_of_chain(idc)
    assert h.mat == Mat.identity(F2, 1)


def test_chain_map_solve_with_anchor():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    M, incl = z1(R)
    # solve for a chain map R -> R inducing the identity on Z1
    sol, cert = chain_map_solve(R, R, [(0, incl.mat, None, incl.mat)])
    assert sol is not None
    assert z1_of_chain(sol).mat == Mat.identity(F2, 1)


def test_coboundary_is_chain_map_and_nullhomotopic():
    A = dual_numbers(F3)
    R = r_u_complex(A, A.unit, 3)
    rng = random.Random(3)
    parts = []
    for i in range(3):
        src, tgt = homotopy_slot_types(R, R, i)
        basis = hom_basis(src, tgt)
        m = ModuleMap.zero(src, tgt)
        for b in basis:
            if rng.random() < 0.5:
                m = m + b
        parts.append(m)
    delta = coboundary_chain_map(R, R, parts)
    delta._validate()  # commuting squares hold exactly
    h, cert = homotopy_between(delta, ChainMap.zero(R, R))
    assert h is not None


def test_reduce_stably_zero_on_coboundary():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    rng = random.Random(9)
    for _ in range(10):
        parts = []
        for i in range(3):
            src, tgt = homotopy_slot_types(R, R, i)
            basis = hom_basis(src, tgt)
            m = ModuleMap.zero(src, tgt)
            for b in basis:
                if rng.random() < 0.5:
                    m = m + b
            parts.append(m)
        phi = coboundary_chain_map(R, R, parts)
        reduced, witness = reduce_stably_zero(phi)
        for i in range(2):
            assert reduced.parts[i].is_zero()
        assert witness.verifies(phi, reduced)
        # the surviving component factors through the previous target map
        from nangulate.linalg import solve_xa_b

        last = reduced.parts[2].mat
        if not last.is_zero():
            assert solve_xa_b(R.maps[1].mat, last) is not None


def test_reduced_pairs_compose_to_zero():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    rng = random.Random(13)
    for _ in range(10):
        phis = []
        for _k in range(2):
            parts = []
            for i in range(3):
                src, tgt = homotopy_slot_types(R, R, i)
                basis = hom_basis(src, tgt)
                m = ModuleMap.zero(src, tgt)
                for b in basis:
                    if rng.random() < 0.5:
                        m = m + b
                parts.append(m)
            phis.append(coboundary_chain_map(R, R, parts))
        r1, _ = reduce_stably_zero(phis[0])
        r2, _ = reduce_stably_zero(phis[1])
        comp = r1.then(r2)
        assert comp.is_zero()


def test_reduce_rejects_nonstably_zero():
    A = dual_numbers(F2)
    R = r_u_complex(A, A.unit, 3)
    with pytest.raises(ComplexError):
        reduce_stably_zero(ChainMap.identity(R))


def test_find_complex_isomorphism():
    A = dual_numbers(F3)
    u = scalar_unit(A, F3.of_int(2))
    R = r_u_complex(A, u, 3)
    L = rotate_left(r_u_complex(A, A.unit, 3))
    # rotate_left(R(1)) is isomorphic to R(-1) = R(2)
    iso = find_complex_isomorphism(L, R)
    assert iso is not None
    assert iso.is_degreewise_iso()
    iso._validate()
