"""Automorphism tower: projection, lifts, and the kernel correspondence."""

import random

import pytest

from nilstab.autos import (
    Endo,
    HomMap,
    abelianization_matrix,
    apply_endo,
    compose,
    conjugate,
    endo_from_images,
    endo_from_json,
    endo_from_matrix,
    endo_to_json,
    flat,
    hom_gl_action,
    invert,
    is_automorphism,
    lift,
    lift_to_class,
    project,
    sharp,
    stabilize,
)
from nilstab.group import GroupElement, comm, inv, mul, parse_element
from nilstab.intlinalg import identity, int_inverse, matmul, matvec
from nilstab.modules import Hom, LieLayer, Std, eval_module
from nilstab.verify import (
    random_automorphism,
    random_group_element,
    random_hom_map,
    random_unimodular,
)
from nilstab.words import witt_rank


def gens(r, c):
    return [GroupElement.generator(r, c, i) for i in range(1, r + 1)]


def swap_endo(r, c):
    images = gens(r, c)
    images[0], images[1] = images[1], images[0]
    return endo_from_images(images)


def test_apply_identity():
    rng = random.Random(31)
    e = Endo.identity(3, 3)
    for _ in range(5):
        g = random_group_element(rng, 3, 3)
        assert apply_endo(e, g) == g


def test_apply_swap_inverts_commutator():
    a, b = gens(2, 2)
    e = swap_endo(2, 2)
    assert apply_endo(e, comm(a, b)) == inv(comm(a, b))


def test_apply_is_homomorphism():
    rng = random.Random(32)
    for _ in range(8):
        e = random_automorphism(rng, 2, 3)
        g = random_group_element(rng, 2, 3)
        h = random_group_element(rng, 2, 3)
        assert apply_endo(e, mul(g, h)) == mul(apply_endo(e, g), apply_endo(e, h))


def test_abelianization_matrix_examples():
    assert abelianization_matrix(Endo.identity(2, 2)) == identity(2)
    assert abelianization_matrix(swap_endo(2, 2)) == ((0, 1), (1, 0))
    kernel = endo_from_images(
        [parse_element("a * [ab]", 2, 2), parse_element("b", 2, 2)]
    )
    assert abelianization_matrix(kernel) == identity(2)


def test_abelianization_functorial():
    rng = random.Random(33)
    for _ in range(6):
        e1 = random_automorphism(rng, 3, 2)
        e2 = random_automorphism(rng, 3, 2)
        assert abelianization_matrix(compose(e1, e2)) == matmul(
            abelianization_matrix(e1), abelianization_matrix(e2)
        )


def test_is_automorphism():
    doubling = endo_from_images([parse_element("a^2", 2, 2), parse_element("b", 2, 2)])
    assert not is_automorphism(doubling)
    kernel = endo_from_images([parse_element("a * [ab]", 2, 2), parse_element("b", 2, 2)])
    assert is_automorphism(kernel)
    assert is_automorphism(swap_endo(3, 2))


def test_invert_examples():
    assert invert(Endo.identity(2, 2)) == Endo.identity(2, 2)
    kernel = endo_from_images([parse_element("a * [ab]", 2, 2), parse_element("b", 2, 2)])
    expected = endo_from_images(
        [parse_element("a * [ab]^-1", 2, 2), parse_element("b", 2, 2)]
    )
    assert invert(kernel) == expected
    with pytest.raises(ValueError):
        invert(endo_from_images([parse_element("a^2", 2, 2), parse_element("b", 2, 2)]))


def test_invert_random_two_sided():
    rng = random.Random(34)
    for r, c in [(2, 2), (2, 3), (3, 3)]:
        ident = Endo.identity(r, c)
        for _ in range(5):
            e = random_automorphism(rng, r, c)
            f = invert(e)
            assert compose(e, f) == ident
            assert compose(f, e) == ident


def test_project():
    assert project(Endo.identity(2, 3)) == Endo.identity(2, 2)
    kernel = endo_from_images([parse_element("a * [ab]", 2, 2), parse_element("b", 2, 2)])
    assert project(kernel) == Endo.identity(2, 1)
    rng = random.Random(35)
    for _ in range(5):
        e1 = random_automorphism(rng, 2, 3)
        e2 = random_automorphism(rng, 2, 3)
        assert project(compose(e1, e2)) == compose(project(e1), project(e2))
    with pytest.raises(ValueError):
        project(Endo.identity(2, 1))


def test_lift_is_section():
    assert lift(Endo.identity(2, 1)) == Endo.identity(2, 2)
    phi = swap_endo(2, 1)
    lifted = lift(phi)
    assert lifted.class_bound == 2
    assert project(lifted) == phi
    assert abelianization_matrix(lifted) == abelianization_matrix(phi)
    rng = random.Random(36)
    for r, c in [(2, 2), (3, 2), (2, 4)]:
        for _ in range(5):
            phi = random_automorphism(rng, r, c - 1) if c > 1 else None
            if phi is None:
                continue
            assert project(lift(phi)) == phi
    with pytest.raises(ValueError):
        lift(endo_from_images([parse_element("a^2", 2, 1), parse_element("b", 2, 1)]))


def test_flat_examples():
    r, c = 2, 2
    kernel = endo_from_images([parse_element("a * [ab]", r, c), parse_element("b", r, c)])
    assert flat(kernel).matrix == ((1, 0),)
    zero = flat(Endo.identity(r, c))
    assert zero == HomMap.zero(r, c)
    with pytest.raises(ValueError):
        flat(swap_endo(r, c))  # not in the kernel


def test_flat_additive():
    rng = random.Random(37)
    for r, c in [(2, 2), (2, 3), (3, 2)]:
        for _ in range(6):
            b1 = random_hom_map(rng, r, c)
            b2 = random_hom_map(rng, r, c)
            assert flat(compose(sharp(b1), sharp(b2))) == b1 + b2


def test_sharp_examples():
    r, c = 2, 2
    assert sharp(HomMap.zero(r, c)) == Endo.identity(r, c)
    e = sharp(HomMap(r, c, ((1, 0),)))
    assert e == endo_from_images(
        [parse_element("a * [ab]", r, c), parse_element("b", r, c)]
    )


def test_flat_sharp_mutually_inverse():
    rng = random.Random(38)
    for r, c in [(2, 2), (2, 4), (3, 3)]:
        for _ in range(8):
            beta = random_hom_map(rng, r, c)
            assert flat(sharp(beta)) == beta
            alpha = compose(sharp(random_hom_map(rng, r, c)), sharp(random_hom_map(rng, r, c)))
            assert sharp(flat(alpha)) == alpha


def test_kernel_rank_matches_hom_space():
    for r, c in [(1, 2), (2, 2), (2, 3), (3, 2), (3, 4)]:
        beta = HomMap.zero(r, c)
        assert len(beta.matrix) == witt_rank(r, c)
        assert len(beta.matrix) * r == r * witt_rank(r, c)
        # standard basis sharps are kernel elements
        for row in range(min(2, witt_rank(r, c))):
            alpha = sharp(HomMap.basis_element(r, c, row, 0))
            assert project(alpha) == Endo.identity(r, c - 1)


def test_stabilize():
    assert stabilize(Endo.identity(2, 2)) == Endo.identity(3, 2)
    rng = random.Random(39)
    for _ in range(5):
        e = random_automorphism(rng, 2, 3)
        s = stabilize(e)
        assert is_automorphism(s)
        assert s.images[2] == GroupElement.generator(3, 3, 3)
        assert project(s) == stabilize(project(e))
        f = random_automorphism(rng, 2, 3)
        assert stabilize(compose(e, f)) == compose(stabilize(e), stabilize(f))


def test_conjugation_acts_through_abelianization():
    rng = random.Random(40)
    for r, c in [(2, 2), (2, 3), (3, 2)]:
        for _ in range(6):
            alpha = sharp(random_hom_map(rng, r, c))
            e = random_automorphism(rng, r, c)
            a = abelianization_matrix(e)
            assert flat(conjugate(e, alpha)) == hom_gl_action(a, flat(alpha))
            # composing the other way gives the inverse matrix action
            other = compose(invert(e), compose(alpha, e))
            assert flat(other) == hom_gl_action(int_inverse(a), flat(alpha))


def test_conjugation_fixed_by_identity_abelianization():
    rng = random.Random(41)
    for _ in range(6):
        alpha = sharp(random_hom_map(rng, 2, 3))
        fixer = sharp(random_hom_map(rng, 2, 3))
        assert abelianization_matrix(fixer) == identity(2)
        assert flat(conjugate(fixer, alpha)) == flat(alpha)


def test_hom_gl_action_matches_module_action():
    # dual route: the kernel transformation agrees with the evaluated Hom module
    rng = random.Random(42)
    for r, c in [(2, 2), (2, 3), (3, 2)]:
        module = eval_module(Hom(Std(), LieLayer(c)), r)
        for _ in range(6):
            beta = random_hom_map(rng, r, c)
            a = random_unimodular(rng, r)
            direct = hom_gl_action(a, beta)
            vec = tuple(x for row in beta.matrix for x in row)  # row-major
            moved = matvec(module.action(a), vec)
            expected = tuple(x for row in direct.matrix for x in row)
            assert moved == expected


def test_endo_json_round_trip():
    rng = random.Random(43)
    for _ in range(5):
        e = random_automorphism(rng, 2, 3)
        assert endo_from_json(endo_to_json(e)) == e
    obj = endo_to_json(Endo.identity(2, 2))
    assert obj["rank"] == 2 and obj["class"] == 2 and len(obj["images"]) == 2


def test_lift_to_class_iterates():
    phi = swap_endo(2, 1)
    lifted = lift_to_class(phi, 4)
    assert lifted.class_bound == 4
    back = lifted
    while back.class_bound > 1:
        back = project(back)
    assert back == phi


def test_bad_images_rejected():
    with pytest.raises(ValueError):
        Endo(2, 2, (GroupElement.generator(2, 2, 1),))
    with pytest.raises(ValueError):
        Endo(2, 2, tuple(gens(3, 2)))


def test_kernel_of_project_is_image_of_sharp():
    # build kernel elements directly from collected words, not through sharp
    rng = random.Random(44)
    for r, c in [(2, 2), (2, 3), (3, 2), (3, 4)]:
        from nilstab.words import lyndon_basis

        top = lyndon_basis(r, c)
        for _ in range(8):
            images = []
            for i in range(1, r + 1):
                exps = {(i,): 1}
                for b in top:
                    e = rng.randint(-2, 2)
                    if e:
                        exps[b.word] = e
                images.append(GroupElement.from_exponents(r, c, exps))
            alpha = endo_from_images(images)
            assert project(alpha) == Endo.identity(r, c - 1)
            assert sharp(flat(alpha)) == alpha


def test_endo_json_rejects_mismatched_images():
    obj = {
        "rank": 2,
        "class": 2,
        "images": [
            {"rank": 2, "class": 3, "exponents": [["a", 1]]},
            {"rank": 2, "class": 2, "exponents": [["b", 1]]},
        ],
    }
    with pytest.raises(ValueError):
        endo_from_json(obj)
