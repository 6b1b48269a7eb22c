from __future__ import annotations

import random

import pytest

from computons import (
    are_isomorphic,
    compose_morphisms,
    find_isomorphism,
    i_vector,
    identity_morphism,
    inverse,
    make_functional,
    morphism,
    o_vector,
    validate_morphism,
)
from computons.errors import CompositionMismatchError, InvalidMorphismError, MalformedInputError
from computons.fixtures import APEX0, FORK, GLUE, JOIN, LAMBDA1, LAMBDA2, LEFT_LEG, RIGHT_LEG, UNIT
from computons.generate import exotic_renaming
from helpers import chain, inclusion


def clauses(m) -> set[str]:
    return set(validate_morphism(m).clauses)


class TestValidate:
    @pytest.mark.parametrize("c", [FORK, JOIN, GLUE, UNIT, LAMBDA1, LAMBDA2])
    def test_identity(self, c):
        m = identity_morphism(c)
        assert validate_morphism(m).ok
        assert i_vector(m) == o_vector(m) == frozenset()

    def test_fixture_legs(self):
        assert validate_morphism(LEFT_LEG).ok and validate_morphism(RIGHT_LEG).ok
        assert LEFT_LEG.source == APEX0 and LEFT_LEG.target == LAMBDA1

    def test_not_injective(self):
        m = morphism(APEX0, LAMBDA1, ports={"a": "q1", "b": "q1"})
        found = clauses(m)
        assert "α_P not injective" in found

    def test_colour_mismatch(self):
        m = morphism(APEX0, LAMBDA1, ports={"a": "q1", "b": "o2"})
        assert "colour square" in clauses(m)

    def test_colour_set_not_included(self):
        m = morphism(APEX0, GLUE, ports={"a": "p1", "b": "p2"})
        assert "Σ not included" in clauses(m)

    def test_edge_square(self):
        a = chain("x", "u", "y")
        b = chain("x", "u", "y", "v", "z")
        # send the in-edge of u to the in-edge of v: the τ and s squares break
        m = inclusion(a, b, f_u="f_v")
        assert {"τ square", "s square"} <= clauses(m)

    def test_boundary_condition(self):
        a = chain("a", "u", "m", "v", "b")
        b = chain(
            "a", "u", "m", "v", "b",
            extra_units=["w"],
            extra_ports={"z": 0},
            extra_in=[("fx", "m", "w")],
            extra_out=[("ex", "w", "z")],
        )
        m = inclusion(a, b)
        assert o_vector(m) == {"m"}
        assert clauses(m) == {"boundary condition"}

    def test_growth_at_boundary_is_fine(self):
        a = chain("a", "u", "b")
        b = chain("a", "u", "b", "v", "c")
        m = inclusion(a, b)
        assert o_vector(m) == {"b"} and i_vector(m) == frozenset()
        assert validate_morphism(m).ok

    def test_partial_map_is_malformed(self):
        with pytest.raises(MalformedInputError):
            validate_morphism(morphism(APEX0, LAMBDA1, ports={"a": "q1"}))

    def test_unknown_target(self):
        with pytest.raises(MalformedInputError):
            validate_morphism(morphism(APEX0, LAMBDA1, ports={"a": "q1", "b": "nowhere"}))


class TestComposition:
    def test_compose_with_identity(self):
        assert compose_morphisms(identity_morphism(LAMBDA1), LEFT_LEG) == LEFT_LEG
        assert compose_morphisms(LEFT_LEG, identity_morphism(APEX0)) == LEFT_LEG

    def test_associative(self):
        a = chain("a", "u", "b")
        b = chain("a", "u", "b", "v", "c")
        c = chain("a", "u", "b", "v", "c", "w", "d")
        f, g, h = identity_morphism(a), inclusion(a, b), inclusion(b, c)
        assert compose_morphisms(h, compose_morphisms(g, f)) == compose_morphisms(compose_morphisms(h, g), f)
        assert validate_morphism(compose_morphisms(h, g)).ok

    def test_mismatch(self):
        with pytest.raises(CompositionMismatchError):
            compose_morphisms(RIGHT_LEG, LEFT_LEG)


class TestIsomorphism:
    def test_self(self):
        m = find_isomorphism(LAMBDA1, LAMBDA1)
        assert m is not None and m.is_isomorphism()

    def test_renamed(self):
        rng = random.Random(0)
        renamed = exotic_renaming(rng, LAMBDA2)
        m = find_isomorphism(LAMBDA2, renamed)
        assert m is not None
        inv = inverse(m)
        assert compose_morphisms(inv, m) == identity_morphism(LAMBDA2)

    def test_functional_shapes(self):
        assert are_isomorphic(make_functional([1, 2], [3, 4]), LAMBDA1)
        assert not are_isomorphic(LAMBDA1, LAMBDA2)
        assert not are_isomorphic(FORK, JOIN)

    def test_colour_matters(self):
        assert not are_isomorphic(make_functional([1], [2]), make_functional([1], [3]))

    def test_inverse_needs_iso(self):
        with pytest.raises(InvalidMorphismError):
            inverse(LEFT_LEG)
