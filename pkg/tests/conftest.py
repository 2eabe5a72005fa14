"""Shared generators: random rotations via conjugation of the companion
matrix, random non-eigenvector u, and single-scalar perturbations."""

from __future__ import annotations

import random

import pytest

from strassen7 import RATIONAL, ColVec2, Mat2, PrimeField
from strassen7.construction import (
    BilinearDecomposition,
    EigenvectorError,
    PerpPair,
    Rotation,
    Term,
    default_rotation,
    default_u,
    derive_decomposition,
    perp_vector,
    validate_rotation,
)

EXACT_FIELDS = [RATIONAL, PrimeField(2), PrimeField(3), PrimeField(5), PrimeField(7)]


@pytest.fixture(params=EXACT_FIELDS, ids=lambda f: f.name)
def exact_field(request):
    return request.param


def random_invertible(field, rng: random.Random) -> Mat2:
    while True:
        m = Mat2(field, [field.sample(rng) for _ in range(4)])
        if m.det():
            return m


def random_rotation(field, rng: random.Random) -> Rotation:
    """Every valid rotation is a conjugate of the companion matrix, and
    conjugation preserves the defining trace/determinant conditions."""
    companion = Mat2(field, [0, -1, 1, -1])
    p = random_invertible(field, rng)
    return validate_rotation(companion.conjugate_by(p))

def random_perp(rot: Rotation, rng: random.Random, tries: int = 64) -> PerpPair:
    field = rot.field
    for _ in range(tries):
        u = ColVec2(field, [field.sample(rng), field.sample(rng)])
        if u.is_zero():
            continue
        try:
            return perp_vector(rot, u)
        except EigenvectorError:
            continue
    return perp_vector(rot, default_u(rot))


def random_derivation(field, rng: random.Random):
    rot = random_rotation(field, rng)
    pp = random_perp(rot, rng)
    return rot, pp, derive_decomposition(rot, pp)


def paper_decomposition(field=RATIONAL) -> BilinearDecomposition:
    """The decomposition from the default D = [[0,-1],[1,-1]] and u = e1."""
    rot = default_rotation(field)
    return derive_decomposition(rot, perp_vector(rot, default_u(rot)))


def perturb_decomposition(dec: BilinearDecomposition, rng: random.Random):
    """Bump one random scalar of one term by one (nonzero in every field)."""
    k = rng.randrange(dec.rank)
    slot = rng.randrange(3)
    pos = rng.randrange(4)
    one = dec.field.one()

    def bumped(coeffs):
        return tuple(c + one if i == pos else c for i, c in enumerate(coeffs))

    terms = list(dec.terms)
    t = terms[k]
    if slot == 0:
        terms[k] = Term(bumped(t.u_coeffs), t.v_coeffs, t.w)
    elif slot == 1:
        terms[k] = Term(t.u_coeffs, bumped(t.v_coeffs), t.w)
    else:
        terms[k] = Term(t.u_coeffs, t.v_coeffs, Mat2(dec.field, bumped(t.w.flatten())))
    return BilinearDecomposition(dec.field, tuple(terms), dec.provenance)
