import numpy as np
import pytest

from semigroup_lab.errors import ConfigError, DomainError
from semigroup_lab.evolution import (
    EvolutionFamily,
    GeneratorSpec,
    build_family,
    check_group_axioms,
    coefficient_from_name,
    pre_generator,
)
from semigroup_lab.operators import op_norm

ROT = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def test_coefficient_catalogue():
    assert coefficient_from_name("const:3")(99.0) == 3.0
    assert coefficient_from_name("linear:2")(1.5) == 3.0
    assert coefficient_from_name("sin:1")(np.pi / 2.0) == pytest.approx(1.0)
    assert coefficient_from_name("poly:2")(3.0) == 9.0
    # missing argument defaults to 1
    assert coefficient_from_name("const")(0.0) == 1.0
    with pytest.raises(ConfigError):
        coefficient_from_name("nope:1")


def test_spec_validation():
    with pytest.raises(ConfigError):
        GeneratorSpec("weird", ROT)
    with pytest.raises(ConfigError):
        GeneratorSpec("scalar_modulated", ROT)  # no coefficient


def test_constant_family_is_exact_rotation():
    fam = build_family(GeneratorSpec("constant", ROT), 10.0)
    u = fam(np.pi / 2.0, 0.0)
    expect = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert op_norm(u - expect) < 1e-13


def test_identity_at_coincident_parameters_exact():
    fam = build_family(GeneratorSpec("constant", ROT), 1.0)
    assert np.array_equal(fam(0.3, 0.3), np.eye(2, dtype=complex))


def test_modulated_phase_matches_antiderivative():
    spec = GeneratorSpec("scalar_modulated", ROT, coefficient_from_name("sin:1"))
    fam = build_family(spec, 5.0)
    t, s = 1.3, -0.4
    assert fam.phase(t, s) == pytest.approx(np.cos(s) - np.cos(t), abs=1e-12)


def test_domain_enforced():
    fam = build_family(GeneratorSpec("constant", ROT), 1.0)
    with pytest.raises(DomainError):
        fam(1.5, 0.0)


def test_group_axioms_pass_for_both_kinds():
    rng = np.random.default_rng(0)
    triples = [tuple(rng.uniform(-1.0, 1.0, 3)) for _ in range(25)]
    for spec in (
        GeneratorSpec("constant", ROT),
        GeneratorSpec("scalar_modulated", ROT, coefficient_from_name("linear:1")),
    ):
        rep = check_group_axioms(build_family(spec, 1.0), triples)
        assert rep.passed, rep.residuals


def test_pre_generator_schemes():
    m = np.diag([0.5, -1.0]).astype(complex)
    fam = build_family(GeneratorSpec("constant", m), 1.0)
    central = pre_generator(fam, 0.0, 1e-5, scheme="central")
    forward = pre_generator(fam, 0.0, 1e-5, scheme="forward")
    assert op_norm(central - m) < 1e-9
    # forward scheme carries an O(h) bias, central does not
    assert op_norm(forward - m) > op_norm(central - m)
    with pytest.raises(ConfigError):
        pre_generator(fam, 0.0, 1e-5, scheme="midpoint")
    with pytest.raises(ConfigError):
        pre_generator(fam, 0.0, -1e-5)


def test_pre_generator_modulated_tracks_coefficient():
    spec = GeneratorSpec("scalar_modulated", ROT, coefficient_from_name("sin:1"))
    fam = build_family(spec, 5.0)
    t = 0.7
    est = pre_generator(fam, t, 1e-5)
    assert op_norm(est - np.sin(t) * ROT) < 1e-8
