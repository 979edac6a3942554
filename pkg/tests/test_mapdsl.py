import random

import pytest

from fpcert.interval import Box, DimensionMismatchError, DomainError, Interval
from fpcert.mapdsl import (
    EvaluationError,
    ParseError,
    UnknownIdentifierError,
    parse_map,
    parse_program,
)


def test_parse_minimal():
    m = parse_map("dim 1\nmap g1 = 2*x1 - 0.5\n")
    assert m.dim == 1 and not m.has_param


def test_parse_rotation():
    m = parse_map("dim 2\nmap g1 = -x2\nmap g2 = x1\n")
    assert m.eval_real((1.0, 0.0)) == (0.0, 1.0)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError):
        parse_map("dim 1\nmap g1 = x2\n")
    with pytest.raises(UnknownIdentifierError):
        parse_map("dim 1\nmap g1 = t\n")
    with pytest.raises(UnknownIdentifierError):
        parse_map("dim 1\nmap g1 = foo\n")


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_map("dim 1\nmap g1 = 2*(x1\n")
    assert err.value.line == 2


def test_missing_component_is_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        parse_map("dim 2\nmap g1 = x1\n")


def test_param_declaration():
    m = parse_map("dim 1\nparam t\nmap g1 = (x1 + t)/2\n")
    assert m.has_param
    assert m.eval_real((1.0,), t=0.0) == (0.5,)
    with pytest.raises(ValueError):
        m.eval_real((1.0,))


def test_domain_line_is_passed_through():
    prog = parse_program("dim 1\nmap g1 = x1\ndomain rect [0,1]\n")
    assert prog.domain_line == "domain rect [0,1]"


def test_eval_real_examples():
    m = parse_map("dim 1\nmap g1 = 2*x1 - 0.5\n")
    assert m.eval_real((0.75,)) == (1.0,)
    with pytest.raises(DomainError):
        parse_map("dim 1\nmap g1 = sqrt(x1)\n").eval_real((-1.0,))


def test_eval_rejects_non_finite():
    m = parse_map("dim 1\nmap g1 = exp(1000*x1)\n")
    with pytest.raises((EvaluationError, DomainError)):
        m.eval_real((1.0,))


def test_eval_interval_naive_extension():
    m = parse_map("dim 1\nmap g1 = x1*(1 - x1)\n")
    img = m.eval_interval(Box.from_bounds([(0, 1)]))
    c = img.coords[0]
    assert c.lo <= 0.0 and c.hi >= 0.25  # true range [0, 1/4]
    assert c.hi <= 1.0 + 1e-12  # naive product of [0,1]*[0,1]

    lin = parse_map("dim 1\nmap g1 = 2*x1 - 0.5\n")
    c = lin.eval_interval(Box.from_bounds([(0, 1)])).coords[0]
    assert c.lo <= -0.5 <= 1.5 <= c.hi
    assert c.width <= 2.0 + 1e-12

    rot = parse_map("dim 2\nmap g1 = -x2\nmap g2 = x1\n")
    img = rot.eval_interval(Box.from_bounds([(0, 1), (0, 1)]))
    assert img.coords[0] == Interval(-1.0, 0.0)
    assert img.coords[1] == Interval(0.0, 1.0)


def _random_sources(rng, n):
    from fpcert.corpus import random_expression_map

    out = []
    for _ in range(n):
        dim = rng.choice((1, 2, 3))
        out.append(random_expression_map(rng, dim))
    return out


def test_fundamental_enclosure_fuzz():
    rng = random.Random(7)
    from fpcert.corpus import random_box, sample_in_box

    for m in _random_sources(rng, 150):
        box = random_box(rng, m.dim)
        try:
            img = m.eval_interval(box)
        except (DomainError, EvaluationError):
            continue
        for _ in range(20):
            p = sample_in_box(rng, box)
            try:
                v = m.eval_real(p)
            except (DomainError, EvaluationError):
                continue
            for vi, ci in zip(v, img.coords):
                assert ci.lo <= vi <= ci.hi, (m.to_source(), box.bounds(), p)


def test_print_reparse_roundtrip():
    rng = random.Random(11)
    from fpcert.corpus import random_box, sample_in_box

    for m in _random_sources(rng, 40):
        m2 = parse_map(m.to_source())
        box = random_box(rng, m.dim)
        for _ in range(100):
            p = sample_in_box(rng, box)
            try:
                v1 = m.eval_real(p)
            except (DomainError, EvaluationError):
                continue
            assert v1 == m2.eval_real(p)


def test_subdivision_convergence():
    m = parse_map("dim 2\nmap g1 = sin(x1) + 0.5*x1*x2\nmap g2 = cos(x1 - x2)\n")
    centre = (0.3, 0.7)
    prev = None
    for k in range(21):
        w = 2.0 ** -k
        box = Box.from_bounds([(c - w / 2, c + w / 2) for c in centre])
        img = m.eval_interval(box)
        width = max(c.width for c in img.coords)
        if prev is not None:
            assert width <= prev * (1 + 1e-9) + 1e-15
        prev = width
    assert prev < 1e-5


def test_comments_and_blank_lines():
    m = parse_map("# a comment\ndim 1\n\nmap g1 = x1  # inline\n")
    assert m.eval_real((0.25,)) == (0.25,)
