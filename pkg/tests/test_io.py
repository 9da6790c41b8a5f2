from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dialg import catalog
from dialg.algebra import LEFT, RIGHT, Algebra
from dialg.errors import FormatError
from dialg.extensions import random_central_extension, universal_central_extension
from dialg.io import parse_algebra, parse_cochain_file, parse_extension, write_algebra, write_extension
from dialg.linalg import QQ, Field

F5 = Field.prime(5)


def test_minimal_file_is_d1():
    assert parse_algebra("dialg 1\nfield Q\ndim 1\n") == catalog.load("d1")


def test_k1_file():
    text = "dialg 1\nfield Q\ndim 1\nleft 1 1 1 1\nright 1 1 1 1\n"
    L = parse_algebra(text)
    assert L == catalog.load("k1")
    assert write_algebra(L) == text


def test_comments_and_blank_lines():
    text = "# K1\ndialg 1\n\nfield Q   # rationals\ndim 1\nright 1 1 1 1\nleft 1 1 1 1  # e1 -| e1\n"
    assert parse_algebra(text) == catalog.load("k1")


def test_writer_sorts_and_formats_fractions():
    L = Algebra.from_entries(QQ, 2, {(RIGHT, 1, 1, 0): Fraction(-2, 4), (LEFT, 0, 0, 1): 3})
    assert write_algebra(L).splitlines()[3:] == ["left 1 1 2 3", "right 2 2 1 -1/2"]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("dialg 1\nfield Q\ndim 1\nleft 1 1 1 1\nleft 1 1 1 2\n", 5, "duplicate"),
        ("dialg 1\nfield Q\ndim 1\nleft 1 2 1 1\n", 4, "out of range"),
        ("dialg 1\nfield Q\ndim 1\nleft 0 1 1 1\n", 4, "out of range"),
        ("dialg 1\nfield p=6\ndim 1\n", 2, "prime"),
        ("dialg 1\nfield Q\ndim 1\nleft 1 1 1\n", 4, "expected"),
        ("dialg 1\nfield Q\ndim 1\nmiddle 1 1 1 1\n", 4, "unexpected"),
        ("dialg 1\nfield Q\ndim 1\nleft 1 1 1 x\n", 4, "bad number"),
        ("dialg 2\nfield Q\ndim 1\n", 1, "version"),
        ("dialg 1\ndim 1\n", 2, "field"),
        ("dialg 1\nfield p=5\ndim 1\nleft 1 1 1 1/5\n", 4, "modulo"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError) as info:
        parse_algebra(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)
    assert fragment in str(info.value)


def test_missing_header():
    with pytest.raises(FormatError):
        parse_algebra("")


def test_field_override():
    L = parse_algebra(catalog.catalog_text("m2d"), F5)
    assert L.field == F5 and L == catalog.load("m2d").with_field(F5)
    text = "dialg 1\nfield Q\ndim 1\nleft 1 1 1 1/2\n"
    with pytest.raises(FormatError):
        parse_algebra(text, F5)
    assert parse_algebra("dialg 1\nfield Q\ndim 1\nleft 1 1 1 5\n", F5).entries() == {}


def test_prime_field_values_are_reduced():
    L = parse_algebra("dialg 1\nfield p=5\ndim 1\nleft 1 1 1 7\nright 1 1 1 -3\n")
    assert L.entries() == {(LEFT, 0, 0, 0): 2, (RIGHT, 0, 0, 0): 2}


def test_extension_round_trip():
    L = catalog.load("corner_quotient")
    E = universal_central_extension(L)
    text = write_extension(E)
    assert "kernel 1" in text
    E2 = parse_extension(text)
    assert E2.base == L and E2.cocycle == E.cocycle and E2.total == E.total
    base, f = parse_cochain_file(text)
    assert f == E.cocycle


def test_extension_with_zero_kernel():
    E = universal_central_extension(catalog.load("k1"))
    assert write_extension(E).endswith("kernel 0\n")
    assert parse_extension(write_extension(E)).kernel_dim == 0


def test_extension_errors():
    base = "dialg 1\nfield Q\ndim 1\n"
    with pytest.raises(FormatError):
        parse_extension(base)
    with pytest.raises(FormatError):
        parse_extension(base + "kernel 1\ncocycle left 1 1 2 1\n")
    with pytest.raises(FormatError):
        parse_extension(base + "cocycle left 1 1 1 1\nkernel 1\n")
    with pytest.raises(FormatError):
        parse_extension(base + "kernel 1\ncocycle left 1 1 1 1\ncocycle left 1 1 1 1\n")


@pytest.mark.parametrize("name", list(catalog.CATALOG))
def test_catalog_files_round_trip(name):
    text = catalog.catalog_text(name)
    assert write_algebra(parse_algebra(text)) == text


@settings(max_examples=40, deadline=None)
@given(
    entries=st.dictionaries(
        st.tuples(st.sampled_from([LEFT, RIGHT]), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
        st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool),
        max_size=12,
    )
)
def test_unchecked_tensors_round_trip(entries):
    L = Algebra.from_entries(QQ, 3, entries)
    assert parse_algebra(write_algebra(L)) == L


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 1000))
def test_random_cocycle_files_round_trip(seed):
    rng = random.Random(seed)
    L = catalog.load(rng.choice(["t3", "n2", "d1", "corner_quotient"]))
    E = random_central_extension(L, 2, rng)
    assert parse_extension(write_extension(E)).cocycle == E.cocycle
