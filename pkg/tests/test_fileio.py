import pytest

from exactcat.corpus import data_path, z_module
from exactcat.fileio import (ParseError, check_rep, load_category, load_map, load_rep, load_seq,
                             load_telescope, parse_path)
from exactcat.rings import QQ


def test_parse_path_order():
    assert parse_path("g.f") == ("f", "g")
    assert parse_path("id") == ()
    assert parse_path(" h . g . f ") == ("f", "g", "h")


def test_category_and_ring_override():
    spec = load_category(data_path("cat", "a2.cat"))
    assert spec.objects == ("a", "b")
    assert load_category(data_path("cat", "a2.cat"), QQ).ring == QQ


def test_relative_references():
    X = load_rep(data_path("rep", "z3-z.rep"))
    assert X.values[0].canonical() == (1, (3,))
    f = load_map(data_path("map", "z-times3.map"))
    assert f.source == f.target
    assert f.source.values[0].canonical() == z_module((0,)).values[0].canonical()


def test_bad_files(tmp_path):
    with pytest.raises(ParseError):
        load_rep(data_path("rep", "a2-bad.rep"))
    X, problems = check_rep(data_path("rep", "a2-sa.rep"))
    assert problems == [] and not X.is_zero()
    p = tmp_path / "broken.cat"
    p.write_text("ring Z\nobjects a\narrow f : a -> a\n")
    with pytest.raises(ParseError) as exc:
        load_category(str(p))
    assert exc.value.line_no == 3
    with pytest.raises(ParseError):
        load_category(str(tmp_path / "missing.cat"))


def test_sequences_and_telescopes(tmp_path):
    s = load_seq(data_path("seq", "z3-z9-z3.seq"))
    assert s.is_pointwise_exact()
    T = load_telescope(data_path("tel", "z-times3.tel"))
    assert T.m == 0
    text = open(data_path("tel", "z-times3.tel")).read().replace("stage", "ramp")
    p = tmp_path / "ramp.tel"
    p.write_text(text.replace("../", data_path("") + "/"))
    assert load_telescope(str(p)).tail_object == T.tail_object
