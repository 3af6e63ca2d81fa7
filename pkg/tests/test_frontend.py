import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssgb.algebra import Ring
from ssgb.cli import main
from ssgb.engine import incremental_groebner
from ssgb.frontend import (
    ParseError,
    cyclic,
    format_basis,
    gen_benchmark,
    katsura,
    parse_system,
)
from ssgb.stats import RunStats
from conftest import poly


# ---------- parsing ----------


def test_parse_example():
    desc = parse_system("ring 7 grevlex x y\nx^2*y - 3")
    assert desc.modulus == 7 and desc.variables == ("x", "y") and desc.order == "grevlex"
    assert desc.generators == [desc.ring.poly({(2, 1): 1, (0, 0): 4})]


def test_parse_zero_polynomial_accepted():
    desc = parse_system("ring 32003 lex x\nx - x")
    assert desc.generators[0].is_zero()


def test_parse_comments_blank_lines_and_implicit_product():
    desc = parse_system("# header\nring 11 lex x y  # ring\n\n2x y^2 + 3 # tail\n  -y\n")
    R = desc.ring
    assert desc.generators == [R.poly({(1, 2): 2, (0, 0): 3}), R.poly({(0, 1): 10})]


def test_coefficients_reduced_modulo_p():
    desc = parse_system("ring 7 grevlex x\n15x + 7")
    assert desc.generators[0] == desc.ring.poly({(1,): 1})


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("ring 4 grevlex x\nx", 1, 6, "not prime"),
        ("ring 7 grevlex x y\nx + z", 2, 5, "unknown variable"),
        ("ring 7 grevlex x y\nx^y", 2, 3, "malformed exponent"),
        ("ring 7 grevlex x y\nx^", 2, 3, "malformed exponent"),
        ("", 1, 1, "empty system"),
        ("ring 7 grevlex x y\n# nothing\n", 2, 1, "empty system"),
        ("ring 7 banana x", 1, 8, "unknown order"),
        ("ring 7 lex x x", 1, 14, "duplicate variable"),
        ("ring 7 lex x\nx $ 1", 2, 3, "unexpected character"),
        ("ring 7 lex x\nx *", 2, 4, "dangling"),
    ],
)
def test_parse_errors_have_positions(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_system(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in info.value.message


# ---------- formatting ----------


def test_format_example():
    R = Ring(7, 2, "grevlex", ["x", "y"])
    assert format_basis([poly(R, "y^2 - x")], R) == "ring 7 grevlex x y\ny^2 + 6*x\n"


def test_format_empty_basis():
    R = Ring(7, 2, "grevlex", ["x", "y"])
    assert format_basis([], R) == "ring 7 grevlex x y\n"


def test_format_sorts_and_normalizes():
    R = Ring(7, 2, "grevlex", ["x", "y"])
    text = format_basis([poly(R, "2x^2"), poly(R, "y")], R)
    assert text.splitlines()[1:] == ["y", "x^2"]


SUITE = [
    cyclic(3), cyclic(4), cyclic(5), katsura(3), katsura(4), katsura(5),
    cyclic(3, order="lex"), katsura(3, order="lex"),
]


@pytest.mark.parametrize("desc", SUITE, ids=lambda d: f"{d.ring.names[0]}{d.ring.nvars}{d.order}")
def test_round_trip_on_suite_bases(desc):
    G = incremental_groebner(desc.generators)
    back = parse_system(format_basis(G, desc.ring))
    assert back.ring == desc.ring
    assert back.generators == G


terms7 = st.lists(
    st.tuples(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(1, 6)),
    min_size=1,
    max_size=5,
)


@given(st.lists(terms7, min_size=1, max_size=4), st.sampled_from(["grevlex", "lex"]))
def test_round_trip_property(polys, order):
    R = Ring(7, 2, order, ["x", "y"])
    G = [R.poly(t) for t in polys]
    G = [g.monic() for g in G if g.terms]
    if not G:
        return
    text = format_basis(G, R, raw=True)
    assert parse_system(text).generators == G


# ---------- benchmark systems ----------


def test_cyclic3_generators():
    desc = cyclic(3)
    R = desc.ring
    assert desc.variables == ("x1", "x2", "x3")
    assert desc.generators == [
        poly(R, "x1 + x2 + x3"),
        poly(R, "x1*x2 + x2*x3 + x3*x1"),
        poly(R, "x1*x2*x3 - 1"),
    ]


def test_katsura2_generators():
    desc = katsura(2)
    R = desc.ring
    assert desc.variables == ("u0", "u1", "u2")
    assert desc.generators == [
        poly(R, "u0^2 + 2u1^2 + 2u2^2 - u0"),
        poly(R, "2u0*u1 + 2u1*u2 - u1"),
        poly(R, "u0 + 2u1 + 2u2 - 1"),
    ]


@pytest.mark.parametrize("family", ["cyclic", "katsura"])
def test_small_n_rejected(family):
    with pytest.raises(ValueError):
        gen_benchmark(family, 1)


# ---------- command line ----------


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_cli_bench_verify(capsys):
    assert main(["gb", "--bench", "cyclic:3", "--verify"]) == 0
    out = capsys.readouterr().out
    assert out == format_basis(incremental_groebner(cyclic(3).generators), cyclic(3).ring)


def test_cli_missing_file(capsys):
    assert main(["gb", "missing.txt"]) == 1
    assert "missing.txt" in capsys.readouterr().err


def test_cli_usage_errors():
    assert main([]) == 1
    assert main(["gb", "--bench", "cyclic:x"]) == 1
    assert main(["gb", "--bench", "cyclic:1"]) == 1
    assert main(["gb", "--bench", "cyclic:3:4"]) == 1
    assert main(["gb", "--algorithm", "f5", "--bench", "cyclic:3"]) == 1


@pytest.mark.parametrize(
    "text, where",
    [
        ("ring 7 grevlex x y\nx + z\n", ":2:5:"),
        ("ring 7 grevlex x y\nx^y\n", ":2:3:"),
        ("", ":1:1:"),
    ],
)
def test_cli_parse_errors(tmp_path, capsys, text, where):
    path = _write(tmp_path, "bad.txt", text)
    assert main(["gb", path]) == 1
    assert path + where in capsys.readouterr().err


def test_cli_verify_command(tmp_path, capsys):
    system = _write(tmp_path, "sys.txt", "ring 32003 grevlex x y\nx^2 - y\nx*y - 1\n")
    wrong = _write(tmp_path, "wrong.txt", "ring 32003 grevlex x y\nx^2 - y\nx*y - 1\n")
    good = _write(tmp_path, "good.txt", "ring 32003 grevlex x y\ny^2 - x\nx*y - 1\nx^2 - y\n")
    assert main(["verify", system, wrong]) == 2
    assert "gb_check: FAILED" in capsys.readouterr().out
    assert main(["verify", system, good]) == 0
    assert capsys.readouterr().out == "gb_check: ok\nideal_equality: ok\n"
    other = _write(tmp_path, "other.txt", "ring 32003 grevlex x y\nx\ny\n")
    assert main(["verify", system, other]) == 2
    assert "ideal_equality: FAILED" in capsys.readouterr().out


def test_cli_stats_json(tmp_path, capsys):
    path = tmp_path / "stats.json"
    assert main(["gb", "--bench", "katsura:3", "--stats", str(path)]) == 0
    data = json.loads(path.read_text())
    assert list(data) == RunStats.keys()
    assert all(isinstance(v, (int, float)) for v in data.values())
    assert 0 <= data["pairs_pruned"] <= data["pairs_generated"]


@pytest.mark.parametrize("bench", ["cyclic:3", "cyclic:4", "katsura:3", "katsura:4"])
def test_cli_algorithms_agree(capsys, bench):
    main(["gb", "--bench", bench])
    ssg = capsys.readouterr().out
    main(["gb", "--bench", bench, "--algorithm", "buchberger"])
    assert capsys.readouterr().out == ssg


def test_cli_raw_contains_seeds(capsys):
    from ssgb.engine import interreduce

    desc = katsura(3)
    F = desc.generators
    previous = interreduce(incremental_groebner(F[:-1]))
    assert main(["gb", "--bench", "katsura:3", "--raw"]) == 0
    lines = capsys.readouterr().out.splitlines()[1:]
    for g in previous:
        assert format_basis([g], desc.ring, raw=True).splitlines()[1] in lines
    assert "0" in lines


def test_cli_random_bench_needs_no_file(capsys):
    assert main(["gb", "--bench", "random:3:7", "--seed", "4", "--verify"]) == 0
    assert capsys.readouterr().out.startswith("ring 7 grevlex")


def test_cli_lex_bench(capsys):
    assert main(["gb", "--bench", "cyclic:3", "--order", "lex", "--verify"]) == 0
    assert capsys.readouterr().out.startswith("ring 32003 lex")


def test_cli_invariant_and_certify_flags(capsys):
    assert main(["gb", "--bench", "cyclic:4", "--certify", "--check-invariants"]) == 0
    assert "certify: ok" in capsys.readouterr().err
