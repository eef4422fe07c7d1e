import random

import pytest

from grunits.cli import main, parse_permutation, parse_wire
from grunits.demo import H16, H16_INV, R1, X1
from grunits.errors import FormatError
from grunits.textio import read_key, read_message


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return lambda *argv: main([str(a) for a in argv])


def text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def put(path, body):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)


def ints(s):
    return " ".join(map(str, s))


def test_bass_keygen_file(run):
    assert run("keygen", "--group", "cyclic 5", "--kind", "bass", "--i", 2, "--out", "b") == 0
    assert text("b.pub").splitlines()[-1] == "coeffs -2 1 3 1 -2"
    assert "factors 1" in text("b.key")


def test_power_one_is_the_base_key(run):
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 3, "--out", "a")
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 3, "--power", 1, "--out", "b")
    assert text("a.pub") == text("b.pub") and text("a.key") == text("b.key")


def test_product_pub_hides_constituents(run):
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 3, "--out", "k1")
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 5, "--out", "k2")
    assert run("keygen", "--kind", "product", "--from", "k1.key,k2.key", "--out", "p") == 0
    pub = text("p.pub")
    assert "factors" not in pub and pub.count("coeffs") == 1
    for k in ("k1", "k2"):
        assert text(f"{k}.pub").splitlines()[-1] not in pub
    assert "factors 2" in text("p.key")


def test_example_1_through_files(run):
    run("keygen", "--group", "cyclic 16", "--kind", "trial", "--coeffs=" + ",".join(map(str, H16)), "--out", "h")
    assert read_key(text("h.key")).private.factors[0].coeffs == H16_INV
    put("r.txt", ints(R1))
    assert run("encrypt", "--key", "h.pub", "--in", "r.txt", "--base", "raw", "--out", "c.grm") == 0
    el, layers = read_message(text("c.grm"))
    assert el.coeffs == X1 and "digits:16" in layers
    assert run("decrypt", "--key", "h.key", "--in", "c.grm", "--base", "raw", "--out", "back.txt") == 0
    assert text("back.txt").split() == [str(c) for c in R1]


def test_empty_message_round_trip(run):
    run("keygen", "--group", "cyclic 8", "--kind", "bass", "--i", 3, "--out", "k")
    put("empty.txt", "")
    assert run("encrypt", "--key", "k.pub", "--in", "empty.txt", "--out", "c.grm") == 0
    assert read_message(text("c.grm"))[0].is_zero
    assert run("decrypt", "--key", "k.key", "--in", "c.grm", "--out", "back.txt") == 0
    assert text("back.txt") == ""


@pytest.mark.parametrize("extra", [[], ["--power", 3], ["--disguise", 40], ["--side", "left"]])
def test_random_file_round_trips(run, extra):
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 3, "--seed", 9, *extra, "--out", "k")
    rng = random.Random(len(extra))
    for t in range(25):
        m = rng.randrange(10 ** rng.randrange(1, 16))
        put("m.txt", f"{m}\n")
        assert run("encrypt", "--key", "k.pub", "--in", "m.txt", "--out", "c.grm") == 0
        assert run("decrypt", "--key", "k.key", "--in", "c.grm", "--out", "d.txt") == 0
        assert int(text("d.txt")) == m


def test_leading_and_trailing_zero_digits_survive(run):
    run("keygen", "--group", "cyclic 8", "--kind", "bass", "--i", 3, "--out", "k")
    put("m.txt", "1000000\n")
    run("encrypt", "--key", "k.pub", "--in", "m.txt", "--out", "c.grm")
    run("decrypt", "--key", "k.key", "--in", "c.grm", "--out", "d.txt")
    assert text("d.txt") == "1000000\n"


def test_outputs_are_deterministic(run):
    for out in ("a", "b"):
        run("keygen", "--group", "cyclic 12", "--ring", "Zmod 97", "--kind", "random",
            "--seed", 4, "--disguise", 30, "--out", out)
    assert text("a.pub") == text("b.pub") and text("a.key") == text("b.key")


def test_sparse_permutation_keys(run):
    assert run("keygen", "--group", "sym 4", "--kind", "bicyclic", "--a", "(0 1)", "--b", "(0 1 2)",
               "--out", "s") == 0
    put("m.txt", "4321\n")
    run("encrypt", "--key", "s.pub", "--in", "m.txt", "--out", "c.grm")
    run("decrypt", "--key", "s.key", "--in", "c.grm", "--out", "d.txt")
    assert text("d.txt") == "4321\n"


def test_sign_and_verify(run):
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 3, "--out", "k")
    put("m.txt", "271828\n")
    put("other.txt", "271829\n")
    assert run("sign", "--key", "k.key", "--in", "m.txt", "--out", "s.grm") == 0
    assert run("verify", "--key", "k.pub", "--sig", "s.grm", "--in", "m.txt") == 0
    assert run("verify", "--key", "k.pub", "--sig", "s.grm", "--in", "other.txt") == 3


def test_hybrid_flow(run):
    run("keygen", "--group", "cyclic 11", "--kind", "bass", "--i", 2, "--out", "u")
    assert run("rsa-keygen", "--p", 7459, "--q", 10459, "--e", 5, "--unit", "u.key", "--out", "hy") == 0
    put("m.txt", "1231\n")
    for order in ("rsa-then-unit", "unit-then-rsa", "both"):
        assert run("hybrid-encrypt", "--key", "hy.pub", "--in", "m.txt", "--order", order, "--out", "c.grm") == 0
        assert run("hybrid-decrypt", "--key", "hy.key", "--in", "c.grm", "--out", "d.txt") == 0
        assert text("d.txt") == "1231\n"
    assert run("hybrid-decrypt", "--key", "hy.pub", "--in", "c.grm") == 2


def test_code_wrap_and_unwrap(run):
    put("w.grm", "GRMSG v1\ngroup cyclic 4\nring Zmod 16\ncoeffs 11 14 5 7\n")
    assert run("code-wrap", "--in", "w.grm", "--out", "w.code") == 0
    words = text("w.code").split()
    noisy = words[:2] + [str(int(w) ^ (1 << i)) for i, w in enumerate(words[2:])]
    put("noisy.code", " ".join(noisy))
    assert run("code-unwrap", "--in", "noisy.code", "--group", "cyclic 4", "--ring", "Zmod 16",
               "--out", "back.grm") == 0
    assert read_message(text("back.grm"))[0].coeffs == [11, 14, 5, 7]

    put("b.grm", "GRMSG v1\ngroup cyclic 11\nring Zmod 2\ncoeffs 1 1 1 0 1 0 1 1 0 0 1\n")
    assert run("code-wrap", "--in", "b.grm", "--r", 4, "--mode", "bits", "--out", "b.code") == 0
    bits = text("b.code").split()[1]
    put("bn.code", "bits " + str(1 - int(bits[0])) + bits[1:])
    assert run("code-unwrap", "--in", "bn.code", "--r", 4, "--group", "cyclic 11", "--ring", "Zmod 2",
               "--out", "bb.grm") == 0
    assert read_message(text("bb.grm"))[0].coeffs == [1, 1, 1, 0, 1, 0, 1, 1, 0, 0, 1]


def test_attack_commands(run, capsys):
    run("keygen", "--group", "cyclic 16", "--kind", "trial", "--coeffs=" + ",".join(map(str, H16)), "--out", "h")
    assert run("attack", "--pub", "h.pub", "--out", "inv.grm") == 0
    assert read_message(text("inv.grm"))[0].coeffs == H16_INV
    put("one.pub", "GRKEY v1\ngroup cyclic 8\nring Z\nside right\ncoeffs 1 0 0 0 0 0 0 0\n")
    assert run("attack", "--pub", "one.pub") == 0
    put("bad.pub", "GRKEY v1\ngroup cyclic 2\nring Z\nside right\ncoeffs 1 1\n")
    assert run("attack", "--pub", "bad.pub") == 4
    assert run("attack-bench", "--sizes", "16,32", "--trials", 3, "--out", "bench.csv") == 0
    lines = text("bench.csv").splitlines()
    assert lines[0] == "n,ring,trials,success_rate,median_ms"
    assert [l.split(",")[:4] for l in lines[1:]] == [["16", "Zmod 97", "3", "1.000"], ["32", "Zmod 97", "3", "1.000"]]


def test_demo_command(run, capsys):
    assert run("demo", 1, 2, 4) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "15134643" in out and "SKIP" in out
    assert run("demo", 9) == 2


@pytest.mark.parametrize("argv, code", [
    (["keygen", "--group", "cyclic 4", "--kind", "trial", "--coeffs", "1,1,0,0", "--out", "x"], 2),
    (["keygen", "--group", "cyclic 6", "--kind", "bass", "--i", 2, "--out", "x"], 2),
    (["keygen", "--group", "cyclic 6", "--kind", "bicyclic", "--a", "(0 1)", "--b", "(1 2)", "--out", "x"], 2),
    (["keygen", "--group", "cyclic 6", "--side", "two-sided", "--i", 5, "--out", "x"], 2),
    (["encrypt", "--key", "missing.pub", "--in", "m.txt"], 2),
])
def test_invalid_input_exit_codes(run, argv, code):
    assert run(*argv) == code


def test_wrong_key_is_a_mismatch(run):
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 3, "--out", "a")
    run("keygen", "--group", "cyclic 16", "--kind", "bass", "--i", 5, "--out", "b")
    put("m.txt", "12345\n")
    run("encrypt", "--key", "a.pub", "--in", "m.txt", "--out", "c.grm")
    assert run("decrypt", "--key", "b.key", "--in", "c.grm") == 3
    run("keygen", "--group", "cyclic 8", "--kind", "bass", "--i", 3, "--out", "small")
    assert run("decrypt", "--key", "small.key", "--in", "c.grm") in (2, 3)


def test_parsers():
    assert parse_permutation("(0 1)(2 3 4)", 5) == parse_permutation("p:1,0,3,4,2", 5)
    with pytest.raises(FormatError):
        parse_permutation("0 1", 3)
    assert parse_wire("bits 0101").bits == (0, 1, 0, 1)
    with pytest.raises(FormatError):
        parse_wire("bits 012")
