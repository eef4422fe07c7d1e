import pytest

from grunits.demo import EXAMPLES, run_demo


@pytest.mark.parametrize("k", sorted(EXAMPLES))
def test_example_reproduces(k):
    lines = []
    assert run_demo([k], out=lines.append)
    assert lines and not any(l.startswith("FAIL") for l in lines)
    assert all(l.split()[:3][1:] == ["example", f"{k}:"] for l in lines)


def test_only_the_codeword_integers_are_skipped():
    lines = []
    run_demo(out=lines.append)
    skipped = [l for l in lines if l.startswith("SKIP")]
    assert len(skipped) == 1 and "example 4: codeword integers" in skipped[0]
