"""Smoke test for the tiedbraid extension module.

Build with `cargo build -p tiedbraid-py`, then copy or symlink
target/debug/libtiedbraid_py.so to tiedbraid.so somewhere on sys.path
(this script also looks in target/{debug,release} next to the repo root).
"""

import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        import tiedbraid  # noqa: F401
    except ImportError:
        for profile in ("release", "debug"):
            lib = os.path.join(ROOT, "target", profile, "libtiedbraid_py.so")
            if os.path.exists(lib):
                tmp = tempfile.mkdtemp()
                shutil.copy(lib, os.path.join(tmp, "tiedbraid.so"))
                sys.path.insert(0, tmp)
                break
    import tiedbraid

    return tiedbraid


def main():
    tb = load()

    s3 = tb.Context(0, 3, "s3")
    a = tb.Word("s1 s2 s1", s3)
    b = tb.Word("s2 s1 s2", s3)
    assert a.verdict(b) == "EQUAL"
    assert a.equals(b) is True
    assert tb.Word("s1 s1", s3).verdict(tb.Word("s2 s2", s3)).startswith("DIFFER")

    w = tb.Word("t1 s1 s2", s3)
    assert w.render() == "t1 s1 s2"
    braid, ties = w.normal_form()
    assert str(braid) == "s1 s2" and ties == [["M1", "M3"]]
    assert w.normalized().equals(w)

    two = tb.Context.parse("%ctx g=0 n=2 M=s3")
    assert tb.Word("t1", two).closure().startswith("components=2 tieClasses=1")

    lens = tb.Context(1, 1, "lens", 2)
    moved = tb.Word("a1", lens).t_bbm(1)
    assert moved.ctx.n == 2
    assert moved.render() == "s1 s1 a1 s1 a1 S1 s1 a1 S1 s1"

    hb = tb.Context(2, 2, "hb")
    try:
        tb.Word("a1", hb).loop_conjugate(1, 1)
    except ValueError as e:
        assert "not allowed" in str(e)
    else:
        raise AssertionError("loop conjugation must be rejected in a handlebody")

    ctx, words = tb.parse_file("%ctx g=1 n=2 M=st\n# two words\np1 s1\ns1 a1\n")
    assert ctx.flavor == "st" and len(words) == 2
    assert words[0].add_fixed_tie(1, 2).render() == "p(1,2) p1 s1"

    assert "tie.idem" in tb.relations(tb.Context(2, 4, "hb"))
    code, out, _ = tb.run_cli(["check", "--ctx", "g=2 n=4 M=hb"])
    assert code == 0 and "failures=0" in out

    print("smoke test ok")


if __name__ == "__main__":
    main()
