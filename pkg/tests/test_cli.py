import pytest

from modvec.cli import main
from modvec.bench import CSV_HEADER


def test_gen_auto(tmp_path, capsys):
    out = tmp_path / "k.c"
    assert main(["gen", "--prime", "2013265921", "--l", "31", "-o", str(out)]) == 0
    text = capsys.readouterr().out
    assert "strategy: float-shuffle-cast" in text and "P = 2013265921" in text
    assert "_mm_shuffle_ps" in out.read_text()


def test_gen_explicit_and_scalar(tmp_path, capsys):
    out = tmp_path / "k.c"
    assert main(["gen", "--isa", "avx2x32m", "--prime", "97", "--strategy", "blend", "-o", str(out)]) == 0
    assert "_mm_blend_epi32" in out.read_text()
    assert "strategy: blend" in capsys.readouterr().out
    assert main(["gen", "--prime", "97", "--scalar", "-o", str(out), "--quiet"]) == 0
    assert "__m128i" not in out.read_text()
    assert capsys.readouterr().out == ""


def test_gen_blend_on_sse_fails(tmp_path, capsys):
    rc = main(["gen", "--isa", "sse4x32m", "--prime", "97", "--strategy", "blend", "-o", str(tmp_path / "k.c")])
    assert rc != 0
    assert "blend" in capsys.readouterr().err
    assert not (tmp_path / "k.c").exists()


def test_gen_bad_inputs(tmp_path):
    assert main(["gen", "--prime", "91", "-o", str(tmp_path / "k.c")]) == 2
    assert main(["gen", "--isa", str(tmp_path / "nope.json"), "--prime", "97", "-o", str(tmp_path / "k.c")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--prime", "97", "--strategy", "scatter", "-o", "x.c"])
    assert exc.value.code == 2


def test_verify_exhaustive(capsys):
    assert main(["verify", "--prime", "17", "--l", "5", "--mode", "exhaustive"]) == 0
    out = capsys.readouterr().out
    assert "verdict: PASS" in out and "289 checked" in out


def test_verify_random_csv(tmp_path):
    csv = tmp_path / "v.csv"
    assert main(["--seed", "9", "verify", "--prime", "1000003", "--samples", "2000", "--csv", str(csv), "--quiet"]) == 0
    rows = csv.read_text().splitlines()
    assert rows[0] == "prime,l,algorithm,checked,mismatches,verdict"
    assert all(r.endswith(",pass") for r in rows[1:])
    assert not any("fourier" in r for r in rows)


def test_verify_exhaustive_too_large():
    assert main(["verify", "--prime", "2013265921", "--mode", "exhaustive"]) == 2


def test_primes(capsys):
    assert main(["primes", "--bits", "7", "7"]) == 0
    out = capsys.readouterr().out
    assert "97" in out and "113" in out
    assert main(["primes", "--bits", "31", "31", "--count", "2", "--csv", "-"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["P,c,n,l", "2013265921,15,27,31", "1811939329,27,26,31"]
    assert main(["primes", "--bits", "9", "3"]) == 2


def test_bench_csv(tmp_path):
    csv = tmp_path / "b.csv"
    rc = main(["bench", "--prime", "97", "--batch", "64", "--reps", "2", "--backend", "numpy", "--csv", str(csv), "--quiet"])
    assert rc == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert any(",vector4,blend," in ln for ln in lines)
    assert any(ln.startswith("# ratio,vector4/montgomery") for ln in lines)


def test_bench_errors():
    assert main(["bench", "--prime", "97", "--reps", "0"]) == 2
    assert main(["bench", "--prime", "97", "--algorithms", "karatsuba"]) == 2
    assert main(["bench", "--prime", "97", "--batch", "3"]) == 2


def test_gen_matches_golden(tmp_path):
    from golden import GOLDEN_DIR

    out = tmp_path / "k.c"
    argv = ["gen", "--isa", "sse4x32m", "--prime", "2013265921", "--l", "31", "--strategy", "shuffle-unpack", "-o", str(out)]
    assert main(argv) == 0
    assert out.read_text() == (GOLDEN_DIR / "montmul_sse4x32m_shuffle_unpack.c").read_text()


def test_global_flags_either_side(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    common = ["--prime", "97", "--batch", "128", "--reps", "1", "--backend", "numpy"]
    assert main(["--seed", "5", "--csv", str(a), "--quiet", "bench", *common]) == 0
    assert main(["bench", *common, "--seed", "5", "--csv", str(b), "--quiet"]) == 0

    def ops(path):
        return [ln.split(",")[:4] for ln in path.read_text().splitlines() if not ln.startswith("#")]

    assert ops(a) == ops(b)
