"""
End-to-end tests of the command-line interface against the golden files.
"""

import json
from pathlib import Path

import pytest

from reeskit.cli import main
from reeskit.constants import CAP_ENV_VAR, CONJECTURE_LABEL

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def expected(name):
    return json.loads((GOLDEN / name).read_text(encoding="utf-8"))


def assert_subset(data, reference):
    for key, value in reference.items():
        assert data[key] == value, f"{key}: {data[key]!r} != {value!r}"


class TestGoldenOutputs:
    """Reference inputs reproduce their recorded outputs."""

    def test_monomial_package(self, capsys):
        """Cone valuations, facets and lattice normals of the semigroup example."""
        code, out, _ = run(capsys, "package", "--input", str(GOLDEN / "mon_example.json"))
        assert code == 0
        assert_subset(json.loads(out), expected("mon_example.package.expected.json"))

    def test_determinantal_package(self, capsys):
        """X1=2 and X1+X2=3 for I_2 + I_1^3."""
        code, out, _ = run(capsys, "package", "--input", str(GOLDEN / "det_example.json"))
        assert code == 0
        assert_subset(json.loads(out), expected("det_example.package.expected.json"))

    def test_rational_power_generators(self, capsys):
        """Generators (5,5) and (6,3) at w = 3/2."""
        code, out, _ = run(
            capsys, "ratpow", "--input", str(GOLDEN / "mon_example.json"), "--w", "3/2"
        )
        assert code == 0
        assert_subset(json.loads(out), expected("mon_example.ratpow.expected.json"))

    def test_join(self, capsys):
        """Star products of (x^4) with the determinantal package."""
        code, out, _ = run(capsys, "join", "--input", str(GOLDEN / "join_example.json"))
        assert code == 0
        assert_subset(json.loads(out), expected("join_example.expected.json"))

    def test_sum_check(self, capsys):
        """Four alpha terms and an EQUAL verdict at w = 3/2."""
        code, out, _ = run(
            capsys, "sum-check", "--input", str(GOLDEN / "cool_example.json"), "--w", "3/2"
        )
        assert code == 0
        assert_subset(json.loads(out), expected("cool_example.sumcheck.expected.json"))

    def test_counterexample(self, capsys):
        """Witness (6,6) for n = 1."""
        code, out, _ = run(capsys, "counterexample", "--n", "1")
        assert code == 0
        assert_subset(json.loads(out), expected("counterexample_n1.expected.json"))

    def test_star(self, capsys):
        """(X=4) star (X1+X2=3)."""
        code, out, _ = run(capsys, "star", "--input", str(GOLDEN / "star_example.json"))
        assert code == 0
        assert_subset(json.loads(out), expected("star_example.expected.json"))


class TestCommands:
    """Commands without recorded goldens."""

    def test_membership(self, capsys):
        """x^(6,3) is in the closure of I^(3/2)."""
        code, out, _ = run(
            capsys, "ratpow", "--input", str(GOLDEN / "mon_example.json"),
            "--w", "3/2", "--point", "6,3",
        )
        assert code == 0
        data = json.loads(out)
        assert data["member"] is True
        assert "generators" not in data

    def test_diagram_symbolic_exponents(self, capsys):
        """Determinantal ideal at w = 1."""
        code, out, _ = run(capsys, "ratpow", "--input", str(GOLDEN / "det_example.json"), "--w", "1")
        assert code == 0
        data = json.loads(out)
        assert data["symbolic_exponents"] == [[2, 1], [3, 0]]
        assert data["denominator_bound"] == 6

    def test_diagram_shape(self, capsys):
        """Shape (2) misses w = 3/2."""
        code, out, _ = run(
            capsys, "ratpow", "--input", str(GOLDEN / "det_example.json"),
            "--w", "3/2", "--point", "2",
        )
        assert code == 0
        assert json.loads(out)["member"] is False

    def test_sandwich(self, capsys):
        """(x^2), (y^3) at w = 4, tau = 2."""
        code, out, _ = run(
            capsys, "sandwich", "--input", str(GOLDEN / "principal_pair.json"),
            "--w", "4", "--tau", "2", "--search",
        )
        assert code == 0
        data = json.loads(out)
        assert data["left_holds"] and data["right_holds"] and data["weaker_form_holds"]
        assert data["w0"] == "0"

    def test_resurgence(self, capsys):
        """I_2 of a generic 3x3 matrix."""
        code, out, _ = run(capsys, "resurgence", "--m", "3", "--t", "2")
        assert code == 0
        assert json.loads(out)["resurgence"] == "4/3"

    def test_random_batch(self, capsys):
        """Seeded random pairs all satisfy the formula."""
        code, out, _ = run(capsys, "sum-check", "--random", "3", "--seed", "0", "--w", "1")
        assert code == 0
        data = json.loads(out)
        assert data["failed"] == 0
        assert data["label"] == CONJECTURE_LABEL


class TestOracle:
    """--oracle cross-checks attach an agreeing verdict."""

    def test_package(self, capsys):
        """Fourier-Motzkin facets match the package facets."""
        code, out, _ = run(capsys, "package", "--input", str(GOLDEN / "mon_example.json"), "--oracle")
        assert code == 0
        assert json.loads(out)["oracle"]["agrees"] is True

    def test_join(self, capsys):
        """Fourier-Motzkin facets of the join match Omega."""
        code, out, _ = run(capsys, "join", "--input", str(GOLDEN / "join_example.json"), "--oracle")
        assert code == 0
        assert json.loads(out)["oracle"]["agrees"] is True

    def test_polynomial_membership(self, capsys, tmp_path):
        """Brute force joins the LP check for integral w."""
        path = tmp_path / "newton.json"
        path.write_text(json.dumps(
            {"semigroup": "orthant", "rank": 2, "ideal": {"exponents": [[1, 3], [3, 1]]}}
        ))
        code, out, _ = run(
            capsys, "ratpow", "--input", str(path), "--w", "3", "--point", "6,6", "--oracle"
        )
        assert code == 0
        data = json.loads(out)
        assert data["member"] is True
        assert "brute force: True" in data["oracle"]["detail"]

    def test_sum_check(self, capsys):
        """Both generator sets of the mixed pair lie in w*Omega."""
        code, out, _ = run(
            capsys, "sum-check", "--input", str(GOLDEN / "cool_example.json"), "--w", "3/2", "--oracle"
        )
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] == "EQUAL"
        assert data["oracle"]["agrees"] is True
        assert "Fourier-Motzkin" in data["oracle"]["detail"]

    def test_sum_check_polynomial(self, capsys):
        """Integral w on polynomial rings adds the brute-force closure check."""
        code, out, _ = run(
            capsys, "sum-check", "--input", str(GOLDEN / "principal_pair.json"), "--w", "2", "--oracle"
        )
        assert code == 0
        assert "brute force" in json.loads(out)["oracle"]["detail"]

    def test_random_batch(self, capsys):
        """Each pair of the batch is cross-checked."""
        code, out, _ = run(
            capsys, "sum-check", "--random", "3", "--seed", "0", "--w", "1", "--oracle"
        )
        assert code == 0
        data = json.loads(out)
        assert data["failed"] == 0
        assert data["oracle"]["agrees"] is True

    def test_counterexample(self, capsys):
        """Brute force confirms (6,6) is in the closure for n = 1."""
        code, out, _ = run(capsys, "counterexample", "--n", "1", "--oracle")
        assert code == 0
        oracle = json.loads(out)["oracle"]
        assert oracle["agrees"] is True
        assert oracle["detail"] == "brute-force closure membership: True"

    def test_sandwich(self, capsys):
        """Right inclusion re-decided on Fourier-Motzkin facets."""
        code, out, _ = run(
            capsys, "sandwich", "--input", str(GOLDEN / "principal_pair.json"),
            "--w", "4", "--tau", "2", "--oracle",
        )
        assert code == 0
        oracle = json.loads(out)["oracle"]
        assert oracle["agrees"] is True
        assert "right inclusion: True" in oracle["detail"]

    def test_resurgence(self, capsys):
        """X1=2 and X2=1 for I_2 of a generic 3x3 matrix."""
        code, out, _ = run(capsys, "resurgence", "--m", "3", "--t", "2", "--oracle")
        assert code == 0
        assert json.loads(out)["oracle"]["agrees"] is True

    def test_star(self, capsys):
        """The join of the two single-facet polyhedra has the star product as its only facet."""
        code, out, _ = run(capsys, "star", "--input", str(GOLDEN / "star_example.json"), "--oracle")
        assert code == 0
        assert json.loads(out)["oracle"]["agrees"] is True

    def test_without_flag(self, capsys):
        """No oracle key unless requested."""
        code, out, _ = run(capsys, "star", "--input", str(GOLDEN / "star_example.json"))
        assert code == 0
        assert "oracle" not in json.loads(out)


class TestFormats:
    """text and latex renderings."""

    def test_text(self, capsys):
        """Indented yes/no report."""
        code, out, _ = run(capsys, "counterexample", "--n", "1", "--format", "text")
        assert code == 0
        assert "in closure: yes" in out
        assert "in sum: no" in out
        assert "point: (6,6)" in out

    def test_latex(self, capsys):
        """Facets as an align* block."""
        code, out, _ = run(
            capsys, "package", "--input", str(GOLDEN / "det_example.json"), "--format", "latex"
        )
        assert code == 0
        assert "\\begin{align*}" in out
        assert "\\gamma_{1}+\\gamma_{2} &= 3" in out


class TestExitCodes:
    """Input errors exit 2, cap overruns 3."""

    def test_malformed_json(self, capsys):
        """Line and column of the JSON error are reported."""
        code, out, err = run(capsys, "package", "--input", str(GOLDEN / "malformed.json"))
        assert code == 2
        assert out == ""
        assert "line 4" in err
        assert "column" in err

    def test_missing_input(self, capsys):
        """Commands with inputs need --input."""
        code, _, err = run(capsys, "package")
        assert code == 2
        assert "--input" in err

    def test_invalid_family(self, capsys, tmp_path):
        """Generic families need m <= n."""
        path = tmp_path / "bad_family.json"
        path.write_text(json.dumps({"family": {"kind": "generic", "m": 3, "n": 2}, "lambda": [[1]]}))
        code, _, err = run(capsys, "package", "--input", str(path))
        assert code == 2
        assert "m <= n" in err

    def test_bad_rational(self, capsys):
        """Decimal exponents are rejected by argparse."""
        with pytest.raises(SystemExit) as excinfo:
            main(["ratpow", "--input", str(GOLDEN / "mon_example.json"), "--w", "1.5"])
        assert excinfo.value.code == 2

    def test_cap_flag(self, capsys):
        """--cap stops the generator box."""
        code, _, err = run(
            capsys, "ratpow", "--input", str(GOLDEN / "mon_example.json"), "--w", "3/2", "--cap", "5"
        )
        assert code == 3
        assert "cap 5" in err

    def test_cap_environment(self, capsys, monkeypatch):
        """REESKIT_CAP applies when --cap is absent."""
        monkeypatch.setenv(CAP_ENV_VAR, "5")
        code, _, _ = run(capsys, "ratpow", "--input", str(GOLDEN / "mon_example.json"), "--w", "3/2")
        assert code == 3

    def test_cap_environment_invalid(self, capsys, monkeypatch):
        """A non-integer REESKIT_CAP is an input error."""
        monkeypatch.setenv(CAP_ENV_VAR, "lots")
        code, _, err = run(capsys, "counterexample", "--n", "1")
        assert code == 2
        assert CAP_ENV_VAR in err


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
