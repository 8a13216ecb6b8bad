import csv
import io

import pytest
from click.testing import CliRunner

from dposet_lib import canonical_cert, formats, wagner_complete, young_lattice
from dposet_cli.main import cli

CHAIN_3 = "dpo 1 r=1 ranks=2\nrank 0 1\n0:\nrank 1 1\n0: 0\nrank 2 1\n0: 0\n"


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click 8.2 always keeps stderr apart
        return CliRunner()


def rows(result):
    return list(csv.DictReader(io.StringIO(result.stdout)))


@pytest.fixture
def y6_file(tmp_path, runner):
    path = tmp_path / "y6.dpo"
    result = runner.invoke(cli, ["build", "young", "--ranks", "6", "-o", str(path)])
    assert result.exit_code == 0
    return path


class TestBuild:
    def test_young_file(self, y6_file):
        assert formats.read_poset(y6_file) == young_lattice(6)

    def test_young_stdout(self, runner):
        result = runner.invoke(cli, ["build", "young", "--ranks", "2"])
        assert result.exit_code == 0
        assert result.stdout == "dpo 1 r=1 ranks=2\nrank 0 1\n0:\nrank 1 1\n0: 0\nrank 2 2\n0: 0\n1: 0\n"

    def test_canonical_round_trip(self, runner, tmp_path):
        first = tmp_path / "z.dpo"
        second = tmp_path / "z2.dpo"
        assert runner.invoke(cli, ["build", "fibonacci", "--r", "2", "--ranks", "4", "--canonical", "-o", str(first)]).exit_code == 0
        result = runner.invoke(cli, ["extend", str(first), "--steps", "0", "--canonical", "-o", str(second)])
        assert result.exit_code == 0
        assert first.read_bytes() == second.read_bytes()

    def test_product(self, runner, tmp_path, y6_file):
        out = tmp_path / "y2.dpo"
        result = runner.invoke(cli, ["build", "product", str(y6_file), str(y6_file), "--ranks", "3", "-o", str(out)])
        assert result.exit_code == 0
        assert formats.read_poset(out).levels == (1, 2, 5, 10)

    def test_linspace_completion(self, runner, tmp_path):
        assert runner.invoke(cli, ["enum-linspaces", "--r", "4", "-o", str(tmp_path)]).exit_code == 0
        spaces = sorted(tmp_path.glob("linspace-r4-*.hg"))
        assert len(spaces) == 3
        (hg,) = [path for path in spaces if len(formats.read_hypergraph(path).edges) == 6]
        out = tmp_path / "p.dpo"
        result = runner.invoke(cli, ["build", "linspace", str(hg), "--ranks", "4", "-o", str(out)])
        assert result.exit_code == 0
        assert formats.read_poset(out).levels == (1, 4, 14, 60, 254)

    def test_missing_ranks(self, runner):
        result = runner.invoke(cli, ["build", "young"])
        assert result.exit_code == 2

    def test_wrong_input_count(self, runner, y6_file):
        result = runner.invoke(cli, ["build", "product", str(y6_file), "--ranks", "3"])
        assert result.exit_code == 2


class TestValidate:
    def test_young_passes(self, runner, y6_file):
        result = runner.invoke(cli, ["validate", str(y6_file)])
        assert result.exit_code == 0
        assert rows(result) == []

    def test_chain_fails(self, runner, tmp_path):
        path = tmp_path / "chain.dpo"
        path.write_text(CHAIN_3)
        result = runner.invoke(cli, ["validate", str(path)])
        assert result.exit_code == 1
        violations = rows(result)
        assert violations
        assert {v["axiom"] for v in violations} <= {"i", "ii"}

    def test_wrong_r_fails(self, runner, y6_file):
        assert runner.invoke(cli, ["validate", str(y6_file), "--r", "2"]).exit_code == 1

    def test_malformed_file(self, runner, tmp_path):
        path = tmp_path / "bad.dpo"
        path.write_text("dpo 2 r=1 ranks=0\n")
        assert runner.invoke(cli, ["validate", str(path)]).exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        assert runner.invoke(cli, ["validate", str(tmp_path / "nope.dpo")]).exit_code == 2


class TestExtend:
    def test_young(self, runner, y6_file, tmp_path):
        out = tmp_path / "y8.dpo"
        result = runner.invoke(cli, ["extend", str(y6_file), "--steps", "2", "-o", str(out)])
        assert result.exit_code == 0
        extended = formats.read_poset(out)
        # Wagner adds r p_n + p_{n-1} elements, so Y6 continues as 18, 29 and leaves Y
        assert extended.levels == (1, 1, 2, 3, 5, 7, 11, 18, 29)
        assert canonical_cert(extended) == canonical_cert(wagner_complete(young_lattice(6), 1, 8))

    def test_refuses_non_differential(self, runner, tmp_path):
        path = tmp_path / "chain.dpo"
        path.write_text(CHAIN_3)
        assert runner.invoke(cli, ["extend", str(path)]).exit_code == 2


class TestLinearSpaces:
    def test_spectrum_r6(self, runner):
        result = runner.invoke(cli, ["enum-linspaces", "--r", "6", "--spectrum"])
        assert result.exit_code == 0
        table = rows(result)
        assert len(table) == 10
        assert list(table[0]) == ["class", "dimension_sum", "edges", "p2"]
        assert min(int(row["p2"]) for row in table) == 27
        assert max(int(row["p2"]) for row in table) == 37

    def test_jobs_invariance(self, runner):
        one = runner.invoke(cli, ["enum-linspaces", "--r", "5", "--spectrum"])
        two = runner.invoke(cli, ["enum-linspaces", "--r", "5", "--spectrum", "--jobs", "2"])
        assert one.exit_code == two.exit_code == 0
        assert one.stdout == two.stdout

    def test_size_limit(self, runner):
        assert runner.invoke(cli, ["enum-linspaces", "--r", "10"]).exit_code == 2
        assert runner.invoke(cli, ["enum-linspaces", "--r", "6", "--limit", "5"]).exit_code == 2


class TestPlane:
    def test_fano(self, runner):
        result = runner.invoke(cli, ["plane", "--q", "2"])
        assert result.exit_code == 0
        assert result.stdout.startswith("hg r=7 m=7\n")

    def test_embed(self, runner, tmp_path):
        out = tmp_path / "pg3.dpo"
        result = runner.invoke(cli, ["plane", "--q", "3", "--embed", "-o", str(out)])
        assert result.exit_code == 0
        assert formats.read_poset(out).levels == (1, 13, 143)

    def test_unsupported_order(self, runner):
        assert runner.invoke(cli, ["plane", "--q", "6"]).exit_code == 2

    def test_embed_canonical(self, runner, tmp_path):
        out = tmp_path / "fano.dpo"
        result = runner.invoke(cli, ["plane", "--q", "2", "--embed", "--canonical", "-o", str(out)])
        assert result.exit_code == 0
        assert formats.read_poset(out).levels == (1, 7, 42)

    def test_canonical_needs_embed(self, runner):
        result = runner.invoke(cli, ["plane", "--q", "2", "--canonical"])
        assert result.exit_code == 2
        assert result.stdout == ""


class TestEnumPosets:
    def test_r1_counts(self, runner):
        result = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "5"])
        assert result.exit_code == 0
        assert [(int(row["rank"]), int(row["count"])) for row in rows(result)] == [
            (0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 2)
        ]

    def test_count_only(self, runner):
        result = runner.invoke(cli, ["enum-posets", "--r", "2", "--ranks", "3", "--count-only"])
        assert result.exit_code == 0
        assert len(rows(result)) == 1
        assert rows(result)[0]["rank"] == "3"

    def test_jobs_invariance(self, runner):
        one = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "6"])
        two = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "6", "--jobs", "2"])
        assert one.stdout == two.stdout

    def test_spill_dir(self, runner, tmp_path):
        plain = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "6"])
        spilled = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "6", "--spill", str(tmp_path)])
        assert spilled.exit_code == 0
        assert spilled.stdout == plain.stdout

    def test_certs_file(self, runner, tmp_path):
        certs = tmp_path / "certs.txt"
        result = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "5", "--certs", str(certs)])
        assert result.exit_code == 0
        assert len(formats.loads_certs(certs.read_text())) == 2

    def test_count_only_excludes_certs(self, runner, tmp_path):
        result = runner.invoke(
            cli, ["enum-posets", "--r", "1", "--ranks", "5", "--count-only", "--certs", str(tmp_path / "c")]
        )
        assert result.exit_code == 2

    def test_budget_exhausted(self, runner):
        result = runner.invoke(cli, ["enum-posets", "--r", "1", "--ranks", "9", "--budget-secs", "1e-9"])
        assert result.exit_code == 3
        assert len(rows(result)) < 10


class TestSearch:
    def test_impossible_prefix(self, runner):
        result = runner.invoke(cli, ["search", "--r", "4", "--target", "1,4,16", "--budget-secs", "60"])
        assert result.exit_code == 0
        (row,) = rows(result)
        assert row["status"] == "definitive-none"
        assert row["target"] == "1,4,16"

    def test_found_witness(self, runner, tmp_path):
        out = tmp_path / "w.dpo"
        result = runner.invoke(
            cli, ["search", "--r", "1", "--target", "1,1,2,3,5", "--budget-secs", "60", "-o", str(out)]
        )
        assert result.exit_code == 0
        assert rows(result)[0]["status"] == "found"
        assert formats.read_poset(out).levels[:5] == (1, 1, 2, 3, 5)

    def test_budget_exceeded(self, runner):
        result = runner.invoke(cli, ["search", "--r", "4", "--target", "1,4,17,60,254", "--budget-secs", "1e-9"])
        assert result.exit_code == 3
        assert rows(result)[0]["status"] == "budget-exceeded"

    def test_target_must_start_with_one(self, runner):
        assert runner.invoke(cli, ["search", "--r", "4", "--target", "2,4"]).exit_code == 2

    def test_bad_p1(self, runner):
        assert runner.invoke(cli, ["search", "--r", "4", "--target", "1,3"]).exit_code == 2

    def test_unparsable_target(self, runner):
        assert runner.invoke(cli, ["search", "--r", "4", "--target", "1,x"]).exit_code == 2


class TestWalks:
    def test_all_checks_pass(self, runner, y6_file):
        result = runner.invoke(cli, ["walks", str(y6_file), "--n", "3"])
        assert result.exit_code == 0
        table = rows(result)
        checks = [row for row in table if row["result"]]
        assert [row["item"] for row in checks] == ["eq2", "eq3", "lemma31", "lemma32", "egf", "esq", "bound"]
        assert all(row["result"] == "pass" for row in checks)
        stats = {row["item"]: row["value"] for row in table if not row["result"]}
        assert stats["alpha_0n"] == "4"
        assert stats["sum_e_sq"] == "6"

    def test_single_check(self, runner, y6_file):
        result = runner.invoke(cli, ["walks", str(y6_file), "--n", "1", "--check", "eq3"])
        assert result.exit_code == 0
        assert [row["item"] for row in rows(result) if row["result"]] == ["eq3"]

    def test_wrong_r_fails(self, runner, y6_file):
        result = runner.invoke(cli, ["walks", str(y6_file), "--n", "1", "--check", "eq3", "--r", "2"])
        assert result.exit_code == 1

    def test_rank_out_of_range(self, runner, y6_file):
        assert runner.invoke(cli, ["walks", str(y6_file), "--n", "7"]).exit_code == 2

    def test_unknown_check(self, runner, y6_file):
        assert runner.invoke(cli, ["walks", str(y6_file), "--n", "1", "--check", "nope"]).exit_code == 2


class TestNumerics:
    def test_partitions(self, runner):
        result = runner.invoke(cli, ["numerics", "--partitions", "100"])
        assert result.exit_code == 0
        assert rows(result)[100] == {"n": "100", "value": "190569292"}

    def test_zr(self, runner):
        result = runner.invoke(cli, ["numerics", "--zr", "4", "4"])
        assert [row["value"] for row in rows(result)] == ["1", "4", "17", "72", "305"]

    def test_yr(self, runner):
        result = runner.invoke(cli, ["numerics", "--yr", "2", "5"])
        assert [row["value"] for row in rows(result)] == ["1", "2", "5", "10", "20", "36"]

    def test_hr_ratio(self, runner):
        result = runner.invoke(cli, ["numerics", "--hr-ratio", "1000"])
        assert result.exit_code == 0
        assert rows(result)[0]["within_tolerance"] == "true"

    def test_chain_count_estimate(self, runner):
        (row,) = rows(runner.invoke(cli, ["numerics", "--lemma33", "1", "2000"]))
        assert row["within_tolerance"] == "true"

    def test_delta(self, runner, tmp_path):
        seq = tmp_path / "p.txt"
        seq.write_text("1, 1, 2, 3, 5, 7, 11\n")
        result = runner.invoke(cli, ["numerics", "--delta", "1", "--seq", str(seq)])
        assert [row["value"] for row in rows(result)] == ["1", "0", "1", "1", "2", "2", "4"]

    def test_bad_sequence(self, runner, tmp_path):
        seq = tmp_path / "p.txt"
        seq.write_text("1 2 three\n")
        assert runner.invoke(cli, ["numerics", "--delta", "1", "--seq", str(seq)]).exit_code == 2

    def test_exactly_one_action(self, runner):
        assert runner.invoke(cli, ["numerics"]).exit_code == 2
        assert runner.invoke(cli, ["numerics", "--partitions", "5", "--hr-ratio", "10"]).exit_code == 2

    def test_delta_needs_seq(self, runner):
        assert runner.invoke(cli, ["numerics", "--delta", "1"]).exit_code == 2

    def test_partition_guard(self, runner):
        assert runner.invoke(cli, ["numerics", "--partitions", "1000001"]).exit_code == 2

    def test_interval_demo_tiny_budget(self, runner):
        result = runner.invoke(cli, ["numerics", "--interval-demo", "--budget-secs", "1e-9"])
        verdicts = {row["label"]: row["verdict"] for row in rows(result)}
        assert verdicts["p'"] == "realized"
        assert verdicts["p'''"] == "impossible"
        assert result.exit_code == (0 if verdicts["p''"] == "realized" else 3)


class TestProbe:
    def test_poset(self, runner, y6_file):
        result = runner.invoke(cli, ["probe", str(y6_file)])
        assert result.exit_code == 0
        table = {row["property"]: row["value"] for row in rows(result)}
        assert table["weakly_increasing"] == "true"
        assert table["above_young_power"] == "true"
        assert table["delta1_positive_from_2"] == "true"

    def test_sequence_needs_r(self, runner, tmp_path):
        seq = tmp_path / "s.txt"
        seq.write_text("1 1 2 2\n")
        assert runner.invoke(cli, ["probe", str(seq)]).exit_code == 2
        result = runner.invoke(cli, ["probe", str(seq), "--r", "1"])
        table = {row["property"]: row["value"] for row in rows(result)}
        assert table["strictly_increasing_from_1"] == "false"


class TestFormat:
    def test_text_table(self, runner):
        result = runner.invoke(cli, ["--format", "text", "numerics", "--zr", "1", "3"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].split() == ["n", "value"]
        assert set(lines[1]) <= {"-", " "}
        assert lines[-1].split() == ["3", "3"]
