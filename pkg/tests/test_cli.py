"""CLI surface: parsing, dispatch, serialization, exit codes."""

import json

import pytest

from hullflow.cli import main
from hullflow.instances import Instance, InstanceError

T_E2 = {
    "ground": 3,
    "convention": "full",
    "systems": {
        "T": [[], [0], [1, 2], [0, 1, 2]],
        "blocks": [[0, 1], [2], [0, 1, 2]],
    },
    "permutations": {"s": [1, 0, 2]},
    "functions": {"c0": [0, 0, 0]},
    "flows": {"phi": {"cyclic": "s"}, "grp": {"group": ["s"]}},
}


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(T_E2))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsing:
    def test_round_trip(self):
        inst = Instance.from_dict(T_E2)
        assert Instance.from_dict(inst.to_dict()).to_dict() == inst.to_dict()

    def test_parse_instance_text(self):
        from hullflow.cli import parse_instance

        inst = parse_instance(json.dumps(T_E2))
        assert inst.ground.size == 3
        with pytest.raises(InstanceError, match="invalid JSON"):
            parse_instance("{nope")

    def test_duplicate_subset_rejected(self):
        doc = {"ground": 2, "systems": {"A": [[0], [0]]}}
        with pytest.raises(InstanceError, match="duplicate"):
            Instance.from_dict(doc)

    def test_duplicate_names_rejected(self):
        doc = {
            "ground": 2,
            "systems": {"x": [[0]]},
            "permutations": {"x": [1, 0]},
        }
        with pytest.raises(InstanceError, match="unique"):
            Instance.from_dict(doc)

    def test_bad_index_located(self):
        doc = {"ground": 2, "systems": {"A": [[0], [5]]}}
        with pytest.raises(InstanceError, match=r"systems.A\[1\]"):
            Instance.from_dict(doc)

    def test_permutation_in_one_line_notation(self):
        inst = Instance.from_dict({"ground": 3, "permutations": {"s": [1, 0, 2]}})
        assert inst.permutations["s"].image == (1, 0, 2)


class TestCommands:
    def test_classify(self, capsys, instance_file):
        code, out, _ = run_cli(capsys, "classify", "T", "-i", instance_file)
        assert code == 0
        report = json.loads(out)
        assert report["result"]["is_self_dual"] is True
        assert report["result"]["is_t0"] is False
        assert report["convention"] == "full"

    def test_attractors_powerset(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "attractors", "--flow", "phi", "--covering", "powerset",
            "-i", instance_file,
        )
        assert code == 0
        assert json.loads(out)["result"] == [[0, 1], [2]]

    def test_closure_subset(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "closure", "T", "--subset", "1", "-i", instance_file
        )
        assert json.loads(out)["result"] == [1, 2]

    def test_hull_interior(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "hull", "T", "--kind", "000", "--subset", "0,1", "-i", instance_file
        )
        assert json.loads(out)["result"] == [0]

    def test_elementarize(self, capsys, instance_file):
        code, out, _ = run_cli(capsys, "elementarize", "T", "-i", instance_file)
        assert json.loads(out)["result"] == [[], [0], [1, 2]]

    def test_orbits_and_invariant_topology(self, capsys, instance_file):
        code, out, _ = run_cli(capsys, "orbits", "--flow", "phi", "-i", instance_file)
        assert json.loads(out)["result"] == [[0, 1], [2]]
        code, out, _ = run_cli(
            capsys, "invariant-topology", "--flow", "grp", "-i", instance_file
        )
        assert json.loads(out)["result"] == [[], [0, 1], [2], [0, 1, 2]]

    def test_rooms(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "rooms", "--flow", "phi", "--system", "blocks", "-i", instance_file
        )
        result = json.loads(out)["result"]
        assert result["partition"] is True
        assert result["rooms"] == [[0, 1], [2]]

    def test_cantor_check(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "cantor-check", "--function", "c0", "--system", "T",
            "-i", instance_file,
        )
        result = json.loads(out)["result"]
        assert set(result) == {"commutative", "plus", "minus", "trivially_commutative"}

    def test_explication(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "explication", "--function", "c0", "--system", "T",
            "-i", instance_file,
        )
        assert "agree" in json.loads(out)["result"]

    def test_topo_attractors(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "topo-attractors", "--topologies", "T", "-i", instance_file
        )
        assert code == 0
        assert len(json.loads(out)["result"]) == 7  # literal reading: 2^Z minus empty

    def test_verify_subcommand(self, capsys, instance_file):
        code, out, _ = run_cli(capsys, "verify", "S1_1", "-i", instance_file)
        assert code == 0
        assert json.loads(out)["result"]["status"] == "holds"

    def test_convention_flag_recorded(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "--convention", "nonempty", "classify", "T", "-i", instance_file
        )
        assert json.loads(out)["convention"] == "nonempty"

    def test_unknown_name_is_usage_error(self, capsys, instance_file):
        code, _, err = run_cli(capsys, "classify", "nope", "-i", instance_file)
        assert code == 2
        assert "unknown system" in err

    def test_text_format(self, capsys, instance_file):
        code, out, _ = run_cli(
            capsys, "--format", "text", "classify", "T", "-i", instance_file
        )
        assert code == 0
        assert "is_self_dual: True" in out


class TestSweepCommand:
    def test_sweep_finds_disagreements_exit_zero(self, capsys):
        # disagreement mining on an unproved claim keeps exit code 0
        code, out, _ = run_cli(
            capsys, "sweep", "S3_8_all", "--n", "2", "--exhaustive"
        )
        assert code == 0
        report = json.loads(out)["result"]
        assert report["fail_count"] >= 1
        assert report["counterexamples"]

    def test_sweep_clean_claim(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "B3_10", "--n", "2", "--exhaustive")
        assert code == 0
        assert json.loads(out)["result"]["fail_count"] == 0

    def test_failing_registered_clean_claim_exits_one(self, capsys):
        # a claim registered as failure-free that nevertheless fails makes
        # the sweep exit nonzero
        code, out, _ = run_cli(capsys, "sweep", "S3_3", "--n", "2", "--exhaustive")
        assert code == 1
        assert json.loads(out)["result"]["fail_count"] >= 1

    def test_identical_runs_identical_bytes(self, capsys):
        _, out1, _ = run_cli(
            capsys, "sweep", "L3_1", "--n", "3", "--samples", "50", "--seed", "7"
        )
        _, out2, _ = run_cli(
            capsys, "sweep", "L3_1", "--n", "3", "--samples", "50", "--seed", "7"
        )
        assert out1 == out2

    def test_seed_recorded(self, capsys):
        _, out, _ = run_cli(
            capsys, "sweep", "L3_1", "--n", "2", "--samples", "10", "--seed", "3"
        )
        report = json.loads(out)["result"]
        assert report["seed"] == 3
        assert report["samples"] == 10

    def test_usage_error_exit_two(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "B3_6", "--n", "4", "--exhaustive")
        assert code == 2
        assert "capped" in err
