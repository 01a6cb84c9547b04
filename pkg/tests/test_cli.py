"""Command-line interface: exit codes, file outputs, determinism."""

import csv
import json

import numpy as np
import pytest

from heisenberg_orbits import (
    GroupElement,
    act,
    apply_weighted_generator,
    heisenberg_invariants,
    orbit_distance,
    sample_random_signal,
)
from heisenberg_orbits.cli import main
from heisenberg_orbits.serialization import (
    complex_vector_from_json,
    complex_vector_to_json,
    dump_json,
    invariants_from_json,
    invariants_to_json,
    load_json,
)

from helpers import generic_signal, min_shift_distance


def write_vector(path, x):
    dump_json(complex_vector_to_json(x), path)


class TestInvariantsCommand:
    def test_writes_bundle(self, tmp_path):
        x = generic_signal(4, 2)
        src = tmp_path / "x.json"
        out = tmp_path / "inv.json"
        write_vector(src, x)
        assert main(["invariants", str(src), str(out)]) == 0
        loaded = invariants_from_json(load_json(out))
        assert loaded.n == 4
        np.testing.assert_allclose(loaded.bm, heisenberg_invariants(x).bm)

    def test_truncated_input(self, tmp_path):
        src = tmp_path / "x.json"
        src.write_text('{"n": 4, "re": [1.0')
        assert main(["invariants", str(src), str(tmp_path / "o.json")]) == 2

    def test_require_generic_refuses(self, tmp_path):
        src = tmp_path / "x.json"
        out = tmp_path / "inv.json"
        write_vector(src, np.ones(4, dtype=complex))
        assert main(["invariants", str(src), str(out), "--require-generic"]) == 3
        assert not out.exists()

    def test_non_generic_without_flag_still_writes(self, tmp_path):
        src = tmp_path / "x.json"
        out = tmp_path / "inv.json"
        write_vector(src, np.ones(4, dtype=complex))
        assert main(["invariants", str(src), str(out)]) == 0
        assert out.exists()


class TestRecoverCommand:
    def test_recover_then_verify_chain(self, tmp_path):
        x = generic_signal(5, 3)
        src = tmp_path / "x.json"
        inv_path = tmp_path / "inv.json"
        rec_path = tmp_path / "rec.json"
        cand_path = tmp_path / "cand.json"
        write_vector(src, x)
        assert main(["invariants", str(src), str(inv_path)]) == 0
        assert (
            main(
                ["recover", str(inv_path), str(rec_path), "--seed", "4",
                 "--max-restarts", "4000"]
            )
            == 0
        )
        report = load_json(rec_path)
        assert report["success"] is True
        write_vector(cand_path, complex_vector_from_json(report["candidate"]))
        assert main(["verify", str(src), str(cand_path), "--tol", "1e-6"]) == 0

    def test_tampered_power_sum(self, tmp_path):
        x = generic_signal(5, 5)
        inv = heisenberg_invariants(x)
        obj = invariants_to_json(inv)
        obj["iN"]["re"] *= 1.6
        obj["iN"]["im"] *= 1.6
        inv_path = tmp_path / "inv.json"
        dump_json(obj, inv_path)
        code = main(
            ["recover", str(inv_path), str(tmp_path / "rec.json"),
             "--seed", "1", "--max-restarts", "60"]
        )
        assert code == 3

    def test_complex_bispectrum_rejected(self, tmp_path):
        from heisenberg_orbits import dft, unitary_bispectrum

        x = generic_signal(5, 6)
        inv = heisenberg_invariants(x)
        obj = invariants_to_json(inv)
        bogus = unitary_bispectrum(dft(sample_random_signal(5, 7)))
        obj["bm"]["re"] = [[float(v) for v in row] for row in bogus.real]
        obj["bm"]["im"] = [[float(v) for v in row] for row in bogus.imag]
        inv_path = tmp_path / "inv.json"
        dump_json(obj, inv_path)
        assert main(["recover", str(inv_path), str(tmp_path / "rec.json")]) == 3

    def test_malformed_bundle(self, tmp_path):
        inv_path = tmp_path / "inv.json"
        dump_json({"n": 3, "bm": {}}, inv_path)
        assert main(["recover", str(inv_path), str(tmp_path / "rec.json")]) == 2

    def test_no_convergence_exit_code(self, tmp_path):
        x = generic_signal(6, 802)
        inv_path = tmp_path / "inv.json"
        rec_path = tmp_path / "rec.json"
        dump_json(invariants_to_json(heisenberg_invariants(x)), inv_path)
        code = main(
            ["recover", str(inv_path), str(rec_path), "--seed", "2",
             "--max-restarts", "1"]
        )
        assert code == 4
        report = load_json(rec_path)
        assert report["success"] is False
        assert report["stage_residuals"]["phase_fix"] is None


class TestVerifyCommand:
    def test_orbit_member(self, tmp_path, capsys):
        x = generic_signal(4, 8)
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        write_vector(a, x)
        write_vector(b, act(GroupElement(4, 1, 2, 3), x))
        assert main(["verify", str(a), str(b)]) == 0
        out = capsys.readouterr().out
        assert "distance" in out and "witness" in out

    def test_scaled_vector_rejected(self, tmp_path):
        x = generic_signal(4, 9)
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        write_vector(a, x)
        write_vector(b, 2 * x)
        assert main(["verify", str(a), str(b)]) == 1

    def test_offbeat_phase_rejected(self, tmp_path):
        x = generic_signal(4, 10)
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        write_vector(a, x)
        write_vector(b, np.exp(1j * np.pi / 8) * x)
        assert main(["verify", str(a), str(b)]) == 1

    def test_dimension_mismatch(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        write_vector(a, sample_random_signal(4, 11))
        write_vector(b, sample_random_signal(5, 11))
        assert main(["verify", str(a), str(b)]) == 2


class TestExperimentCommand:
    def test_spec_example_run(self, tmp_path):
        spec = {
            "n_values": [3, 4, 5],
            "trials": 20,
            "seed": 7,
            "pr_config": {"max_restarts": 4000},
        }
        spec_path = tmp_path / "spec.json"
        out_path = tmp_path / "out.csv"
        dump_json(spec, spec_path)
        assert main(["experiment", str(spec_path), str(out_path)]) == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.reader(fh))
        header, body = rows[0], rows[1:]
        assert header == [
            "n", "trial", "seed", "success", "orbit_distance", "restarts_used",
            "res_bm", "res_bfm", "res_pr", "res_phase", "res_final", "wall_ms",
        ]
        data = [r for r in body if r[1] != "summary"]
        summaries = [r for r in body if r[1] == "summary"]
        assert len(data) == 60
        assert len(summaries) == 3
        for row in summaries:
            assert float(row[3]) >= 0.95

    def test_single_trial(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        out_path = tmp_path / "out.csv"
        dump_json({"n_values": [3], "trials": 1, "seed": 1}, spec_path)
        assert main(["experiment", str(spec_path), str(out_path)]) == 0
        with open(out_path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert len(rows) == 3  # header + one trial + one summary

    def test_byte_identical_reruns(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        dump_json({"n_values": [3, 4], "trials": 2, "seed": 5}, spec_path)
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert main(["experiment", str(spec_path), str(first)]) == 0
        assert main(["experiment", str(spec_path), str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_malformed_spec(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        dump_json({"trials": 2}, spec_path)
        assert main(["experiment", str(spec_path), str(tmp_path / "o.csv")]) == 2


class TestDegreeAuditCommand:
    def test_all_zero_up_to_ten(self, capsys):
        assert main(["degree-audit", "--max-n", "10"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        cells = [line.split("\t") for line in lines[1:]]
        assert all(int(c[2]) == 0 for c in cells)
        assert len(cells) == sum(n - 1 for n in range(2, 11))

    def test_minimal_table(self, capsys):
        assert main(["degree-audit", "--max-n", "2"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[1:] == ["2\t1\t0"]

    def test_boundary_column(self, capsys):
        assert main(["degree-audit", "--max-n", "3", "--include-boundary"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        table = {(int(a), int(b)): int(c) for a, b, c in (l.split("\t") for l in lines[1:])}
        assert table[(2, 2)] == 3
        assert table[(3, 3)] == 10


class TestCyclicCommand:
    def test_recover_weighted_fixture(self, tmp_path):
        inv_path = tmp_path / "wi.json"
        out_path = tmp_path / "v.json"
        dump_json(
            {"n": 2, "r": 1.0, "a": [{"re": 2.0, "im": 0.0}, {"re": 8.0, "im": 0.0}]},
            inv_path,
        )
        assert main(["cyclic", "recover-weighted", str(inv_path), str(out_path)]) == 0
        v = complex_vector_from_json(load_json(out_path))
        target = np.array([1.0, 2.0], dtype=complex)
        best = min(
            np.linalg.norm(v - apply_weighted_generator(target, j)) for j in range(6)
        )
        assert best <= 1e-9

    def test_recover_weighted_degenerate(self, tmp_path):
        inv_path = tmp_path / "wi.json"
        dump_json(
            {"n": 2, "r": 0.0, "a": [{"re": 0.0, "im": 0.0}, {"re": 1.0, "im": 0.0}]},
            inv_path,
        )
        assert main(["cyclic", "recover-weighted", str(inv_path), str(tmp_path / "v.json")]) == 3

    def test_recover_regular(self, tmp_path):
        x = np.array([2, 1j, 1])
        src = tmp_path / "x.json"
        out = tmp_path / "rec.json"
        write_vector(src, x)
        assert main(["cyclic", "recover-regular", str(src), str(out)]) == 0
        rec = complex_vector_from_json(load_json(out))
        assert min_shift_distance(x, rec) <= 1e-8

    def test_weighted_invariants_round_trip(self, tmp_path):
        v = np.array([1.0 + 0.5j, -0.75 + 0.25j, 0.5 - 1.0j])
        src = tmp_path / "v.json"
        wi = tmp_path / "wi.json"
        out = tmp_path / "back.json"
        write_vector(src, v)
        assert main(["cyclic", "weighted-invariants", str(src), str(wi)]) == 0
        assert main(["cyclic", "recover-weighted", str(wi), str(out)]) == 0
        back = complex_vector_from_json(load_json(out))
        best = min(
            np.linalg.norm(back - apply_weighted_generator(v, j)) for j in range(9)
        )
        assert best <= 1e-8


class TestVerifyOrbitWitness:
    def test_candidate_distance_matches_library(self, tmp_path, capsys):
        x = generic_signal(4, 12)
        moved = act(GroupElement(4, 2, 1, 3), x)
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        write_vector(a, x)
        write_vector(b, moved)
        main(["verify", str(a), str(b)])
        printed = capsys.readouterr().out
        dist, _ = orbit_distance(x, moved)
        assert f"{dist:.12e}" in printed
