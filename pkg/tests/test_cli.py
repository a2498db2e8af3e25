import pytest

from kwaypart.api import Mode, kaffpa, kaffpa_balance_NE, node_separator
from kwaypart.cli import (graphchecker_main, kaffpa_main, kaffpae_main,
                          label_propagation_main, separator_main)

from conftest import FIG_TEXT

FIG_XADJ = [0, 2, 5, 7, 9, 12]
FIG_ADJNCY = [1, 4, 0, 2, 4, 1, 3, 2, 4, 0, 1, 3]


@pytest.fixture
def fig_file(tmp_path):
    path = tmp_path / "fig.graph"
    path.write_text(FIG_TEXT)
    return str(path)


@pytest.fixture
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestKaffpa:
    def test_default_output_and_metrics(self, fig_file, in_tmp, capsys):
        assert kaffpa_main([fig_file, "--k", "2"]) == 0
        out = capsys.readouterr().out
        assert "cut=2" in out and "balance=" in out and "time=" in out
        lines = (in_tmp / "tmppartition2").read_text().splitlines()
        assert sorted(set(lines)) == ["0", "1"] and len(lines) == 5

    def test_custom_output_filename(self, fig_file, in_tmp):
        assert kaffpa_main([fig_file, "--k", "2",
                            "--output_filename", "mypart"]) == 0
        assert (in_tmp / "mypart").exists()
        assert not (in_tmp / "tmppartition2").exists()

    def test_byte_identical_across_runs(self, fig_file, in_tmp):
        contents = []
        for _ in range(3):
            assert kaffpa_main([fig_file, "--k", "2", "--seed", "7"]) == 0
            contents.append((in_tmp / "tmppartition2").read_bytes())
        assert contents[0] == contents[1] == contents[2]

    def test_preconfigurations_accepted(self, fig_file, in_tmp):
        for name in ("fast", "eco", "strong", "fastsocial", "ecosocial",
                     "strongsocial"):
            assert kaffpa_main([fig_file, "--k", "2",
                                "--preconfiguration", name]) == 0

    def test_input_partition_improved(self, fig_file, in_tmp, capsys):
        (in_tmp / "seed.part").write_text("0\n1\n1\n1\n0\n")  # cut 4
        assert kaffpa_main([fig_file, "--k", "2",
                            "--input_partition", "seed.part"]) == 0
        assert "cut=2" in capsys.readouterr().out

    def test_enforce_balance_rejects_weighted_graph(self, tmp_path, in_tmp,
                                                    capsys):
        path = tmp_path / "w.graph"
        path.write_text("2 1 10\n4 2\n7 1\n")
        assert kaffpa_main([str(path), "--k", "2",
                            "--enforce_balance"]) == 1
        assert "vertex weights" in capsys.readouterr().err

    def test_missing_k_is_an_error(self, fig_file, capsys):
        with pytest.raises(SystemExit) as exc:
            kaffpa_main([fig_file])
        assert exc.value.code != 0

    def test_unknown_flag_is_an_error(self, fig_file):
        with pytest.raises(SystemExit) as exc:
            kaffpa_main([fig_file, "--k", "2", "--frobnicate"])
        assert exc.value.code != 0

    def test_help_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as exc:
            kaffpa_main(["--help"])
        assert exc.value.code == 0
        assert "--imbalance" in capsys.readouterr().out

    def test_missing_file_returns_error(self, in_tmp, capsys):
        assert kaffpa_main(["nosuch.graph", "--k", "2"]) == 1
        assert "error" in capsys.readouterr().err

    def test_balance_edges_flag(self, fig_file, in_tmp, capsys):
        assert kaffpa_main([fig_file, "--k", "2", "--balance_edges"]) == 0
        assert "cut=" in capsys.readouterr().out


class TestKaffpae:
    def test_default_output_deterministic_single_worker(self, fig_file,
                                                        in_tmp, capsys):
        contents = []
        for _ in range(3):
            assert kaffpae_main([fig_file, "--k", "2", "--seed", "3",
                                 "--workers", "1"]) == 0
            contents.append((in_tmp / "tmppartition2").read_bytes())
        assert contents[0] == contents[1] == contents[2]
        assert "cut=2" in capsys.readouterr().out

    def test_unsupported_flags_rejected(self, fig_file, capsys):
        assert kaffpae_main([fig_file, "--k", "2",
                             "--mh_enable_kabapE"]) == 1
        assert "not supported" in capsys.readouterr().err
        assert kaffpae_main([fig_file, "--k", "2",
                             "--mh_enable_tabu_search"]) == 1
        assert "not supported" in capsys.readouterr().err

    def test_quickstart_and_volume_objective(self, fig_file, in_tmp, capsys):
        assert kaffpae_main([fig_file, "--k", "2", "--workers", "2",
                             "--mh_enable_quickstart",
                             "--mh_optimize_communication_volume",
                             "--time_limit", "0.1"]) == 0
        assert "cut=" in capsys.readouterr().out

    def test_input_partition_never_worse(self, fig_file, in_tmp, capsys):
        (in_tmp / "opt.part").write_text("0\n0\n1\n1\n0\n")  # optimal, cut 2
        assert kaffpae_main([fig_file, "--k", "2",
                             "--input_partition", "opt.part"]) == 0
        assert "cut=2" in capsys.readouterr().out


class TestSeparatorProgram:
    def test_prints_size_and_writes_file(self, fig_file, in_tmp, capsys):
        (in_tmp / "p.part").write_text("0\n0\n1\n1\n0\n")
        assert separator_main([fig_file, "--k", "2",
                               "--input_partition", "p.part"]) == 0
        assert capsys.readouterr().out.strip() == "separator_size=2"
        lines = (in_tmp / "tmpseparator").read_text().splitlines()
        assert len(lines) == 5
        assert lines.count("2") == 2  # separator nodes carry block id k

    def test_input_partition_required(self, fig_file):
        with pytest.raises(SystemExit) as exc:
            separator_main([fig_file, "--k", "2"])
        assert exc.value.code != 0


class TestLabelPropagationProgram:
    def test_zero_iterations_keeps_singletons(self, fig_file, in_tmp,
                                              capsys):
        assert label_propagation_main(
            [fig_file, "--label_propagation_iterations", "0"]) == 0
        assert capsys.readouterr().out.strip() == "clusters=5"
        lines = (in_tmp / "tmpclustering").read_text().splitlines()
        assert len(lines) == 5

    def test_defaults_cluster_the_example(self, fig_file, in_tmp, capsys):
        assert label_propagation_main([fig_file]) == 0
        out = capsys.readouterr().out
        n_clusters = int(out.strip().split("=")[1])
        assert 1 <= n_clusters < 5

    def test_upper_bound_respected(self, fig_file, in_tmp, capsys):
        assert label_propagation_main(
            [fig_file, "--cluster_upperbound", "2"]) == 0
        lines = (in_tmp / "tmpclustering").read_text().splitlines()
        from collections import Counter
        assert max(Counter(lines).values()) <= 2


class TestGraphchecker:
    def test_valid_graph_ok(self, fig_file, capsys):
        assert graphchecker_main([fig_file]) == 0
        assert capsys.readouterr().out.strip() == "OK"

    def test_invalid_graph_reports_violations(self, tmp_path, capsys):
        path = tmp_path / "bad.graph"
        path.write_text("3 2\n2 3\n1\n\n")
        assert graphchecker_main([str(path)]) == 1
        assert capsys.readouterr().out.strip() != "OK"

    def test_missing_file(self, capsys):
        assert graphchecker_main(["nosuch.graph"]) == 1
        assert "error" in capsys.readouterr().err


class TestLibraryApi:
    def test_mode_enum_names(self):
        assert [m.value for m in Mode] == ["fast", "eco", "strong",
                                           "fastsocial", "ecosocial",
                                           "strongsocial"]

    def test_kaffpa_example(self):
        cut, part = kaffpa(5, None, FIG_XADJ, None, FIG_ADJNCY, 2, 0.03,
                           suppress_output=True, seed=0, mode=Mode.STRONG)
        assert cut == 2
        assert sorted(set(part)) == [0, 1] and len(part) == 5

    def test_kaffpa_mode_as_string(self):
        cut, _ = kaffpa(5, None, FIG_XADJ, None, FIG_ADJNCY, 2, 0.03,
                        suppress_output=True, mode="eco")
        assert cut == 2

    def test_kaffpa_balance_ne(self):
        cut, part = kaffpa_balance_NE(5, None, FIG_XADJ, None, FIG_ADJNCY,
                                      2, 0.5, suppress_output=True)
        assert len(part) == 5 and cut >= 2

    def test_node_separator(self):
        sep = node_separator(5, None, FIG_XADJ, None, FIG_ADJNCY, 2, 0.03,
                             suppress_output=True, mode=Mode.STRONG)
        assert sep == sorted(sep)
        assert 0 < len(sep) <= 2
