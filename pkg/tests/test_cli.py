import json

import pytest

from llm_roofline.cli import main
from llm_roofline.formatting import canonical_json
from llm_roofline.schemas import AnalyzeRequest, ShapeIn
from llm_roofline.service import run_analysis

TABLE1_ARGS = [
    "analyze",
    "--model", "llama-2-7b",
    "--hardware", "nvidia-a6000",
    "--batch", "1",
    "--prompt-len", "2048",
    "--gen-len", "0",
]


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyzeCommand:
    def test_table_reproduces_reference_rows(self, capsys):
        code, out, _ = run_cli(capsys, TABLE1_ARGS + ["--format", "table"])
        assert code == 0
        lines = {line.split()[0]: line.split() for line in out.splitlines() if line}
        assert lines["q_proj"][1:6] == ["69G", "67M", "1024", "155T", "compute"]
        assert lines["qk_matmul"][1:6] == ["34G", "302M", "114", "87T", "memory"]
        assert lines["gate_proj"][1:6] == ["185G", "152M", "1215", "155T", "compute"]
        assert lines["softmax"][1:6] == ["671M", "537M", "1.25", "960G", "memory"]
        assert "Layer Name" in out and "Memory Access" in out and "Bound" in out
        assert "bottleneck" in out

    def test_json_output_is_canonical(self, capsys):
        code, out, _ = run_cli(capsys, TABLE1_ARGS + ["--format", "json"])
        assert code == 0
        request = AnalyzeRequest(
            model="llama-2-7b",
            hardware="nvidia-a6000",
            shape=ShapeIn(batch_size=1, prompt_len=2048, gen_len=0),
        )
        assert out == canonical_json(run_analysis(request)) + "\n"
        payload = json.loads(out)
        assert payload["bottleneck"] == "gate_proj"

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(capsys, TABLE1_ARGS + ["--format", "csv"])
        assert code == 0
        header, *rows = out.strip().splitlines()
        assert header.startswith("op_name,stage,ops,")
        assert len(rows) == 14

    def test_unknown_preset_exits_3(self, capsys):
        code, _, err = run_cli(
            capsys, ["analyze", "--model", "nope", "--hardware", "nvidia-a6000",
                     "--prompt-len", "4"]
        )
        assert code == 3
        assert "llama-2-7b" in err

    def test_bad_flag_exits_2(self, capsys):
        assert main(["analyze", "--model", "llama-2-7b", "--frobnicate"]) == 2

    def test_invalid_shape_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, ["analyze", "--model", "llama-2-7b", "--hardware", "nvidia-a6000"]
        )
        assert code == 2

    def test_quarter_bits_quarters_weight_memory(self, capsys):
        code, out16, _ = run_cli(capsys, TABLE1_ARGS + ["--format", "json"])
        code, out4, _ = run_cli(
            capsys,
            TABLE1_ARGS + ["--w-bits", "4", "--kv-bits", "4", "--format", "json"],
        )
        weights16 = json.loads(out16)["memory"]["weights"]
        weights4 = json.loads(out4)["memory"]["weights"]
        # wire format carries 6 significant digits
        assert weights4 == pytest.approx(weights16 / 4, rel=1e-5)

    def test_model_from_json_file(self, capsys, tmp_path):
        doc = {
            "hidden_size": 64,
            "intermediate_size": 128,
            "num_hidden_layers": 2,
            "num_attention_heads": 4,
            "vocab_size": 256,
        }
        path = tmp_path / "small.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(
            capsys,
            ["analyze", "--model", str(path), "--hardware", "nvidia-a6000",
             "--prompt-len", "16", "--format", "json"],
        )
        assert code == 0
        assert json.loads(out)["per_op"]


class TestSweepCommand:
    BASE = [
        "sweep",
        "--model", "llama-2-7b",
        "--hardware", "nvidia-a6000",
        "--prompt-len", "64",
        "--gen-len", "1",
        "--axis", "batch",
    ]

    def test_emits_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, self.BASE + ["--values", "1,2,4", "--variant", "W4:w=4"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "variant,x,latency_s,throughput_tps,memory_bytes,bound"
        assert len(lines) == 4
        assert all(line.startswith("W4,") for line in lines[1:])

    def test_single_point_matches_analyze_json(self, capsys):
        code, csv_out, _ = run_cli(capsys, self.BASE + ["--values", "2"])
        code, json_out, _ = run_cli(
            capsys,
            ["analyze", "--model", "llama-2-7b", "--hardware", "nvidia-a6000",
             "--batch", "2", "--prompt-len", "64", "--gen-len", "1", "--format", "json"],
        )
        row = csv_out.strip().splitlines()[1].split(",")
        payload = json.loads(json_out)
        # CSV is full precision, the JSON wire format 6 significant digits
        assert float(row[2]) == pytest.approx(payload["total_latency"], rel=1e-5)
        assert float(row[3]) == pytest.approx(payload["throughput"], rel=1e-5)
        assert float(row[4]) == pytest.approx(payload["memory"]["total"], rel=1e-5)

    def test_empty_values_exits_2(self, capsys):
        code, _, err = run_cli(capsys, self.BASE + ["--values", ","])
        assert code == 2

    def test_malformed_variant_exits_2_naming_token(self, capsys):
        code, _, err = run_cli(
            capsys, self.BASE + ["--values", "1,2", "--variant", "bad:wat=4"]
        )
        assert code == 2
        assert "bad:wat=4" in err

    def test_decreasing_values_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, self.BASE + ["--values", "4,2"])
        assert code == 2
