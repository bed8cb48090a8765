import pytest

from qimp.cli import build_config, build_parser
from qimp.config import ENV_LOG_LEVEL, PipelineConfig, load_config
from qimp.errors import ConfigError, IoFailureError


@pytest.fixture
def image_file(tmp_path):
    path = tmp_path / "in.pgm"
    path.write_bytes(b"P2\n2 2\n255\n0 255 255 0\n")
    return str(path)


def test_defaults(image_file, monkeypatch):
    monkeypatch.delenv(ENV_LOG_LEVEL, raising=False)
    config = PipelineConfig("transform", inputs=[image_file]).validate()
    assert config.transform_kind == "haar"
    assert config.shots == 10_000
    assert config.symmetry_threshold == 0.99
    assert config.log_level == "WARNING"
    assert config.include_timing


def test_log_level_from_environment(monkeypatch):
    monkeypatch.setenv(ENV_LOG_LEVEL, "debug")
    assert PipelineConfig("encode").log_level == "DEBUG"


@pytest.mark.parametrize("overrides", [
    {"shots": 0},
    {"shots": True},
    {"seed": -1},
    {"transform_kind": "wavelet"},
    {"edge_variant": "diagonal"},
    {"threshold": -0.5},
    {"symmetry_threshold": 1.5},
    {"max_circuit_qubits": 40},
    {"log_level": "LOUD"},
    {"inverse": "yes"},
    {"write_mode": "bright"},
])
def test_rejects_bad_values(image_file, overrides):
    with pytest.raises(ConfigError):
        PipelineConfig("transform", inputs=[image_file], **overrides).validate()


def test_integer_threshold_is_accepted(image_file):
    PipelineConfig("edge", inputs=[image_file], threshold=1).validate()


def test_input_checks(image_file, tmp_path):
    with pytest.raises(ConfigError):
        PipelineConfig("compare", inputs=[image_file]).validate()
    with pytest.raises(ConfigError):
        PipelineConfig("encode", inputs=[str(tmp_path / "missing.pgm")]).validate()
    with pytest.raises(ConfigError):
        PipelineConfig("warp", inputs=[image_file]).validate()
    PipelineConfig("compare", inputs=[image_file, image_file]).validate()


@pytest.mark.parametrize("entry", [1, None, ["in.pgm"]])
def test_inputs_must_be_paths(entry):
    with pytest.raises(ConfigError, match="expected file paths"):
        PipelineConfig("encode", inputs=[entry]).validate()


def test_yaml_inputs_must_be_paths(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("inputs: [1]\n")
    with pytest.raises(ConfigError):
        PipelineConfig("encode", **load_config(path)).validate()


@pytest.mark.parametrize("command, inputs", [("compare", 2), ("sample", 0)])
def test_amplitudes_need_a_state(image_file, command, inputs):
    config = PipelineConfig(command, inputs=[image_file] * inputs, sample="chessboard",
                            output="out.pgm", amplitudes="a.csv")
    with pytest.raises(ConfigError, match="no result state"):
        config.validate()


def test_mask_checks(image_file, tmp_path):
    PipelineConfig("filter", inputs=[image_file], mask="averaging").validate()
    with pytest.raises(ConfigError):
        PipelineConfig("filter", inputs=[image_file], mask=str(tmp_path / "none.txt")).validate()


def test_sample_needs_output():
    with pytest.raises(ConfigError):
        PipelineConfig("sample", sample="chessboard").validate()
    PipelineConfig("sample", sample="chessboard", output="out.pgm").validate()


class TestLoadConfig:
    def test_keys_become_field_names(self, tmp_path):
        path = tmp_path / "qimp.yaml"
        path.write_text("transform-kind: fourier\nshots: 200\nlog-level: info\n")
        assert load_config(path) == {"transform_kind": "fourier", "shots": 200, "log_level": "INFO"}

    def test_empty_file(self, tmp_path):
        path = tmp_path / "qimp.yaml"
        path.write_text("")
        assert load_config(path) == {}

    @pytest.mark.parametrize("text", ["colour: red\n", "shots: [1\n", "- 1\n- 2\n"])
    def test_rejects(self, tmp_path, text):
        path = tmp_path / "qimp.yaml"
        path.write_text(text)
        with pytest.raises(ConfigError):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoFailureError):
            load_config(tmp_path / "absent.yaml")


def test_flags_override_file(image_file, tmp_path):
    path = tmp_path / "qimp.yaml"
    path.write_text("transform-kind: fourier\ninverse: true\nreport-format: json\n")
    args = build_parser().parse_args(
        ["transform", image_file, "--config", str(path), "--kind", "hadamard"]
    )
    config = build_config(args)
    assert config.transform_kind == "hadamard"
    assert config.inverse is True
    assert config.report_format == "json"
    assert config.inputs == [image_file]
