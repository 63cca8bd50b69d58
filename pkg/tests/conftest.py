import pytest

from llm_roofline import (
    DeploymentConfig,
    InferenceShape,
    QuantSpec,
    preset_hardware,
    preset_model,
)


@pytest.fixture(scope="session")
def llama7b():
    return preset_model("llama-2-7b")


@pytest.fixture(scope="session")
def llama13b():
    return preset_model("llama-2-13b")


@pytest.fixture(scope="session")
def a6000():
    return preset_hardware("nvidia-a6000")


@pytest.fixture
def fp16():
    return QuantSpec(16, 16, 16)


def make_config(batch=1, prompt_len=2048, gen_len=0, **kwargs) -> DeploymentConfig:
    return DeploymentConfig(shape=InferenceShape(batch, prompt_len, gen_len), **kwargs)
