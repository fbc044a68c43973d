"""
공용 pytest fixture
"""

import pytest

from src.coding.graph import build_graph
from src.harness.generator import generate_scenario
from tests.sample_scenarios import get_sample_config, two_rate_example


@pytest.fixture
def two_rate():
    return two_rate_example()


@pytest.fixture
def two_rate_graph(two_rate):
    return build_graph(two_rate)


@pytest.fixture
def random_scenarios():
    """(이름, 개수, 시작 시드) 로 재현 가능한 무작위 시나리오 목록을 만드는 팩토리"""
    def factory(name: str = "tiny", count: int = 20, start: int = 0):
        return [generate_scenario(get_sample_config(name, seed)) for seed in range(start, start + count)]
    return factory
