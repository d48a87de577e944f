import pytest

from relaycast import build_encoder


@pytest.fixture(scope="session")
def enc_q1():
    return build_encoder(1, 2, 3)


@pytest.fixture(scope="session")
def enc_q6():
    return build_encoder(6, 3, 2)
