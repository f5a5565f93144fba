import pytest

from revis.gallery import GALLERY, build_all


@pytest.fixture(scope="session")
def gallery_docs():
    return build_all()


@pytest.fixture(scope="session")
def gallery_names():
    return list(GALLERY)
