import hypothesis
import pytest

from bardual.fields import GF, QQ

hypothesis.settings.register_profile(
    "default", max_examples=25, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture(params=["Q", "F7"])
def field(request):
    return QQ if request.param == "Q" else GF(7)
