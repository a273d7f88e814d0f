import pytest

from hardyshell.config import RunConfig, load_config, parse_config
from hardyshell.errors import ConfigError


def test_defaults():
    cfg = parse_config("")
    assert cfg == RunConfig()
    assert cfg.potential.a == 1.0 and cfg.potential.b == 2.0 and cfg.potential.v0 == 1.0


def test_full_file():
    cfg = parse_config("""
[potential]
a = 0.5
b = 1.5
v0 = 0
[grids]
r_points = 11
[tolerances]
hardy = 1e-5
[run]
seed = 4
output = results
""")
    assert cfg.potential.v0 == 0.0
    assert cfg.grids.r_points == 11 and isinstance(cfg.grids.r_points, int)
    assert cfg.tolerances.hardy == 1e-5
    assert cfg.seed == 4 and cfg.output == "results"


@pytest.mark.parametrize("text", [
    "[potential]\nheight = 1\n",
    "[physics]\na = 1\n",
    "[run]\nverbose = 1\n",
    "[potential]\na = one\n",
    "[grids]\nr_points = 1.5\n",
    "[potential]\nv0 = -1\n",
    "[grids]\ne_max = 0\n",
    "[potential]\na = 2\nb = 1\n",
    "a = 1\n",
])
def test_rejected(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_digest_is_stable_and_sensitive():
    assert RunConfig().digest() == parse_config("[run]\nseed = 0\n").digest()
    assert RunConfig().digest() != parse_config("[run]\nseed = 1\n").digest()
    assert len(RunConfig().digest()) == 64


def test_load(tmp_path):
    path = tmp_path / "c.ini"
    path.write_text("[potential]\nv0 = 3\n")
    assert load_config(path).potential.v0 == 3.0
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.ini")
