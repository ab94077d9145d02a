import pytest

from momentlab.config import ConfigError, parse_config, parse_value


def test_values():
    assert parse_value("3") == 3
    assert parse_value("1e-9") == 1e-9
    assert parse_value("true") is True
    assert parse_value('"small"') == "small"
    assert parse_value("[1, 2.5, 'a']") == [1, 2.5, "a"]
    assert parse_value("10_000") == 10000


def test_sections_and_comments():
    cfg = parse_config(
        """
        # leading comment
        seed = 3
        grid = "small"   # trailing comment

        [expsums.H]
        cmax = 50
        ks = [1, 2, 3]
        name = "a # not a comment"
        """
    )
    assert cfg["global"] == {"seed": 3, "grid": "small"}
    assert cfg["sections"]["expsums.H"] == {"cmax": 50, "ks": [1, 2, 3], "name": "a # not a comment"}


@pytest.mark.parametrize("text", ["seed 3", "[bad", "a = 1\na = 2", "x = [1, 2", "1x = 2", "s = 'open"])
def test_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)
