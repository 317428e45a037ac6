import pytest

from ddplots.data import HEADER


@pytest.fixture
def make_csv(tmp_path):
    counter = {"n": 0}

    def _make(rows, name=None):
        counter["n"] += 1
        path = tmp_path / (name or f"fixture{counter['n']}.csv")
        lines = [HEADER]
        for r in rows:
            lines.append(",".join(str(v) for v in r))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _make


def power_law_rows(exponent=2.0, protocol="xy4", randomized=False, order_k=1,
                   n_points=5, trials=1):
    """Synthetic sweep rows with error = j^exponent, exact in decimal text."""
    rows = []
    xs = [10.0 ** (-3 + 0.5 * i) for i in range(n_points)]
    for trial in range(trials):
        for x in xs:
            rows.append((protocol, "true" if randomized else "false", order_k,
                         repr(x), "0.001", repr(4 * x), 0, trial,
                         "joint_state", repr(x ** exponent)))
    return rows
