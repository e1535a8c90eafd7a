"""The fourteen acceptance criteria, one test each.

Each test prints a ``PASS``/``FAIL`` line to the terminal, also when output
capturing is on. Run this file directly for the same report without pytest.
"""

import sys

import pytest

from eqalg import acceptance


@pytest.mark.parametrize("fn", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn, capsys):
    c = fn()
    with capsys.disabled():
        sys.stdout.write("\n" + c.line() + "\n")
        if not c.ok:
            for d in c.details:
                sys.stdout.write(f"    {d}\n")
    assert c.ok, "\n".join([acceptance.SOURCES[c.number]] + c.details)


def test_every_mutation_is_caught():
    for m in acceptance.mutations():
        rep = acceptance.run_mutation(m)
        assert m.axiom in rep.laws(), m.description


if __name__ == "__main__":
    results = acceptance.run_all()
    for c in results:
        print(c.line())
    sys.exit(0 if all(c.ok for c in results) else 1)
