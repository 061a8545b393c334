"""Smoke test for the noble extension module.

    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/noble-*.whl
    python python/smoke_test.py
"""

import json

import noble

E3 = "cayley 3\n0 0 0\n0 1 1\n0 1 2\n"


def main():
    e3 = noble.SemigroupTable.from_cayley(E3)
    assert e3.order == 3 and e3.zero == 0 and e3.identity == 2
    cert = json.loads(e3.nobility())
    assert cert["verdict"] == "not_noble"
    assert cert["refutation"]["oracle_bound"] == 4
    assert json.loads(e3.oracle(4))["found"] is False

    swap = noble.PartialBijection([1, 0])
    half = noble.PartialBijection([1, None])
    i2 = noble.generate([swap, half])
    assert i2.order == 7
    cert = json.loads(i2.nobility())
    assert cert["verdict"] == "noble"
    assert cert["witness"]["degree"] == 2
    assert set(cert["witness"]["flags"].values()) == {"verified-true"}

    b2 = noble.SemigroupTable.from_generators("points 2\n1 -\n")
    assert b2.order == 5 and len(b2.green()["D"]) == 2
    images = b2.wagner_preston()
    assert len(set(images)) == 5 and all(p.degree == 5 for p in images)
    assert half.then(half.invert()).is_idempotent()

    corpus = noble.generate_corpus(4)
    assert any(s.isomorphism(e3) is not None for s in corpus)
    assert noble.SemigroupTable(e3.rows()) == e3

    try:
        noble.SemigroupTable.from_cayley("cayley 2\n0 0\n1 1\n")
    except noble.NobleError as e:
        assert e.args[1] == 3
    else:
        raise AssertionError("left zero semigroup accepted")

    print(f"noble {noble.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
