"""Smoke test for the colkit extension module.

Build and install first, for example:

    cd crates/python && maturin build --release && pip install ../../target/wheels/colkit-*.whl
"""

import colkit


def main():
    f = colkit.Formula("((p -> q) * (p -> r)) -> (p -> (q * r))")
    assert f == colkit.parse(f.ascii())
    assert colkit.Formula(f.unicode()) == f
    assert f.atoms() == ["p", "q", "r"]
    assert hash(f) == hash(colkit.parse(f.ascii()))

    verdict, proof = colkit.prove(f, "cl1")
    assert verdict == "provable", verdict
    assert len(proof) == 5
    assert sorted(proof.rules()) == ["R1", "R1", "R1", "R2", "R2"], proof.rules()
    proof.check()
    again = colkit.Proof.from_json(proof.to_json())
    again.check()
    assert len(again) == 5

    assert colkit.decide("P & P -> P", "cl2") == "provable"
    assert colkit.decide("P -> P & P", "cl2") == "unprovable"
    assert colkit.decide("~P | (P & P)", "ccc") == "provable"
    assert colkit.decide("~P | (P & P)", "cl5") == "unprovable"
    assert colkit.decide("!F -> !F & !F", "cl15") == "provable"
    assert colkit.decide("!F -> !F & !F", "cl15", mode="cl15c") == "unprovable"

    try:
        colkit.parse("p &")
    except ValueError:
        pass
    else:
        raise AssertionError("bad syntax accepted")

    _, p2 = colkit.prove("P * p -> p + P", "cl2")
    for name in ["B", "T", "choose_B", "choose_T", "commit", "question"]:
        for value in (False, True):
            assert colkit.strategy_wins(p2, {"p": value, "P": name}), (name, value)

    g = colkit.interpret("P + ~P", {"P": "question"})
    assert g.is_static()
    assert g.negate().negate() == g
    assert g.winner in (colkit.MACHINE, colkit.ENVIRONMENT)
    elementary = colkit.interpret("p | ~p", {"p": True})
    assert elementary.depth == 0 and elementary.winner == colkit.MACHINE

    assert "question" in colkit.catalogue_games()
    assert set(colkit.systems()) == {"cl1", "cl2", "cl5", "ccc", "cl15"}
    print("smoke test passed")


if __name__ == "__main__":
    main()
