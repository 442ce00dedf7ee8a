"""Smoke test for the cyeq_py extension module."""

from fractions import Fraction

import cyeq_py as cy


def main():
    op = cy.Operator.from_catalog("14")
    assert op.order == 4 and op.is_mum() and op.cond2()
    assert op.series(4) == cy.sequence("14", 4)

    apery = cy.Operator.from_expr("θ^4 − 16x(2θ+1)^4")
    assert apery.series(3) == [1, 16, 1296]
    assert cy.Operator(apery.text()) == apery
    assert cy.Operator.from_rows(apery.rows()) == apery

    seq = cy.sequence("eta", 40)
    assert seq[:4] == [1, 5, 35, 275]
    fitted = cy.fit(seq, 4, 2)
    assert fitted is not None and fitted.annihilates(seq)
    assert fitted.first_defect(seq) is None

    report = op.check(n=10, depth=3)
    assert report["passes"] and report["N0"] == 1

    mirrored = cy.Operator.from_catalog("193").mirror_at_infinity(shift=1)
    assert mirrored == cy.Operator.from_catalog("198")
    assert mirrored.annihilates(cy.sequence("198", 30))

    assert cy.dwork(cy.sequence("eta", 27), 3, 3) == []
    assert cy.dwork([0, 1, 2, 3], 2, 2) == [(0, 0, 1)]

    assert cy.constant_terms("dim=1\n1 1\n1 -1\n", 5) == [1, 0, 2, 0, 6]
    assert cy.hadamard([1, 2], [Fraction(1, 2), 3]) == [Fraction(1, 2), 6]

    assert cy.pullback(cy.Operator.from_expr("θ^4"), cy.Operator.from_expr("θ^5"), 8) == (True, True)

    try:
        cy.Operator.from_catalog("no-such-entry")
    except cy.CyeqError:
        pass
    else:
        raise AssertionError("expected CyeqError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
