"""The two-variable product formula, checked cell by cell.

The left side is p*(J(p) - J(q)): a thin, very sparse array -- one column
of coefficients in p, one row in q, nothing else.  The right side is an
infinite product over lattice points (i, j) with exponents c(ij).  That
such a product collapses to a difference of single-variable series is the
whole surprise; on a finite window the claim becomes a finite, exactly
checkable statement.
"""

from moonshine.lattice import denominator_identity_report, denominator_sides

P = Q = 6

lhs, rhs = denominator_sides(P, Q)

print(f"window: p exponents 0..{P}, q exponents {-P}..{Q}")
print()
print("a few cells, left vs right:")
for i, jj in [(0, 0), (1, -1), (2, 0), (1, 1), (1, 3), (2, 2), (3, 3), (4, -2)]:
    print(f"  p^{i} q^{jj:<3}  {lhs.coeff(i, jj)!s:>12}  {rhs.coeff(i, jj)!s:>12}")
print()

# Everything off the (p-column, q-row) cross must cancel on the right.
# That cancellation is where the content lives: the product "knows" the
# exponents c(ij) are exactly the coefficients of the series it rebuilds.
interior = [
    ((i, jj), rhs.coeff(i, jj))
    for i in range(2, P + 1)
    for jj in range(1, Q + 1)
    if rhs.coeff(i, jj) != 0
]
print("nonzero interior cells on the right (should be none):", interior)
print()

report = denominator_identity_report(8, 8)
print(f"full comparison at 8x8: {'PASS' if report.ok else 'FAIL'}")
print(f"mismatching cells: {len(report.mismatches)}")
