"""
Values, product vectors, and the rearrangement completion
=========================================================

The objects here are k-multisets of permutations of {1..n} and the value

    v = sum_i  prod_j  r_j(i)

This walk-through covers evaluating v, the closed-form extremes, and the
completion step that makes exhaustive search over k members collapse to
k-2 free choices.
"""

from permprod import (
    all_optimal_completions,
    base_key,
    canonicalize,
    compose,
    evaluate_v,
    identity,
    inverse,
    make_kset,
    optimal_completion,
    product_vector,
    vmax,
    vmin_closed,
)

# ---------------------------------------------------------------------------
# Evaluating v.  Member order never matters: a KSet is a sorted multiset.

s = make_kset([(1, 2, 3), (2, 3, 1), (3, 1, 2)])
print("v(123, 231, 312) =", evaluate_v(s))  # 1*2*3 + 2*3*1 + 3*1*2 = 18

same = make_kset([(3, 1, 2), (1, 2, 3), (2, 3, 1)])
print("order-independent:", s == same)

# k copies of one permutation give the maximum, the power sum 1^k+..+n^k.
aligned = make_kset([(3, 1, 2)] * 3)
print("v(312, 312, 312) =", evaluate_v(aligned), "= vmax(3,3) =", vmax(3, 3))

# ---------------------------------------------------------------------------
# Closed forms on the boundary of the table: n=1, k=1, n=2, k=2.

for n, k in [(1, 7), (6, 1), (2, 6), (2, 7), (5, 2)]:
    answer = vmin_closed(n, k)
    print(f"vmin_closed({n},{k}) = {answer.value:4d}  [{answer.source.value}]")
print("vmin_closed(3,3) =", vmin_closed(3, 3), " (interior: search required)")

# The k=2 closed form n(n+1)(n+2)/6 is attained by a permutation paired
# with its reverse -- the rearrangement inequality in action.
pair = make_kset([(1, 2, 3, 4, 5), (5, 4, 3, 2, 1)])
print("v(12345, 54321) =", evaluate_v(pair), "= vmin_closed(5,2) =",
      vmin_closed(5, 2).value)

# ---------------------------------------------------------------------------
# The completion step.  Fix any k-1 members; their entrywise products form
# a product vector, and the best final member pairs large products with
# small values (largest product gets 1, and so on).

pv = product_vector([(1, 2, 3), (2, 3, 1)], 3)
print("products of (123, 231):", pv.products)  # (2, 6, 3)

value, witness = optimal_completion(pv)
print("best completion:", witness, "-> v =", value)

# Ties in the product vector mean several completions are optimal; all of
# them are enumerated (the lex-smallest is the witness above).
tied = product_vector([(1, 2, 3), (3, 2, 1)], 3)
print("products of (123, 321):", tied.products)  # all equal: every
print("optimal completions:", sorted(all_optimal_completions(tied)))

# ---------------------------------------------------------------------------
# Canonical representatives.  Composing every member with one common
# position-permutation sigma never changes v, so k-sets come in orbits;
# the canonical form minimizes the base-(n+1) concatenation key.

print("base_key(123):", base_key(make_kset([(1, 2, 3)])))  # 1*9+2*3+3 = 27

sigma = (2, 3, 1)
shuffled = make_kset([compose(p, sigma) for p in s.perms])
print("v unchanged under sigma:", evaluate_v(shuffled) == evaluate_v(s))
print("same canonical form:   ", canonicalize(shuffled) == canonicalize(s))
print("canonical members:", canonicalize(s).perms)

# The canonical first member is always the identity: minimizing over the
# member inverses puts some member at sigma = its own inverse.
print("identity(3):", identity(3), " inverse(231):", inverse((2, 3, 1)))
