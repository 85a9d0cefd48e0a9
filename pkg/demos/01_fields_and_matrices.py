"""Small finite fields and exact matrix arithmetic.

Every element of GF(p^k) is an integer index packing its coefficient
vector; matrices are numpy arrays of such indices.  Everything below is
exact, there is no floating point anywhere in the package.
"""

from bfgeo import Mat, arithmetic_distance, enumerate_homs, make_field

# GF(4) with its canonical reducing polynomial x^2 + x + 1
F4 = make_field(2, 2)
print(f"{F4}: modulus coefficients {F4.modulus} (constant term first)")

alpha = 2  # the class of x
print(f"alpha * alpha = index {F4.mul(alpha, alpha)}  (alpha^2 = alpha + 1)")
print(f"alpha^3      = index {F4.pow(alpha, 3)}  (the multiplicative order is 3)")

# field homomorphisms are enumerated exactly: GF(4) has its identity and
# the squaring map, and embeds into GF(16) in exactly two ways
F16 = make_field(2, 4)
print("homs GF(4) -> GF(4): ", [h.generator_image for h in enumerate_homs(F4, F4)])
print("homs GF(4) -> GF(16):", [h.generator_image for h in enumerate_homs(F4, F16)])
print("homs GF(4) -> GF(8): ", enumerate_homs(F4, make_field(2, 3)))

# matrices: rank, inverse, and the rank metric
A = Mat.from_text(F4, "1,2;3,0")
print(f"\nA = {A.to_text()}  rank {A.rank()}")
print(f"A^-1 = {A.inverse().to_text()}")
B = Mat.identity(F4, 2)
print(f"distance(A, I) = rank(A - I) = {arithmetic_distance(A, B)}")

# the canonical integer code orders the whole matrix space
print(f"code(A) = {A.encode()}, decodes back to {Mat.decode(F4, A.encode(), 2, 2).to_text()}")
