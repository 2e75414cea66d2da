"""Extended affine Weyl group arithmetic.

Elements are written as whitespace-separated tokens: sK for simple
reflections (s0 is the affine one), tauK for length-zero elements, and
t(c1,...,cn) for translations in lattice coordinates. Everything prints
in a canonical form, so outputs are diff-friendly.
"""

from adlvkit import (
    build_root_datum,
    descents,
    format_element,
    length,
    multiply,
    omega_element,
    parse_element,
    sigma_act,
    simple_reflection,
)

a1 = build_root_datum("A1:adj")
s0, s1 = simple_reflection(a1, 0), simple_reflection(a1, 1)

print("== words in affine A1 ==")
w = multiply(multiply(s0, s1), s0)
print(f"  s0 s1 s0 = {format_element(w)}   length {length(w)}")
print(f"  s1 s0    = {format_element(multiply(s1, s0))}   (a straight translation)")

print()
print("== length-zero elements ==")
gl6 = build_root_datum("A5:gl")
tau3 = omega_element(gl6, 3)
print(f"  tau3 in A5:gl is {format_element(tau3)}, length {length(tau3)}")
w = parse_element(gl6, "s4 tau3")
print(f"  s4 tau3 = {format_element(w)}")
print(f"  tau3 s1 = {format_element(parse_element(gl6, 'tau3 s1'))}  (the same element)")

print()
print("== the twist ==")
tw = build_root_datum("2A4:sc")
for i in range(5):
    img = sigma_act(simple_reflection(tw, i))
    print(f"  sigma(s{i}) = {format_element(img)}")

print()
print("== descent table of t(2) s1 in A1:adj ==")
for i, row in descents(parse_element(a1, "t(2) s1")).items():
    print(f"  index {i}: left {row['left']:+d}, right {row['right']:+d}, "
          f"double move {row['double']:+d}")
