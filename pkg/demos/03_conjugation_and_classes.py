"""Twisted conjugation: shift classes, minimality, class invariants.

A cyclic shift conjugates by a simple reflection without increasing
length. Closing under such moves gives finite classes; searching them
decides minimality with a replayable certificate. The class invariant
pairs the dominant Newton point with the Kottwitz point.
"""

from adlvkit import (
    build_root_datum,
    class_invariant,
    format_element,
    is_min_len,
    is_straight,
    kottwitz_point,
    newton_point,
    parse_element,
    shift_class,
)

a1 = build_root_datum("A1:adj")

print("== shift classes in affine A1 ==")
for text in ("t(1)", "s1", "s0 s1 s0"):
    x = parse_element(a1, text)
    members = sorted(format_element(m) for m in shift_class(x))
    print(f"  class of {text}: {members}")

print()
print("== minimality certificates ==")
for text in ("s1", "s0 s1 s0"):
    res = is_min_len(parse_element(a1, text))
    if res.is_min_len:
        print(f"  {text} has minimal length")
    else:
        print(f"  {text} is not minimal; conjugating by indices {list(res.witness)} shortens it")

print()
print("== invariants separate classes ==")
for text in ("t(0)", "s1", "t(1)", "t(2) s1"):
    x = parse_element(a1, text)
    print(f"  {text:10s} newton {newton_point(x)} kottwitz {kottwitz_point(x)} "
          f"straight {is_straight(x)}")
print("  note: s1 and the identity share one class; t(1) is strictly above it")

print()
print("== a twisted example ==")
tw = build_root_datum("2A4:sc")
tau1 = parse_element(tw, "tau1")
print(f"  tau1 in 2A4:sc: {format_element(tau1)}")
print(f"  invariant {class_invariant(tau1)}  straight {is_straight(tau1)}")
