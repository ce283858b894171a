"""
A tour of the generic catalog
=============================

Every normal form in the three tables is decided from its signs and moduli
alone.  Here we enumerate the small cases, count the verdict patterns per
table, and spot-check a few against the direct tests on the realized germs.
"""

from collections import Counter

from germcq import decide, enumerate_catalog, licq, mfcq, realize

pairs = list(enumerate_catalog(4, 3))
print(len(pairs), "descriptors with n <= 4, q <= 3")

patterns = Counter((d.table, "".join("T" if f else "F" for f in v.as_tuple())) for d, v in pairs)
for (table, pattern), count in sorted(patterns.items()):
    print(f"  {table}  LICQ/MFCQ/ACQ/GCQ = {pattern}: {count}")

# every 97th descriptor against the gradients of its germ
for d, v in pairs[::97]:
    g = realize(d)
    assert (licq(g), mfcq(g).holds) == (v.licq, v.mfcq), d.label

d = pairs[0][0]
print("first descriptor:", d.label, decide(d).branch)
print("its germ:", realize(d))
