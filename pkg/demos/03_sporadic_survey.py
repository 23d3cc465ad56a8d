"""
Survey of the shipped sporadic groups
=====================================

Every bundled group is run through the same pipeline.  The table lists the
degree, the 2-adic gap, the classification, and the defect-gap pattern.
O'N is the one group whose non-principal defect exceeds the gap.

The closest decomposition is a certified optimum.  Where a published
expression exists with a larger residue, both totals are shown.
"""

from lefblock import dataio
from lefblock.lefschetz import assemble, two_adic_profile
from lefblock.projtest import analyze
from lefblock.verify import check_record

print(f"{'group':6} {'degree':>12} {'gap':>4}  class       pattern")
for name, path in dataio.available_bundles().items():
    b = dataio.load_bundle(path)
    for g in b.groups:
        bd = b.brauer_for(g)
        if not b.recipes_for(g) or bd is None or g in ("S3", "S4", "GL32"):
            continue
        rep = assemble(b.primary_recipe(g))
        analyze(rep, bd)
        gap = two_adic_profile(rep)[2]
        print(f"{g:6} {rep.degree:>12} {gap:>4}  {rep.classification:10}  {rep.pattern}")
        for e in b.expects:
            if e.kind == "closest-print":
                o = check_record(e, rep, bd)
                print(f"       block {e.block}: {o.detail}")
