"""
M12: a Lefschetz character that is not projective
=================================================

The 2-local geometry of M12 gives a character of degree 496 = 2^4*31, but
|M12|_2 = 2^6, so it cannot be projective.  Splitting into 2-modular blocks
shows where the failure lives: the principal block part is zero and the
whole character sits in a block of defect 2, which equals the 2-adic gap.
"""

from lefblock import dataio
from lefblock.lefschetz import assemble, two_adic_profile
from lefblock.projtest import analyze

b = dataio.load_bundle(dataio.find_bundle(None, "M12"))
rep = assemble(b.primary_recipe("M12"))

# Vector form and scalar product form.
print(dict(zip(rep.table.class_names, rep.values)))
print(rep.mults.describe(positional=True))
print("v(degree), v(|G|), gap =", two_adic_profile(rep))

analyze(rep, b.brauer_for("M12"))
for ba in rep.blocks:
    if ba.is_zero:
        print(f"block {ba.block_id}: zero")
        continue
    print(f"block {ba.block_id} (defect {ba.defect}): vanishing {ba.vanishing}")
    # The least non-projective remainder: one copy of chi_15.
    print("  closest:", ba.closest.describe(), "residue", ba.closest.residue_total)

print(rep.classification, "|", rep.pattern)
