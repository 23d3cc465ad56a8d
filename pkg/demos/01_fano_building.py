"""
The building of GL(3,2), two ways
=================================

GL(3,2) acts on the 7 points and 7 lines of the Fano plane.  The two
stabilizers are the parabolic subgroups, and their coset complex is the
point-line incidence graph.  Its reduced Lefschetz character can be read
off from fixed points, or assembled from induced characters.  Both routes
must agree, and the result is minus the Steinberg character.
"""

from lefblock import dataio
from lefblock.cosetgeom import build_complex, lefschetz_by_fixed_points
from lefblock.lefschetz import assemble
from lefblock.projtest import analyze

b = dataio.load_bundle(dataio.find_bundle(None, "GL32"))
spec = b.perms["GL32-perm"]
table = b.table("GL32")

# The complex: 14 vertices (points and lines), 21 edges (incident flags).
cx = build_complex(spec)
print("f-vector:", cx.f_vector)

# Route one: reduced Euler characteristic of the fixed subcomplex at each class.
geometric = lefschetz_by_fixed_points(spec, table=table)
print("fixed points:", dict(zip(table.class_names, geometric.integer_values())))

# Route two: 1_P1^G + 1_P2^G - 1_B^G - 1, from character tables alone.
rep = assemble(b.primary_recipe("GL32"))
print("recipe:      ", dict(zip(table.class_names, rep.values)))
print("routes agree:", geometric == rep.lam)

# The character is -chi_6, the Steinberg character with a sign; it vanishes
# on the involutions and the elements of order 4, as a projective must.
print("decomposition:", rep.mults.describe(positional=True))
analyze(rep, b.brauer_for("GL32"))
print(dataio.emit_report(rep))
