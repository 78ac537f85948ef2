"""
No analogue for H3 and H4
=========================

H3 and H4 have no extended diagram.  We try every way of adding one node
to them such that each single deletion is still of finite type, and see
whether any sum of volume terms equals 1.
"""

from rootcone import brute_force_admissible, search_h_extensions

for base in ("H3", "H4"):
    for require in (True, False):
        cands = search_h_extensions(base, require_nonfinite_total=require)
        what = "non-finite total" if require else "any total"
        print(f"{base}, {what}: {len(cands)} admissible extensions")
        for c in cands:
            flag = "  (one label-3 edge at a path end)" if c.label3_path_extension else ""
            print(f"    labels {c.labels}  sum {c.sum} = {float(c.sum):.5f}{flag}")
        # independently: positive definiteness of the cosine matrix, labels up to 7
        same = {c.labels for c in cands} == brute_force_admissible(base, require)
        print("    brute force agrees:", same)
