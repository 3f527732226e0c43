"""Walk a character fact sheet through the deduction pipeline and show the
per-place trace, then do the same for a sheet that only pins the class up
to a short candidate list.

Run with: python3 demos/deduction_walkthrough.py
"""
from udisc.brauer import pair_presentation
from udisc.cli import corpus_dir, load_fact_file
from udisc.deduce import Candidates, Unique, resolve
from udisc.symbols import render_places


def walk(fid):
    ff = load_fact_file(corpus_dir() / (fid + ".json"))
    report = resolve(ff.sheet)
    print("sheet %s:" % fid)
    for line in report.trace:
        print("  %-5s %-22s %s" % (str(line.place), line.rule, line.citation))
    res = report.result
    if isinstance(res, Unique):
        a, b = pair_presentation(res.brauer_class)
        print("  => disc = %s, Delta = (%s,%s)_Q, %s"
              % (res.disc, a, b, render_places(res.brauer_class.ram)))
    elif isinstance(res, Candidates):
        print("  => candidates:")
        for cls, d in res.items:
            print("       %-4d %s" % (d, render_places(cls.ram)))
    print()


# fully determined: local facts at 7, 5 and the odd ramified prime 3
walk("o10p2_chi33")

# the quaternion-subgroup shortcut settles every place at once
walk("s63_chi2")

# dropping the ramified-prime fact leaves two even completions
walk("on3_chi57_partial")
