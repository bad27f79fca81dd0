"""Look for violations of the open inequalities by random-restart coordinate descent."""

from thinent.search import search

for target, n in [("shepp_olkin", 2), ("shepp_olkin", 3), ("thinned_epi", 2), ("rtepi", 3)]:
    res = search(target, n, budget=3000, seed=0)
    status = "FLAGGED" if res.flagged else "no violation"
    print(f"{target:12s} n={n}  min slack {res.min_slack: .3e}  ({status}, {res.evaluations} evaluations)")
    print("    argmin:", {k: (round(v, 4) if isinstance(v, float) else [round(x, 4) for x in v])
                          for k, v in res.argmin.items()})
