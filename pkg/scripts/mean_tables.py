"""Average longitude length per value of tau and of the three genus.

    python scripts/mean_tables.py
"""

from knotsearch import experiments as ex
from knotsearch.knotinfo import load_dataset


def main():
    ds = load_dataset()
    for group in ("ozsvath_szabo_tau_invariant", "three_genus"):
        mt = ex.mean_table(ds, group, "longitude_length")
        print(f"{group}: group-mean accuracy {mt.predictor_accuracy:.4f}, global-mean baseline {mt.baseline:.4f}")
        for r in mt.rows:
            print(f"  {r.value:4d}  {r.mean:6.2f} +- {r.stddev:5.2f}  (n={r.count})")


if __name__ == "__main__":
    main()
