"""Regenerate tests/golden/*.json from the current CLI (run by hand after intended changes)."""
import io
import json
from pathlib import Path

from hornlab.cli import run

CASES = {
    "lr_basic": ["lr", "--lam", "2,1", "--mu", "2,1", "--nu", "3,2,1"],
    "lr_witness": ["lr", "--lam", "2,1", "--mu", "1", "--nu", "2,2", "--witness"],
    "lr_json": ["lr", "--lam", "3,2,1", "--mu", "2,1", "--nu", "4,3,2", "--json"],
    "horn_t_1_3": ["horn-set", "--kind", "T", "--r", "1", "--n", "3"],
    "horn_count": ["horn-set", "--kind", "R", "--r", "2", "--n", "4", "--count"],
    "horn_jsonl_m3": ["horn-set", "--kind", "T", "--r", "1", "--n", "2", "--m", "3", "--jsonl"],
    "check_feasible": ["check-spectra", "--alpha=3,-1", "--beta=0,0", "--gamma=3,-1"],
    "check_infeasible": ["check-spectra", "--alpha=1,0", "--beta=1,0", "--gamma=3,-1", "--json"],
    "check_integral": ["check-spectra", "--alpha=2,1", "--beta=1,0", "--gamma=2,2", "--mode", "integral"],
    "interval": ["interval", "--alpha=2,1,0", "--beta=2,0,0", "--k", "2"],
    "verify_example4": ["verify-example", "--which", "4"],
    "smith_prime": ["smith", "--matrix", "[[4,0],[0,2]]", "--prime", "2"],
    "smith_poly": ["smith", "--matrix", "[[[0,1],[-1]],[[0],[0,1]]]", "--poly", "--json"],
    "carlson": ["carlson", "--a", "T:2,0", "--b", "T:2,0"],
    "usage_error": ["lr", "--lam", "x"],
    "resource": ["interval", "--alpha=1,0,0,0,0,0,0,0,0", "--beta=0,0,0,0,0,0,0,0,0", "--k", "1", "--fiedler"],
}


def record(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return {"argv": argv, "exit": code, "stdout": out.getvalue()}


if __name__ == "__main__":
    folder = Path(__file__).parent / "golden"
    folder.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        (folder / f"{name}.json").write_text(json.dumps(record(argv), indent=1) + "\n")
