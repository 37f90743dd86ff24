# Reading, writing and generating DIMACS CNF instances.
from pathlib import Path

from edasat import CnfFormula, generate_random_ksat, parse_dimacs, serialize_dimacs
from edasat.cnf import DimacsError

HERE = Path(__file__).parent

# A formula is a variable count plus signed-literal clauses.
f = CnfFormula(3, [[1, -2], [2, 3], [-1, -3]])
text = serialize_dimacs(f)
print(text)
assert parse_dimacs(text) == f

# Random 3-SAT at clause ratio 3; the same seed always gives the same file.
g = generate_random_ksat(n=20, m=60, k=3, seed=1)
print(serialize_dimacs(g).splitlines()[:4])

# Errors point at the offending line and column.
try:
    parse_dimacs("p cnf 2 1\n1 3 0\n")
except DimacsError as exc:
    print("rejected:", exc)

shipped = parse_dimacs((HERE / "data" / "uf20-60-s1.cnf").read_text())
print("shipped instance:", shipped.num_vars, "vars,", shipped.num_clauses, "clauses")
