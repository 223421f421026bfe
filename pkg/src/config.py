"""
Configuration settings for the linear-logic semantics workbench.
Edit the bounds below, or override them through a .env file / environment variables.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

PROJECT_ROOT = Path(__file__).parent.parent

# ========== SEARCH BOUNDS ==========

# Size bound for interpretations (node count of every tuple component)
DEFAULT_BOUND = int(os.getenv("LLSEM_BOUND", 12))

# Premises of a cut are evaluated at CUT_WITNESS_FACTOR x bound
CUT_WITNESS_FACTOR = int(os.getenv("LLSEM_CUT_FACTOR", 3))

# Cardinality bound for clique checks; raised to 2 * #x per check
DEFAULT_CARD_BOUND = int(os.getenv("LLSEM_CARD_BOUND", 6))

# Upper limit on candidate steps in decomposition / sub-bag searches
DECOMPOSITION_BUDGET = int(os.getenv("LLSEM_DECOMPOSITION_BUDGET", 200_000))

# Multiplicity cap of the support-closure operator S
SUPPORT_CLOSURE_CAP = 6

# Cardinality cap used by formula spaces when K is all of N \ {0,1}
# (table spaces carry their own cap)
ALL_K_CAP = 6

# ========== LAW HARNESS ==========

# Endpoint size bound of materialized relations
LAW_BOUND = 5

# Witness size bound for compositions (must cover the middle points of every law)
LAW_WITNESS_BOUND = 10

# Cardinality bound for cliquehood of law relations
LAW_CARD_BOUND = 3

# Interpretation bound used by the logicality and bipartite checks
LOGICALITY_BOUND = 12

# ========== FUZZING ==========

FUZZ_SPACES = 120  # Number of random weakly reflexive table spaces
FUZZ_MAX_WEB = 4  # Labels per random space
FUZZ_MAX_BAG = 4  # Largest bag checked against the neutral-web characterization
FUZZ_SEED = 20070101

# ========== PARALLELISM ==========

MAX_WORKERS = int(os.getenv("LLSEM_MAX_WORKERS", 4))  # Threads for corpus-wide suites

# ========== CORPUS ==========

CORPUS_DIR = PROJECT_ROOT / "corpus"
PROOF_DIR = CORPUS_DIR / "proofs"
INTERACT_DIR = CORPUS_DIR / "interact"
CUTELIM_DIR = CORPUS_DIR / "cutelim"
SPACE_DIR = CORPUS_DIR / "spaces"
FORMULA_DIR = CORPUS_DIR / "formulas"
CLIQUE_DIR = CORPUS_DIR / "cliques"

PROOF_SUFFIX = ".llp"
FORMULA_SUFFIX = ".llf"
INTERP_SUFFIX = ".llx"
TABLE_SUFFIX = ".tbs"
POINTS_SUFFIX = ".pts"

# ========== LOGGING ==========

LOG_DIR = Path(os.getenv("LLSEM_LOG_DIR", PROJECT_ROOT / "logs"))
