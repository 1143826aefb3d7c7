"""
Configuration for the symbreak toolkit.
"""
import os as _os

TOOL_VERSION = "0.3.0"

# --- Automorphism enumeration ---
AUT_VERTEX_CAP = 16           # largest graph whose full group is enumerated
AUT_MAX_ELEMENTS = 4_000_000  # K_10 has 3,628,800 automorphisms
EDGE_ACTION_MAX_BYTES = 256_000_000  # Aut(K_10) on 45 edges takes 163 MB as int8

# --- Labeling search ---
LABEL_POINT_CAP = 80          # vertices (or edges) a labeling search may assign
EXACT_TIME_BUDGET_S = 60.0    # wall clock per exact call, None = unlimited
BUDGET_CHECK_EVERY = 1024     # search nodes between deadline checks
SAMPLED_WITNESS_MIN_ORDER = 100_000  # groups this large try seeded 2-labelings before searching
SAMPLED_WITNESS_TRIES = 32
SAMPLED_WITNESS_SEED = 7

# --- Hamiltonian paths ---
HAMILTONIAN_PATH_CAP = 20

# --- Join partition / covers ---
EXACT_BIPARTITE_MAX_EDGES = 16  # D'(K_{a,b}) by search when a*b <= this, else closed form
COVER_ENUMERATION_MAX_CLASSES = 6
COVER_ENUMERATION_ALL_MAX_CLASSES = 5  # non-minimal covers: 2^(c(c-1)/2) subsets

# --- Closed forms ---
FRIENDSHIP_PRECISION = 60        # decimal digits, doubled when the guard fires
FRIENDSHIP_INTEGER_GUARD = 1e-9

# --- Corpus ---
CORPUS_ATLAS_MAX_ORDER = 7       # networkx graph atlas covers every graph up to 7 vertices
CORPUS_RANDOM_SEED = 20240611

# --- Worker pool ---
THREADS = int(_os.environ.get("SYMBREAK_THREADS", "2"))

# --- CLI exit codes ---
EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_CAP = 3
