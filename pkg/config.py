# Debug Mode
DEBUG_MODE = False

# --- Command Line Defaults ---
DEFAULT_SEED = 0            # seed for sampled formula corpora
DEFAULT_JOBS = 1            # worker processes for model scans
JSON_OUTPUT = False         # one JSON record per invocation instead of text

# --- Search ---
SEARCH_MAX_SIZE = 6         # node budget for inexpressibility scans

# --- Sampling ---
CORPUS_COUNT = 20
CORPUS_MAX_SIZE = 8
CORPUS_SIGNATURE = ["p", "q"]
