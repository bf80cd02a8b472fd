"""
Configuration loader for the dependence logic workbench
"""
import sys


class ConfigLoader:
    def __init__(self):
        self.debug_mode = False
        self.seed = 0
        self.jobs = 1
        self.json_output = False
        self.search_max_size = 6
        self.corpus_count = 20
        self.corpus_max_size = 8
        self.corpus_signature = ["p", "q"]

        self._load_config()

    def _load_config(self):
        try:
            import config
            self.debug_mode = getattr(config, 'DEBUG_MODE', False)
            self.seed = getattr(config, 'DEFAULT_SEED', 0)
            self.jobs = getattr(config, 'DEFAULT_JOBS', 1)
            self.json_output = getattr(config, 'JSON_OUTPUT', False)
            self.search_max_size = getattr(config, 'SEARCH_MAX_SIZE', 6)
            self.corpus_count = getattr(config, 'CORPUS_COUNT', 20)
            self.corpus_max_size = getattr(config, 'CORPUS_MAX_SIZE', 8)
            self.corpus_signature = list(getattr(config, 'CORPUS_SIGNATURE', ["p", "q"]))

        except ImportError:
            print("⚠️ [Config] config.py not found. Using default settings.", file=sys.stderr)

    def describe(self):
        return (f"seed={self.seed} jobs={self.jobs} json={self.json_output} "
                f"search_max_size={self.search_max_size} "
                f"corpus={self.corpus_count}x{self.corpus_max_size} over {','.join(self.corpus_signature)}")
