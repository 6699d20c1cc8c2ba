"""
Configuration constants and settings for the tolerance complex toolkit
"""
import os
import json
import copy

# File paths
DEBUG_LOG_FILE = os.getenv('TOLKIT_LOG_FILE', os.path.join(os.path.dirname(os.path.abspath(__file__)), 'debug.log'))
SETTINGS_FILE = os.getenv('TOLKIT_SETTINGS', os.path.join(os.path.dirname(os.path.abspath(__file__)), 'settings.json'))
COUNTEREXAMPLE_DIR = os.getenv('TOLKIT_COUNTEREXAMPLE_DIR', os.path.join(os.getcwd(), 'counterexamples'))

# Hard limit of the bitmask representation (one machine word)
MAX_VERTICES = 64

# =========================================
# Guard rails
# =========================================
# Every cap below is a setting, not a constant: the CLI and the suites read
# them through load_settings() so a settings.json can raise or lower them.

DEFAULT_SETTINGS = {
    'debug_logging': False,
    'max_vertices': MAX_VERTICES,
    'leray_vertex_cap': 14,         # 2^14 induced homology computations
    'box_family_cap': 20,
    'random_complex_cap': 12,
    'eta_guard_rails': {
        'r_max': 2,
        't_max': 3,
        'n_max': 8,
    },
    'workers': 1,                   # ThreadPoolExecutor size for suite trials
    'leray_workers': 1,             # ThreadPoolExecutor size for Leray sweeps
    'default_trials': 50,
    'default_seed': 0,
    'max_attempts_factor': 20,      # draws per wanted valid instance before a suite gives up
    # Per-suite defaults (vertex caps, t/d caps, trial counts)
    'suites': {
        'two-blocks': {'t_values': [1, 2, 3]},
        'thm1.5': {'n_max': 8, 't_values': [1, 2], 'trials': 500},
        'thm1.6': {'n_max': 8, 'trials': 300},
        'lemma4.1': {'n_max': 7, 't_values': [1, 2], 'trials': 500},
        'cor4.2': {'n_max': 7, 't_values': [1, 2], 'trials': 100},
        'prop4.3': {'n_max': 7, 't_values': [1, 2], 'trials': 100},
        'lemma3.2': {'n_max': 7, 'trials': 200},
        'lemma3.1': {'n_max': 10, 'trials': 100},
        'nerve-thm': {'n_max': 8, 'trials': 100},
        'exact-mv': {'n_max': 7, 'trials': 300},
        'exact-link-costar': {'n_max': 7, 'trials': 300},
        'exact-pair': {'n_max': 7, 'trials': 300},
        'km-union': {'n_max': 7, 'trials': 200},
        'bounds': {'t_max': 10, 'd_max': 10},
        'thm1.2': {'n_max': 7, 't_max': 3, 'd_max': 3, 'trials': 300},
        'lemma5.1': {'n_max': 8, 'trials': 100},
        'thm6.3': {'n_max': 9, 'trials': 100},
        'thm6.4': {'n_max': 7, 't_values': [1], 'trials': 100},
        'thm6.5': {'n_max': 7, 'trials': 100},
        'cor6.6': {'per_class': 3, 'stray': 0.1, 'trials': 200},
        'thm1.1': {'n_max': 9, 't_values': [0, 1, 2], 'trials': 500},
        'thm6.2': {'per_class': 3, 'stray': 0.2, 'trials': 100},
        'conj-eta': {'n_max': 7, 'trials': 100},
        'heredity': {'n_max': 7, 'trials': 100},
    },
}

# Global settings cache
_settings_cache = None


def _merge_settings(defaults, overrides):
    """Merge user settings over defaults, one level deep for dict values"""
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            for sub_key, sub_value in value.items():
                if isinstance(sub_value, dict) and isinstance(merged[key].get(sub_key), dict):
                    merged[key][sub_key].update(sub_value)
                else:
                    merged[key][sub_key] = sub_value
        else:
            merged[key] = value
    return merged


def load_settings(use_cache=True):
    """
    Load settings from file or return defaults.

    Note: This function does NOT use logging to avoid circular dependencies
    since logger.is_debug_enabled() calls load_settings().

    Missing keys are filled from DEFAULT_SETTINGS so a settings file written
    for an older version keeps working.

    Args:
        use_cache: If True, return cached settings if available (default: True)

    Returns:
        dict: Merged settings
    """
    global _settings_cache

    if use_cache and _settings_cache is not None:
        return _settings_cache

    settings = copy.deepcopy(DEFAULT_SETTINGS)
    try:
        if os.path.exists(SETTINGS_FILE):
            with open(SETTINGS_FILE, 'r') as f:
                settings = _merge_settings(DEFAULT_SETTINGS, json.load(f))
    except Exception:
        settings = copy.deepcopy(DEFAULT_SETTINGS)

    if os.getenv('TOLKIT_DEBUG', '').lower() in ('true', '1', 'yes'):
        settings['debug_logging'] = True

    _settings_cache = settings
    return settings


def reload_settings():
    """Drop the settings cache and read the settings file again"""
    global _settings_cache
    _settings_cache = None
    return load_settings(use_cache=False)


def get_setting(key, default=None):
    """Look up one top-level setting"""
    return load_settings().get(key, default)


def get_suite_settings(name):
    """
    Get the per-suite defaults for a verification suite.

    Args:
        name: Suite name (e.g. 'thm1.5')

    Returns:
        dict: Copy of the suite's settings (empty if the suite has none)
    """
    return dict(load_settings().get('suites', {}).get(name, {}))
