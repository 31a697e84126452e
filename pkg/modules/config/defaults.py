"""
Default tolerances and numerical settings.

Every entry can be overridden from the [settings] table of a run config.
Entries are (value, data_type) pairs; data_type drives coercion.
"""

SETTINGS = {
    # |tr| - 2 within this tolerance classifies parabolic
    'parabolic_tol': (1e-9, 'float'),
    # limit-set cluster merging on the boundary circle (radians)
    'angular_merge_tol': (1e-3, 'float'),
    'blowup_threshold': (1e8, 'float'),
    'riccati_t0': (1e-4, 'float'),
    'quadrature_radial': (16, 'int'),
    'quadrature_angular': (32, 'int'),
    # grid truncation for potentials that grow like e^{2t}
    'potential_cap': (1e8, 'float'),
    'persson_agreement': (1e-2, 'float'),
    # |∇f_κ| below this on a level curve means the level is not regular
    'regular_value_floor': (0.5, 'float'),
    'papa_rays': (64, 'int'),
    'curvature_slack': (0.1, 'float'),
}

RUN_DEFAULTS = {
    'seed': (0, 'int'),
    'out': ('results', 'str'),
    'jobs': (1, 'int'),
}

LOGGING_DEFAULTS = {
    'level': ('INFO', 'str'),
    'file': ('~/pyspeclab.log', 'str'),
}


_active = {}


def apply_settings(values):
    """Install the [settings] table of a run; replaces earlier overrides"""
    _active.clear()
    _active.update({name: value for name, value in values.items() if name in SETTINGS})


def setting(name, overrides=None):
    """Return a setting value: explicit overrides, then the run's [settings], then the default"""
    if overrides and name in overrides:
        return overrides[name]
    if name in _active:
        return _active[name]
    return SETTINGS[name][0]
