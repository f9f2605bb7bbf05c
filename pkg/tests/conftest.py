import numpy as np
import pytest

from tvpanel import empirical_growth, fit_path, from_seed, generate


@pytest.fixture(scope="session")
def reference_bundle():
    """Noiseless 11x30x7 synthetic panel with a known path, fitted once."""
    spec = from_seed(n_countries=11, n_years=30, n_vars=7, seed=42)
    panel, true_path = generate(spec)
    growth = empirical_growth(panel)
    path, diags = fit_path(panel, growth)
    return {
        "spec": spec,
        "panel": panel,
        "true_path": true_path,
        "growth": growth,
        "path": path,
        "diags": diags,
    }


def path_recovery_error(true_path, fitted_path) -> float:
    """Max relative coefficient error between two paths."""
    ra = np.abs(fitted_path.alpha - true_path.alpha) / np.abs(true_path.alpha)
    rb = np.abs(fitted_path.beta - true_path.beta) / np.abs(true_path.beta)
    return float(max(ra.max(), rb.max()))
