import numpy as np

from scipy import stats

from bd.errors import UndefinedFitError

from .models import CountRegression


def count_regression(pairs: list[tuple[int, int]]) -> CountRegression:
    """
    Ordinary least squares of detected on manual counts with
    r_squared = 1 - SS_res / SS_tot (1.0 when the detected counts are
    constant and fitted exactly).
    """
    if len(pairs) < 2:
        raise UndefinedFitError(f"Need at least 2 count pairs, got {len(pairs)}")

    manual = np.array([p[0] for p in pairs], dtype=np.float64)
    detected = np.array([p[1] for p in pairs], dtype=np.float64)
    if np.all(manual == manual[0]):
        raise UndefinedFitError("All manual counts are identical")

    fit = stats.linregress(manual, detected)
    residuals = detected - (fit.slope * manual + fit.intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((detected - detected.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0

    return CountRegression(
        pairs=[(int(m), int(d)) for m, d in pairs],
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=min(r_squared, 1.0),
    )
