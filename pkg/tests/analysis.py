"""Feature locators shared by the simulation-backed tests."""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def oscillation_envelope(t, y, width=31):
    """Peak-to-peak amplitude of ``y`` in a sliding window of ``width`` samples,
    returned with the window-centre times."""
    win = sliding_window_view(np.asarray(y), width)
    half = width // 2
    return np.asarray(t)[half:len(t) - half], win.max(axis=1) - win.min(axis=1)


def revival_peak_time(series, lo=0.6):
    """Time of the largest P_ee oscillation envelope after ``lo * t_r``."""
    tc, env = oscillation_envelope(series.t, series["p_ee"])
    keep = tc > lo * series.estimate.t_revival
    return tc[keep][np.argmax(env[keep])]


def entropy_dip_time(series, lo=0.15, hi=0.35):
    """Time of minimum linear entropy in ``[lo, hi] * t_r``."""
    tr = series.estimate.t_revival
    w = series.window(lo * tr, hi * tr)
    return series.t[w][np.argmin(series["s_lin"][w])]


def peak_in_window(series, column, lo=0.4, hi=0.6):
    tr = series.estimate.t_revival
    return float(np.max(series[column][series.window(lo * tr, hi * tr)]))
