"""Published ultrarelativistic characteristics, six significant digits.

Keys are :class:`~srwidth.widths.SummaryRow` field names; columns follow
:data:`~srwidth.ultra.TABLE_ORDER` (s = 0, 2, 3, -1, +1).
"""

REFERENCE_COLUMNS = (0, 2, 3, -1, 1)

REFERENCE_TABLE: dict[str, tuple[float, float, float, float, float]] = {
    "y_max": (2.85812e-01, 3.35524e-01, 1.43921e-01, 5.22405e-01, 2.48583e-01),
    "F_at_max": (2.84696e-01, 2.35158e-01, 5.39423e-02, 5.12872e-02, 2.37335e-01),
    "Phi_at_max": (7.17052e-02, 6.90125e-02, 6.90380e-03, 2.26361e-02, 5.21376e-02),
    "eta_max": (1.43410e-01, 1.57743e-01, 1.10461e-01, 2.01806e-01, 1.34433e-01),
    "y1": (3.49398e-02, 4.87043e-02, 1.08505e-02, 1.22065e-01, 2.71081e-02),
    "F_at_y1": (1.98326e-01, 1.67772e-01, 3.39459e-02, 3.84141e-02, 1.61750e-01),
    "Phi_at_y1": (5.36798e-03, 6.31493e-03, 2.84108e-04, 3.52777e-03, 3.39459e-03),
    "eta1": (1.0736e-02, 1.44341e-02, 4.54573e-03, 3.14508e-02, 8.75273e-03),
    "y2": (1.02680e+00, 1.08939e+00, 6.94023e-01, 1.32370e+00, 9.58312e-01),
    "Phi_at_y2": (2.55368e-01, 2.25065e-01, 3.15341e-02, 5.96117e-02, 1.97311e-01),
    "eta2": (5.10736e-01, 5.14434e-01, 5.04546e-01, 5.31451e-01, 5.08753e-01),
    "y3": (1.10709e-02, 1.44604e-02, 4.90942e-03, 3.59457e-02, 9.26077e-03),
    "Phi_at_y3": (1.19916e-03, 1.29074e-03, 1.00954e-04, 6.86800e-04, 8.36754e-04),
    "eta3": (2.39832e-03, 2.95025e-03, 1.61526e-03, 6.12297e-03, 2.15752e-03),
    "y4": (1.47628e+00, 1.59002e+00, 9.06361e-01, 1.95582e+00, 1.35291e+00),
    "Phi_at_y4": (3.31467e-01, 2.96035e-01, 3.79763e-02, 7.97257e-02, 2.52321e-01),
    "eta4": (6.62933e-01, 6.76652e-01, 6.07621e-01, 7.10772e-01, 6.50593e-01),
    "a_max": (4.28718e-01, 5.03287e-01, 2.15881e-01, 7.83608e-01, 3.72875e-01),
    "a1": (5.24096e-02, 7.30564e-02, 1.62757e-02, 1.83097e-01, 4.06621e-02),
    "a2": (1.54021e+00, 1.63408e+00, 1.04103e+00, 1.98555e+00, 1.43747e+00),
    "a3": (1.66063e-02, 2.16906e-02, 7.36413e-03, 5.39186e-02, 1.38912e-02),
    "a4": (2.21442e+00, 2.38502e+00, 1.35954e+00, 2.93372e+00, 2.02936e+00),
    "b": (1.4878e+00, 1.56103e+00, 1.02476e+00, 1.80245e+00, 1.39681e+00),
    "d": (2.19781e+00, 2.36333e+00, 1.35218e+00, 2.87981e+00, 2.01547e+00),
    "r1": (2.52929e-01, 2.75607e-01, 1.94782e-01, 3.33163e-01, 2.37837e-01),
    "r2": (1.32674e-01, 1.43309e-01, 1.05915e-01, 1.70355e-01, 1.25680e-01),
    "r3": (6.60535e-01, 6.73701e-01, 6.06006e-01, 7.04649e-01, 6.48435e-01),
}

# Headline shares, in percent.
REFERENCE_SHARES = {
    "right_upper_half_space": 77.6,
    "left_upper_half_space": 22.4,
    "eta_max_left": 20.2,
    "eta_max_pi": 11.0,
}

# Ratio of the widest (s=-1) to the narrowest (s=3) effective width.
REFERENCE_WIDTH_RATIO = 1.76
