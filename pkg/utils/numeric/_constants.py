MEAN_TOL = 1e-9

# Search interval and tolerance for the Gaussian-matched quantizer cell width, in standard deviations.
STEP_BOUNDS = (1e-3, 4.0)
STEP_XATOL = 1e-8
