import numpy as np


def mutual_information(gain: np.ndarray, powers, noise_cov: np.ndarray) -> float:
    """Gaussian-input mutual information in bits: log2 det(K + G Q G^H) - log2 det(K).

    `powers` is the diagonal of Q, one entry per column of `gain`.
    """
    signal = (gain * np.asarray(powers, dtype=float)) @ gain.conj().T
    _, total = np.linalg.slogdet(noise_cov + signal)
    _, noise = np.linalg.slogdet(noise_cov)
    return float((total - noise) / np.log(2))
