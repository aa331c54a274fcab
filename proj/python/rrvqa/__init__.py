"""Reduced-reference video quality toolkit.

Thin python surface over the C++ core: fused feature extraction for
reference/test video pairs, SSIM, the boosted-tree quality model, rank
correlation metrics, and the synthetic corpus generator.
"""

from ._core import (
    Model,
    RrvqaError,
    block_texture_energy,
    compare,
    dct2d,
    generate_corpus,
    krocc,
    load_model,
    plcc,
    rmse,
    srocc,
    ssim,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "Model",
    "RrvqaError",
    "block_texture_energy",
    "compare",
    "dct2d",
    "generate_corpus",
    "krocc",
    "load_model",
    "plcc",
    "rmse",
    "srocc",
    "ssim",
    "train",
    "__version__",
]
