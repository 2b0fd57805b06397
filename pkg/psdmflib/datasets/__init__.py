"""
Defines multi-view datasets, their file formats, preprocessing and the synthetic generator.
"""

from .base import MultiViewDataset
from .preprocessing import NormalizeMode, split_labeled, normalize
from .io import load_matrix, save_matrix, load_labels, save_labels, read_manifest, load_dataset, save_dataset
from .synthetic import SyntheticSpec, PlantedFactors, SyntheticDataset, generate_synthetic
