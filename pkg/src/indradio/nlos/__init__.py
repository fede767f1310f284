from .features import (FEATURE_NAMES, LOS, NLOS, FeatureVector,
                       extract_features, feature_matrix)
from .forest import DecisionTree, ForestParams, RandomForest
from .io import read_cirs, write_cirs
from .study import (SUBSETS, SubsetAccuracy, evaluate_subsets,
                    stratified_split, subset_columns)
from .synthetic import SyntheticCirParams, estimate_rician_k, generate_dataset

__all__ = [
    "LOS", "NLOS", "FEATURE_NAMES", "FeatureVector", "extract_features",
    "feature_matrix",
    "SyntheticCirParams", "generate_dataset", "estimate_rician_k",
    "ForestParams", "DecisionTree", "RandomForest",
    "SUBSETS", "SubsetAccuracy", "evaluate_subsets", "stratified_split",
    "subset_columns",
    "write_cirs", "read_cirs",
]
