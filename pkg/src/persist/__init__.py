"""
Dataset files on disk: train.csv, test.csv and the dataset.json sidecar.
"""
