from .dataset import SIDECAR_FILE, TEST_FILE, TRAIN_FILE, to_dir

__all__ = ["SIDECAR_FILE", "TEST_FILE", "TRAIN_FILE", "to_dir"]
