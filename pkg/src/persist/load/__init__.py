from .dataset import dataset_files, from_dir, is_dataset_dir

__all__ = ["dataset_files", "from_dir", "is_dataset_dir"]
