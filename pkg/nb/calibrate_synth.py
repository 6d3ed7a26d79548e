# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#       jupytext_version: 1.16.6
#   kernelspec:
#     display_name: Python 3 (ipykernel)
#     language: python
#     name: python3
# ---

# %%
# Autoreload local code.
# %load_ext autoreload
# %autoreload 2

# %%
import sys
sys.path.append('..')

# %%
from dataclasses import replace

import numpy as np
import pandas as pd
from tqdm.auto import tqdm

from src.classifiers import ClassifierSpec
from src.synth import SynthConfig, generate
from src.uos import StandardModel

# %% [markdown]
# Sweep the drift rate and look at the standard classifiers' test rates.
# The shipped default should put all three between 0.40 and 0.55.

# %%
def standard_rate(dataset, kind):
    model = StandardModel.train(dataset.train, ClassifierSpec(kind))
    return float(np.mean([model.classify(x) == y for x, y in zip(dataset.test.X, dataset.test.labels)]))

# %%
rows = []
for rate in tqdm(np.linspace(0.03, 0.10, 15)):
    for seed in range(10):
        ds = generate(replace(SynthConfig(), drift_rate=float(rate), seed=seed))
        for kind in ("knn", "plsda", "lda"):
            rows.append({"drift_rate": rate, "seed": seed, "kind": kind, "rate": standard_rate(ds, kind)})
sweep = pd.DataFrame(rows)

# %%
sweep.pivot_table(index="drift_rate", columns="kind", values="rate", aggfunc="mean").round(3)

# %%
# The default profile.
default = sweep[np.isclose(sweep["drift_rate"], SynthConfig().drift_rate, atol=0.0025)]
default.groupby("kind")["rate"].describe()
