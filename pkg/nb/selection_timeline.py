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
from src.export import episodes_frame, run_timeline
from src.harness import ExperimentConfig, run_one, selection_checks

# %%
config = ExperimentConfig.from_dict({
    "mode": "sr",
    "classifier": {"kind": "plsda"},
    "fault_preset": {"name": "sequential", "type": "zero"},
    "runs": {"seed": 3},
})
result = run_one(config, 0)
result.rate

# %%
display(episodes_frame(result))

# %%
# Windowed selection rate per sensor: faulted sensors fade out, replacements
# pick up after their merge.
timeline = run_timeline(result)
rates = timeline.sensor_rates(window=30)
rates.iloc[::50].round(2)

# %%
for c in selection_checks(result):
    print(c)
