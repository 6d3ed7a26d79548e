import logging

from src.harness import ExperimentConfig, run_one, selection_checks, sr_durations

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s | %(name)s | %(levelname)s | %(message)s'
)
log = logging.getLogger("main")


def main():
    # One synthetic drifting stream, four sequential zero faults, LDA core.
    config = ExperimentConfig.from_dict({
        "mode": "sr",
        "classifier": {"kind": "lda"},
        "fault_preset": {"name": "sequential", "type": "zero"},
        "runs": {"n": 1, "seed": 7},
    })

    result = run_one(config, 0)
    if result.failed:
        log.error(f"Run failed: {result.error}")
        return

    log.info(f"Classification rate: {result.rate:.3f} over {len(result.truth)} samples")
    for row in result.episodes.rows():
        log.info(f"  t={row['sample_index']:4d} {row['event']:<13} {row['sensor_id']} {row['detail']}")
    log.info(f"SR durations: {sr_durations(result)}")
    for c in selection_checks(result):
        log.info(f"{c.sensor_id}: rate below 5% after {c.decay} samples, replacement ratio {c.ratio}")


if __name__ == "__main__":
    main()
