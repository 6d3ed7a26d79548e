"""
sensorfix: UOS adaptive classification and Self-Repairing sensor replacement.
"""
