# Relay placement and Region 3 width, on a short horizon to keep it quick.

from hybridwsn import ExperimentKind, ExperimentSpec, region_division_sweep, relay_position_sweep

spec = ExperimentSpec(ExperimentKind.RELAY_POSITION_SWEEP, seeds=(1, 2), max_rounds=3000)
for r in relay_position_sweep(spec):
    print("relay (%g, %2g) %-13s mean FND %7.1f" % (r["relay_x"], r["relay_y"], r["model"], r["mean_fnd"]))

spec = ExperimentSpec(ExperimentKind.REGION_DIVISION_SWEEP, seeds=(1, 2), max_rounds=3000)
for r in region_division_sweep(spec):
    print("R3 %2g-%-3g %-13s mean FND %7.1f" % (r["r3_x_min"], r["r3_x_max"], r["model"], r["mean_fnd"]))

# Means count a run that never loses its last node as max_rounds, so LND
# values at the horizon are lower bounds.
