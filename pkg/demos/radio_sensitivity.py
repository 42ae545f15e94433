# How strongly lifetimes depend on the electronics energy per bit.
#
# With E_elec = 5 nJ/bit the per-round cost is dominated by amplifier terms
# and most networks outlive 10000 rounds. At 50 nJ/bit every node pays ten
# times more per packet and lifetimes shrink accordingly.

from hybridwsn import EnergyParams, NetworkConfig, ProtocolKind, run_simulation

for e_elec in (5e-9, 50e-9):
    cfg = NetworkConfig(seed=1, energy=EnergyParams(e_elec=e_elec))
    print("E_elec = %g nJ/bit" % (e_elec * 1e9))
    for kind in ProtocolKind:
        r = run_simulation(cfg, kind, 10_000)
        print("   %-7s FND %5s  LND %s" % (kind.value, r.fnd, r.lnd or "not reached"))
