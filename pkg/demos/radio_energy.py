# Radio energy model: what one 4000-bit packet costs at different ranges.

import numpy as np

from hybridwsn import EnergyParams, rx_energy, threshold_distance, tx_energy

params = EnergyParams()
print("crossover distance d0 = %.4f m" % threshold_distance(params))

# Below d0 the amplifier cost grows with d^2, beyond it with d^4.
for d in (10, 40, 80, 87.7, 100, 140):
    print("tx %6.1f m : %.3e J" % (d, tx_energy(params, 4000, d)))

print("rx          : %.3e J" % rx_energy(params, 4000))

# Arrays work too, which is how the engine charges a whole round at once.
d = np.linspace(0, 150, 7)
print(np.round(tx_energy(params, 4000, d) * 1e6, 2), "uJ")
