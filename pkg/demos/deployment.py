# Where nodes land in the two region models and in the uniform model.

from collections import Counter

from hybridwsn import Deployment, NetworkConfig, NodeTier, deploy_network

cfg = NetworkConfig(seed=1)

for model in Deployment:
    nodes = deploy_network(cfg, model)
    per_region = Counter((n.region.name, n.tier.name) for n in nodes)
    print(model.name)
    for key in sorted(per_region):
        print("   %s %-8s %3d" % (key[0], key[1], per_region[key]))

# Advanced nodes start with E0 * (1 + alpha).
nodes = deploy_network(cfg)
print("total energy %.2f J" % sum(n.energy for n in nodes))
print("advanced nodes", sum(n.tier is NodeTier.ADVANCED for n in nodes))
