"""
Scale-regularized neural network estimation

Core modules:
- models: architectures, parameters, datasets, activations
- network: forward pass, backpropagation, subnetworks, norms, text format
- regularizers: l1 regularizers and unit-ball projection
- reparam: Theta <-> (kappa, Omega) reparametrization
- estimator: objective, alternating fit, evaluation
- bounds: Lipschitz constants, entropy/Dudley bounds, tuning parameter
- effective_noise: effective-noise search and Monte Carlo quantile
- experiments: data generation, rate/coverage/packing experiments
- audit: run journal
"""

__version__ = "1.0.0-dev"
