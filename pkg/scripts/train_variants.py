#!/usr/bin/env python3
"""Train the five contrastive-loss variants on the synthetic two-class
dataset over a panel of seeds and report mean final linear-probe accuracy.

Usage:
    python scripts/train_variants.py [--seeds 20] [--epochs 40]
        [--mix-ratio 0.2]
"""

import argparse

import numpy as np

from simgraph import make_dataset, train
from simgraph.harness import VARIANTS, TrainConfig


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=20,
                        help="number of paired seeds (0..seeds-1)")
    parser.add_argument("--epochs", type=int, default=40)
    parser.add_argument("--mix-ratio", type=float, default=0.2)
    args = parser.parse_args()

    config = TrainConfig(batch_size=50, tau=0.3, sigma=1.8, rho=2.0,
                         pos_high=0.5, pos_low=0.75, epochs=args.epochs,
                         learning_rate=1.0, input_dim=8, embed_dim=2,
                         jitter=2.0)

    final = {variant: [] for variant in VARIANTS}
    for seed in range(args.seeds):
        dataset = make_dataset(classes=2, per_class=50, d=8, separation=4.0,
                               mix_ratio=args.mix_ratio, seed=seed)
        for variant in VARIANTS:
            _, metrics = train(dataset, config, variant)
            final[variant].append(metrics.probe_accuracy[-1])

    print(f"seeds: {args.seeds}  epochs: {args.epochs}  "
          f"mix_ratio: {args.mix_ratio}")
    print(f"{'variant':<14} {'mean accuracy':>14} {'sem':>10}")
    for variant in VARIANTS:
        accs = np.array(final[variant])
        sem = accs.std(ddof=1) / np.sqrt(len(accs)) if len(accs) > 1 else 0.0
        print(f"{variant:<14} {accs.mean():>14.4f} {sem:>10.4f}")


if __name__ == "__main__":
    main()
