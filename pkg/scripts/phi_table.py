"""Tabulate the truncated torsion functors next to the cyclotomic model."""

from dataclasses import dataclass

from binring.linalg import FgAbGroup
from binring.torsion import cyclotomic_phi_oracle, phi


@dataclass
class PhiTable:
    primes: tuple[int, ...] = (2, 3, 5)
    max_t: int = 6
    extra_groups: tuple[str, ...] = ("Z/4", "Z/2 + Z/2", "Z/4 + Z/2")


def main(cfg: PhiTable = PhiTable()) -> None:
    for p in cfg.primes:
        for t in range(cfg.max_t + 1):
            got = phi(FgAbGroup.cyclic(p), t)
            ok = got == cyclotomic_phi_oracle(p, t)
            print(f"Phi^{t}(Z/{p}) = {got}  order={got.order()}  cyclotomic={'agrees' if ok else 'DIFFERS'}")
    for spec in cfg.extra_groups:
        for t in range(cfg.max_t + 1):
            print(f"Phi^{t}({spec}) = {phi(FgAbGroup.parse(spec), t)}")


if __name__ == "__main__":
    main()
