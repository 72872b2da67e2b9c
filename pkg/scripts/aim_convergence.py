"""Print the per-iteration AIM estimates and |delta_k| for one problem."""

import argparse

from aimbound.cli import RunConfig
from aimbound.potentials import aim_energies, closed_form_energy, reduce


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--potential", choices=["oscillator", "pseudoharmonic", "kratzer"], default="kratzer")
    parser.add_argument("--omega", type=float, default=1.0)
    parser.add_argument("--kappa", type=float, default=4.0)
    parser.add_argument("--re", type=float, default=1.0)
    parser.add_argument("--A", type=float, default=1.0)
    parser.add_argument("--B", type=float, default=0.5)
    parser.add_argument("--D", type=int, default=3)
    parser.add_argument("--ell", type=int, default=0)
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--x0", type=float, default=None, help="expansion point in the reduced variable")
    args = parser.parse_args()

    cfg = RunConfig(
        potential=args.potential, omega=args.omega, kappa=args.kappa, re=args.re, A=args.A, B=args.B
    )
    spec = cfg.spec(args.D, args.ell)
    red = reduce(spec, n_max=args.n_max)
    print(f"# {spec.kind} D={spec.D} ell={spec.ell} variable={red.variable} x0={args.x0 or red.default_x0}")
    print("n,k,E_estimate,abs_error,abs_delta_k")
    for n, (E, res) in zip(range(args.n_max + 1), aim_energies(spec, range(args.n_max + 1), x0=args.x0)):
        exact = closed_form_energy(spec, n)
        for (k, lam), d in zip(res.history, res.delta_trace):
            est = float(red.param_to_energy(lam))
            print(f"{n},{k},{est:.15g},{abs(est - exact):.3e},{d:.3e}")


if __name__ == "__main__":
    main()
