from pyperverse.app import app
from pyperverse.checks import (algebra_checks, census_checks, dual_checks, extdual_checks, koszul_checks,
                               opposite_checks, projective_checks, quiver_checks, roundtrip_checks, sign_ledger,
                               subdivision_checks, tea_checks, triangulation_checks)


@app.command("report", help="Run every check for one complex and perversity.",
             options=("perversity", "seed", "samples", "max_steps"))
def report(args):
    complex_ = app.load_complex(args.complex)
    delta = app.perversity(args, complex_)
    samples = args.samples if args.samples is not None else app.settings.get("roundtrip_samples")
    tea_samples = args.samples if args.samples is not None else app.settings.get("tea_samples")
    budget = app.settings.get("module_budget")
    max_steps = app.setting(args, "max_steps")

    sections = {
        "complex": census_checks(complex_),
        "subdivision": subdivision_checks(complex_),
        "triangulation": triangulation_checks(complex_, delta),
        "quiver": quiver_checks(complex_, delta),
        "algebra_A": algebra_checks(complex_, delta, "A"),
        "algebra_B": algebra_checks(complex_, delta, "B"),
        "dual": dual_checks(complex_, delta),
        "opposite": opposite_checks(complex_, delta),
        "roundtrip": roundtrip_checks(complex_, delta, samples, args.seed, budget),
        "tea": tea_checks(complex_, delta, tea_samples, args.seed, budget),
        "koszul_A": koszul_checks(complex_, delta, "A", max_steps),
        "koszul_B": koszul_checks(complex_, delta, "B", max_steps),
        "extdual": extdual_checks(complex_, delta, max_steps),
        "projectives": projective_checks(complex_, delta),
    }
    results = {name: outcome for name, (outcome, _) in sections.items()}
    results["subdivision"].pop("members")
    results["sign_ledger"] = sign_ledger()
    verdicts = {f"{name}.{check}": verdict for name, (_, found) in sections.items() for check, verdict in found.items()}
    return app.report(args, results, verdicts)
