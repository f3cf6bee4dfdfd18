from pyperverse.app import app
from pyperverse.checks import algebra_checks, dual_checks, opposite_checks, quiver_checks


@app.command("quiver", help="Arrows of Q(X, delta).", options=("perversity",))
def quiver(args):
    complex_ = app.load_complex(args.complex)
    return app.report(args, *quiver_checks(complex_, app.perversity(args, complex_)))


@app.command("algebra", help="Relations and graded dimensions of A or B.",
             options=("perversity", "which", "max_degree"))
def algebra(args):
    complex_ = app.load_complex(args.complex)
    return app.report(args, *algebra_checks(complex_, app.perversity(args, complex_), args.which, args.max_degree))


@app.command("dualcheck", help="The quadratic dual of A(X, delta), or of --algebra, against B(X, -delta).",
             options=("perversity", "algebra"))
def dualcheck(args):
    complex_ = app.load_complex(args.complex)
    delta = app.perversity(args, complex_)
    return app.report(args, *dual_checks(complex_, delta, app.load_algebra(args, complex_, delta)))


@app.command("oppcheck", help="B(X, delta), or --algebra, against the opposite of B(X, -delta).",
             options=("perversity", "algebra"))
def oppcheck(args):
    complex_ = app.load_complex(args.complex)
    delta = app.perversity(args, complex_)
    return app.report(args, *opposite_checks(complex_, delta, app.load_algebra(args, complex_, delta)))
